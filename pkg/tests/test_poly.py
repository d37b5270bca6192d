from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncgb.poly import NcPolynomial, ZeroPolynomialError, leading, remainder
from ncgb.words import Alphabet
from oracles import ideal_dimension, words_of

X = Alphabet.standard(2)
P = X.parse


def poly(terms):
    return NcPolynomial.parse_terms(terms, X)


F1 = poly({"x2*x1^2": 1, "x1^2*x2": -4})  # first relation of family A at p = 2

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def homogeneous(draw, max_total=5, min_total=1):
    a = draw(st.integers(0, max_total))
    b = draw(st.integers(max(0, min_total - a), max_total - a))
    ws = words_of((a, b))
    picked = draw(st.lists(st.sampled_from(ws), min_size=1, max_size=4, unique=True))
    terms = {w: draw(coeff.filter(bool)) for w in picked}
    return NcPolynomial(terms, X)


def test_leading_examples():
    assert leading(F1) == (P("x2*x1^2"), 1)
    assert leading(poly({"x1": 1, "x2": 1})) == (P("x2"), 1)
    assert leading(poly({"x1*x2*x1": 7})) == (P("x1*x2*x1"), 7)
    assert poly({"x1*x2*x1": 7}).monic() == poly({"x1*x2*x1": 1})


def test_leading_of_zero_raises():
    with pytest.raises(ZeroPolynomialError):
        leading(NcPolynomial.zero(X))


def test_remainder_examples():
    f = NcPolynomial.from_word(P("x2*x1^3"), X)
    assert remainder(f, [F1]) == poly({"x1^2*x2*x1": 4})
    assert remainder(F1, [F1]) == 0
    assert remainder(f, []) == f


def test_render():
    assert F1.render() == "x2*x1^2 - 4*x1^2*x2"
    assert poly({"x1*x2": Fraction(-1, 3), "x2*x1": 2}).render() == "2*x2*x1 - 1/3*x1*x2"


def test_arithmetic():
    a, b = poly({"x1": 1}), poly({"x2": 1})
    assert (a + b) * (a - b) == poly({"x1^2": 1, "x2*x1": 1, "x1*x2": -1, "x2^2": -1})
    assert (a * b) ** 2 == poly({"x1*x2*x1*x2": 1})
    assert F1.wrap(P("x1"), P("x2"), 3) == poly({"x1*x2*x1^2*x2": 3, "x1^3*x2^2": -12})


@given(homogeneous(), st.lists(homogeneous(max_total=3), min_size=1, max_size=3))
def test_remainder_is_normal_and_homogeneous(f, G):
    r = remainder(f, G)
    lws = [g.lw for g in G]
    assert all(not any(v in w for v in lws) for w in r.terms)
    if r:
        assert r.degree() == f.degree()


@given(homogeneous(max_total=4), st.lists(homogeneous(max_total=3), min_size=1, max_size=3))
def test_difference_lies_in_ideal(f, G):
    r = remainder(f, G)
    beta = f.degree()
    diff = f - r
    same = [g for g in G if all(x <= y for x, y in zip(g.degree(), beta))]
    if not diff:
        return
    base = ideal_dimension(same, beta)
    assert ideal_dimension(same + [diff], beta) == base


@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_remainder_linear(a, b, data):
    if a + b == 0:
        return
    ws = words_of((a, b))
    pick = st.lists(st.sampled_from(ws), min_size=1, max_size=4, unique=True)
    f = NcPolynomial({w: data.draw(coeff.filter(bool)) for w in data.draw(pick)}, X)
    g = NcPolynomial({w: data.draw(coeff.filter(bool)) for w in data.draw(pick)}, X)
    G = data.draw(st.lists(homogeneous(max_total=3), min_size=1, max_size=3))
    s, t = data.draw(coeff), data.draw(coeff)
    lhs = remainder(f.scale(s) + g.scale(t), G)
    rhs = remainder(remainder(f, G).scale(s) + remainder(g, G).scale(t), G)
    assert lhs == rhs
