import pytest

from ncgb.catalog import (
    FAMILIES,
    ConstraintError,
    DiagonalAutomorphism,
    IncompleteBasisError,
    NotStableError,
    check_normal_element,
    check_regular_quotient,
    family_presentation_words,
    hilbert_of,
    instantiate_family,
    switch_presentation,
    twist_presentation,
    verify_family,
)
from ncgb.dsl import Presentation, parse_field
from ncgb.groebner import complete_to_degree
from ncgb.poly import NcPolynomial
from ncgb.words import Alphabet, is_lyndon

X = Alphabet.standard(2)
P = X.parse


def poly(terms, fld=None):
    return NcPolynomial.parse_terms(terms, X) if fld is None else NcPolynomial.parse_terms(terms, X, fld)


def presentation(*rels):
    return Presentation(X, rels[0].field if rels else None, list(rels))


def bracket(a, b):
    return a * b - b * a


x1, x2 = poly({"x1": 1}), poly({"x2": 1})
PLANE = presentation(poly({"x2*x1": 1, "x1*x2": -1}))
A2_Z = poly({"x2^3*x1": 1, "x2^2*x1*x2": 2, "x2*x1*x2^2": 4, "x1*x2^3": 8})


def same_ideal(rels_a, rels_b, bound=11):
    return complete_to_degree(rels_a, bound).basis == complete_to_degree(rels_b, bound).basis


def test_instantiate_examples():
    A = instantiate_family("A", {"p": 2})
    assert len(A.relations) == 3
    assert A.relations[2] == poly({"x2^4*x1": 1, "x1*x2^4": -16})
    D = instantiate_family("D", {"p": 1})
    assert D.relations[0] == poly({"x2*x1^2": 1, "x1*x2*x1": -2, "x1^2*x2": 1})


def test_constraint_violation_names_clause():
    with pytest.raises(ConstraintError, match="p != 0"):
        instantiate_family("A", {"p": 0})
    with pytest.raises(ConstraintError, match="q != 1"):
        instantiate_family("K", {"p": 1, "q": 1})
    with pytest.raises(ConstraintError, match="q\\^3"):
        instantiate_family("L", {"p": 1, "q": 1, "r": 1})
    with pytest.raises(ConstraintError, match="j\\^4 = 1"):
        instantiate_family("G", {"p": 1, "j": 2})


def test_algebraic_parameter_defaults_to_generator():
    C = instantiate_family("C", {"p": 1})
    assert C.field.header() == "Q[j]/(j^2 + j + 1)"
    assert C.params["j"] == C.field.gen


def test_script_names_accepted():
    assert instantiate_family("𝒜", {"p": 2}) == instantiate_family("A", {"p": 2})


def test_every_family_has_lyndon_obstructions():
    for name in FAMILIES:
        assert all(is_lyndon(w) for w in family_presentation_words(name))


def test_identity_twist():
    A = instantiate_family("A", {"p": 3})
    T = twist_presentation(A, DiagonalAutomorphism((1, 1)))
    assert [r.terms for r in T.relations] == [r.monic().terms for r in A.relations]


@pytest.mark.parametrize("name", ["A", "B"])
@pytest.mark.parametrize("p", ["2/3", "-5", "7"])
def test_twist_to_base_member(name, p):
    Pp = instantiate_family(name, {"p": p})
    base = instantiate_family(name, {"p": 1})
    lam = 1 / Pp.params["p"]
    T = twist_presentation(Pp, DiagonalAutomorphism((lam, 1)))
    assert [r.terms for r in T.relations] == [r.terms for r in base.relations]


def test_twist_needs_stable_ideal():
    Y = Alphabet(("x1", "x2"), ((1,), (1,)))
    f = NcPolynomial.parse_terms({"x2*x1": 1, "x1^2": -1}, Y)
    with pytest.raises(NotStableError):
        twist_presentation(Presentation(Y, f.field, [f]), DiagonalAutomorphism((2, 1)))


def test_switch_quantum_plane():
    q = 3
    plane = presentation(poly({"x2*x1": 1, "x1*x2": -q}))
    S = switch_presentation(plane)
    assert S.relations == [poly({"x2*x1": 1, "x1*x2": -1 / __import__("fractions").Fraction(q)})]


def test_switch_is_involution():
    for name, params in [("A", {"p": 2}), ("F", {"p": 2, "q": 3}), ("K", {"p": 2, "q": -3})]:
        Pp = instantiate_family(name, params)
        back = switch_presentation(switch_presentation(Pp))
        assert back.relations == [r.monic() for r in Pp.relations]


def test_switch_series_swaps_coordinates():
    A = instantiate_family("A", {"p": 2})
    H, HS = hilbert_of(A, 10), hilbert_of(switch_presentation(A), 10)
    assert all(HS[(a, b)] == H[(b, a)] for a in range(11) for b in range(11 - a))


def test_switch_needs_two_letters():
    Y = Alphabet.standard(3)
    with pytest.raises(ValueError):
        switch_presentation(Presentation(Y, None, []))


def test_normal_element_family_a():
    A = instantiate_family("A", {"p": 2})
    cert = check_normal_element(A2_Z, A, 12)
    assert cert.normal
    state = complete_to_degree(A.relations, 6)
    for nm, letter in (("x1", x1), ("x2", x2)):
        assert state.remainder(A2_Z * letter - cert.left[nm] * A2_Z) == 0
        assert state.remainder(letter * A2_Z - A2_Z * cert.right[nm]) == 0
    assert check_regular_quotient(A2_Z, A, 12)


def test_central_letter_in_polynomial_ring():
    assert check_normal_element(x1, PLANE, 12).normal
    assert check_regular_quotient(x1, PLANE, 12)


def test_one_sided_zero_divisor_is_not_normal():
    # x2*x1 = 0 kills x1 from one side only; the series identity still holds
    # because k<x1,x2>/(x2*x1, x1) = k[x2], so normality is what fails
    mono = presentation(poly({"x2*x1": 1}))
    assert not check_normal_element(x1, mono, 12).normal
    assert check_regular_quotient(x1, mono, 12)


def test_normal_zero_divisor_fails_regularity():
    mono = presentation(poly({"x2*x1": 1}), poly({"x1*x2": 1}))
    assert check_normal_element(x1, mono, 12).normal
    assert not check_regular_quotient(x1, mono, 12)
    # quotient is k[x2]: 1 + t + t^2 + ...; (1 - t) H is 1 + t
    assert hilbert_of(presentation(poly({"x2*x1": 1}), poly({"x1*x2": 1}), x1), 6).collapse_list() == [1] * 7


def test_non_normal_element_detected():
    A = instantiate_family("A", {"p": 2})
    cert = check_normal_element(x1 * x2, A, 12)
    assert not cert.normal and cert.reason


def test_incomplete_basis_error():
    A = instantiate_family("A", {"p": 2})
    with pytest.raises(IncompleteBasisError):
        check_normal_element(A2_Z, A, 4)


def test_zero_element_rejected():
    A = instantiate_family("A", {"p": 2})
    with pytest.raises(ValueError, match="zero in the algebra"):
        check_normal_element(A.relations[0], A, 12)


def test_d1_is_an_enveloping_algebra():
    D = instantiate_family("D", {"p": 1})
    b21 = bracket(x2, x1)
    lie = [bracket(b21, x1), bracket(bracket(x2, b21), b21), bracket(x2, bracket(x2, bracket(x2, b21)))]
    assert same_ideal(D.relations, lie)


def test_l_point_is_an_enveloping_algebra():
    L = instantiate_family("L", {"p": -2, "q": "1/2", "r": "1/2"})
    b21 = bracket(x2, x1)
    lie = [bracket(bracket(b21, x1), x1), bracket(x2, bracket(b21, x1)), bracket(x2, bracket(x2, b21))]
    assert same_ideal(L.relations, lie)


def test_i_at_minus_one_is_h_at_one():
    for p in (2, "-3/5"):
        I = instantiate_family("I", {"p": p, "q": -1})
        H = instantiate_family("H", {"p": p, "q": 1})
        assert [r.terms for r in I.relations] == [r.terms for r in H.relations]


def test_l_at_minus_one_is_h_at_one():
    K = parse_field("Q[theta]/(theta^2 - theta + 1)")
    L = instantiate_family("L", {"p": 3, "q": "theta", "r": -1}, K)
    H = instantiate_family("H", {"p": 3, "q": 1}, K)
    assert [r.terms for r in L.relations] == [r.terms for r in H.relations]


def test_verify_family_report_shape():
    rep = verify_family("A", {"p": 2}, 12)
    assert rep.passed and rep.first_failure is None
    names = [s.name for s in rep.stages]
    assert names == ["groebner", "compositions", "series", "chains", "lyndon", "normal"]
    assert rep.to_json()["params"] == {"p": "2"}


def test_f_sequence_at_base_point():
    rep = verify_family("F", {"p": 1, "q": 0}, 12)
    seq = rep.stage("sequence")
    assert rep.passed and len(seq.detail["steps"]) == 5
    assert seq.detail["top_degree"] is not None


def test_g_alternative_sequence():
    rep = verify_family("G", {"p": 1, "j": "j"}, 12, parse_field("Q[j]/(j^2+1)"))
    assert rep.passed
    assert rep.stage("alternative").passed
