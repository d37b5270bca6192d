from fractions import Fraction

import pytest

from ncgb.catalog import instantiate_family, load_fixtures, point_field
from ncgb.dsl import (
    DslError,
    emit_presentation,
    parse_expression,
    parse_field,
    parse_presentation,
    parse_scalar,
)
from ncgb.words import Alphabet

A_DOC = """\
# family A at p = 2
field Q
letters x1:(1,0), x2:(0,1)
order deglex x2>x1
param p = 2
relations:
x2*x1^2 - p^2*x1^2*x2
x2^2*x1*x2*x1 + p*x2*x1*x2^2*x1 - p^3*x1*x2^2*x1*x2 - p^4*x1*x2*x1*x2^2
x2^4*x1 - p^4*x1*x2^4
"""


def test_family_document_matches_catalog():
    assert parse_presentation(A_DOC) == instantiate_family("A", {"p": 2})


def test_non_homogeneous_relation():
    doc = "field Q\nletters x1:(1,0), x2:(0,1)\nrelations:\nx2*x1 - x1\n"
    with pytest.raises(DslError, match="not homogeneous") as e:
        parse_presentation(doc)
    assert "(1, 1)" in str(e.value) and "(1, 0)" in str(e.value)
    assert e.value.line == 4


def test_empty_relations_is_free_algebra():
    P = parse_presentation("field Q\nletters x1:(1,0), x2:(0,1)\nrelations:\n")
    assert P.relations == []
    assert P.alphabet == Alphabet.standard(2)


def test_unknown_identifier_position():
    doc = "field Q\nletters x1:(1,0), x2:(0,1)\nrelations:\nx2*x1 - q*x1*x2\n"
    with pytest.raises(DslError, match="unknown identifier 'q'") as e:
        parse_presentation(doc)
    assert (e.value.line, e.value.col) == (4, 9)


def test_syntax_errors():
    base = "field Q\nletters x1:(1,0), x2:(0,1)\nrelations:\n"
    for bad in ("x2*(x1", "x2 x1", "x2^x1", "x1/x2", "x2*x1 +"):
        with pytest.raises(DslError):
            parse_presentation(base + bad + "\n")
    with pytest.raises(DslError, match="unknown directive"):
        parse_presentation("fields Q\n")
    with pytest.raises(DslError, match="letters"):
        parse_presentation("field Q\nrelations:\n")


def test_extension_field_scalars():
    K = parse_field("Q[j]/(j^2+j+1)")
    assert K.header() == "Q[j]/(j^2 + j + 1)"
    assert parse_scalar("j^3", K) == 1
    assert parse_scalar("(1+j)/2", K) == K([Fraction(1, 2), Fraction(1, 2)])
    assert parse_field("Q") is parse_field(" Q ")
    with pytest.raises(DslError):
        parse_field("R")


def test_order_override():
    doc = "field Q\nletters x1:(1,0), x2:(0,1)\norder deglex x1>x2\nrelations:\nx1*x2 - 3*x2*x1\n"
    P = parse_presentation(doc)
    assert P.relations[0].lw == P.alphabet.parse("x1*x2")


def test_expression_precedence():
    X = Alphabet.standard(2)
    e = parse_expression("-(x1 + x2)^2 + 2*x1*x2/4", X)
    assert e.render() == "-x2^2 - x2*x1 - 1/2*x1*x2 - x1^2"


def test_round_trip_on_fixture_documents():
    for name, points in load_fixtures().items():
        for pt in points:
            P = instantiate_family(name, pt["params"], pt["field"])
            text = emit_presentation(P)
            Q = parse_presentation(text)
            assert Q == P, name
            assert emit_presentation(Q) == text
            assert Q.field == point_field(name, pt)
