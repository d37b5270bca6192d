"""The sixteen families A..P of two-generated Z^2-graded algebras with five
dimensional resolutions, their twists and switches, and checks of declared
normal elements.

Relations and normal elements are written as term tables
``{rendered word: coefficient}`` built from the parameters, so every scalar is
evaluated exactly in the presentation's field.

>>> P = instantiate_family("A", {"p": 2})
>>> P.relations[2].render()
'x2^4*x1 - 16*x1*x2^4'
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Sequence

from .dsl import Presentation, parse_field, parse_scalar
from .field import QQ, ExtensionField
from .groebner import complete_to_degree, unresolved_compositions
from .monomial import (
    exact_alternating_polynomial,
    hilbert_series_monomial,
    invariants_estimate,
    lyndon_series,
)
from .poly import NcPolynomial
from .search import ResolutionShape
from .series import TruncatedSeries
from .words import Alphabet, deglex_key, is_lyndon, normal_words

__all__ = [
    "ConstraintError",
    "DiagonalAutomorphism",
    "FAMILIES",
    "Family",
    "IncompleteBasisError",
    "NormalCertificate",
    "NotStableError",
    "TYPE_LEADING_WORDS",
    "build_element",
    "check_normal_element",
    "check_normal_sequence",
    "check_regular_quotient",
    "family_presentation_words",
    "instantiate_family",
    "load_fixtures",
    "no_normal_element_up_to",
    "doubled_g_sequence",
    "switch_presentation",
    "twist_presentation",
    "verify_family",
]

X2 = Alphabet(("x1", "x2"), ((1, 0), (0, 1)))


class ConstraintError(ValueError):
    """Parameter bindings violate a family constraint."""


class NotStableError(ValueError):
    """The automorphism does not preserve the ideal."""


class IncompleteBasisError(ValueError):
    """The cap is too small for the degrees a check needs."""


# leading words of the reduced Groebner basis, per resolution type
TYPE_LEADING_WORDS = {
    "355": ["x2*x1^2", "x2^2*x1*x2*x1", "x2^4*x1", "x2^3*x1*x2^2*x1"],
    "347": ["x2*x1^2", "x2^3*x1", "x2^2*x1*x2*x1*x2*x1", "x2^2*x1*x2^2*x1*x2*x1"],
    "44455": ["x2*x1^3", "x2^2*x1^2", "x2^3*x1", "x2*x1*x2*x1^2", "x2^2*x1*x2*x1"],
    "444": ["x2*x1^3", "x2^2*x1^2", "x2^3*x1", "x2*x1*x2*x1^2", "x2^2*x1*x2*x1"],
}


def _nz(name):
    return (f"{name} != 0", lambda v: v[name] != 0)


def _root(poly: Callable, text: str):
    return (text, lambda v: poly(v) == 0)


@dataclass
class Family:
    """One family.  ``relations`` and the element builders take a dict of
    field elements.  ``sequence`` is a normal sequence whose final quotient
    is finite dimensional; ``alternative`` is another one, valid when the
    ``alternative_when`` predicate holds."""

    name: str
    type_id: str
    params: tuple
    constraints: list
    relations: Callable
    field: object = None  # default modulus (coefficient list) for j
    symbol: str = "j"
    normal: Callable = None
    sequence: Callable = None
    alternative: Callable = None
    alternative_when: tuple = None
    aux_field: tuple = None  # (symbol, modulus) the certificates need
    twist_base: dict = None  # parameter values of the base member

    def default_field(self):
        return ExtensionField(self.field, self.symbol) if self.field else QQ


def _s(j):
    return j**2 + j**3


def _A(v, sign):
    p = v["p"]
    return [
        {"x2*x1^2": 1, "x1^2*x2": -p**2},
        {"x2^2*x1*x2*x1": 1, "x2*x1*x2^2*x1": p, "x1*x2^2*x1*x2": -p**3, "x1*x2*x1*x2^2": -p**4},
        {"x2^4*x1": 1, "x1*x2^4": sign * p**4},
    ]


def _z_sym4(p):
    return {"x2^3*x1": 1, "x2^2*x1*x2": p, "x2*x1*x2^2": p**2, "x1*x2^3": p**3}


def _C(v):
    p, j = v["p"], v["j"]
    return [
        {"x2*x1^2": 1, "x1*x2*x1": p, "x1^2*x2": p**2},
        {"x2^2*x1*x2*x1": 1, "x2*x1*x2*x1*x2": -p**2, "x1*x2^3*x1": p**2 * (1 + j),
         "x1*x2*x1*x2^2": p**4, "x1^2*x2^3": p**5 * (1 - j)},
        {"x2^4*x1": 1, "x2^3*x1*x2": -p * j, "x2*x1*x2^3": -p**3 * j, "x1*x2^4": -p**4 * (1 + j)},
    ]


def _D(v):
    p = v["p"]
    return [
        {"x2*x1^2": 1, "x1*x2*x1": -2 * p, "x1^2*x2": p**2},
        {"x2^2*x1*x2*x1": 1, "x2*x1*x2^2*x1": -3 * p, "x2*x1*x2*x1*x2": 2 * p**2,
         "x1*x2^3*x1": 2 * p**2, "x1*x2^2*x1*x2": -3 * p**3, "x1*x2*x1*x2^2": p**4},
        {"x2^4*x1": 1, "x2^3*x1*x2": -4 * p, "x2^2*x1*x2^2": 6 * p**2, "x2*x1*x2^3": -4 * p**3,
         "x1*x2^4": p**4},
    ]


def _E(v):
    p, j = v["p"], v["j"]
    s = _s(j)
    return [
        {"x2*x1^2": 1, "x1*x2*x1": p, "x1^2*x2": p**2 * s**2},
        {"x2^2*x1*x2*x1": 1, "x2*x1*x2^2*x1": p * s**2, "x2*x1*x2*x1*x2": -p**2 * s,
         "x1*x2^3*x1": p**2 * (2 + 2 * j - j**3), "x1*x2^2*x1*x2": p**3 * (3 + 5 * j + 3 * j**2),
         "x1*x2*x1*x2^2": p**4 * (4 + 8 * j + 7 * j**2 + 2 * j**3),
         "x1^2*x2^3": p**5 * (2 + 8 * j + 10 * j**2 + 5 * j**3)},
        {"x2^4*x1": 1, "x2^3*x1*x2": p * (1 + j), "x2^2*x1*x2^2": p**2 * (1 + j)**2,
         "x2*x1*x2^3": p**3 * (1 + j)**3, "x1*x2^4": p**4 * (3 * j + 5 * j**2 + 3 * j**3)},
    ]


def _F(v):
    p, q = v["p"], v["q"]
    return [
        {"x2*x1^2": 1, "x1^2*x2": -p**2},
        {"x2^3*x1": 1, "x1*x2^3": -p**3},
        {"x2^2*x1*x2*x1*x2*x1": 1, "x2*x1*x2^2*x1*x2*x1": p, "x2*x1*x2*x1*x2^2*x1": p**2,
         "x1*x2^2*x1*x2*x1*x2": -p**4, "x1*x2*x1*x2^2*x1*x2": -p**5,
         "x1*x2*x1*x2*x1*x2^2": -p**6, "x1^2*x2*x1*x2^3": -p**8 * q, "x1^3*x2^4": p**9 * q},
    ]


def _G(v):
    p, j = v["p"], v["j"]
    return [
        {"x2*x1^3": 1, "x1*x2*x1^2": p, "x1^2*x2*x1": p**2, "x1^3*x2": p**3},
        {"x2^2*x1^2": 1, "x2*x1*x2*x1": p, "x2*x1^2*x2": p**2, "x1*x2^2*x1": p**2,
         "x1*x2*x1*x2": p**3, "x1^2*x2^2": p**4},
        _z_sym4(p),
        {"x2*x1*x2*x1^2": 1, "x2*x1^2*x2*x1": p, "x1*x2*x1*x2*x1": p**2 * j,
         "x1*x2*x1^2*x2": p**3 * (j - 1), "x1^2*x2^2*x1": p**3 * (j - j**2),
         "x1^2*x2*x1*x2": p**4 * (j - 1), "x1^3*x2^2": p**5 * (-1 + j - j**3)},
        {"x2^2*x1*x2*x1": 1, "x2*x1*x2^2*x1": p, "x2*x1*x2*x1*x2": p**2 * j,
         "x2*x1^2*x2^2": p**3 * (j - j**2), "x1*x2^2*x1*x2": p**3 * (j - 1),
         "x1*x2*x1*x2^2": p**4 * (j - 1), "x1^2*x2^3": p**5 * (-1 + j - j**3)},
    ]


def _H(v):
    p, q = v["p"], v["q"]
    return [
        {"x2*x1^3": 1, "x1^3*x2": -p**3 * q**3},
        {"x2^2*x1^2": 1, "x2*x1*x2*x1": p, "x1*x2*x1*x2": -p**3 * q**2, "x1^2*x2^2": -p**4 * q**4},
        {"x2^3*x1": 1, "x1*x2^3": -p**3 * q**3},
    ]


def _I(v):
    p, q = v["p"], v["q"]
    return [
        {"x2*x1^3": 1, "x1*x2*x1^2": p * (q + 1), "x1^2*x2*x1": p**2 * (q**2 + q), "x1^3*x2": p**3 * q**3},
        {"x2^2*x1^2": 1, "x2*x1*x2*x1": p, "x1*x2*x1*x2": -p**3 * q**2, "x1^2*x2^2": -p**4 * q**4},
        {"x2^3*x1": 1, "x2^2*x1*x2": p * (q + 1), "x2*x1*x2^2": p**2 * (q**2 + q), "x1*x2^3": p**3 * q**3},
    ]


def _J(v):
    p, j = v["p"], v["j"]
    return [
        {"x2*x1^3": 1, "x1*x2*x1^2": -p * j, "x1^2*x2*x1": -p**2 * j * (j**2 + j + 1),
         "x1^3*x2": p**3 * (j**3 - 2 * j - 2)},
        {"x2^2*x1^2": 1, "x2*x1*x2*x1": p, "x2*x1^2*x2": -p**2 * j * (j**2 + 2 * j + 2),
         "x1*x2*x1*x2": -p**3 * (j + 1)**2, "x1^2*x2^2": -p**4 * (3 * j**2 + 5 * j + 3)},
        {"x2^3*x1": 1, "x2^2*x1*x2": p * (1 - j**2 - j**3), "x2*x1*x2^2": p**2 * (1 - 2 * j**2 - 2 * j**3),
         "x1*x2^3": p**3 * (1 - 2 * j**2 - 2 * j**3)},
    ]


def _K(v):
    p, q = v["p"], v["q"]
    return [
        {"x2*x1^3": 1, "x1*x2*x1^2": p * q, "x1^2*x2*x1": p**2 * q**2, "x1^3*x2": p**3 * q**3},
        {"x2^2*x1^2": 1, "x2*x1*x2*x1": p, "x2*x1^2*x2": p**2 * q, "x1*x2^2*x1": p**2 * q,
         "x1*x2*x1*x2": p**3 * q**2, "x1^2*x2^2": p**4 * q**4},
        {"x2^3*x1": 1, "x2^2*x1*x2": p * q, "x2*x1*x2^2": p**2 * q**2, "x1*x2^3": p**3 * q**3},
    ]


def _L(v):
    p, q, r = v["p"], v["q"], v["r"]
    return [
        {"x2*x1^3": 1, "x1*x2*x1^2": p * (r + 1), "x1^2*x2*x1": p**2 * q * (r + 1), "x1^3*x2": p**3 * q**3},
        {"x2^2*x1^2": 1, "x2*x1*x2*x1": p, "x2*x1^2*x2": p**2 * (q - r) * (r + 1),
         "x1*x2^2*x1": p**2 * (q - r) * (r + 1), "x1*x2*x1*x2": p**3 * (q + r) * (q - r**2 - r),
         "x1^2*x2^2": p**4 * q**2 * (q - r**2 - r)},
        {"x2^3*x1": 1, "x2^2*x1*x2": p * (r + 1), "x2*x1*x2^2": p**2 * q * (r + 1), "x1*x2^3": p**3 * q**3},
    ]


def _MN(v, sign):
    p = v["p"]
    return [
        {"x2*x1^3": 1, "x1*x2*x1^2": p, "x1^2*x2*x1": p**2, "x1^3*x2": p**3},
        {"x2^2*x1^2": 1, "x1^2*x2^2": sign * p**4},
        _z_sym4(p),
    ]


def _O(v):
    p, j = v["p"], v["j"]
    return [
        {"x2*x1^3": 1, "x1*x2*x1^2": p * j, "x1^2*x2*x1": -p**2 * j, "x1^3*x2": p**3},
        {"x2^2*x1^2": 1, "x2*x1^2*x2": p**2 * (1 - j), "x1^2*x2^2": -p**4 * j},
        _z_sym4(p),
    ]


def _P(v):
    p, j = v["p"], v["j"]
    return [
        {"x2*x1^3": 1, "x1*x2*x1^2": p, "x1^2*x2*x1": p**2 * j, "x1^3*x2": -p**3 * (j + 2)},
        {"x2^2*x1^2": 1, "x2*x1^2*x2": p**2 * (j - 1), "x1*x2^2*x1": p**2 * (j - 1),
         "x1*x2*x1*x2": -p**3 * (j + 1), "x1^2*x2^2": -p**4 * (j - 2)},
        {"x2^3*x1": 1, "x2^2*x1*x2": p, "x2*x1*x2^2": p**2 * j, "x1*x2^3": -p**3 * (j + 2)},
    ]


def _g_z3(v, doubled: bool = False):
    """Degree (2,2) member of the G sequence.  The coefficient of x1^2 x2^2
    is ``p^3 (1 - j^2)``; the doubled form ``2 p^3 (1 - j^2)`` agrees with it
    only when ``j^2 = 1`` and is not normal when ``j^2 = -1``."""
    c = (2 if doubled else 1) * v["p"] ** 3 * (1 - v["j"] ** 2)
    return ("sum", ("pow", {"x2*x1": 1, "x1*x2": v["p"]}, 2), {"x1^2*x2^2": c})


def doubled_g_sequence(v: dict) -> list:
    """The G sequence with the degree (2,2) coefficient doubled."""
    seq = FAMILIES["G"].sequence(v)
    seq[2] = _g_z3(v, doubled=True)
    return seq


FAMILIES = {
    "A": Family("A", "355", ("p",), [_nz("p")], lambda v: _A(v, -1),
                normal=lambda v: [_z_sym4(v["p"])], twist_base={"p": 1}),
    "B": Family("B", "355", ("p",), [_nz("p")], lambda v: _A(v, 1),
                sequence=lambda v: [
                    {"x1^2": 1}, {"x2^4": 1},
                    ("pow", {"x2*x1": 1, "x1*x2": v["p"]}, 2),
                    _z_sym4(v["p"]),
                    {"x2^2*x1": 1, "x1*x2^2": v["p"] ** 2},
                ], twist_base={"p": 1}),
    "C": Family("C", "355", ("p", "j"), [_nz("p"), _root(lambda v: v["j"] ** 2 + v["j"] + 1, "j^2 + j + 1 = 0")],
                _C, field=[1, 1, 1],
                normal=lambda v: [{"x2^3*x1": 1, "x1*x2^3": -v["p"] ** 3 * v["j"]}], twist_base={"p": 1}),
    "D": Family("D", "355", ("p",), [_nz("p")], _D,
                normal=lambda v: [{"x2^3*x1": 1, "x2^2*x1*x2": -3 * v["p"], "x2*x1*x2^2": 3 * v["p"] ** 2,
                                   "x1*x2^3": -v["p"] ** 3}], twist_base={"p": 1}),
    "E": Family("E", "355", ("p", "j"),
                [_nz("p"), _root(lambda v: v["j"] ** 4 + v["j"] ** 3 + v["j"] ** 2 + v["j"] + 1,
                                 "j^4 + j^3 + j^2 + j + 1 = 0")],
                _E, field=[1, 1, 1, 1, 1],
                normal=lambda v: [{"x2^3*x1": 1, "x2^2*x1*x2": v["p"] * _s(v["j"]) ** 2,
                                   "x2*x1*x2^2": -v["p"] ** 2 * _s(v["j"]) ** 3,
                                   "x1*x2^3": -v["p"] ** 3 * _s(v["j"]) ** 3}], twist_base={"p": 1}),
    "F": Family("F", "347", ("p", "q"), [_nz("p")], _F,
                sequence=lambda v: [
                    {"x1^2": 1}, {"x2^3": 1},
                    ("pow", {"x2*x1": 1, "x1*x2": v["p"]}, 3),
                    ("pow", {"x2^2*x1": 1, "x2*x1*x2": v["p"], "x1*x2^2": v["p"] ** 2}, 2),
                    {"x2^2*x1*x2*x1": 1, "x2*x1*x2^2*x1": v["p"] * v["theta"],
                     "x1*x2^2*x1*x2": v["p"] ** 3, "x1*x2*x1*x2^2": v["p"] ** 4 * v["theta"]},
                ], aux_field=("theta", [1, -1, 1]), twist_base={"p": 1}),
    "G": Family("G", "44455", ("p", "j"), [_nz("p"), _root(lambda v: v["j"] ** 4 - 1, "j^4 = 1")], _G,
                sequence=lambda v: [
                    {"x1^4": 1}, {"x2^4": 1},
                    _g_z3(v),
                    {"x2*x1^2*x2*x1^2": 1, "x1^2*x2*x1^2*x2": v["p"] ** 4},
                    {"x2^2*x1*x2^2*x1": 1, "x1*x2^2*x1*x2^2": v["p"] ** 4},
                ],
                alternative=lambda v: [
                    {"x1^4": 1}, {"x2^4": 1},
                    _g_z3(v),
                    {"x2*x1^2": 1, "x1^2*x2": v["p"] ** 2},
                    {"x2^2*x1": 1, "x1*x2^2": v["p"] ** 2},
                ],
                alternative_when=("j^2 = -1", lambda v: v["j"] ** 2 == -1),
                twist_base={"p": 1}),
    "H": Family("H", "444", ("p", "q"), [_nz("p"), _nz("q")], _H, twist_base={"p": 1}),
    "I": Family("I", "444", ("p", "q"), [_nz("p"), _nz("q")], _I,
                normal=lambda v: [{"x2*x1^2": 1, "x1*x2*x1": v["p"], "x1^2*x2": v["p"] ** 2 * v["q"] ** 2}],
                twist_base={"p": 1}),
    "J": Family("J", "444", ("p", "j"),
                [_nz("p"), _root(lambda v: v["j"] ** 4 + v["j"] ** 3 + v["j"] ** 2 + v["j"] + 1,
                                 "j^4 + j^3 + j^2 + j + 1 = 0")],
                _J, field=[1, 1, 1, 1, 1],
                normal=lambda v: [{"x2*x1^2": 1, "x1*x2*x1": v["p"], "x1^2*x2": v["p"] ** 2 * _s(v["j"]) ** 2}],
                twist_base={"p": 1}),
    "K": Family("K", "444", ("p", "q"), [_nz("p"), _nz("q"), ("q != 1", lambda v: v["q"] != 1)], _K,
                twist_base={"p": 1}),
    "L": Family("L", "444", ("p", "q", "r"),
                [_nz("p"), _nz("q"), _nz("r"),
                 _root(lambda v: v["q"] ** 3 - (v["r"] + 2) * v["q"] ** 2 + (2 * v["r"] ** 2 + 2 * v["r"] + 1) * v["q"]
                       - v["r"] ** 2 - v["r"], "q^3 - (r+2) q^2 + (2r^2+2r+1) q - r^2 - r = 0")],
                _L, twist_base={"p": 1}),
    "M": Family("M", "444", ("p",), [_nz("p")], lambda v: _MN(v, -1),
                normal=lambda v: [{"x2*x1^2": 1, "x1^2*x2": v["p"] ** 2}], twist_base={"p": 1}),
    "N": Family("N", "444", ("p",), [_nz("p")], lambda v: _MN(v, 1), twist_base={"p": 1}),
    "O": Family("O", "444", ("p", "j"), [_nz("p"), _root(lambda v: v["j"] ** 2 + 1, "j^2 + 1 = 0")], _O,
                field=[1, 0, 1],
                normal=lambda v: [{"x2*x1^2": 1, "x1^2*x2": -v["p"] ** 2 * v["j"]}], twist_base={"p": 1}),
    "P": Family("P", "444", ("p", "j"), [_nz("p"), _root(lambda v: v["j"] ** 2 - v["j"] + 2, "j^2 - j + 2 = 0")],
                _P, field=[2, -1, 1], twist_base={"p": 1}),
}

_SCRIPT = dict(zip("𝒜ℬ𝒞𝒟ℰℱ𝒢ℋℐ𝒥𝒦ℒℳ𝒩𝒪𝒫", "ABCDEFGHIJKLMNOP"))
_SCRIPT["𝒠"] = "E"


def _family(name: str) -> Family:
    key = _SCRIPT.get(name, name).upper()
    if key not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; expected one of {''.join(FAMILIES)}")
    return FAMILIES[key]


def build_element(spec, alphabet: Alphabet, fld) -> NcPolynomial:
    """A term table, or ``("pow", table, n)``, or ``("sum", a, b)``."""
    if isinstance(spec, tuple):
        if spec[0] == "pow":
            return build_element(spec[1], alphabet, fld) ** spec[2]
        if spec[0] == "sum":
            return build_element(spec[1], alphabet, fld) + build_element(spec[2], alphabet, fld)
        raise ValueError(f"bad element spec {spec[0]!r}")
    return NcPolynomial.parse_terms(spec, alphabet, fld)


def _bind(fam: Family, params: dict, fld):
    missing = [k for k in fam.params if k not in params and not (k == "j" and fam.field)]
    if missing:
        raise ConstraintError(f"family {fam.name} needs parameters {missing}")
    extra = set(params) - set(fam.params)
    if extra:
        raise ConstraintError(f"family {fam.name} has no parameters {sorted(extra)}")
    v = {}
    for k in fam.params:
        if k in params:
            x = params[k]
            v[k] = parse_scalar(x, fld) if isinstance(x, str) else fld(x)
        else:
            v[k] = fld.gen
    return v


def instantiate_family(name: str, params: dict, field=None) -> Presentation:
    """Relations of a family member.  Parameter values are scalars or scalar
    expressions (strings) in ``field``; families whose ``j`` is a fixed
    algebraic number default to ``Q[j]/(its minimal polynomial)`` with ``j``
    the generator."""
    fam = _family(name)
    fld = field if field is not None else fam.default_field()
    v = _bind(fam, params, fld)
    for text, ok in fam.constraints:
        if not ok(v):
            raise ConstraintError(f"{fam.name}: constraint violated: {text}")
    rels = [NcPolynomial.parse_terms(t, X2, fld) for t in fam.relations(v)]
    return Presentation(X2, fld, rels, name=fam.name, params=v, constraints=[c[0] for c in fam.constraints])


def family_presentation_words(name: str) -> list:
    """Expected reduced-basis leading words of a family, as words."""
    return sorted((X2.parse(w) for w in TYPE_LEADING_WORDS[_family(name).type_id]), key=lambda w: deglex_key(w, X2))


def with_field(P: Presentation, fld) -> Presentation:
    """The same presentation read over a larger field."""
    return Presentation(P.alphabet, fld, [r.with_field(fld) for r in P.relations], P.name,
                        {k: fld(x) for k, x in P.params.items()}, list(P.constraints))


# -- twisting and switching ---------------------------------------------------


@dataclass(frozen=True)
class DiagonalAutomorphism:
    """``x_i -> multipliers[i] * x_i``.  When the letters have pairwise
    distinct degrees every graded automorphism of the free algebra has this
    form."""

    multipliers: tuple

    def __post_init__(self):
        if any(m == 0 for m in self.multipliers):
            raise ValueError("multipliers must be nonzero")

    def apply(self, f: NcPolynomial) -> NcPolynomial:
        """``tau(f)``."""
        X = f.alphabet
        out = {}
        for w, c in f.terms.items():
            s = f.field(1)
            for ch in w:
                s = s * f.field(self.multipliers[X.index(ch)])
            out[w] = c * s
        return NcPolynomial(out, X, f.field)

    def phi_inverse(self, f: NcPolynomial) -> NcPolynomial:
        """Image under the letter-fixing map into the free algebra twisted by
        the inverse: a word ``y_1 ... y_n`` goes to
        ``y_1 tau^{-e_1}(y_2) ... tau^{-e_{n-1}}(y_n)`` where ``e_k`` is the
        total degree of ``y_1 ... y_k``."""
        X = f.alphabet
        out = {}
        for w, c in f.terms.items():
            s, e = f.field(1), 0
            for ch in w:
                m = f.field(self.multipliers[X.index(ch)])
                s = s / m**e
                e += sum(X.letter_degree(ch))
            out[w] = c * s
        return NcPolynomial(out, X, f.field)


def twist_presentation(P: Presentation, tau: DiagonalAutomorphism, check: bool = True) -> Presentation:
    """Presentation of the twisting algebra of ``P`` by ``tau``.

    The relations are mapped through the letter-fixing map into the free
    algebra twisted by ``tau^{-1}`` and made monic.  Requires that ``tau``
    preserves the ideal, verified by reducing ``tau(f)`` for every relation
    modulo a Groebner basis completed to the top relation degree.
    """
    if len(tau.multipliers) != P.alphabet.size:
        raise ValueError("one multiplier per letter")
    if check and P.relations:
        state = complete_to_degree(P.relations, P.max_degree())
        for f in P.relations:
            if state.remainder(tau.apply(f)):
                raise NotStableError(f"tau does not preserve the ideal: tau({f.render()}) is not in it")
    rels = [tau.phi_inverse(f).monic() for f in P.relations]
    return Presentation(P.alphabet, P.field, rels, P.name, {}, [])


def switch_presentation(P: Presentation) -> Presentation:
    """Exchange the two letters in every relation.  The alphabet, with its
    grading and order, stays the same, so a word of bidegree ``(a, b)`` goes
    to one of bidegree ``(b, a)``."""
    if P.alphabet.size != 2:
        raise ValueError(f"switching needs exactly two letters, got {P.alphabet.size}")
    table = P.alphabet.swap(0, 1)
    rels = [f.map_words(lambda w: w.translate(table)).monic() for f in P.relations]
    return Presentation(P.alphabet, P.field, rels, P.name, {}, [])


# -- normal and regular elements ----------------------------------------------


def _solve(columns: list, target: dict, fld):
    """Coefficients ``c`` with ``sum c_k columns[k] == target`` (sparse dicts
    over words), or None.  Gauss-Jordan elimination over ``fld``."""
    rows = sorted({w for col in columns for w in col} | set(target))
    n = len(columns)
    M = [[col.get(w, fld(0)) for col in columns] + [target.get(w, fld(0))] for w in rows]
    pivots, r = [], 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][n] != 0 for i in range(r, len(M))):
        return None
    sol = [fld(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = M[i][n]
    return sol


@dataclass
class NormalCertificate:
    """``left[x] = h`` with ``z x = h z`` and ``right[x] = h'`` with
    ``x z = z h'`` in the algebra, for every letter ``x``."""

    normal: bool
    left: dict = field(default_factory=dict)
    right: dict = field(default_factory=dict)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.normal

    def to_json(self) -> dict:
        return {
            "normal": self.normal,
            "left": {k: v.render() for k, v in self.left.items()},
            "right": {k: v.render() for k, v in self.right.items()},
            "reason": self.reason,
        }


def _state(P: Presentation, bound: int):
    if not P.relations:
        return None
    return complete_to_degree(P.relations, bound, track_minimal=False)


def _nf(state, f: NcPolynomial) -> NcPolynomial:
    return state.remainder(f) if state is not None else f


def check_normal_element(z: NcPolynomial, P: Presentation, cap: int = 12, state=None) -> NormalCertificate:
    """Decide whether ``z`` is normal in ``k<X>/(P)``.

    For every letter ``x`` solve ``z x = h z`` and ``x z = z h'`` for ``h, h'``
    in the span of the normal words of degree ``deg x``.  Since the letters
    generate, ``zA = Az`` follows by induction on degree.  Needs a basis
    complete through total degree ``deg z + max letter degree``.
    """
    X = P.alphabet
    if not z or not z.is_homogeneous():
        raise ValueError("z must be a nonzero homogeneous polynomial")
    need = z.total_degree() + max(sum(g) for g in X.grading)
    if need > cap:
        raise IncompleteBasisError(f"cap {cap} is below the needed degree {need}")
    state = state or _state(P, need)
    if not _nf(state, z):
        raise ValueError("z is zero in the algebra")
    lw = state.leading_words if state is not None else []
    cert = NormalCertificate(True)
    for i, nm in enumerate(X.names):
        x = NcPolynomial.from_word(X.code(i), X, P.field)
        basis = normal_words(lw, X.grading[i], X)
        hs = [NcPolynomial.from_word(u, X, P.field) for u in basis]
        for side in ("left", "right"):
            if side == "left":
                target = _nf(state, z * x)
                cols = [_nf(state, h * z) for h in hs]
            else:
                target = _nf(state, x * z)
                cols = [_nf(state, z * h) for h in hs]
            sol = _solve([c.terms for c in cols], target.terms, P.field)
            if sol is None:
                return NormalCertificate(False, cert.left, cert.right,
                                         f"no h with {'z*' + nm + ' = h*z' if side == 'left' else nm + '*z = z*h'}")
            h = NcPolynomial(dict(zip(basis, sol)), X, P.field)
            getattr(cert, side)[nm] = h
    return cert


def _quotient(P: Presentation, zs: Sequence[NcPolynomial]) -> Presentation:
    return Presentation(P.alphabet, P.field, list(P.relations) + list(zs), P.name, dict(P.params), list(P.constraints))


def hilbert_of(P: Presentation, cap: int) -> TruncatedSeries:
    """Multigraded Hilbert series of the presented algebra up to ``cap``."""
    state = _state(P, cap)
    lw = state.leading_words if state is not None else []
    return hilbert_series_monomial(lw, cap, P.alphabet)


def check_regular_quotient(z: NcPolynomial, P: Presentation, cap: int = 12) -> bool:
    """``H_{A/(z)}(t) == (1 - t^n) H_A(t)`` up to ``t^cap`` for the collapsed
    series, ``n`` the total degree of ``z``."""
    n = z.total_degree()
    HA = hilbert_of(P, cap).collapse()
    HQ = hilbert_of(_quotient(P, [z]), cap).collapse()
    factor = TruncatedSeries.from_terms({(0,): 1, (n,): -1}, cap, 1)
    return HQ == factor * HA


def _normal_system(P: Presentation, beta: tuple, state):
    """Polynomial system whose solutions are the normal elements of degree
    ``beta``: unknown coefficients ``c`` on the normal words and, for each
    letter, a scalar ``m`` with ``z x = m x z`` (letters of distinct degree
    span one-dimensional components)."""
    import sympy

    X = P.alphabet
    basis = normal_words(state.leading_words, beta, X)
    cs = sympy.symbols(f"c0:{len(basis)}")
    ms = sympy.symbols(f"m0:{X.size}")
    ns = sympy.symbols(f"n0:{X.size}")
    fld = P.field
    jsym = sympy.Symbol("theta_") if fld is not QQ and fld.degree > 1 else None

    def conv(c):
        if jsym is None:
            return sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else sympy.Rational(str(fld(c)))
        coords = fld(c).coords
        return sum(sympy.Rational(a.numerator, a.denominator) * jsym**k for k, a in enumerate(coords))

    eqs = []
    for i in range(X.size):
        x = X.code(i)
        zx = [_nf(state, NcPolynomial.from_word(u + x, X, fld)) for u in basis]
        xz = [_nf(state, NcPolynomial.from_word(x + u, X, fld)) for u in basis]
        words = sorted({w for p in zx + xz for w in p.terms})
        for w in words:
            a = sum(conv(p.terms[w]) * c for p, c in zip(zx, cs) if w in p.terms)
            b = sum(conv(p.terms[w]) * c for p, c in zip(xz, cs) if w in p.terms)
            eqs.append(sympy.expand(a - ms[i] * b))
            eqs.append(sympy.expand(b - ns[i] * a))
    extra = []
    if jsym is not None:
        extra.append(sum(sympy.Rational(a.numerator, a.denominator) * jsym**k for k, a in enumerate(fld.modulus)))
    return basis, cs, list(ms) + list(ns), eqs, extra, jsym


def no_normal_element_up_to(P: Presentation, top: int) -> dict:
    """For every bidegree of total degree ``1 .. top``, decide exactly whether
    a nonzero homogeneous normal element exists.

    A normal ``z`` satisfies ``z x = m x z`` and ``x z = n z x`` for scalars
    ``m, n`` and each letter ``x``.  Writing ``z`` on the normal words and
    normalising its first nonzero coordinate to 1 gives finitely many
    polynomial systems; a reduced Groebner basis equal to ``[1]`` proves a
    system has no solution over the algebraic closure.  Returns the bidegrees
    mapped to True when no normal element exists there.
    """
    import sympy

    from .series import monomials

    state = _state(P, top + 1)
    out = {}
    for beta in monomials(P.alphabet.nvars, top):
        if sum(beta) == 0:
            continue
        basis, cs, scal, eqs, extra, jsym = _normal_system(P, tuple(beta), state)
        if not basis:
            out[tuple(beta)] = True
            continue
        empty = True
        for k in range(len(basis)):
            sub = {cs[i]: 0 for i in range(k)}
            sub[cs[k]] = 1
            system = [e.subs(sub) for e in eqs] + extra
            gens = list(cs[k + 1:]) + scal + ([jsym] if jsym is not None else [])
            system = [e for e in system if e != 0]
            if not system:
                empty = False
                break
            G = sympy.groebner(system, *gens, order="grevlex", domain=sympy.QQ)
            if list(G.exprs) != [1]:
                empty = False
                break
        out[tuple(beta)] = empty
    return out


# -- the staged report ---------------------------------------------------------


@dataclass
class Stage:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class FamilyReport:
    family: str
    params: dict
    cap: int
    stages: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    @property
    def first_failure(self):
        return next((s.name for s in self.stages if not s.passed), None)

    def stage(self, name: str) -> Stage:
        return next(s for s in self.stages if s.name == name)

    def to_json(self) -> dict:
        from .field import render_scalar

        return {
            "family": self.family,
            "params": {k: render_scalar(v) for k, v in self.params.items()},
            "cap": self.cap,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "stages": [s.to_json() for s in self.stages],
        }


def finite_quotient_degree(P: Presentation, cap: int, limit: int = 24):
    """Smallest ``D`` with ``A_{D+1} = 0`` for the presented algebra, found by
    raising the bound from ``cap`` up to ``limit``; None if not reached.  The
    letters have total degree one, so one vanishing component forces all
    higher ones to vanish."""
    bound = cap
    while True:
        coeffs = hilbert_of(P, bound).collapse_list()
        zero = next((t for t in range(1, bound + 1) if coeffs[t] == 0), None)
        if zero is not None:
            return zero - 1, bound
        if bound >= limit:
            return None, bound
        bound = min(limit, bound + 3)


def check_normal_sequence(P: Presentation, zs: list, cap: int) -> Stage:
    """Each element must be normal modulo the ones before it; the last
    quotient must be finite dimensional."""
    done, steps = [], []
    for z in zs:
        Q = _quotient(P, done)
        need = z.total_degree() + 1
        cert = check_normal_element(z, Q, max(cap, need))
        steps.append({"element": z.render(), "normal": cert.normal, "reason": cert.reason})
        if not cert:
            return Stage("sequence", False, {"steps": steps})
        done.append(z)
    D, bound = finite_quotient_degree(_quotient(P, done), cap)
    return Stage("sequence", D is not None, {"steps": steps, "top_degree": D, "bound": bound})


def verify_family(name: str, params: dict, cap: int = 12, field=None) -> FamilyReport:
    """Run the checks for one family member and stop at the first failing
    stage.

    Stages: groebner (leading words at ``cap``), compositions, series (against
    the resolution type), chains, lyndon, then the declared normal element,
    normal sequence and alternative sequence where the family has them.
    """
    fam = _family(name)
    fld = field
    if fld is None and fam.aux_field is not None:
        fld = ExtensionField(fam.aux_field[1], fam.aux_field[0])
    P = instantiate_family(name, params, fld)
    report = FamilyReport(fam.name, P.params, cap)
    X = P.alphabet

    def add(stage: Stage) -> bool:
        report.stages.append(stage)
        return stage.passed

    state = complete_to_degree(P.relations, cap)
    lw = state.leading_words
    expected = family_presentation_words(name)
    if not add(Stage("groebner", sorted(lw) == sorted(expected), {
        "leading_words": [X.render(w) for w in lw],
        "expected": [X.render(w) for w in expected],
        "minimal": sum(1 for m in state.minimal if m),
    })):
        return report
    bad = unresolved_compositions(state.basis, cap)
    if not add(Stage("compositions", not bad, {"unresolved": len(bad)})):
        return report
    H = hilbert_series_monomial(lw, cap, X)
    target = ResolutionShape.for_type(fam.type_id).polynomial()
    tseries = TruncatedSeries.from_terms(target, cap, 1).inverse()
    exact = exact_alternating_polynomial(lw, X)
    if not add(Stage("series", H.collapse() == tseries and exact is not None
                     and TruncatedSeries.from_terms(exact, cap, 2).inverse() == H,
                     {"collapsed": H.collapse_list()})):
        return report
    est = invariants_estimate(lw, cap, X)
    if not add(Stage("chains", est.global_dimension == 5 and est.bound_holds(),
                     {"global_dimension": est.global_dimension, "size": len(lw)})):
        return report
    ok_lyndon = all(is_lyndon(w) for w in lw)
    detail = {"lyndon": ok_lyndon}
    if ok_lyndon:
        rep, series = lyndon_series(lw, cap, X)
        detail.update(count=len(rep.words), words=[X.render(w) for w in rep.words])
        ok_lyndon = rep.finite and len(rep.words) == 5 and series == H
    if not add(Stage("lyndon", ok_lyndon, detail)):
        return report
    v = dict(P.params)
    if fam.aux_field is not None:
        v[fam.aux_field[0]] = P.field.gen
    if fam.normal is not None:
        for spec in fam.normal(v):
            z = build_element(spec, X, P.field)
            cert = check_normal_element(z, P, cap, state)
            regular = check_regular_quotient(z, P, cap)
            if not add(Stage("normal", cert.normal and regular, {
                "element": z.render(), "certificate": cert.to_json(), "regular": regular,
            })):
                return report
    if fam.sequence is not None:
        zs = [build_element(s, X, P.field) for s in fam.sequence(v)]
        if not add(check_normal_sequence(P, zs, cap)):
            return report
    if fam.alternative is not None and fam.alternative_when[1](v):
        zs = [build_element(s, X, P.field) for s in fam.alternative(v)]
        st = check_normal_sequence(P, zs, cap)
        st.name = "alternative"
        add(st)
    return report


# -- fixtures ------------------------------------------------------------------


def load_fixtures(path=None) -> dict:
    """Parameter points per family.  Each point has ``params`` (scalar
    expressions), an optional ``field`` and an optional ``twist`` giving the
    multipliers that carry it to the family's base member."""
    if path is None:
        text = resources.files("ncgb").joinpath("data/fixtures.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    raw = json.loads(text)["families"]
    out = {}
    for name, points in raw.items():
        lst = []
        for pt in points:
            fld = parse_field(pt["field"]) if "field" in pt else None
            lst.append({"params": dict(pt["params"]), "field": fld, "twist": pt.get("twist"),
                        "field_text": pt.get("field")})
        out[name] = lst
    return out


def point_field(name: str, point: dict):
    """The field a fixture point is evaluated in."""
    if point["field"] is not None:
        return point["field"]
    return _family(name).default_field()
