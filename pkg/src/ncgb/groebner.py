"""Truncated Groebner basis completion for homogeneous two-sided ideals.

Completion runs degree by degree.  At total degree ``d`` every composition
whose ambiguity word has total degree ``d`` is reduced modulo the basis built
so far; the nonzero remainders, together with the reduced input generators of
degree ``d``, are brought to reduced row echelon form and adjoined.  Because
all inputs are homogeneous this produces the reduced Groebner basis of the
ideal truncated at the bound.

An element is flagged *minimal* when it does not lie in the ideal generated by
the basis elements before it in deg-lex order of leading words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .field import QQ
from .poly import NcPolynomial, Reducer
from .words import Alphabet, deglex_key

__all__ = [
    "Ambiguity",
    "AmbiguityMismatchError",
    "GroebnerState",
    "complete_to_degree",
    "composition",
    "find_ambiguities",
    "interreduce",
    "unresolved_compositions",
]


class AmbiguityMismatchError(ValueError):
    """The ambiguity does not match the leading words it is used with."""


class Ambiguity(NamedTuple):
    """Words ``(l1, r1, l2, r2)`` with ``l1 u1 r1 == l2 u2 r2``."""

    l1: str
    r1: str
    l2: str
    r2: str

    @property
    def kind(self) -> str:
        return "inclusion" if not self.l1 and not self.r1 else "overlap"


def find_ambiguities(u1: str, u2: str) -> list:
    """All inclusion and overlap ambiguities of the pair ``(u1, u2)``.

    Inclusions have ``l1 = r1 = 1`` and ``u2`` a factor of ``u1`` (the trivial
    self-match of equal words is skipped).  Overlaps have ``l1 = r2 = 1``, a
    nonempty proper prefix ``l2`` of ``u1`` and a nonempty proper suffix ``r1``
    of ``u2``.  Output is ordered by ``|r1|`` then ``|l2|``.
    """
    out = []
    start = u1.find(u2)
    while start != -1:
        if not (u1 == u2 and start == 0):
            out.append(Ambiguity("", "", u1[:start], u1[start + len(u2):]))
        start = u1.find(u2, start + 1)
    out.sort(key=lambda a: len(a.l2))
    n1, n2 = len(u1), len(u2)
    for k in range(min(n1, n2) - 1, 0, -1):
        if u1[n1 - k:] == u2[:k]:
            out.append(Ambiguity("", u2[k:], u1[: n1 - k], ""))
    return out


def ambiguity_word(u1: str, amb: Ambiguity) -> str:
    return amb.l1 + u1 + amb.r1


def composition(f1: NcPolynomial, f2: NcPolynomial, amb: Ambiguity) -> NcPolynomial:
    """``l1 f1 r1 / lc(f1) - l2 f2 r2 / lc(f2)``."""
    w1, c1 = f1.leading()
    w2, c2 = f2.leading()
    if amb.l1 + w1 + amb.r1 != amb.l2 + w2 + amb.r2:
        raise AmbiguityMismatchError(f"{amb} does not fit leading words {w1!r}, {w2!r}")
    return f1.wrap(amb.l1, amb.r1, 1 / c1) - f2.wrap(amb.l2, amb.r2, 1 / c2)


class _Echelon:
    """Reduced row echelon form of polynomials viewed as vectors on words."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.rows: dict = {}

    def reduce(self, p: NcPolynomial) -> NcPolynomial:
        for w in [w for w in p.terms if w in self.rows]:
            c = p.terms.get(w)
            if c:
                p = p - self.rows[w].scale(c)
        return p

    def add(self, p: NcPolynomial):
        """Insert ``p``; returns the new monic row, or None if dependent."""
        p = self.reduce(p)
        if not p:
            return None
        p = p.monic()
        w = p.lw
        for key, row in list(self.rows.items()):
            c = row.terms.get(w)
            if c:
                self.rows[key] = row - p.scale(c)
        self.rows[w] = p
        return p

    def polys(self) -> list:
        return [self.rows[w] for w in sorted(self.rows, key=lambda w: deglex_key(w, self.alphabet))]


@dataclass
class GroebnerState:
    """A reduced Groebner basis truncated at total degree ``bound``.

    ``basis`` is sorted by leading word; ``minimal[i]`` tells whether
    ``basis[i]`` is outside the ideal of the elements before it.
    """

    alphabet: Alphabet
    field: object
    bound: int
    basis: list = field(default_factory=list)
    minimal: list = field(default_factory=list)
    processed: int = 0

    @property
    def leading_words(self) -> list:
        return [g.lw for g in self.basis]

    @property
    def minimal_basis(self) -> list:
        return [g for g, m in zip(self.basis, self.minimal) if m]

    def reducer(self) -> Reducer:
        return Reducer(self.basis)

    def remainder(self, f: NcPolynomial) -> NcPolynomial:
        return Reducer(self.basis).reduce(f)


def _check_homogeneous(gens: Sequence[NcPolynomial]) -> None:
    for g in gens:
        if g and not g.is_homogeneous():
            raise ValueError(f"generator {g.render()} is not homogeneous")


def complete_to_degree(gens: Sequence[NcPolynomial], bound: int, *, track_minimal: bool = True) -> GroebnerState:
    """Reduced Groebner basis of the ideal generated by homogeneous ``gens``,
    correct in every total degree up to ``bound``."""
    gens = [g for g in gens if g]
    if not gens:
        return GroebnerState(None, QQ, bound)
    _check_homogeneous(gens)
    alphabet, fld = gens[0].alphabet, gens[0].field
    state = GroebnerState(alphabet, fld, bound)
    inputs: dict = {}
    for g in gens:
        inputs.setdefault(g.total_degree(), []).append(g)
    pending: dict = {}
    basis: list = []
    minimal: list = []
    for d in range(0, bound + 1):
        comps = pending.pop(d, [])
        ins = inputs.get(d, [])
        if not comps and not ins:
            continue
        red = Reducer(basis)
        echelon = _Echelon(alphabet)
        from_comps: dict = {}
        for i, j, amb in comps:
            r = red.reduce(composition(basis[i], basis[j], amb))
            state.processed += 1
            if r:
                echelon.add(r)
                if track_minimal:
                    from_comps.setdefault(r.degree(), []).append(r)
        for g in ins:
            r = red.reduce(g)
            if r:
                echelon.add(r)
        new = echelon.polys()
        if not new:
            continue
        flags = []
        if track_minimal:
            spans: dict = {}
            for f in new:
                beta = f.degree()
                span = spans.get(beta)
                if span is None:
                    span = spans[beta] = _Echelon(alphabet)
                    for r in from_comps.get(beta, []):
                        span.add(r)
                flags.append(span.add(f) is not None)
        else:
            flags = [None] * len(new)
        start = len(basis)
        basis.extend(new)
        minimal.extend(flags)
        for a in range(start, len(basis)):
            ua = basis[a].lw
            for b in range(len(basis)):
                ub = basis[b].lw
                pairs = [(a, b, ua, ub)] if b >= start else [(a, b, ua, ub), (b, a, ub, ua)]
                for i, j, u1, u2 in pairs:
                    for amb in find_ambiguities(u1, u2):
                        t = alphabet.total(amb.l1 + u1 + amb.r1)
                        if t <= bound:
                            pending.setdefault(t, []).append((i, j, amb))
    order = sorted(range(len(basis)), key=lambda k: deglex_key(basis[k].lw, alphabet))
    state.basis = [basis[k] for k in order]
    state.minimal = [minimal[k] for k in order]
    return state


def unresolved_compositions(basis: Sequence[NcPolynomial], bound: int) -> list:
    """Compositions of total degree at most ``bound`` that do not reduce to 0.

    An independent check that ``basis`` is closed under compositions.
    """
    red = Reducer(basis)
    bad = []
    for i, f in enumerate(basis):
        for j, g in enumerate(basis):
            u1, u2 = f.lw, g.lw
            for amb in find_ambiguities(u1, u2):
                if f.alphabet.total(amb.l1 + u1 + amb.r1) > bound:
                    continue
                r = red.reduce(composition(f, g, amb))
                if r:
                    bad.append((i, j, amb, r))
    return bad


def interreduce(polys: Iterable[NcPolynomial]) -> list:
    """Mutually reduce a finite set: each result is monic and no support word
    of one element contains the leading word of another.  Sorted by leading
    word."""
    current = [p.monic() for p in polys if p]
    changed = True
    while changed:
        changed = False
        for k in range(len(current)):
            others = current[:k] + current[k + 1:]
            r = Reducer(others).reduce(current[k]) if others else current[k]
            if r != current[k]:
                changed = True
                if r:
                    current[k] = r.monic()
                else:
                    current.pop(k)
                break
    if not current:
        return []
    a = current[0].alphabet
    return sorted(current, key=lambda p: deglex_key(p.lw, a))
