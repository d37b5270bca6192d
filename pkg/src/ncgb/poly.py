"""Noncommutative polynomials with exact coefficients, and reduction.

A polynomial is a finite map from words to nonzero scalars.  The leading word
is the deg-lex maximum of the support.

>>> from ncgb.words import Alphabet
>>> X = Alphabet.standard(2)
>>> f = NcPolynomial.parse_terms({"x2*x1^2": 1, "x1^2*x2": -4}, X)
>>> w = NcPolynomial.from_word(X.parse("x2*x1^3"), X)
>>> remainder(w, [f]).render()
'4*x1^2*x2*x1'
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .field import QQ, FieldElement, render_scalar
from .words import Alphabet, deglex_key

__all__ = ["NcPolynomial", "Reducer", "leading", "remainder", "ZeroPolynomialError"]


class ZeroPolynomialError(ValueError):
    """An operation needing a leading term was given the zero polynomial."""


class NcPolynomial:
    __slots__ = ("terms", "alphabet", "field")

    def __init__(self, terms: Mapping[str, object], alphabet: Alphabet, field=QQ, clean: bool = True):
        if clean:
            terms = {w: field(c) for w, c in terms.items() if c != 0}
        self.terms = terms
        self.alphabet = alphabet
        self.field = field

    @classmethod
    def from_word(cls, w: str, alphabet: Alphabet, field=QQ, coeff=1) -> "NcPolynomial":
        return cls({w: coeff}, alphabet, field)

    @classmethod
    def scalar(cls, c, alphabet: Alphabet, field=QQ) -> "NcPolynomial":
        return cls({"": c}, alphabet, field)

    @classmethod
    def zero(cls, alphabet: Alphabet, field=QQ) -> "NcPolynomial":
        return cls({}, alphabet, field, clean=False)

    @classmethod
    def parse_terms(cls, terms: Mapping[str, object], alphabet: Alphabet, field=QQ) -> "NcPolynomial":
        """Build from ``{"x2*x1^2": coeff, ...}`` with words in rendered form."""
        acc: dict = {}
        for text, c in terms.items():
            w = alphabet.parse(text)
            acc[w] = acc.get(w, 0) + c
        return cls(acc, alphabet, field)

    def _new(self, terms: dict) -> "NcPolynomial":
        return NcPolynomial(terms, self.alphabet, self.field, clean=False)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def leading(self) -> tuple:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        a = self.alphabet
        w = max(self.terms, key=lambda u: deglex_key(u, a))
        return w, self.terms[w]

    @property
    def lw(self) -> str:
        return self.leading()[0]

    @property
    def lc(self):
        return self.leading()[1]

    def monic(self) -> "NcPolynomial":
        c = self.lc
        if c == 1:
            return self
        return self._new({w: x / c for w, x in self.terms.items()})

    def degrees(self) -> set:
        return {self.alphabet.degree(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> tuple:
        """Multidegree of a nonzero homogeneous polynomial."""
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("polynomial is zero or not homogeneous")
        return next(iter(ds))

    def total_degree(self) -> int:
        return max(sum(d) for d in self.degrees())

    def sorted_terms(self) -> list:
        """Terms in descending deg-lex order."""
        a = self.alphabet
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0], a), reverse=True)

    def _coerce(self, other) -> "NcPolynomial | None":
        if isinstance(other, NcPolynomial):
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return NcPolynomial({"": other}, self.alphabet, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "NcPolynomial":
        if c == 0:
            return self._new({})
        return self._new({w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(self.field(other))
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                s = out.get(w)
                out[w] = a * b if s is None else s + a * b
        return self._new({w: c for w, c in out.items() if c != 0})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(self.field(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = NcPolynomial.scalar(1, self.alphabet, self.field)
        for _ in range(n):
            out = out * self
        return out

    def wrap(self, left: str = "", right: str = "", coeff=1) -> "NcPolynomial":
        """``coeff * left * self * right`` for words ``left`` and ``right``."""
        if coeff == 1:
            return self._new({left + w + right: c for w, c in self.terms.items()})
        return self._new({left + w + right: c * coeff for w, c in self.terms.items()})

    def map_words(self, fn) -> "NcPolynomial":
        out: dict = {}
        for w, c in self.terms.items():
            v = fn(w)
            out[v] = out.get(v, 0) + c
        return NcPolynomial(out, self.alphabet, self.field)

    def with_field(self, field) -> "NcPolynomial":
        return NcPolynomial(self.terms, self.alphabet, field)

    def __eq__(self, other) -> bool:
        if isinstance(other, NcPolynomial):
            return self.terms == other.terms
        o = self._coerce(other)
        return o is not None and self.terms == o.terms

    __hash__ = None

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for k, (w, c) in enumerate(self.sorted_terms()):
            text = render_scalar(c)
            neg = text.startswith("-") and (" " not in text)
            if neg:
                text = text[1:]
            elif " " in text:
                text = f"({text})"
            mono = self.alphabet.render(w) if w else ""
            if mono and text == "1":
                body = mono
            elif mono:
                body = f"{text}*{mono}"
            else:
                body = text
            if k == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"NcPolynomial({self.render()})"

    __str__ = render


def leading(f: NcPolynomial) -> tuple:
    """``(leading word, leading coefficient)`` of a nonzero polynomial."""
    return f.leading()


class _Desc:
    __slots__ = ("k", "w")

    def __init__(self, k, w):
        self.k = k
        self.w = w

    def __lt__(self, other):
        return self.k > other.k


class Reducer:
    """Reduction modulo a fixed list ``G`` of nonzero polynomials.

    The greatest reducible word is rewritten first, at the leftmost occurrence
    of any leading word of ``G``; when several leading words start there the
    element with the smallest index is used.
    """

    def __init__(self, G: Sequence[NcPolynomial]):
        self.G = list(G)
        self.rules = []
        for g in self.G:
            w, c = g.leading()
            tail = [(u, -x / c) for u, x in g.terms.items() if u != w]
            self.rules.append((w, tail))
        if self.rules:
            self.pattern = re.compile("|".join(re.escape(w) for w, _ in self.rules))
        else:
            self.pattern = None
        self.first = {}
        for i, (w, _) in enumerate(self.rules):
            self.first.setdefault(w, i)

    def find(self, w: str):
        """``(position, index)`` of the rule applied to ``w``, or None."""
        if self.pattern is None:
            return None
        m = self.pattern.search(w)
        if m is None:
            return None
        return m.start(), self.first[m.group(0)]

    def is_normal(self, w: str) -> bool:
        return self.pattern is None or self.pattern.search(w) is None

    def reduce(self, f: NcPolynomial) -> NcPolynomial:
        if self.pattern is None or not f.terms:
            return f
        a = f.alphabet
        work = dict(f.terms)
        heap = [_Desc(deglex_key(w, a), w) for w in work]
        heapq.heapify(heap)
        result = {}
        search = self.pattern.search
        while heap:
            w = heapq.heappop(heap).w
            c = work.pop(w)
            if not c:
                continue
            m = search(w)
            if m is None:
                result[w] = c
                continue
            lw, tail = self.rules[self.first[m.group(0)]]
            u, v = w[: m.start()], w[m.start() + len(lw):]
            for t, x in tail:
                y = u + t + v
                s = work.get(y)
                if s is None:
                    work[y] = c * x
                    heapq.heappush(heap, _Desc(deglex_key(y, a), y))
                else:
                    work[y] = s + c * x
        return NcPolynomial(result, a, f.field, clean=False)


def remainder(f: NcPolynomial, G: Sequence[NcPolynomial]) -> NcPolynomial:
    """Normal form of ``f`` modulo ``G`` under the fixed reduction strategy."""
    return Reducer(G).reduce(f)
