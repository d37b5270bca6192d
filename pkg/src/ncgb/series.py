"""Multigraded power series with integer coefficients, truncated at a total
degree cap.

>>> s = TruncatedSeries.from_terms({(0,): 1, (1,): -1}, cap=4)
>>> s.inverse().collapse_list()
[1, 1, 1, 1, 1]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = ["TruncatedSeries", "NotInvertibleError", "monomials"]


class NotInvertibleError(ValueError):
    """The constant term is not 1."""


def _monomials(nvars: int, cap: int):
    """All exponent vectors of total degree at most ``cap``, by total degree."""
    for t in range(cap + 1):
        yield from _of_total(nvars, t)


def _of_total(nvars: int, t: int):
    if nvars == 1:
        yield (t,)
        return
    for a in range(t, -1, -1):
        for rest in _of_total(nvars - 1, t - a):
            yield (a,) + rest


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of ``t^alpha`` for every ``|alpha| <= cap``.

    Only nonzero coefficients are stored; missing entries read as 0.
    """

    nvars: int
    cap: int
    coeffs: Mapping[tuple, int] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, int], cap: int, nvars: int = None) -> "TruncatedSeries":
        if nvars is None:
            nvars = len(next(iter(terms))) if terms else 1
        kept = {tuple(k): int(v) for k, v in terms.items() if v and sum(k) <= cap}
        return cls(nvars, cap, kept)

    @classmethod
    def one(cls, nvars: int, cap: int) -> "TruncatedSeries":
        return cls(nvars, cap, {(0,) * nvars: 1})

    @classmethod
    def geometric(cls, degree: tuple, cap: int) -> "TruncatedSeries":
        """Expansion of ``1 / (1 - t^degree)``."""
        degree = tuple(degree)
        if not any(degree):
            raise ValueError("degree must be nonzero")
        out, k = {}, 0
        while sum(degree) * k <= cap:
            out[tuple(k * x for x in degree)] = 1
            k += 1
        return cls(len(degree), cap, out)

    def __getitem__(self, alpha) -> int:
        return self.coeffs.get(tuple(alpha), 0)

    def _check(self, other: "TruncatedSeries") -> int:
        if self.nvars != other.nvars:
            raise ValueError("series have different numbers of variables")
        return min(self.cap, other.cap)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cap = self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return TruncatedSeries.from_terms(out, cap, self.nvars)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, self.cap, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries.from_terms({k: v * other for k, v in self.coeffs.items()}, self.cap, self.nvars)
        cap = self._check(other)
        out: dict = {}
        for a, x in self.coeffs.items():
            sa = sum(a)
            for b, y in other.coeffs.items():
                if sa + sum(b) <= cap:
                    k = tuple(i + j for i, j in zip(a, b))
                    out[k] = out.get(k, 0) + x * y
        return TruncatedSeries.from_terms(out, cap, self.nvars)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        cap = self._check(other)
        a = {k: v for k, v in self.coeffs.items() if sum(k) <= cap}
        b = {k: v for k, v in other.coeffs.items() if sum(k) <= cap}
        return a == b

    def __hash__(self):
        return hash((self.nvars, self.cap, frozenset(self.coeffs.items())))

    def truncate(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries.from_terms(self.coeffs, min(cap, self.cap), self.nvars)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be 1."""
        zero = (0,) * self.nvars
        if self.coeffs.get(zero, 0) != 1:
            raise NotInvertibleError("constant term must be 1")
        rest = [(k, v) for k, v in self.coeffs.items() if k != zero]
        out: dict = {zero: 1}
        for alpha in _monomials(self.nvars, self.cap):
            if alpha == zero:
                continue
            acc = 0
            for k, v in rest:
                beta = tuple(a - b for a, b in zip(alpha, k))
                if min(beta) >= 0:
                    acc -= v * out.get(beta, 0)
            if acc:
                out[alpha] = acc
        return TruncatedSeries(self.nvars, self.cap, out)

    def collapse(self) -> "TruncatedSeries":
        """Substitute a single variable ``t`` for every ``t_i``."""
        out: dict = {}
        for k, v in self.coeffs.items():
            out[(sum(k),)] = out.get((sum(k),), 0) + v
        return TruncatedSeries.from_terms(out, self.cap, 1)

    def collapse_list(self) -> list:
        c = self.collapse()
        return [c[(t,)] for t in range(self.cap + 1)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> list:
        """Nonzero terms sorted by total degree, then deg-lex."""
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0][::-1]))

    def lowest_terms(self) -> list:
        """Nonzero terms of the smallest total degree present."""
        ts = self.terms()
        if not ts:
            return []
        t0 = sum(ts[0][0])
        return [kv for kv in ts if sum(kv[0]) == t0]

    def minimal_terms(self) -> list:
        """Nonzero terms whose exponent is minimal in the componentwise order
        among all nonzero exponents."""
        keys = list(self.coeffs)
        out = []
        for k in keys:
            if not any(o != k and all(a <= b for a, b in zip(o, k)) for o in keys):
                out.append((k, self.coeffs[k]))
        return sorted(out, key=lambda kv: (sum(kv[0]), kv[0][::-1]))

    def table(self) -> list:
        """Dense ``[[alpha, coefficient], ...]`` over every monomial within the cap."""
        return [[list(a), self[a]] for a in _monomials(self.nvars, self.cap)]

    def render(self, names: Iterable[str] = None) -> str:
        names = list(names) if names else (["t"] if self.nvars == 1 else [f"t{i + 1}" for i in range(self.nvars)])
        if not self.coeffs:
            return "0"
        out = ""
        for n, (k, v) in enumerate(self.terms()):
            mono = "*".join(
                nm if e == 1 else f"{nm}^{e}" for nm, e in zip(names, k) if e
            )
            mag = abs(v)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            if n == 0:
                out = ("-" if v < 0 else "") + body
            else:
                out += (" - " if v < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.render()} + O(deg {self.cap + 1}))"


def monomials(nvars: int, cap: int):
    return list(_monomials(nvars, cap))

