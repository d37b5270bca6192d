"""Exact scalars: the rationals and simple algebraic extensions Q[j]/(m).

Rational scalars are plain :class:`fractions.Fraction` objects. Elements of an
extension are :class:`FieldElement` instances holding ``d`` rational
coordinates with respect to the power basis ``1, j, ..., j^(d-1)``.

>>> K = ExtensionField([1, 1, 1], "j")      # j^2 + j + 1 = 0
>>> j = K.gen
>>> j**3 == 1
True
>>> (1 + j).inverse() == -j
True
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "QQ",
    "RationalField",
    "ExtensionField",
    "FieldElement",
    "ReducibleModulusError",
    "ext_normalize",
    "ext_invert",
    "render_scalar",
]

Scalar = Union[int, Fraction, "FieldElement"]


class ReducibleModulusError(ValueError):
    """The proposed minimal polynomial factors over Q."""


class RationalField:
    """The base field Q. Its elements are ``Fraction`` objects."""

    degree = 1
    symbol = None
    modulus = None

    def __call__(self, x) -> Fraction:
        if isinstance(x, FieldElement):
            if any(x.coords[1:]):
                raise ValueError(f"{x} is not rational")
            return x.coords[0]
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def header(self) -> str:
        return "Q"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()


def _poly_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lb
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        a.pop()
    return _poly_trim(q), a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                out[i + k] += x * y
    return out


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


class ExtensionField:
    """Q[symbol]/(modulus) for an irreducible modulus.

    ``modulus`` is the full coefficient list, lowest degree first, so
    ``[1, 1, 1]`` means ``j^2 + j + 1``. It is made monic on construction.
    """

    def __init__(self, modulus: Sequence, symbol: str = "j", check: bool = True):
        coeffs = _poly_trim([Fraction(c) for c in modulus])
        if len(coeffs) < 2:
            raise ValueError("modulus must have degree at least 1")
        lead = coeffs[-1]
        self.modulus = tuple(c / lead for c in coeffs)
        self.degree = len(self.modulus) - 1
        self.symbol = symbol
        if check and self.degree > 1 and not _is_irreducible(self.modulus):
            raise ReducibleModulusError(
                f"{render_poly(self.modulus, symbol)} is reducible over Q"
            )
        # j^(d+k) expressed in the power basis, for k = 0 .. d-2
        d = self.degree
        self._high = []
        row = [-c for c in self.modulus[:-1]]
        for _ in range(max(d - 1, 0)):
            self._high.append(tuple(row))
            top = row[-1]
            row = [Fraction(0)] + row[:-1]
            row = [r + top * s for r, s in zip(row, self._high[0])]

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field is self or x.field == self:
                return x
            if x.field.degree == 1 or not any(x.coords[1:]):
                return self._const(x.coords[0])
            raise ValueError("element belongs to a different extension")
        if isinstance(x, (list, tuple)):
            return ext_normalize(x, self)
        return self._const(Fraction(x))

    def _const(self, c: Fraction) -> "FieldElement":
        return FieldElement(self, (c,) + (Fraction(0),) * (self.degree - 1))

    @property
    def zero(self) -> "FieldElement":
        return self._const(Fraction(0))

    @property
    def one(self) -> "FieldElement":
        return self._const(Fraction(1))

    @property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self._const(-self.modulus[0])
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return FieldElement(self, tuple(c))

    def header(self) -> str:
        return f"Q[{self.symbol}]/({render_poly(self.modulus, self.symbol)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtensionField)
            and self.modulus == other.modulus
            and self.symbol == other.symbol
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.symbol))

    def __repr__(self) -> str:
        return f"ExtensionField({self.header()})"

    def _reduce(self, raw: Sequence[Fraction]) -> tuple:
        d = self.degree
        out = list(raw[:d]) + [Fraction(0)] * (d - len(raw[:d]))
        for k, c in enumerate(raw[d:]):
            if c:
                for i, h in enumerate(self._high[k]):
                    out[i] += c * h
        return tuple(out)


def _is_irreducible(modulus: Sequence[Fraction]) -> bool:
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(modulus)), x, domain=sympy.QQ).is_irreducible


class FieldElement:
    """An element of an :class:`ExtensionField`, immutable and hashable."""

    __slots__ = ("field", "coords")

    def __init__(self, field: ExtensionField, coords: tuple):
        self.field = field
        self.coords = coords

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixing elements of different extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field._const(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.field._reduce(_poly_mul(self.coords, o.coords)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * ext_invert(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * ext_invert(self)

    def __pow__(self, n: int):
        if n < 0:
            return ext_invert(self) ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        return ext_invert(self)

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.coords == other.coords and self.field == other.field
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __repr__(self) -> str:
        return f"FieldElement({render_scalar(self)})"

    def __str__(self) -> str:
        return render_scalar(self)


def ext_normalize(raw: Iterable, field: ExtensionField) -> FieldElement:
    """Reduce a coordinate list of any length modulo the field's modulus.

    >>> K = ExtensionField([1, 0, 1], "i")
    >>> ext_normalize([0, 0, 1], K) == -1
    True
    """
    raw = _poly_trim([Fraction(c) for c in raw])
    if len(raw) > 2 * field.degree - 1:
        raw = _poly_divmod(raw, list(field.modulus))[1]
    return FieldElement(field, field._reduce(raw))


def ext_invert(a: FieldElement) -> FieldElement:
    """Inverse via the extended Euclidean algorithm on (a, modulus).

    Raises ``ZeroDivisionError`` for zero and ``ReducibleModulusError`` when
    ``a`` shares a factor with the modulus.
    """
    if not a:
        raise ZeroDivisionError("zero has no inverse")
    field = a.field
    r0, r1 = list(field.modulus), _poly_trim(list(a.coords))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ReducibleModulusError("zero divisor found; modulus is reducible")
    c = r1[0]
    return ext_normalize([x / c for x in s1], field)


def render_poly(coeffs: Sequence, symbol: str) -> str:
    """Render a univariate rational polynomial, highest degree first."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        mono = "" if k == 0 else (symbol if k == 1 else f"{symbol}^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_frac(mag)}*{mono}"
        else:
            body = _frac(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_scalar(c) -> str:
    """Canonical text for a scalar: ``a/b`` for rationals, a polynomial in the
    field symbol otherwise."""
    if isinstance(c, FieldElement):
        if c.is_rational():
            return _frac(c.coords[0])
        return render_poly(c.coords, c.field.symbol)
    return _frac(Fraction(c))
