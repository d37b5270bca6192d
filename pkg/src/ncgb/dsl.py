"""A small text format for presentations, with a parser and an emitter.

    field Q[j]/(j^2+j+1)
    letters x1:(1,0), x2:(0,1)
    order deglex x2>x1
    param p = 2
    relations:
    x2*x1^2 + p*x1*x2*x1 + p^2*x1^2*x2

``#`` starts a comment.  Expressions use ``+ - * / ^`` and parentheses;
division is only by scalars and ``^`` takes a nonnegative integer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .field import QQ, ExtensionField, FieldElement, render_scalar
from .poly import NcPolynomial
from .words import Alphabet

__all__ = [
    "DslError",
    "Presentation",
    "emit_presentation",
    "parse_expression",
    "parse_field",
    "parse_presentation",
    "parse_scalar",
]


class DslError(ValueError):
    """Parse failure; ``line`` and ``col`` are 1-based."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)


@dataclass
class Presentation:
    """``k<X>/(relations)`` over ``field`` with parameter bindings kept for
    reference.  ``constraints`` lists the clauses the bindings satisfy."""

    alphabet: Alphabet
    field: object
    relations: list
    name: str = ""
    params: dict = field(default_factory=dict)
    constraints: list = field(default_factory=list)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.field == other.field
            and [r.terms for r in self.relations] == [r.terms for r in other.relations]
            and {k: self.field(v) for k, v in self.params.items()}
            == {k: other.field(v) for k, v in other.params.items()}
        )

    def max_degree(self) -> int:
        return max((r.total_degree() for r in self.relations), default=0)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive descent over one expression.  ``names`` maps identifiers to
    NcPolynomials; ``line``/``col0`` locate the text for error messages."""

    def __init__(self, text: str, names: dict, alphabet: Alphabet, fld, line: int = 0, col0: int = 1):
        self.text, self.names, self.alphabet, self.field = text, names, alphabet, fld
        self.line, self.col0 = line, col0
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                self.fail("unexpected character", pos + len(text[pos:]) - len(text[pos:].lstrip()))
            kind = "num" if m.group(1) else ("id" if m.group(2) else "op")
            val = m.group(1) or m.group(2) or m.group(3)
            if val == "**":
                val = "^"
            self.toks.append((kind, val, m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def fail(self, msg: str, pos: int):
        raise DslError(msg, self.line, self.col0 + pos)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> NcPolynomial:
        if not self.toks:
            self.fail("empty expression", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            self.fail(f"unexpected {val!r}", pos)
        return p

    def expr(self) -> NcPolynomial:
        kind, val, _ = self.peek()
        sign = 1
        if val in ("+", "-"):
            self.take()
            sign = -1 if val == "-" else 1
        out = self.term().scale(self.field(sign))
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> NcPolynomial:
        out = self.power()
        while self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1], self.peek()[2]
            rhs = self.power()
            if op == "*":
                out = out * rhs
            else:
                if set(rhs.terms) - {""} or not rhs.terms:
                    self.fail("division by a non-scalar or by zero", pos)
                out = out.scale(1 / rhs.terms[""])
        return out

    def power(self) -> NcPolynomial:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer", pos)
            base = base ** int(val)
        return base

    def atom(self) -> NcPolynomial:
        kind, val, pos = self.take()
        if kind == "num":
            return NcPolynomial.scalar(int(val), self.alphabet, self.field)
        if kind == "id":
            if val not in self.names:
                self.fail(f"unknown identifier {val!r}", pos)
            return self.names[val]
        if val == "(":
            inner = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                self.fail("expected ')'", p2)
            return inner
        if val == "-":
            return -self.power()
        self.fail("unexpected end of expression" if kind is None else f"unexpected {val!r}", pos)


def _names(alphabet: Alphabet, fld, params: dict) -> dict:
    out = {}
    if fld is not QQ and fld.degree > 1:
        out[fld.symbol] = NcPolynomial.scalar(fld.gen, alphabet, fld)
    for k, v in params.items():
        out[k] = NcPolynomial.scalar(v, alphabet, fld)
    for i, nm in enumerate(alphabet.names):
        out[nm] = NcPolynomial.from_word(alphabet.code(i), alphabet, fld)
    return out


def _as_scalar(p: NcPolynomial, fld):
    if set(p.terms) - {""}:
        raise DslError("expected a scalar expression")
    return p.terms.get("", fld(0))


def parse_scalar(text: str, fld=QQ, params: dict = None):
    """Evaluate a scalar expression in ``fld``; the field symbol and the
    given parameters may appear."""
    X = Alphabet(("_",), ((1,),))
    p = _Parser(str(text), _names(X, fld, params or {}), X, fld).parse()
    return fld(_as_scalar(p, fld))


def parse_field(text: str):
    """``Q`` or ``Q[j]/(poly)``."""
    text = text.strip()
    if text == "Q":
        return QQ
    m = re.fullmatch(r"Q\[([A-Za-z_][A-Za-z_0-9]*)\]\s*/\s*\((.*)\)", text)
    if not m:
        raise DslError(f"bad field {text!r}; expected Q or Q[sym]/(poly)")
    sym = m.group(1)
    X = Alphabet((sym,), ((1,),))
    poly = _Parser(m.group(2), _names(X, QQ, {}), X, QQ).parse()
    top = max(len(w) for w in poly.terms) if poly.terms else 0
    coeffs = [poly.terms.get("a" * k, 0) for k in range(top + 1)]
    return ExtensionField(coeffs, sym)


def parse_expression(text: str, alphabet: Alphabet, fld=QQ, params: dict = None) -> NcPolynomial:
    return _Parser(text, _names(alphabet, fld, params or {}), alphabet, fld).parse()


_LETTER = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*:\s*\(([^)]*)\)\s*(,|$)")


def _parse_letters(body: str, line: int, col0: int):
    names, grading, pos = [], [], 0
    while pos < len(body):
        m = _LETTER.match(body, pos)
        if not m:
            raise DslError("expected name:(d1,...,ds)", line, col0 + pos)
        try:
            deg = tuple(int(x) for x in m.group(2).split(","))
        except ValueError:
            raise DslError("degrees must be integers", line, col0 + m.start(2)) from None
        names.append(m.group(1))
        grading.append(deg)
        pos = m.end()
    if not names:
        raise DslError("no letters declared", line, col0)
    return names, grading


def parse_presentation(text: str) -> Presentation:
    fld, names, grading, order, params = QQ, None, None, None, {}
    relations, in_rel = [], False
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        if in_rel:
            relations.append((ln, indent + 1, body))
            continue
        head, _, rest = body.partition(" ")
        rest_col = indent + len(head) + 2 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if head == "field":
            try:
                fld = parse_field(rest)
            except DslError as e:
                raise DslError(str(e), ln, rest_col) from None
            except ValueError as e:
                raise DslError(str(e), ln, rest_col) from None
        elif head == "letters":
            names, grading = _parse_letters(rest, ln, rest_col)
        elif head == "order":
            m = re.fullmatch(r"deglex\s+(.+)", rest)
            if not m:
                raise DslError("expected 'order deglex a>b>...'", ln, rest_col)
            order = [s.strip() for s in m.group(1).split(">")]
        elif head == "param":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.+)", rest)
            if not m:
                raise DslError("expected 'param name = value'", ln, rest_col)
            if names and m.group(1) in names:
                raise DslError(f"parameter {m.group(1)!r} shadows a letter", ln, rest_col)
            p = _Parser(m.group(2), _names(Alphabet(("_",), ((1,),)), fld, params), Alphabet(("_",), ((1,),)), fld, ln, rest_col + m.start(2))
            params[m.group(1)] = fld(_as_scalar(p.parse(), fld))
        elif body == "relations:":
            in_rel = True
        else:
            raise DslError(f"unknown directive {head!r}", ln, indent + 1)
    if names is None:
        raise DslError("missing 'letters' line")
    ranks = None
    if order is not None:
        if sorted(order) != sorted(names):
            raise DslError(f"order must rank exactly the letters {names}")
        ranks = tuple(len(order) - 1 - order.index(nm) for nm in names)
    alphabet = Alphabet(tuple(names), tuple(grading), ranks)
    lookup = _names(alphabet, fld, params)
    rels = []
    for ln, col, body in relations:
        p = _Parser(body, lookup, alphabet, fld, ln, col).parse()
        degs = sorted(p.degrees(), key=lambda d: (sum(d), d[::-1]))
        if len(degs) > 1:
            shown = " vs ".join(str(d) for d in degs)
            raise DslError(f"relation is not homogeneous: {shown}", ln, col)
        if p:
            rels.append(p)
    return Presentation(alphabet, fld, rels, params=params)


def emit_presentation(P: Presentation) -> str:
    X = P.alphabet
    lines = [f"field {P.field.header()}"]
    lines.append("letters " + ", ".join(
        f"{nm}:({','.join(str(x) for x in g)})" for nm, g in zip(X.names, X.grading)
    ))
    order = sorted(range(len(X.names)), key=lambda i: -X.ranks[i])
    lines.append("order deglex " + ">".join(X.names[i] for i in order))
    for k, v in P.params.items():
        lines.append(f"param {k} = {_scalar_text(v)}")
    lines.append("relations:")
    lines.extend(r.render() for r in P.relations)
    return "\n".join(lines) + "\n"


def _scalar_text(c) -> str:
    s = render_scalar(c)
    return f"({s})" if " " in s else s
