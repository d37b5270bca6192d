"""Brute-force reference computations used only by the tests.  Nothing here
touches the automata, the reducer or the series arithmetic of the package."""

import itertools
from fractions import Fraction

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def words_of(beta):
    """Every word over 'a' < 'b' with a letters of 'a' and b letters of 'b'."""
    a, b = beta
    n = a + b
    out = []
    for pos in itertools.combinations(range(n), b):
        w = ["a"] * n
        for i in pos:
            w[i] = "b"
        out.append("".join(w))
    return out


def words_up_to(n, letters="ab"):
    for k in range(1, n + 1):
        for t in itertools.product(letters, repeat=k):
            yield "".join(t)


def avoids(w, V):
    return not any(v in w for v in V)


def normal_count(V, beta):
    return sum(1 for w in words_of(beta) if avoids(w, V))


def rotations_lyndon(u):
    """Greater than wv for every split u = vw, with letters compared as
    integers one position at a time."""
    if not u:
        return False
    code = [ord(c) for c in u]
    for k in range(1, len(u)):
        rot = code[k:] + code[:k]
        for x, y in zip(code, rot):
            if x != y:
                if x < y:
                    return False
                break
        else:
            return False
    return True


def plex_gt(u, v):
    if len(u) < len(v) and v[: len(u)] == u:
        return True
    for x, y in zip(u, v):
        if x != y:
            return x > y
    return False


def all_factorizations(u):
    n = len(u)
    for mask in range(1 << (n - 1)):
        parts, start = [], 0
        for i in range(1, n):
            if mask >> (i - 1) & 1:
                parts.append(u[start:i])
                start = i
        parts.append(u[start:])
        yield parts


def lyndon_factorizations(u):
    return [
        f for f in all_factorizations(u)
        if all(rotations_lyndon(x) for x in f) and all(not plex_gt(x, y) for x, y in zip(f, f[1:]))
    ]


def series_coefficients(expr_fn, n):
    """Taylor coefficients of a rational function of t up to t^n."""
    t = sympy.Symbol("t")
    s = sympy.series(expr_fn(t), t, 0, n + 1).removeO()
    return [int(s.coeff(t, k)) for k in range(n + 1)]


def poly_terms(f):
    """{word: Fraction} for a rational NcPolynomial."""
    return {w: Fraction(c) for w, c in f.terms.items()}


def ideal_dimension(gens, beta):
    """dim of the degree-beta part of the two-sided ideal generated by gens,
    as the rank of the span of all u*g*v (exact rank over Q)."""
    basis = words_of(beta)
    index = {w: i for i, w in enumerate(basis)}
    rows = []
    for g in gens:
        terms = poly_terms(g)
        d = _deg(next(iter(terms)))
        if d[0] > beta[0] or d[1] > beta[1]:
            continue
        rest = (beta[0] - d[0], beta[1] - d[1])
        for padding in words_of(rest):
            for cut in range(len(padding) + 1):
                u, v = padding[:cut], padding[cut:]
                row = [QQ(0)] * len(basis)
                for w, c in terms.items():
                    row[index[u + w + v]] = QQ(c.numerator, c.denominator)
                rows.append(row)
    if not rows:
        return 0
    return DomainMatrix(rows, (len(rows), len(basis)), QQ).rank()


def quotient_dimension(gens, beta):
    return len(words_of(beta)) - ideal_dimension(gens, beta)


def _deg(w):
    return (w.count("a"), w.count("b"))
