"""Invariants of monomial algebras ``k<X>/(V)`` for a finite antichain ``V``.

* the Hilbert series, by dynamic programming over the factor automaton of V;
* the graph of chains and the chains of each level (the Anick resolution of a
  monomial algebra is minimal, so chain multidegrees are resolution shifts);
* the global dimension read off the graph (finite iff no cycle is reachable);
* when V consists of Lyndon words, the normal Lyndon words and the product
  series over them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .series import TruncatedSeries
from .words import Alphabet, Antichain, FactorAutomaton, deglex_key, is_lyndon

__all__ = [
    "ChainGraph",
    "InvariantsEstimate",
    "LyndonReport",
    "anick_alternating_series",
    "exact_alternating_polynomial",
    "chain_graph",
    "collapse_series",
    "enumerate_chains",
    "hilbert_series_monomial",
    "invariants_estimate",
    "lyndon_series",
    "reduced_chain_profile",
]


def hilbert_series_monomial(V: Iterable[str], cap: int, alphabet: Alphabet) -> TruncatedSeries:
    """Multigraded Hilbert series of ``k<X>/(V)`` up to total degree ``cap``.

    Counts words avoiding every factor in V by walking the live states of the
    factor automaton, one total degree at a time.
    """
    auto = FactorAutomaton(V, alphabet)
    s = alphabet.nvars
    steps = [(ch, alphabet.letter_degree(ch), sum(alphabet.letter_degree(ch))) for ch in auto.letters]
    # layers[t] maps (state, multidegree) -> number of normal words
    layers = [dict() for _ in range(cap + 1)]
    layers[0][(0, (0,) * s)] = 1
    coeffs: dict = {}
    for t in range(cap + 1):
        for (state, deg), n in layers[t].items():
            coeffs[deg] = coeffs.get(deg, 0) + n
            row = auto.delta[state]
            for ch, g, tg in steps:
                if t + tg > cap:
                    continue
                nxt = row[ch]
                if auto.dead[nxt]:
                    continue
                key = (nxt, tuple(a + b for a, b in zip(deg, g)))
                layer = layers[t + tg]
                layer[key] = layer.get(key, 0) + n
    return TruncatedSeries.from_terms(coeffs, cap, s)


def collapse_series(H: TruncatedSeries) -> TruncatedSeries:
    """Total-degree specialization ``t_i -> t``."""
    return H.collapse()


@dataclass
class ChainGraph:
    vertices: list
    arrows: dict  # vertex -> list of successors
    letters: list  # vertices that start chains

    def successors(self, v: str) -> list:
        return self.arrows.get(v, [])


def chain_graph(V: Iterable[str], alphabet: Alphabet) -> ChainGraph:
    """Vertices are the letters outside V and the proper suffixes of length at
    least 2 of words in V.  There is an arrow ``u -> v`` when ``uv`` has a
    factor in V but ``uv'`` has none for every proper prefix ``v'`` of ``v``."""
    V = Antichain(V)
    letters = [ch for ch in alphabet.letters() if ch not in V]
    suffixes = set()
    for w in V:
        for k in range(1, len(w) - 1):
            suffixes.add(w[k:])
    suffixes -= set(letters)
    vertices = letters + sorted(suffixes, key=lambda w: deglex_key(w, alphabet))
    auto = FactorAutomaton(V, alphabet)
    arrows: dict = {}
    for u in vertices:
        su = auto.run(u)
        if auto.dead[su]:
            continue
        out = []
        for v in vertices:
            s = auto.run(v[:-1], su)
            if auto.dead[s]:
                continue
            if auto.dead[auto.delta[s][v[-1]]]:
                out.append(v)
        arrows[u] = out
    return ChainGraph(vertices, arrows, letters)


@dataclass
class Chain:
    path: tuple
    word: str
    degree: tuple


def enumerate_chains(V: Iterable[str], max_level: int, cap: int, alphabet: Alphabet) -> list:
    """Chains of levels ``0 .. max_level`` whose words have total degree at most
    ``cap``.  Level 0 is the unit word, level 1 the letters outside V, level 2
    the non-letter words of V."""
    g = chain_graph(V, alphabet)
    s = alphabet.nvars
    levels = [[Chain((), "", (0,) * s)]]
    frontier = []
    for x in g.letters:
        if alphabet.total(x) <= cap:
            frontier.append(Chain((x,), x, alphabet.degree(x)))
    for _ in range(1, max_level + 1):
        levels.append(sorted(frontier, key=lambda c: deglex_key(c.word, alphabet)))
        nxt = []
        for c in frontier:
            for v in g.successors(c.path[-1]):
                w = c.word + v
                if alphabet.total(w) <= cap:
                    nxt.append(Chain(c.path + (v,), w, alphabet.degree(w)))
        frontier = nxt
    return levels


def anick_alternating_series(V: Iterable[str], cap: int, alphabet: Alphabet) -> TruncatedSeries:
    """``sum_n (-1)^n H_{C_n}`` truncated at ``cap``."""
    levels = enumerate_chains(V, cap + 1, cap, alphabet)
    terms: dict = {}
    for n, chains in enumerate(levels):
        sign = -1 if n % 2 else 1
        for c in chains:
            terms[c.degree] = terms.get(c.degree, 0) + sign
    return TruncatedSeries.from_terms(terms, cap, alphabet.nvars)


def exact_alternating_polynomial(V: Iterable[str], alphabet: Alphabet):
    """``sum_n (-1)^n sum_{c in C_n} t^deg(c)`` over all chains, as a dict
    with zero entries dropped, or None when there are infinitely many chains.

    When it exists, the Hilbert series of ``k<X>/(V)`` is exactly its
    inverse, with no truncation involved.
    """
    V = Antichain(V)
    longest = _longest_path(chain_graph(V, alphabet))
    if longest is None:
        return None
    width = max([alphabet.total(w) for w in V] + [max(sum(alphabet.letter_degree(x)) for x in alphabet.letters())])
    levels = enumerate_chains(V, longest, longest * width, alphabet)
    out: dict = {}
    for n, chains in enumerate(levels):
        for c in chains:
            out[c.degree] = out.get(c.degree, 0) + (-1) ** n
    return {d: c for d, c in out.items() if c}


@dataclass
class InvariantsEstimate:
    """``global_dimension`` is None when a reachable cycle makes it infinite.
    ``levels`` lists, per chain level, the sorted multidegrees found within the
    cap."""

    global_dimension: object
    finite: bool
    max_level_within_cap: int
    levels: list = field(default_factory=list)
    obstruction_count: int = 0

    def bound_holds(self) -> bool:
        """``d - 1 <= #V <= d (d - 1) / 2`` for a finite dimension ``d``."""
        d = self.global_dimension
        if d is None:
            return False
        return d - 1 <= self.obstruction_count <= d * (d - 1) // 2


def _longest_path(g: ChainGraph):
    """Number of vertices on the longest path starting at a letter, or None if
    a cycle is reachable from the letters."""
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict = {}
    depth: dict = {}

    def visit(v) -> bool:
        stack = [(v, iter(g.successors(v)))]
        color[v] = GREY
        while stack:
            node, it = stack[-1]
            advanced = False
            for w in it:
                c = color.get(w, WHITE)
                if c == GREY:
                    return False
                if c == WHITE:
                    color[w] = GREY
                    stack.append((w, iter(g.successors(w))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                color[node] = BLACK
                depth[node] = 1 + max((depth[w] for w in g.successors(node)), default=0)
        return True

    for x in g.letters:
        if color.get(x, WHITE) == WHITE and not visit(x):
            return None
    return max((depth[x] for x in g.letters), default=0)


def invariants_estimate(V: Iterable[str], cap: int, alphabet: Alphabet) -> InvariantsEstimate:
    V = Antichain(V)
    g = chain_graph(V, alphabet)
    longest = _longest_path(g)
    levels = enumerate_chains(V, (longest if longest is not None else cap) + 1, cap, alphabet)
    profile = [sorted((c.degree for c in lvl), key=lambda d: (sum(d), d[::-1])) for lvl in levels]
    within = max(n for n, lvl in enumerate(levels) if lvl)
    return InvariantsEstimate(
        global_dimension=longest,
        finite=longest is not None,
        max_level_within_cap=within,
        levels=profile,
        obstruction_count=len(V),
    )


@dataclass
class LyndonReport:
    words: list
    degrees: list
    finite: bool
    gk_dimension: object


def lyndon_series(V: Iterable[str], cap: int, alphabet: Alphabet):
    """Normal Lyndon words modulo V and ``prod (1 - t^deg u)^{-1}`` over them.

    Every Lyndon word of length at least 2 is a product of two shorter Lyndon
    words, and factors of normal words are normal.  So if no normal Lyndon
    word has total degree in ``(D, 2D]``, where ``D`` is the largest degree
    found, there are none at all beyond ``D``; the list is then complete and
    ``finite`` is true.
    """
    V = Antichain(V)
    bad = [w for w in V if not is_lyndon(w)]
    if bad:
        raise ValueError(f"obstructions are not Lyndon: {sorted(bad)}")
    auto = FactorAutomaton(V, alphabet)
    found = []

    def walk(state: int, word: str, total: int):
        if word and is_lyndon(word):
            found.append(word)
        for ch in auto.letters:
            t = total + sum(alphabet.letter_degree(ch))
            if t > cap:
                continue
            nxt = auto.delta[state][ch]
            if not auto.dead[nxt]:
                walk(nxt, word + ch, t)

    walk(0, "", 0)
    found.sort(key=lambda w: deglex_key(w, alphabet))
    top = max((alphabet.total(w) for w in found), default=0)
    finite = 2 * top <= cap
    series = TruncatedSeries.one(alphabet.nvars, cap)
    for w in found:
        series = series * TruncatedSeries.geometric(alphabet.degree(w), cap)
    report = LyndonReport(
        words=found,
        degrees=[alphabet.degree(w) for w in found],
        finite=finite,
        gk_dimension=len(found) if finite else None,
    )
    return report, series


def reduced_chain_profile(levels: Sequence[Sequence[tuple]]) -> list:
    """Cancel equal multidegrees between adjacent levels, lowest level first.

    The Anick resolution of an algebra with the given leading words is built
    on the chains; cancelling matching shifts of neighbouring levels leaves the
    shifts of a smaller resolution with the same alternating sum.
    """
    from collections import Counter

    counts = [Counter(lvl) for lvl in levels]
    for n in range(1, len(counts) - 1):
        common = counts[n] & counts[n + 1]
        counts[n] -= common
        counts[n + 1] -= common
    return [sorted(c.elements(), key=lambda d: (sum(d), d[::-1])) for c in counts]
