"""Hilbert-series driven search for the leading words of a Groebner basis.

Given the shifts of a candidate minimal free resolution of the trivial module
(a *resolution shape*), the Hilbert series of the algebra is fixed.  For any
set ``V`` of leading words of part of the reduced Groebner basis, the series of
the monomial algebra on ``V`` dominates it coefficientwise.  The difference
therefore

* must never be negative, and
* at a componentwise-minimal exponent ``beta`` with coefficient ``p > 0``
  forces exactly ``p`` further leading words of multidegree ``beta``.

The search branches over the admissible choices of those words and stops at
nodes whose difference vanishes up to the cap, nodes that are contradicted,
or nodes matched by a recorded elimination (an argument that needs the actual
coefficients and is entered as data).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .monomial import exact_alternating_polynomial, hilbert_series_monomial
from .series import TruncatedSeries
from .words import Alphabet, Antichain, deglex_key, normal_words

__all__ = [
    "ResolutionShape",
    "SearchConfig",
    "SearchNode",
    "TYPES",
    "check_shift_constraints",
    "domain_prune",
    "enumerate_shapes",
    "forced_relations",
    "load_eliminations",
    "resolution_shape_constraints",
    "search_obstructions",
    "search_type",
    "series_difference_report",
    "series_from_resolution",
]

COMPLETE = "complete"
CONTRADICTED = "contradicted"
SURVIVING = "surviving-needs-coefficient-analysis"
OPEN = "open"


def _dkey(d: tuple) -> tuple:
    return (sum(d), d[::-1])


@dataclass(frozen=True)
class ResolutionShape:
    """Shifts of each level of a free resolution of the trivial module.

    ``levels[k]`` is the multiset (a sorted tuple) of multidegrees of the free
    generators in homological degree ``k``; level 0 is ``(0, ..., 0)``.
    """

    levels: tuple

    @classmethod
    def from_levels(cls, levels: Iterable[Iterable[Sequence[int]]]) -> "ResolutionShape":
        return cls(tuple(tuple(sorted((tuple(s) for s in lvl), key=_dkey)) for lvl in levels))

    @classmethod
    def gorenstein(cls, relations: Iterable[Sequence[int]], top: Sequence[int]) -> "ResolutionShape":
        """The symmetric five-term shape of a two-generated algebra of global
        dimension 5 with relations of the given multidegrees and top shift
        ``top = (p, q)``."""
        rels = [tuple(r) for r in relations]
        p, q = top
        return cls.from_levels([
            [(0, 0)],
            [(1, 0), (0, 1)],
            rels,
            [(p - u, q - v) for u, v in rels],
            [(p, q - 1), (p - 1, q)],
            [(p, q)],
        ])

    @classmethod
    def total_degree(cls, totals: Iterable[int], g: int) -> "ResolutionShape":
        """The same five-term shape with every shift collapsed to its total
        degree; ``totals`` are the relation degrees and ``g`` the top shift."""
        totals = [int(r) for r in totals]
        return cls.from_levels([
            [(0,)],
            [(1,), (1,)],
            [(r,) for r in totals],
            [(g - r,) for r in totals],
            [(g - 1,), (g - 1,)],
            [(g,)],
        ])

    @classmethod
    def for_type(cls, type_id: str) -> "ResolutionShape":
        """Total-degree shape of one of the types in ``TYPES``."""
        totals, g = TYPES[type_id]
        return cls.total_degree(totals, g)

    @property
    def nvars(self) -> int:
        return len(self.levels[0][0])

    @property
    def relations(self) -> tuple:
        return self.levels[2] if len(self.levels) > 2 else ()

    @property
    def top(self) -> tuple:
        return self.levels[-1][0]

    def switched(self) -> "ResolutionShape":
        return ResolutionShape.from_levels([[s[::-1] for s in lvl] for lvl in self.levels])

    def polynomial(self) -> dict:
        """The alternating sum ``sum_k (-1)^k sum_s t^s``."""
        out: dict = {}
        for k, lvl in enumerate(self.levels):
            for s in lvl:
                out[s] = out.get(s, 0) + (-1) ** k
        return {s: c for s, c in out.items() if c}

    def label(self) -> str:
        rels = ",".join(f"({u},{v})" for u, v in self.relations)
        return f"relations {rels} top {self.top}"

    def to_json(self) -> dict:
        return {"levels": [[list(s) for s in lvl] for lvl in self.levels], "relations": [list(r) for r in self.relations], "top": list(self.top)}


def series_from_resolution(shape: ResolutionShape, cap: int) -> TruncatedSeries:
    """The Hilbert series forced by ``shape``: the inverse of its alternating
    shift polynomial."""
    poly = TruncatedSeries.from_terms(shape.polynomial(), cap, shape.nvars)
    return poly.inverse()


@dataclass
class DifferenceReport:
    difference: TruncatedSeries
    lowest_terms: list
    negative_terms: list
    minimal_terms: list

    @property
    def vanishes(self) -> bool:
        return self.difference.is_zero()

    def witness(self):
        return self.negative_terms[0] if self.negative_terms else None


def series_difference_report(V: Iterable[str], target: TruncatedSeries, alphabet: Alphabet, collapsed: bool = False) -> DifferenceReport:
    """``H(k<X>/(V)) - target`` with its lowest-total-degree terms, its negative
    terms and its componentwise-minimal terms.  With ``collapsed`` both sides
    are specialised to one variable first."""
    H = hilbert_series_monomial(V, target.cap, alphabet)
    if collapsed:
        H = H.collapse()
        if target.nvars != 1:
            target = target.collapse()
    diff = H - target
    return DifferenceReport(
        difference=diff,
        lowest_terms=diff.lowest_terms(),
        negative_terms=[kv for kv in diff.terms() if kv[1] < 0],
        minimal_terms=diff.minimal_terms(),
    )


def forced_relations(diff: TruncatedSeries) -> list:
    """``(beta, p)`` for every minimal exponent of the difference with
    positive coefficient: exactly ``p`` new leading words have degree beta."""
    return [(beta, c) for beta, c in diff.minimal_terms() if c > 0]


def check_shift_constraints(us: Sequence[int], p: int) -> list:
    """Necessary conditions on the first components ``us`` of the relation
    shifts of a two-generated Gorenstein resolution with top shift ``p``.

    Returns the violated clauses (empty when all hold)."""
    u = sorted(us)
    bad = []
    if not u:
        return bad
    if u[0] < 1:
        bad.append(f"smallest shift {u[0]} < 1")
    if u[0] + u[-1] >= p:
        bad.append(f"{u[0]} + {u[-1]} is not < {p}")
    if len(u) >= 2 and u[1] + u[-1] > p:
        bad.append(f"{u[1]} + {u[-1]} > {p}")
    return bad


def resolution_shape_constraints(shape: ResolutionShape):
    """``(ok, violated clauses)`` for both coordinates of a five-term shape."""
    if len(shape.levels) < 3 or not shape.relations:
        raise ValueError("shape has no relation level")
    p, q = shape.top
    bad = [f"first coordinate: {c}" for c in check_shift_constraints([r[0] for r in shape.relations], p)]
    bad += [f"second coordinate: {c}" for c in check_shift_constraints([r[1] for r in shape.relations], q)]
    return not bad, bad


def domain_prune(candidate: str, beta: Sequence[int], V: Iterable[str], alphabet: Alphabet):
    """Why a relation with leading word ``candidate`` would produce zero
    divisors, or None if nothing rules it out.

    ``"axis-degree"``: beta lies on a coordinate axis, so the relation is a
    power of a single letter.  ``"common-factor"``: every normal word of degree
    beta not above the candidate starts (or ends) with the same letter, so the
    relation factors off that letter.
    """
    beta = tuple(beta)
    if sum(1 for x in beta if x) < 2:
        return "axis-degree"
    normal = normal_words(V, beta, alphabet)
    if candidate not in normal:
        return "not-normal"
    return _factor_check(candidate, normal)


def _factor_check(candidate: str, normal: Iterable[str]):
    # same multidegree, so plain string order is the deg-lex order
    support = [w for w in normal if w <= candidate]
    if len({w[0] for w in support}) == 1 or len({w[-1] for w in support}) == 1:
        return "common-factor"
    return None


@dataclass
class SearchConfig:
    cap: int = 12
    eliminations: list = field(default_factory=list)
    max_nodes: int = 5000
    max_sets: int = 5000
    type_id: str = None


@dataclass
class SearchNode:
    obstructions: tuple
    added: tuple = ()
    beta: tuple = None
    status: str = OPEN
    reason: str = ""
    witness: tuple = None
    lowest_terms: list = field(default_factory=list)
    citation: str = None
    children: list = field(default_factory=list)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self):
        return [n for n in self.walk() if not n.children]

    def find(self, words: Iterable[str]):
        target = frozenset(words)
        for n in self.walk():
            if frozenset(n.obstructions) == target:
                return n
        return None

    def to_json(self, alphabet: Alphabet) -> dict:
        out = {
            "obstructions": [alphabet.render(w) for w in self.obstructions],
            "added": [alphabet.render(w) for w in self.added],
            "degree": list(self.beta) if self.beta else None,
            "status": self.status,
            "reason": self.reason,
            "lowest_terms": [[list(k), v] for k, v in self.lowest_terms],
        }
        if self.witness:
            out["witness"] = [list(self.witness[0]), self.witness[1]]
        if self.citation:
            out["citation"] = self.citation
        if self.children:
            out["children"] = [c.to_json(alphabet) for c in self.children]
        return out


def _elimination_for(V: frozenset, shape: ResolutionShape, config: SearchConfig, alphabet: Alphabet):
    for e in config.eliminations:
        if e.get("type") and config.type_id and e["type"] != config.type_id:
            continue
        rels = tuple(sorted((tuple(r) for r in e["relations"]), key=_dkey))
        if rels != shape.relations or tuple(e["top"]) != shape.top:
            continue
        words = {alphabet.parse(w) for w in e["obstructions"]}
        if words <= V:
            return e
    return None


def _feasible_words(V: tuple, beta: tuple, alphabet: Alphabet) -> tuple:
    """Normal words of degree beta and those that pass the domain test alone."""
    if sum(1 for x in beta if x) < 2:
        return [], []
    normal = normal_words(V, beta, alphabet)
    return normal, [w for w in normal if _factor_check(w, normal) is None]


def _admissible_sets(normal: list, single: list, p: int) -> list:
    """``p``-subsets of individually feasible words in which each member stays
    feasible once its siblings are leading words too.  Siblings share the
    degree, so they drop out of the normal words and nothing else does."""
    out = []
    for S in itertools.combinations(single, p):
        if p == 1:
            out.append(S)
            continue
        ok = True
        for c in S:
            rest = [w for w in normal if w == c or w not in S]
            if _factor_check(c, rest) is not None:
                ok = False
                break
        if ok:
            out.append(S)
    return out


def search_obstructions(shape: ResolutionShape, config: SearchConfig, alphabet: Alphabet = None) -> SearchNode:
    """Build the search tree below ``V = {}`` for one resolution shape."""
    alphabet = alphabet or Alphabet.standard(shape.nvars)
    target = series_from_resolution(shape, config.cap)
    budget = [config.max_nodes]

    def expand(node: SearchNode):
        budget[0] -= 1
        V = node.obstructions
        rep = series_difference_report(V, target, alphabet)
        node.lowest_terms = rep.lowest_terms
        if rep.negative_terms:
            node.status, node.reason = CONTRADICTED, "series"
            node.witness = rep.witness()
            return
        # later leading words cannot sit below the lowest total degree of the
        # difference, so a relation degree already passed stays unmatched
        floor = sum(rep.lowest_terms[0][0]) if rep.lowest_terms else math.inf
        missing = [r for r in _missing_relation_degrees(V, shape, alphabet) if sum(r) < floor]
        if missing:
            node.status, node.reason = CONTRADICTED, f"no leading word in relation degree {missing[0]}"
            node.witness = (missing[0], 0)
            return
        e = _elimination_for(frozenset(V), shape, config, alphabet)
        if e is not None:
            node.status, node.reason, node.citation = SURVIVING, "recorded elimination", e["argument"]
            return
        if rep.vanishes:
            if exact_alternating_polynomial(V, alphabet) == shape.polynomial():
                node.status, node.reason = COMPLETE, "series match"
            else:
                # agreement up to the cap is all that is known; the chains
                # of V are infinite or disagree with the shape further up
                node.status, node.reason = OPEN, "series agrees only up to the cap"
            return
        if budget[0] <= 0:
            node.status, node.reason = OPEN, "node budget exhausted"
            return
        options, deferred = [], []
        for beta, p in forced_relations(rep.difference):
            normal, single = _feasible_words(V, beta, alphabet)
            if len(single) < p:
                options.append((0, _dkey(beta), beta, []))
            elif sum(beta) >= config.cap:
                # every choice changes the truncated series in the same way,
                # so siblings could not be told apart below the cap
                deferred.append(f"cap too small for degree {beta}")
            elif math.comb(len(single), p) > config.max_sets:
                deferred.append(f"{math.comb(len(single), p)} candidate sets in degree {beta}")
            else:
                sets = _admissible_sets(normal, single, p)
                options.append((len(sets), _dkey(beta), beta, sets))
        options.sort(key=lambda o: (o[0], o[1]))
        if options and options[0][0] == 0:
            beta = options[0][2]
            node.status, node.reason = CONTRADICTED, f"domain: no admissible leading words of degree {beta}"
            node.witness = (beta, dict(forced_relations(rep.difference))[beta])
            return
        if not options:
            node.status, node.reason = OPEN, "; ".join(deferred)
            return
        n, _, beta, sets = options[0]
        node.status, node.reason = "branched", f"forced degree {beta}"
        for S in sets:
            words = tuple(sorted(V + S, key=lambda w: deglex_key(w, alphabet)))
            child = SearchNode(obstructions=words, added=S, beta=beta)
            node.children.append(child)
            expand(child)

    root = SearchNode(obstructions=())
    expand(root)
    return root


def _missing_relation_degrees(V: tuple, shape: ResolutionShape, alphabet: Alphabet) -> list:
    need: dict = {}
    for r in shape.relations:
        need[r] = need.get(r, 0) + 1
    have: dict = {}
    for w in V:
        d = alphabet.degree(w)
        have[d] = have.get(d, 0) + 1
    return [r for r, k in need.items() if have.get(r, 0) < k]


# relation total degrees and total degree of the top shift
TYPES = {
    "355": ((3, 5, 5), 11),
    "347": ((3, 4, 7), 12),
    "4445": ((4, 4, 4, 5), 10),
    "44455": ((4, 4, 4, 5, 5), 10),
    "444": ((4, 4, 4), 10),
}


def enumerate_shapes(type_id: str, switch_normalized: bool = True) -> list:
    """Every five-term shape whose relation degrees have the totals of the
    type, no relation on an axis, and both coordinate constraint sets
    satisfied.  With ``switch_normalized`` the smallest relation degree
    ``(a, b)`` must have ``a >= b``; the rest are mirror images."""
    totals, g = TYPES[type_id]
    groups: dict = {}
    for t in totals:
        groups[t] = groups.get(t, 0) + 1
    per_group = []
    for t, k in sorted(groups.items()):
        opts = [(u, t - u) for u in range(t - 1, 0, -1)]
        per_group.append(list(itertools.combinations_with_replacement(opts, k)))
    shapes = []
    for combo in itertools.product(*per_group):
        rels = [r for grp in combo for r in grp]
        for p in range(1, g):
            shape = ResolutionShape.gorenstein(rels, (p, g - p))
            ok, _ = resolution_shape_constraints(shape)
            if not ok:
                continue
            first = min(shape.relations, key=_dkey)
            if switch_normalized and first[0] < first[1]:
                continue
            shapes.append(shape)
    return sorted(set(shapes), key=lambda s: (s.top[::-1], [_dkey(r) for r in s.relations]))


@dataclass
class TypeSearch:
    type_id: str
    cap: int
    trees: list  # (shape, root)

    def leaves(self, status: str = None) -> list:
        out = []
        for shape, root in self.trees:
            for leaf in root.leaves():
                if status is None or leaf.status == status:
                    out.append((shape, leaf))
        return out

    def complete(self) -> list:
        return self.leaves(COMPLETE)

    def to_json(self, alphabet: Alphabet) -> dict:
        return {
            "type": self.type_id,
            "cap": self.cap,
            "shapes": [
                {"shape": shape.to_json(), "tree": root.to_json(alphabet)} for shape, root in self.trees
            ],
            "complete_leaves": [
                {"shape": shape.label(), "obstructions": [alphabet.render(w) for w in leaf.obstructions]}
                for shape, leaf in self.complete()
            ],
            "surviving_leaves": [
                {"shape": shape.label(), "obstructions": [alphabet.render(w) for w in leaf.obstructions], "citation": leaf.citation}
                for shape, leaf in self.leaves(SURVIVING)
            ],
        }


def search_type(type_id: str, cap: int = 12, eliminations: list = None, switch_normalized: bool = True) -> TypeSearch:
    if type_id not in TYPES:
        raise ValueError(f"unknown type {type_id!r}; expected one of {sorted(TYPES)}")
    config = SearchConfig(cap=cap, eliminations=list(eliminations or []), type_id=type_id)
    trees = []
    for shape in enumerate_shapes(type_id, switch_normalized):
        trees.append((shape, search_obstructions(shape, config)))
    return TypeSearch(type_id, cap, trees)


def load_eliminations(path: str | Path = None) -> list:
    """Recorded eliminations; the packaged file when ``path`` is None."""
    if path is None:
        text = resources.files("ncgb").joinpath("data/eliminations.json").read_text()
    else:
        text = Path(path).read_text()
    data = json.loads(text)
    return data["eliminations"] if isinstance(data, dict) else data
