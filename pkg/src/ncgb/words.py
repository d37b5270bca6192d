"""Words over a graded alphabet, the degree-lexicographic order, Lyndon words
and normal words modulo a monomial antichain.

A word is stored as a ``str`` whose characters encode letters by precedence:
the letter of rank ``r`` is ``chr(97 + r)``.  With the default alphabet
``x1 < x2`` this makes ``x1 = 'a'`` and ``x2 = 'b'``, and string comparison of
two words of the same multidegree is exactly the lexicographic order in which
a greater letter wins at the first difference.  The empty string is the unit
word.

>>> X = Alphabet.standard(2)
>>> w = X.parse("x2*x1^2")
>>> w, X.degree(w), X.render(w)
('baa', (2, 1), 'x2*x1^2')
>>> [X.render(u) for u in lyndon_factorize(X.parse("x1*x2*x1"))]
['x1', 'x2*x1']
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Alphabet",
    "Antichain",
    "FactorAutomaton",
    "compare_deglex",
    "deglex_key",
    "is_lyndon",
    "lyndon_factorize",
    "normal_words",
    "plex_greater",
]

_BASE = 97


@dataclass(frozen=True)
class Alphabet:
    """Letters with multidegrees and a precedence order.

    ``names[i]`` has degree ``grading[i]``; ``ranks[i]`` is its precedence
    (higher rank means greater letter).
    """

    names: tuple
    grading: tuple
    ranks: tuple = None
    _by_rank: tuple = field(init=False, repr=False, compare=False)
    _cache: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise ValueError("alphabet is empty")
        if len(set(self.names)) != n:
            raise ValueError("letter names must be distinct")
        if len(self.grading) != n:
            raise ValueError("one degree per letter")
        grading = tuple(tuple(int(x) for x in g) for g in self.grading)
        s = len(grading[0])
        for g in grading:
            if len(g) != s or any(x < 0 for x in g) or not any(g):
                raise ValueError(f"bad letter degree {g}")
        object.__setattr__(self, "grading", grading)
        ranks = tuple(range(n)) if self.ranks is None else tuple(self.ranks)
        if sorted(ranks) != list(range(n)):
            raise ValueError("precedence must rank every letter once")
        object.__setattr__(self, "ranks", ranks)
        by_rank = [0] * n
        for i, r in enumerate(ranks):
            by_rank[r] = i
        object.__setattr__(self, "_by_rank", tuple(by_rank))
        object.__setattr__(self, "_cache", {})

    @classmethod
    def standard(cls, n: int = 2) -> "Alphabet":
        """``x1 .. xn`` with ``deg(x_i) = e_i`` and ``x1 < x2 < ...``."""
        grading = tuple(tuple(int(i == k) for k in range(n)) for i in range(n))
        return cls(tuple(f"x{i + 1}" for i in range(n)), grading)

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def nvars(self) -> int:
        return len(self.grading[0])

    def code(self, i: int) -> str:
        """Character encoding letter index ``i``."""
        return chr(_BASE + self.ranks[i])

    def index(self, ch: str) -> int:
        return self._by_rank[ord(ch) - _BASE]

    def letters(self) -> list:
        """Letter codes in increasing precedence."""
        return [chr(_BASE + r) for r in range(self.size)]

    def letter_degree(self, ch: str) -> tuple:
        return self.grading[self.index(ch)]

    def word(self, *indices: int) -> str:
        return "".join(self.code(i) for i in indices)

    def degree(self, w: str) -> tuple:
        cache = self._cache
        d = cache.get(w)
        if d is None:
            s = self.nvars
            acc = [0] * s
            for ch in set(w):
                c = w.count(ch)
                g = self.grading[self.index(ch)]
                for k in range(s):
                    acc[k] += c * g[k]
            d = tuple(acc)
            if len(cache) < 200000:
                cache[w] = d
        return d

    def total(self, w: str) -> int:
        return sum(self.degree(w))

    def render(self, w: str) -> str:
        """``x2*x1^2`` style; the unit word renders as ``1``."""
        if not w:
            return "1"
        parts = []
        for m in re.finditer(r"(.)\1*", w):
            name = self.names[self.index(m.group(1))]
            k = len(m.group(0))
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts)

    def parse(self, text: str) -> str:
        """Inverse of :meth:`render`; also accepts juxtaposed letters."""
        text = text.strip()
        if text in ("", "1"):
            return ""
        names = sorted(self.names, key=len, reverse=True)
        pat = re.compile(r"\s*(" + "|".join(map(re.escape, names)) + r")(?:\^(\d+))?\s*\*?")
        out, pos = [], 0
        lookup = {nm: i for i, nm in enumerate(self.names)}
        while pos < len(text):
            m = pat.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse word {text!r} at position {pos}")
            out.append(self.code(lookup[m.group(1)]) * int(m.group(2) or 1))
            pos = m.end()
        return "".join(out)

    def swap(self, a: int = 0, b: int = 1) -> str:
        """Translation table exchanging letters ``a`` and ``b``."""
        ca, cb = self.code(a), self.code(b)
        return str.maketrans({ca: cb, cb: ca})


def deglex_key(w: str, alphabet: Alphabet) -> tuple:
    """Sort key of the degree-lexicographic order.

    Greater total degree wins; ties are broken by the multidegree compared from
    the last component backwards, then lexicographically.
    """
    d = alphabet.degree(w)
    return (sum(d), d[::-1], w)


def compare_deglex(u: str, v: str, alphabet: Alphabet) -> int:
    """-1, 0 or 1 as ``u`` is smaller than, equal to or greater than ``v``."""
    ku, kv = deglex_key(u, alphabet), deglex_key(v, alphabet)
    return (ku > kv) - (ku < kv)


def sort_deglex(words: Iterable[str], alphabet: Alphabet, reverse: bool = False) -> list:
    return sorted(words, key=lambda w: deglex_key(w, alphabet), reverse=reverse)


def is_lyndon(u: str) -> bool:
    """True when ``u`` is strictly greater than each of its proper rotations.

    Here the comparison is the lexicographic order with greater letters
    winning, so ``x2*x1^2`` is Lyndon and ``x1*x2`` is not.
    """
    if not u:
        return False
    return all(u > u[k:] + u[:k] for k in range(1, len(u)))


def plex_greater(u: str, v: str) -> bool:
    """``u`` is a proper prefix of ``v``, or wins at the first difference."""
    if len(u) < len(v) and v.startswith(u):
        return True
    for a, b in zip(u, v):
        if a != b:
            return a > b
    return False


def lyndon_factorize(u: str) -> list:
    """Factor ``u`` as a product of Lyndon words ``u1 u2 ...`` with each factor
    not greater than the next in the prefix-extended order.

    This is Duval's algorithm run with the letter comparison reversed.
    """
    out = []
    n, i = len(u), 0
    while i < n:
        j, k = i + 1, i
        while j < n and u[k] >= u[j]:
            k = i if u[k] > u[j] else k + 1
            j += 1
        while i <= k:
            out.append(u[i : i + j - k])
            i += j - k
    return out


class Antichain(frozenset):
    """A finite set of nonempty words none of which is a factor of another."""

    def __new__(cls, words: Iterable[str] = ()):
        ws = frozenset(words)
        for w in ws:
            if not w:
                raise ValueError("the unit word cannot be an obstruction")
        for u in ws:
            for v in ws:
                if u != v and u in v:
                    raise ValueError(f"{u!r} is a factor of {v!r}")
        return super().__new__(cls, ws)


class FactorAutomaton:
    """Aho-Corasick automaton recognising words that contain a factor in ``V``.

    State 0 is the root.  ``dead[s]`` is true when the path to ``s`` ends with
    some word of ``V``; transitions are total over the alphabet.
    """

    def __init__(self, words: Iterable[str], alphabet: Alphabet):
        self.alphabet = alphabet
        self.letters = alphabet.letters()
        goto: list[dict] = [{}]
        out: list[bool] = [False]
        depth: list[int] = [0]
        for w in words:
            s = 0
            for ch in w:
                nxt = goto[s].get(ch)
                if nxt is None:
                    nxt = len(goto)
                    goto[s][ch] = nxt
                    goto.append({})
                    out.append(False)
                    depth.append(depth[s] + 1)
                s = nxt
            out[s] = True
        fail = [0] * len(goto)
        delta = [dict() for _ in goto]
        queue = deque()
        for ch in self.letters:
            t = goto[0].get(ch)
            if t is None:
                delta[0][ch] = 0
            else:
                delta[0][ch] = t
                queue.append(t)
        while queue:
            s = queue.popleft()
            out[s] = out[s] or out[fail[s]]
            for ch in self.letters:
                t = goto[s].get(ch)
                if t is None:
                    delta[s][ch] = delta[fail[s]][ch]
                else:
                    fail[t] = delta[fail[s]][ch]
                    delta[s][ch] = t
                    queue.append(t)
        self.delta = delta
        self.dead = out
        self.depth = depth

    def __len__(self) -> int:
        return len(self.delta)

    def run(self, w: str, state: int = 0) -> int:
        for ch in w:
            state = self.delta[state][ch]
            if self.dead[state]:
                return state
        return state

    def contains_factor(self, w: str) -> bool:
        return self.dead[self.run(w)]

    def live_states(self) -> list:
        return [s for s in range(len(self.delta)) if not self.dead[s]]


def normal_words(V: Iterable[str], beta: Sequence[int], alphabet: Alphabet) -> list:
    """All words of multidegree ``beta`` with no factor in ``V``, sorted in
    descending deg-lex order."""
    beta = tuple(beta)
    auto = FactorAutomaton(V, alphabet)
    letters = [(ch, alphabet.letter_degree(ch)) for ch in reversed(auto.letters)]
    out = []

    def walk(state: int, rest: tuple, prefix: list):
        if not any(rest):
            out.append("".join(prefix))
            return
        for ch, g in letters:
            r = tuple(a - b for a, b in zip(rest, g))
            if min(r) < 0:
                continue
            t = auto.delta[state][ch]
            if auto.dead[t]:
                continue
            prefix.append(ch)
            walk(t, r, prefix)
            prefix.pop()

    walk(0, beta, [])
    return out


def words_of_degree(beta: Sequence[int], alphabet: Alphabet) -> list:
    return normal_words((), beta, alphabet)

