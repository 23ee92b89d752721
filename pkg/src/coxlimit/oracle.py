"""Brute-force ground truth built only from the Coxeter presentation.

Elements are represented by their full set of reduced words.  By the
Matsumoto-Tits theorem the reduced words of an element form one class under
braid moves, and ``ws`` is reduced iff no reduced word of ``w`` ends in
``s``.  Nothing here touches roots, the small-root automaton or the ring
arithmetic, so disagreements localize to the fast paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import INF, CoxeterError, CoxeterMatrix


def shortlex_key(word):
    return (len(word), word)


class OracleError(CoxeterError):
    pass


class OracleGroup:
    """Word problem for a Coxeter group via braid-move closures."""

    def __init__(self, mat: CoxeterMatrix, class_cap: int = 200000):
        self.mat = mat
        self.n = mat.rank
        self.class_cap = class_cap
        self._classes: dict = {(): frozenset({()})}
        self._braids = {}
        for a in range(1, self.n + 1):
            for b in range(1, self.n + 1):
                m = mat.m(a - 1, b - 1)
                if a != b and m != INF:
                    self._braids[(a, b)] = m

    def _closure(self, word) -> frozenset:
        seen = {word}
        todo = [word]
        while todo:
            w = todo.pop()
            k = len(w)
            for i in range(k - 1):
                a, b = w[i], w[i + 1]
                m = self._braids.get((a, b))
                if m is None or i + m > k:
                    continue
                ok = all(w[i + t] == (a if t % 2 == 0 else b) for t in range(m))
                if not ok:
                    continue
                repl = tuple(b if t % 2 == 0 else a for t in range(m))
                nw = w[:i] + repl + w[i + m:]
                if nw not in seen:
                    seen.add(nw)
                    todo.append(nw)
                    if len(seen) > self.class_cap:
                        raise OracleError("reduced-word class exceeds cap")
        return frozenset(seen)

    def reduced_words(self, word) -> frozenset:
        """All reduced words of the element represented by a reduced ``word``."""
        cls = self._classes.get(word)
        if cls is None:
            cls = self._closure(word)
            key = min(cls, key=shortlex_key)
            self._classes[key] = cls
            for w in cls:
                self._classes[w] = cls
        return cls

    def extend(self, cls: frozenset, s: int):
        """Class of ``w*s`` and whether the length went up."""
        for w in cls:
            if w and w[-1] == s:
                return self.reduced_words(w[:-1]), False
        rep = next(iter(cls))
        return self.reduced_words(rep + (s,)), True

    def element(self, word) -> frozenset:
        cls = self._classes[()]
        for s in word:
            cls, _ = self.extend(cls, s)
        return cls

    def normal_form(self, word) -> tuple:
        return min(self.element(word), key=shortlex_key)

    def is_reduced(self, word) -> bool:
        cls = self._classes[()]
        for s in word:
            cls, up = self.extend(cls, s)
            if not up:
                return False
        return True

    def length(self, word) -> int:
        return len(next(iter(self.element(word))))

    def multiply(self, u, v) -> tuple:
        return self.normal_form(tuple(u) + tuple(v))

    def inverse(self, u) -> tuple:
        return self.normal_form(tuple(reversed(u)))


@dataclass
class CayleySlice:
    """Ball of radius ``n`` in the Cayley graph, elements as ShortLex normal forms."""

    radius: int
    elements: list = field(default_factory=list)  # normal forms, by length then lex
    length: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)  # (nf, s) -> nf of nf*s, within the ball

    def count_by_length(self) -> list:
        out = [0] * (self.radius + 1)
        for w in self.elements:
            out[self.length[w]] += 1
        return out

    def check_consistency(self) -> bool:
        """Up-edges out of level k equal right descents summed over level k+1."""
        ups = [0] * (self.radius + 1)
        downs = [0] * (self.radius + 1)
        for (w, s), u in self.edges.items():
            if self.length[u] == self.length[w] + 1:
                ups[self.length[w]] += 1
            else:
                downs[self.length[w]] += 1
        return all(ups[k] == downs[k + 1] for k in range(self.radius))


_GROUPS: dict = {}


def oracle_group(mat: CoxeterMatrix) -> OracleGroup:
    g = _GROUPS.get(mat)
    if g is None:
        g = _GROUPS[mat] = OracleGroup(mat)
    return g


def bfs_elements(mat: CoxeterMatrix, n: int) -> CayleySlice:
    g = oracle_group(mat)
    sl = CayleySlice(radius=n)
    sl.elements.append(())
    sl.length[()] = 0
    level = [()]
    for k in range(n):
        nxt = {}
        for w in level:
            cls = g.reduced_words(w)
            for s in range(1, g.n + 1):
                c2, up = g.extend(cls, s)
                nf = min(c2, key=shortlex_key)
                if up:
                    nxt[nf] = True
                sl.edges[(w, s)] = nf
        level = sorted(nxt, key=shortlex_key)
        for w in level:
            sl.length[w] = k + 1
        sl.elements.extend(level)
    for w in level:
        cls = g.reduced_words(w)
        for s in range(1, g.n + 1):
            c2, up = g.extend(cls, s)
            if not up:
                sl.edges[(w, s)] = min(c2, key=shortlex_key)
    return sl


def all_reduced_words(mat: CoxeterMatrix, word) -> set:
    g = oracle_group(mat)
    return set(g.element(tuple(word)))


def weak_order_brute(mat: CoxeterMatrix, n: int) -> dict:
    """{u: set of w} with u <= w iff some reduced word of w starts with one of u
    (reachability by length-increasing right multiplication), on the ball of radius n."""
    sl = bfs_elements(mat, n)
    up = {w: [] for w in sl.elements}
    for (w, s), u in sl.edges.items():
        if u in sl.length and sl.length[u] == sl.length[w] + 1:
            up[w].append(u)
    out = {}
    for w in reversed(sl.elements):
        reach = {w}
        for u in up[w]:
            reach |= out[u]
        out[w] = reach
    return out


def reflection_closure_brute(mat: CoxeterMatrix, reflections, cap: int = 200) -> set:
    """Close a set of reflections (given as words) under mutual conjugation."""
    g = oracle_group(mat)
    todo = deque(g.normal_form(tuple(r)) for r in reflections)
    found = set(todo)
    while todo:
        r = todo.popleft()
        for t in list(found):
            for x in (g.normal_form(r + t + r), g.normal_form(t + r + t)):
                if x not in found:
                    found.add(x)
                    todo.append(x)
                    if len(found) > cap:
                        raise OracleError("reflection closure exceeds cap")
    return found


def canonical_reflections_brute(mat: CoxeterMatrix, closure) -> set:
    """Dyer's canonical generators: t with N(t) meeting the reflection set only in t,
    where r is in N(t) iff l(r t) < l(t)."""
    g = oracle_group(mat)
    out = set()
    for t in closure:
        lt = len(t)
        if all(r == t or g.length(r + t) >= lt for r in closure):
            out.add(t)
    return out


def subgroup_elements_brute(mat: CoxeterMatrix, generators, cap: int = 5000) -> dict:
    """Elements of the subgroup generated by ``generators`` (words) with their
    length over those generators; BFS over normal forms."""
    g = oracle_group(mat)
    gens = [g.normal_form(tuple(x)) for x in generators]
    dist = {(): 0}
    todo = deque([()])
    while todo:
        w = todo.popleft()
        for x in gens:
            u = g.normal_form(w + x)
            if u not in dist:
                dist[u] = dist[w] + 1
                todo.append(u)
                if len(dist) > cap:
                    raise OracleError("subgroup exceeds cap")
    return dist
