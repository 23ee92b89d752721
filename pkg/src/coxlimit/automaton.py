"""Small roots, dominance, and the reduced-word automaton built from them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .core import (CoxeterError, CoxeterMatrix, Root, Word, inversion_roots,
                   reduce_word, root_system)

NEGATIVE = "negative"
ESCAPED = "escaped"

DEFAULT_SMALL_ROOT_CAP = 10_000


class ResourceBoundExceeded(CoxeterError):
    pass


def dominates(rs, beta, gamma) -> bool:
    """beta dominates gamma (raw vectors): B(beta, gamma) >= 1 and dp(beta) >= dp(gamma)."""
    if beta == gamma:
        return False
    if rs.compare_form2(beta, gamma, 2) < 0:
        return False
    return rs.depth(beta) >= rs.depth(gamma)


def dominance_test(mat: CoxeterMatrix, beta: Root, gamma: Root) -> bool:
    """Whether every element sending ``beta`` negative also sends ``gamma`` negative.

    Decided by the criterion B(beta, gamma) >= 1, with the deeper root the
    dominating one.
    """
    rs = root_system(mat)
    if not (rs.is_positive(beta.vec) and rs.is_positive(gamma.vec)):
        raise CoxeterError("dominance is defined on positive roots")
    return dominates(rs, beta.vec, gamma.vec)


@dataclass(frozen=True)
class SmallRootSet:
    mat: CoxeterMatrix
    roots: tuple  # raw vectors; the first ``rank`` are the simple roots
    transition: dict  # (root index, generator 0-based) -> index | NEGATIVE | ESCAPED
    dominance: frozenset  # (root index, generator): s(root) dominates a_s

    def __len__(self):
        return len(self.roots)

    def index(self, vec):
        return self._index.get(vec)

    @property
    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {v: i for i, v in enumerate(self.roots)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def root_objects(self) -> list:
        rs = root_system(self.mat)
        return [Root(v, rs) for v in self.roots]


def build_small_roots(mat: CoxeterMatrix, cap: int = DEFAULT_SMALL_ROOT_CAP) -> SmallRootSet:
    """Close the simple roots under reflections that neither negate nor dominate."""
    rs = root_system(mat)
    roots = list(rs.simple)
    index = {v: i for i, v in enumerate(roots)}
    trans = {}
    dom = set()
    todo = deque(range(len(roots)))
    while todo:
        i = todo.popleft()
        beta = roots[i]
        for s in range(rs.n):
            if beta == rs.simple[s]:
                trans[(i, s)] = NEGATIVE
                continue
            c = rs.form2(rs.simple[s], beta)
            sg = rs.sign(c)
            if sg == 0:
                trans[(i, s)] = i
                continue
            img = rs.reflect(beta, s)
            if sg < 0:
                lo = list(c)
                lo[0] += 2
                if rs.sign(lo) <= 0:
                    # B(a_s, beta) <= -1: s(beta) dominates a_s
                    trans[(i, s)] = ESCAPED
                    dom.add((i, s))
                    continue
            j = index.get(img)
            if j is None:
                j = index[img] = len(roots)
                roots.append(img)
                if len(roots) > cap:
                    raise ResourceBoundExceeded(f"small-root count exceeds cap {cap}")
                todo.append(j)
            trans[(i, s)] = j
    srs = SmallRootSet(mat, tuple(roots), trans, frozenset(dom))
    object.__setattr__(srs, "_idx", index)
    return srs


@lru_cache(maxsize=64)
def small_roots(mat: CoxeterMatrix) -> SmallRootSet:
    return build_small_roots(mat)


@dataclass(frozen=True)
class ReducedWordDFA:
    """States are sets of small roots sent negative by the current element."""

    srs: SmallRootSet
    states: tuple  # frozensets of small-root indices; states[0] is the start
    delta: dict  # (state id, generator 0-based) -> state id; missing = not reduced

    @property
    def mat(self):
        return self.srs.mat

    def step(self, state: int, letter: int):
        """Next state for a 1-based letter, or None if the word stops being reduced."""
        return self.delta.get((state, letter - 1))

    def to_dot(self) -> str:
        lines = ["digraph automaton {", "  rankdir=LR;"]
        for k, st in enumerate(self.states):
            label = "{" + ",".join(str(i + 1) for i in sorted(st)) + "}"
            lines.append(f'  q{k} [label="{label}"];')
        for (k, s), t in sorted(self.delta.items()):
            lines.append(f'  q{k} -> q{t} [label="{s + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _next_state(srs: SmallRootSet, state: frozenset, s: int):
    si = s  # simple roots are the first entries
    if si in state:
        return None
    new = {si}
    for b in state:
        t = srs.transition[(b, s)]
        if isinstance(t, int):
            new.add(t)
    return frozenset(new)


def build_dfa(srs: SmallRootSet, state_cap: int = 200_000) -> ReducedWordDFA:
    n = srs.mat.rank
    start = frozenset()
    ids = {start: 0}
    states = [start]
    delta = {}
    todo = deque([start])
    while todo:
        st = todo.popleft()
        k = ids[st]
        for s in range(n):
            nxt = _next_state(srs, st, s)
            if nxt is None:
                continue
            j = ids.get(nxt)
            if j is None:
                j = ids[nxt] = len(states)
                states.append(nxt)
                if len(states) > state_cap:
                    raise ResourceBoundExceeded("automaton state count exceeds cap")
                todo.append(nxt)
            delta[(k, s)] = j
    return ReducedWordDFA(srs, tuple(states), delta)


@lru_cache(maxsize=64)
def reduced_word_dfa(mat: CoxeterMatrix) -> ReducedWordDFA:
    return build_dfa(small_roots(mat))


def is_reduced_fast(dfa: ReducedWordDFA, word: Word) -> bool:
    st = 0
    for a in word:
        if not 1 <= a <= dfa.mat.rank:
            raise CoxeterError(f"letter {a} out of range")
        st = dfa.step(st, a)
        if st is None:
            return False
    return True


def normal_form(dfa: ReducedWordDFA, word: Word) -> Word:
    """ShortLex-least reduced word (1 < 2 < ... < n) of the element of ``word``."""
    mat = dfa.mat
    rs = root_system(mat)
    w = list(reduce_word(mat, tuple(word)))
    out = []
    while w:
        invs = [r.vec for r in inversion_roots(mat, tuple(w))]
        for s in range(rs.n):
            if rs.simple[s] in invs:
                j = invs.index(rs.simple[s])
                out.append(s + 1)
                del w[j]
                break
    return tuple(out)
