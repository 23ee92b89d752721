"""Eventually periodic infinite reduced words u v^inf and their walls.

A root beta is followed along the word: gamma_0 = beta and
gamma_k = s_{i_k}(gamma_{k-1}).  The wall of beta is crossed at step k when
gamma_{k-1} is the simple root of the k-th letter.  After the prefix the
roots are only compared at period boundaries, where the period map
P = s_{v_m} ... s_{v_1} acts.

Whether the orbit of a wall under P is finite is decided exactly: the
finite-orbit vectors form the sum of the kernels of Phi_N(P) over the
cyclotomic polynomials that can occur.  A finite orbit repeats exactly at
some period boundary.  For an infinite orbit, the wall is certified never
crossed when gamma_J and gamma_{J-q} cannot both be inverted (B <= -1) or
gamma_J dominates gamma_{J-q}: a first crossing of gamma_{J-q} would be
preceded by a crossing of gamma_J on the same tail.

The same tracking continues through a crossing on the negated root, which
decides whether the wall passes through the limit point of the word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .automaton import reduced_word_dfa, small_roots
from .core import (CoxeterError, CoxeterMatrix, Root, Word, format_word,
                   root_system)
from .linalg import annihilates, finite_orbit_annihilator

MAX_SHIFT = 8


@dataclass(frozen=True)
class EPWord:
    """The infinite word prefix . period . period . ..."""

    prefix: Word
    period: Word

    def __post_init__(self):
        if not self.period:
            raise CoxeterError("period must be nonempty")
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))

    @classmethod
    def parse(cls, prefix: str, period: str, rank: int | None = None) -> "EPWord":
        from .core import parse_word
        return cls(parse_word(prefix, rank), parse_word(period, rank))

    def canonical(self) -> "EPWord":
        """Shortest prefix and primitive period describing the same sequence."""
        u, v = list(self.prefix), list(self.period)
        while u and u[-1] == v[-1]:
            u.pop()
            v = [v[-1]] + v[:-1]
        q = len(v)
        for p in range(1, q + 1):
            if q % p == 0 and v == v[:p] * (q // p):
                v = v[:p]
                break
        return EPWord(tuple(u), tuple(v))

    def letters(self, n: int) -> Word:
        """The first ``n`` letters."""
        u, v = self.prefix, self.period
        if n <= len(u):
            return u[:n]
        k = n - len(u)
        return u + v * (k // len(v)) + v[:k % len(v)]

    def check(self, rank: int):
        for a in self.prefix + self.period:
            if not (isinstance(a, int) and 1 <= a <= rank):
                raise CoxeterError(f"letter {a!r} out of range 1..{rank}")

    def __str__(self):
        tail = f"({format_word(self.period)})^inf"
        return f"{format_word(self.prefix)} {tail}" if self.prefix else tail


def ep_is_reduced(mat: CoxeterMatrix, w: EPWord) -> bool:
    w.check(mat.rank)
    dfa = reduced_word_dfa(mat)
    st = 0
    for a in w.prefix:
        st = dfa.step(st, a)
        if st is None:
            return False
    seen = set()
    while st not in seen:
        seen.add(st)
        for a in w.period:
            st = dfa.step(st, a)
            if st is None:
                return False
    return True


def require_reduced(mat: CoxeterMatrix, w: EPWord):
    if not ep_is_reduced(mat, w):
        raise CoxeterError(f"{w} is not an infinite reduced word")


# ---------------------------------------------------------------------------
# Wall classification


@dataclass(frozen=True)
class WallClass:
    kind: str  # "crossed" | "boundary" | "divergent" | "unknown"
    value: int  # crossing step, orbit length, certifying period, or step cap

    def __str__(self):
        return {
            "crossed": f"crossed at step {self.value}",
            "boundary": f"boundary (orbit length {self.value})",
            "divergent": f"divergent (certified at period {self.value})",
            "unknown": f"unknown (step cap {self.value})",
        }[self.kind]


@dataclass(frozen=True)
class Track:
    """Full history of one wall along a word."""

    crossed: int | None  # 1-based step at which the wall is crossed
    orbit: str  # "finite" | "infinite" | "unknown"
    value: int  # orbit length, certifying period, or step cap


def default_step_cap(mat: CoxeterMatrix, w: EPWord) -> int:
    return 64 * len(w.period) * len(small_roots(mat))


@lru_cache(maxsize=8192)
def period_annihilator(mat: CoxeterMatrix, period: Word) -> tuple:
    """Rows cutting out the vectors with a finite orbit under the period map."""
    rs = root_system(mat)
    return tuple(finite_orbit_annihilator(rs, [a - 1 for a in period]))


def _track(rs, w: EPWord, vec, depth: int, cap: int, stop_at_cross: bool) -> Track:
    """Follow ``vec`` (positive, of the given depth) along ``w``."""
    d = rs.d
    simple = rs.simple
    sign = rs.sign
    gamma = vec
    sgn = 1  # gamma = sgn * (positive root of depth ``depth``)
    crossed = None
    step = 0

    def move(s):
        nonlocal gamma, sgn, depth, crossed
        if sgn > 0 and gamma == simple[s]:
            crossed = step
            gamma = rs.neg(gamma)
            sgn = -1
            return
        new = rs.reflect(gamma, s)
        # depth changes by the sign of B(a_s, root): 2B = old_s - new_s
        diff = tuple(sgn * (a - b) for a, b in zip(gamma[s * d:(s + 1) * d], new[s * d:(s + 1) * d]))
        depth -= sign(diff)
        gamma = new

    for s in w.prefix:
        step += 1
        move(s - 1)
        if crossed is not None and stop_at_cross:
            return Track(crossed, "unknown", 0)
    finite = annihilates(rs, period_annihilator(rs.mat, w.period), gamma)
    period = [s - 1 for s in w.period]
    seen = {}
    hist = []  # (normalized root, depth) at period boundaries
    while True:
        norm = gamma if sgn > 0 else rs.neg(gamma)
        j = len(hist)
        if finite:
            if norm in seen:
                return Track(crossed, "finite", j - seen[norm])
            seen[norm] = j
        elif crossed is not None:
            return Track(crossed, "infinite", j)
        hist.append((norm, depth))
        if not finite and _never_crossed(rs, hist):
            return Track(None, "infinite", j)
        if step >= cap:
            return Track(crossed, "unknown", cap)
        for s in period:
            step += 1
            move(s)
            if crossed is not None and stop_at_cross:
                return Track(crossed, "unknown", 0)


def _never_crossed(rs, hist) -> bool:
    """Certificate that the (so far uncrossed) wall is never crossed.

    gamma_J and gamma_{J-q} see the same tail.  If no element inverts both
    (B <= -1), or gamma_J dominates gamma_{J-q}, a first crossing of
    gamma_{J-q} would be preceded by one of gamma_J, hence of gamma_{J-q}.
    """
    J = len(hist) - 1
    gJ, dJ = hist[J]
    for q in range(1, min(MAX_SHIFT, J) + 1):
        g, dg = hist[J - q]
        if rs.compare_form2(gJ, g, -2) <= 0:
            return True
        if dJ > dg and rs.compare_form2(gJ, g, 2) >= 0:
            return True
    return False


def _positive(mat, beta: Root):
    rs = root_system(mat)
    if len(beta.vec) != rs.n * rs.d or rs.root_sign(beta.vec) < 0:
        raise CoxeterError("expected a positive root")
    return rs


def track_root(mat: CoxeterMatrix, w: EPWord, beta: Root, cap: int | None = None) -> Track:
    rs = _positive(mat, beta)
    if cap is None:
        cap = default_step_cap(mat, w)
    return _track(rs, w, beta.vec, rs.depth(beta.vec), cap, stop_at_cross=False)


def root_membership(mat: CoxeterMatrix, w: EPWord, beta: Root, cap: int | None = None) -> WallClass:
    """Crossed, boundary, divergent or unknown for the wall of ``beta``."""
    rs = _positive(mat, beta)
    if cap is None:
        cap = default_step_cap(mat, w)
    t = _track(rs, w, beta.vec, rs.depth(beta.vec), cap, stop_at_cross=True)
    if t.crossed is not None:
        return WallClass("crossed", t.crossed)
    kind = {"finite": "boundary", "infinite": "divergent", "unknown": "unknown"}[t.orbit]
    return WallClass(kind, t.value)


def wall_contains_limit(mat: CoxeterMatrix, w: EPWord, beta: Root, cap: int | None = None):
    """True/False if the wall of ``beta`` passes through the limit point of ``w``,
    None if undecided within the step cap."""
    t = track_root(mat, w, beta, cap)
    return {"finite": True, "infinite": False, "unknown": None}[t.orbit]


def boundary_orbit(mat: CoxeterMatrix, w: EPWord, beta: Root) -> list:
    """The period-boundary roots of a boundary wall, one full orbit, starting after the prefix."""
    rs = root_system(mat)
    g = rs.apply_word(tuple(reversed([a - 1 for a in w.prefix])), beta.vec)
    g = g if rs.root_sign(g) > 0 else rs.neg(g)
    orbit = [g]
    per = tuple(reversed([a - 1 for a in w.period]))
    while True:
        g = rs.apply_word(per, g)
        g = g if rs.root_sign(g) > 0 else rs.neg(g)
        if g == orbit[0]:
            return [Root(x, rs) for x in orbit]
        orbit.append(g)


# ---------------------------------------------------------------------------
# Walls through the limit point


@dataclass(frozen=True)
class BoundarySet:
    roots: tuple  # Roots, sorted by depth then coordinates
    infinite: bool  # two of the walls are disjoint, so infinitely many walls
    incomplete: bool  # some probed root stayed unknown
    bound: int

    @property
    def flag(self) -> str:
        return "infinite" if self.infinite else "finite-so-far"


def _dot(rs, row, vec) -> tuple:
    d = rs.d
    acc = [0] * d
    for i in range(rs.n):
        a = row[i * d:(i + 1) * d]
        b = vec[i * d:(i + 1) * d]
        if any(a) and any(b):
            prod = (a[0] * b[0],) if d == 1 else rs.field.mul_raw(a, b)
            for t, y in enumerate(prod):
                acc[t] += y
    return tuple(acc)


def boundary_reflections(mat: CoxeterMatrix, w: EPWord, depth_bound: int) -> BoundarySet:
    """Walls of depth <= ``depth_bound`` through the limit point of ``w``.

    Crossed walls are included: whether the prefix crosses a wall does not
    move the limit point.  The test is exact, so the result is never
    incomplete; the flag is kept for callers that merge partial results.
    """
    w.check(mat.rank)
    require_reduced(mat, w)
    rs = root_system(mat)
    ann = period_annihilator(mat, w.period)
    roots = []
    if len(ann) < rs.n:
        # pull the rows back along u^-1 so each root costs one dot product
        inv_prefix = tuple(a - 1 for a in reversed(w.prefix))
        cols = [rs.apply_word(inv_prefix, e) for e in rs.simple]
        pulled = []
        for row in ann:
            flat = []
            for c in cols:
                flat.extend(_dot(rs, row, c))
            pulled.append(tuple(flat))
        for vec in rs.roots_up_to_depth(depth_bound):
            if annihilates(rs, pulled, vec):
                roots.append(vec)
    infinite = False
    for i in range(len(roots)):
        for j in range(i):
            lo = list(rs.form2(roots[i], roots[j]))
            hi = list(lo)
            lo[0] += 2
            hi[0] -= 2
            if rs.sign(lo) <= 0 or rs.sign(hi) >= 0:
                infinite = True
    return BoundarySet(tuple(Root(v, rs) for v in roots), infinite, False, depth_bound)
