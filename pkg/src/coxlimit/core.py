"""Coxeter matrices, the geometric representation, roots and finite words.

Words are tuples of 1-based generator labels.  Internally a root is a flat
tuple of integers: ``rank`` blocks of ``degree`` coefficients each, one
block per simple root, each block an element of Z[2cos(pi/L)].  Roots of the
standard geometric representation always have coordinates in that ring, so
the hot paths never touch Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from itertools import combinations
from typing import Iterable, Sequence

from .ring import CyclotomicRealField, RingElement, format_coeffs

INF = math.inf

Word = tuple  # tuple[int, ...] of 1-based generator labels


class CoxeterError(ValueError):
    """Invalid Coxeter data or a request outside an operation's domain."""


class FiniteGroupError(CoxeterError):
    """Infinite-word operation requested for a finite Coxeter group."""


# ---------------------------------------------------------------------------
# Coxeter matrices


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise CoxeterError("rank 0 Coxeter matrix")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise CoxeterError(f"row {i + 1} has {len(row)} entries, expected {n}")
            for j, m in enumerate(row):
                if i == j:
                    if m != 1:
                        raise CoxeterError(f"diagonal entry ({i + 1},{i + 1}) must be 1")
                elif not (m == INF or (isinstance(m, int) and m >= 2)):
                    raise CoxeterError(f"entry ({i + 1},{j + 1}) = {m} is not a valid label")
                if self.entries[j][i] != m:
                    raise CoxeterError(f"matrix not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def from_rows(cls, rows) -> "CoxeterMatrix":
        norm = tuple(tuple(INF if (m == 0 or m == INF) and i != j else int(m)
                           for j, m in enumerate(row)) for i, row in enumerate(rows))
        return cls(norm)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def m(self, i: int, j: int):
        """Label m_ij for 0-based indices."""
        return self.entries[i][j]

    @property
    def modulus(self) -> int:
        """L = lcm of the finite off-diagonal labels (1 if there are none)."""
        labels = [m for i, row in enumerate(self.entries) for j, m in enumerate(row)
                  if i != j and m != INF]
        return reduce(math.lcm, labels, 1)

    def restrict(self, subset: Sequence[int]) -> "CoxeterMatrix":
        """Matrix of the special subgroup on 0-based ``subset`` (order kept)."""
        return CoxeterMatrix(tuple(tuple(self.entries[i][j] for j in subset) for i in subset))

    def to_text(self) -> str:
        lines = [str(self.rank)]
        for row in self.entries:
            lines.append(" ".join("inf" if m == INF else str(m) for m in row))
        return "\n".join(lines) + "\n"


def parse_coxeter_matrix(text: str) -> CoxeterMatrix:
    """Parse the plain-text matrix format (``0`` and ``inf`` both mean infinity)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CoxeterError("empty Coxeter matrix file")
    try:
        n = int(lines[0])
    except ValueError:
        raise CoxeterError(f"malformed rank line {lines[0]!r}") from None
    if n <= 0:
        raise CoxeterError("rank 0 Coxeter matrix")
    if len(lines) - 1 != n:
        raise CoxeterError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = []
        for tok in ln.split():
            if tok.lower() == "inf":
                row.append(INF)
                continue
            try:
                v = int(tok)
            except ValueError:
                raise CoxeterError(f"malformed token {tok!r}") from None
            if v < 0:
                raise CoxeterError(f"malformed token {tok!r}")
            row.append(INF if v == 0 else v)
        rows.append(tuple(row))
    return CoxeterMatrix(tuple(rows))


def load_coxeter_matrix(path) -> CoxeterMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_coxeter_matrix(fh.read())


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse whitespace-separated 1-based generator labels."""
    letters = []
    for tok in text.split():
        try:
            a = int(tok)
        except ValueError:
            raise CoxeterError(f"malformed word letter {tok!r}") from None
        if a < 1 or (rank is not None and a > rank):
            raise CoxeterError(f"letter {a} out of range")
        letters.append(a)
    return tuple(letters)


def format_word(word: Iterable[int]) -> str:
    return " ".join(str(a) for a in word)


# ---------------------------------------------------------------------------
# Roots


class Root:
    """A root of the geometric representation.

    ``vec`` is the flat integer coefficient tuple; equality and hashing only
    look at it, so roots from the same system compare exactly.
    """

    __slots__ = ("vec", "system")

    def __init__(self, vec, system: "RootSystem"):
        self.vec = vec
        self.system = system

    def __eq__(self, other):
        return isinstance(other, Root) and other.vec == self.vec

    def __hash__(self):
        return hash(self.vec)

    def __lt__(self, other):
        return self.system.sort_key(self.vec) < self.system.sort_key(other.vec)

    @property
    def coords(self) -> tuple:
        return self.system.coords(self.vec)

    @property
    def depth(self) -> int:
        return self.system.depth(self.vec)

    def is_positive(self) -> bool:
        return self.system.root_sign(self.vec) > 0

    def __neg__(self):
        return Root(tuple(-x for x in self.vec), self.system)

    def __repr__(self):
        return f"Root({self.system.format(self.vec)})"

    def __str__(self):
        return self.system.format(self.vec)


class RootSystem:
    """Exact geometric representation of a Coxeter system.

    Use :func:`root_system` to get the shared, cached instance for a matrix.
    Indices here are 0-based.
    """

    def __init__(self, mat: CoxeterMatrix):
        self.mat = mat
        self.n = n = mat.rank
        self.field = CyclotomicRealField(mat.modulus)
        self.d = d = self.field.degree
        # k[i][j] = -2B(a_i, a_j) as coefficient tuple; None when zero
        self.k = [[None] * n for _ in range(n)]
        self._nbrs = [[] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                m = mat.m(i, j)
                if m == 2:
                    continue
                if m == INF:
                    c = (2,) + (0,) * (d - 1)
                else:
                    c = self.field.cos_coeffs(m)
                self.k[i][j] = c
                self._nbrs[i].append((j, c[0] if d == 1 else c))
        self.simple = []
        for i in range(n):
            v = [0] * (n * d)
            v[i * d] = 1
            self.simple.append(tuple(v))
        self._simple_index = {v: i for i, v in enumerate(self.simple)}
        self._depth = {v: 1 for v in self.simple}
        self._layers = [list(self.simple)]
        self._layered = set(self.simple)
        self._zero = (0,) * (n * d)

    # -- coefficient helpers ------------------------------------------------

    def _mul_block(self, c, block):
        return self.field.mul_raw(c, block)

    def block(self, vec, i):
        d = self.d
        return vec[i * d:(i + 1) * d]

    def coords(self, vec) -> tuple:
        return tuple(RingElement(self.field, self.block(vec, i)) for i in range(self.n))

    def from_coords(self, coords) -> tuple:
        out = []
        for c in coords:
            e = self.field(c)
            if any(not isinstance(x, int) for x in e.coeffs):
                raise CoxeterError("root coordinates must lie in Z[2cos(pi/L)]")
            out.extend(e.coeffs)
        return tuple(out)

    def root(self, vec) -> Root:
        return Root(vec, self)

    def simple_root(self, i: int) -> Root:
        return Root(self.simple[i], self)

    def simple_index(self, vec):
        """0-based index if ``vec`` is a simple root, else None."""
        return self._simple_index.get(vec)

    # -- the representation -------------------------------------------------

    def reflect(self, vec, i):
        """s_i(v) = v - 2B(a_i, v) a_i."""
        n, d = self.n, self.d
        if d == 1:
            acc = -vec[i]
            for j, c in self._nbrs[i]:
                x = vec[j]
                if x:
                    acc += c * x
            return vec[:i] + (acc,) + vec[i + 1:]
        acc = [-x for x in vec[i * d:(i + 1) * d]]
        for j, c in self._nbrs[i]:
            b = vec[j * d:(j + 1) * d]
            if any(b):
                for t, y in enumerate(self.field.mul_raw(c, b)):
                    acc[t] += y
        return vec[:i * d] + tuple(acc) + vec[(i + 1) * d:]

    def apply_word(self, word_idx, vec):
        """Apply s_{w1} s_{w2} ... s_{wk} (0-based letters) to ``vec``."""
        for i in reversed(word_idx):
            vec = self.reflect(vec, i)
        return vec

    def form2(self, u, v) -> tuple:
        """Coefficients of 2B(u, v)."""
        n, d = self.n, self.d
        acc = [0] * d
        for i in range(n):
            ui = u[i * d:(i + 1) * d]
            if not any(ui):
                continue
            # (G v)_i = 2 v_i - sum_j k_ij v_j
            gi = [2 * x for x in v[i * d:(i + 1) * d]]
            for j, c in self._nbrs[i]:
                vj = v[j * d:(j + 1) * d]
                if any(vj):
                    prod = (c * vj[0],) if d == 1 else self.field.mul_raw(c, vj)
                    for t, y in enumerate(prod):
                        gi[t] -= y
            prod = (ui[0] * gi[0],) if d == 1 else self.field.mul_raw(ui, gi)
            for t, y in enumerate(prod):
                acc[t] += y
        return tuple(acc)

    def form(self, u, v) -> RingElement:
        """B(u, v) as a ring element."""
        return RingElement(self.field, self.form2(u, v)) / 2

    def sign(self, coeffs) -> int:
        return self.field.sign_raw(coeffs)

    def compare_form2(self, u, v, value: int) -> int:
        """Sign of 2B(u, v) - value."""
        c = list(self.form2(u, v))
        c[0] -= value
        return self.sign(c)

    def root_sign(self, vec) -> int:
        """+1 for a positive root, -1 for a negative one; raises on mixed signs."""
        d = self.d
        pos = neg = False
        for i in range(self.n):
            b = vec[i * d:(i + 1) * d]
            if not any(b):
                continue
            s = b[0] if d == 1 else self.sign(b)
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
        if pos and neg:
            raise CoxeterError("vector has mixed signs; not a root")
        if not pos and not neg:
            raise CoxeterError("zero vector is not a root")
        return 1 if pos else -1

    def is_positive(self, vec) -> bool:
        return self.root_sign(vec) > 0

    def neg(self, vec):
        return tuple(-x for x in vec)

    def coordinate_sum(self, vec) -> tuple:
        d = self.d
        acc = [0] * d
        for i in range(self.n):
            for t in range(d):
                acc[t] += vec[i * d + t]
        return tuple(acc)

    def descent(self, vec):
        """Some s with B(a_s, v) > 0 (depth-decreasing), or None if simple."""
        if vec in self._simple_index:
            return None
        for s in range(self.n):
            if self.sign(self.form2(self.simple[s], vec)) > 0:
                return s
        raise CoxeterError("positive non-simple root without descent")

    def depth(self, vec) -> int:
        """Minimal length of a word inverting the positive root ``vec``."""
        got = self._depth.get(vec)
        if got is not None:
            return got
        path = []
        v = vec
        while v not in self._depth:
            s = self.descent(v)
            path.append(v)
            v = self.reflect(v, s)
        base = self._depth[v]
        for k, u in enumerate(reversed(path)):
            self._depth[u] = base + k + 1
        return self._depth[vec]

    def descent_path(self, vec):
        """(letters, t) with vec = s_{l1} ... s_{lk} a_t (0-based)."""
        letters = []
        v = vec
        while True:
            s = self.descent(v)
            if s is None:
                return tuple(letters), self._simple_index[v]
            letters.append(s)
            v = self.reflect(v, s)

    def roots_up_to_depth(self, depth: int) -> list:
        """All positive roots of depth <= ``depth``, ordered by depth."""
        while len(self._layers) < depth:
            last = self._layers[-1]
            seen = set()
            nxt = []
            for v in last:
                for s in range(self.n):
                    if self.sign(self.form2(self.simple[s], v)) < 0:
                        w = self.reflect(v, s)
                        if w not in seen and w not in self._layered:
                            seen.add(w)
                            nxt.append(w)
            dp = len(self._layers) + 1
            for w in nxt:
                self._depth[w] = dp
            self._layered.update(nxt)
            nxt.sort(key=self.sort_key)
            self._layers.append(nxt)
        out = []
        for layer in self._layers[:depth]:
            out.extend(layer)
        return out

    def sort_key(self, vec):
        # by depth, then larger coefficients on earlier simple roots first
        return (self.depth(vec) if self.root_sign(vec) > 0 else 0, tuple(-x for x in vec))

    def format(self, vec) -> str:
        d = self.d
        terms = []
        for i in range(self.n):
            b = vec[i * d:(i + 1) * d]
            if not any(b):
                continue
            s = format_coeffs(b)
            if s == "1":
                terms.append(f"a{i + 1}")
            elif s == "-1":
                terms.append(f"-a{i + 1}")
            elif len([x for x in b if x]) > 1:
                terms.append(f"({s})a{i + 1}")
            else:
                terms.append(f"{s}a{i + 1}")
        out = terms[0] if terms else "0"
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    # -- group elements -----------------------------------------------------

    def walker(self):
        return _Walker(self)

    def reflection_vec_action(self, beta, vec):
        """r_beta(v) = v - 2B(beta, v) beta for a root beta."""
        c = self.form2(beta, vec)
        if not any(c):
            return vec
        d = self.d
        out = list(vec)
        for i in range(self.n):
            b = beta[i * d:(i + 1) * d]
            if not any(b):
                continue
            prod = (c[0] * b[0],) if d == 1 else self.field.mul_raw(c, b)
            for t, y in enumerate(prod):
                out[i * d + t] -= y
        return tuple(out)


class _Walker:
    """Tracks images x(a_j) of the simple roots while a word x is extended."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.images = list(rs.simple)

    def root(self, s):
        """x(a_s): the inversion root contributed by appending s."""
        return self.images[s]

    def push(self, s):
        rs = self.rs
        d = rs.d
        img = self.images
        xs = img[s]
        for j in range(rs.n):
            if j == s:
                continue
            c = rs.k[s][j]
            if c is None:
                continue
            # s(a_j) = a_j + k_sj a_s
            if d == 1:
                cc = c[0]
                img[j] = tuple(a + cc * b for a, b in zip(img[j], xs))
            else:
                new = list(img[j])
                for i in range(rs.n):
                    b = xs[i * d:(i + 1) * d]
                    if any(b):
                        for t, y in enumerate(rs.field.mul_raw(c, b)):
                            new[i * d + t] += y
                img[j] = tuple(new)
        img[s] = tuple(-x for x in xs)

    def key(self):
        return tuple(self.images)


@lru_cache(maxsize=64)
def root_system(mat: CoxeterMatrix) -> RootSystem:
    return RootSystem(mat)


# ---------------------------------------------------------------------------
# Public operations (1-based generator labels)


def _idx(word) -> tuple:
    return tuple(a - 1 for a in word)


def _check_word(mat, word):
    for a in word:
        if not (isinstance(a, int) and 1 <= a <= mat.rank):
            raise CoxeterError(f"letter {a!r} out of range 1..{mat.rank}")


def bilinear_form(mat: CoxeterMatrix, i: int, j: int) -> RingElement:
    """B(a_i, a_j): 1 on the diagonal, -cos(pi/m_ij), or -1 when m_ij is infinite."""
    if not (1 <= i <= mat.rank and 1 <= j <= mat.rank):
        raise CoxeterError("index out of range")
    rs = root_system(mat)
    return rs.form(rs.simple[i - 1], rs.simple[j - 1])


def simple_root(mat: CoxeterMatrix, i: int) -> Root:
    return root_system(mat).simple_root(i - 1)


def make_root(mat: CoxeterMatrix, coords) -> Root:
    rs = root_system(mat)
    return Root(rs.from_coords(coords), rs)


def reflect(mat: CoxeterMatrix, root: Root, i: int) -> Root:
    rs = root_system(mat)
    if len(root.vec) != rs.n * rs.d:
        raise CoxeterError("root rank mismatch")
    return Root(rs.reflect(root.vec, i - 1), rs)


def inversion_roots(mat: CoxeterMatrix, word: Word) -> list:
    """The roots s_{i1}...s_{i(k-1)}(a_{ik}) in order; raises if not reduced."""
    _check_word(mat, word)
    rs = root_system(mat)
    w = rs.walker()
    out = []
    for s in _idx(word):
        r = w.root(s)
        if rs.root_sign(r) < 0:
            raise CoxeterError(f"word {format_word(word)!r} is not reduced")
        out.append(Root(r, rs))
        w.push(s)
    return out


def inversion_set(mat: CoxeterMatrix, word: Word) -> frozenset:
    return frozenset(inversion_roots(mat, word))


def is_reduced(mat: CoxeterMatrix, word: Word) -> bool:
    _check_word(mat, word)
    rs = root_system(mat)
    w = rs.walker()
    for s in _idx(word):
        if rs.root_sign(w.root(s)) < 0:
            return False
        w.push(s)
    return True


def reduce_word(mat: CoxeterMatrix, word: Word) -> Word:
    """A reduced word for the same element, by repeated letter deletion."""
    _check_word(mat, word)
    rs = root_system(mat)
    cur: list = []
    invs: list = []
    w = rs.walker()
    for s in _idx(word):
        r = w.root(s)
        if rs.root_sign(r) > 0:
            cur.append(s)
            invs.append(r)
            w.push(s)
            continue
        j = invs.index(rs.neg(r))
        del cur[j]
        w = rs.walker()
        invs = []
        for t in cur:
            invs.append(w.root(t))
            w.push(t)
    return tuple(a + 1 for a in cur)


def word_length(mat: CoxeterMatrix, word: Word) -> int:
    return len(reduce_word(mat, word))


def element_key(mat: CoxeterMatrix, word: Word) -> tuple:
    """Hashable, faithful key of the group element: images of the simple roots."""
    _check_word(mat, word)
    rs = root_system(mat)
    w = rs.walker()
    for s in _idx(word):
        w.push(s)
    return w.key()


def left_descents(mat: CoxeterMatrix, word: Word) -> tuple:
    inv = inversion_set(mat, reduce_word(mat, word))
    rs = root_system(mat)
    return tuple(s + 1 for s in range(rs.n) if Root(rs.simple[s], rs) in inv)


def reflection_word(mat: CoxeterMatrix, root: Root) -> Word:
    """A reduced word for the reflection in the positive root ``root``."""
    rs = root_system(mat)
    letters, t = rs.descent_path(root.vec)
    w = letters + (t,) + tuple(reversed(letters))
    return reduce_word(mat, tuple(a + 1 for a in w))


def root_depth(mat: CoxeterMatrix, root: Root) -> int:
    return root_system(mat).depth(root.vec)


def positive_roots(mat: CoxeterMatrix, depth: int) -> list:
    rs = root_system(mat)
    return [Root(v, rs) for v in rs.roots_up_to_depth(depth)]


# ---------------------------------------------------------------------------
# Special subgroups


@dataclass(frozen=True)
class SubgroupType:
    tag: str  # "spherical" | "affine" | "indefinite"
    components: tuple = field(default=())  # ((labels...), tag) per irreducible component

    def __str__(self):
        if not self.components:
            return f"{self.tag} (trivial)"
        parts = ", ".join("{" + " ".join(map(str, c)) + "}:" + t for c, t in self.components)
        return f"{self.tag} [{parts}]"


def diagram_components(mat: CoxeterMatrix, subset: Iterable[int]) -> list:
    """Connected components (0-based, sorted) of the Coxeter graph on ``subset``."""
    rest = sorted(set(subset))
    comps = []
    while rest:
        stack = [rest[0]]
        comp = {rest[0]}
        while stack:
            a = stack.pop()
            for b in rest:
                if b not in comp and mat.m(a, b) != 2:
                    comp.add(b)
                    stack.append(b)
        comps.append(tuple(sorted(comp)))
        rest = [x for x in rest if x not in comp]
    return comps


def _connected_order(mat, comp):
    order = [comp[0]]
    left = list(comp[1:])
    while left:
        for b in left:
            if any(mat.m(a, b) != 2 for a in order):
                order.append(b)
                left.remove(b)
                break
    return order


@lru_cache(maxsize=None)
def _component_tag(mat: CoxeterMatrix, comp: tuple) -> str:
    k = len(comp)
    if k == 1:
        return "spherical"
    if k == 2:
        return "affine" if mat.m(comp[0], comp[1]) == INF else "spherical"
    if any(mat.m(a, b) == INF for a in comp for b in comp if a != b):
        # contains an affine proper subdiagram
        return "indefinite"
    rs = root_system(mat)
    order = _connected_order(mat, comp)
    g = [[rs.form(rs.simple[a], rs.simple[b]) for b in order] for a in order]
    # Gaussian elimination without pivoting: pivots are ratios of leading minors
    for p in range(k):
        piv = g[p][p]
        s = piv.sign()
        if p < k - 1 and s <= 0:
            return "indefinite"
        if p == k - 1:
            return "spherical" if s > 0 else ("affine" if s == 0 else "indefinite")
        inv = piv.inverse()
        for r in range(p + 1, k):
            f = g[r][p] * inv
            if f.is_zero():
                continue
            for c in range(p + 1, k):
                g[r][c] = g[r][c] - f * g[p][c]
    raise AssertionError("unreachable")


def subgroup_classify(mat: CoxeterMatrix, subset: Iterable[int]) -> SubgroupType:
    """Classify W_T (``subset`` of 1-based labels) by the Gram form restricted to T."""
    idx = sorted({a - 1 for a in subset})
    for a in idx:
        if not 0 <= a < mat.rank:
            raise CoxeterError("subset label out of range")
    comps = diagram_components(mat, idx)
    tags = [_component_tag(mat, c) for c in comps]
    if all(t == "spherical" for t in tags):
        tag = "spherical"
    elif all(t in ("spherical", "affine") for t in tags):
        tag = "affine"
    else:
        tag = "indefinite"
    return SubgroupType(tag, tuple((tuple(a + 1 for a in c), t) for c, t in zip(comps, tags)))


def is_spherical(mat: CoxeterMatrix, subset: Iterable[int]) -> bool:
    idx = sorted({a - 1 for a in subset})
    return all(_component_tag(mat, c) == "spherical" for c in diagram_components(mat, idx))


def pair_generates_finite(mat: CoxeterMatrix, beta: Root, gamma: Root):
    """(finite?, order): the reflections in beta, gamma generate a finite
    dihedral group iff |B(beta, gamma)| < 1; the order m of their product is
    found by iterating the rotation exactly."""
    rs = root_system(mat)
    return _pair_order(rs, beta.vec, gamma.vec)


def _pair_order(rs: RootSystem, b, g, limit: int = 10000):
    c = rs.form2(b, g)
    lo = list(c)
    lo[0] += 2
    hi = list(c)
    hi[0] -= 2
    if rs.sign(lo) <= 0 or rs.sign(hi) >= 0:
        return False, None
    x, y = b, g
    for m in range(1, limit + 1):
        x = rs.reflection_vec_action(b, rs.reflection_vec_action(g, x))
        y = rs.reflection_vec_action(b, rs.reflection_vec_action(g, y))
        if x == b and y == g:
            return True, m
    raise CoxeterError("dihedral order exceeds iteration limit")
