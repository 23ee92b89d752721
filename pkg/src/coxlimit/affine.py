"""Affine Coxeter groups: faces of the finite arrangement and the block census.

For an irreducible affine system the null vector delta spans the radical of
the form.  Dropping the node whose complement is the largest finite
parabolic gives W_fin; every real root is a finite root plus a multiple of
delta, and the walls of one finite root form a parallelism class.  The block
of u v^inf is read off from the translation T = u v^N u^-1: T beta - beta is
a multiple of delta whose sign, over the finite positive roots beta, is the
sign vector of the face containing the direction of the word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .automaton import reduced_word_dfa
from .core import (CoxeterError, CoxeterMatrix, Root, root_system,
                   subgroup_classify)
from .epwords import EPWord, boundary_reflections, require_reduced, track_root
from .linalg import kernel
from .ring import RingElement

MAX_TRANSLATION_POWER = 200


@dataclass(frozen=True)
class ArrangementFace:
    signs: tuple  # +1 / -1 / 0 per finite positive root, in root order
    dimension: int

    def __str__(self):
        return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in self.signs)


def _finite_positive_roots(rs):
    roots = []
    depth = 1
    while True:
        layer = rs.roots_up_to_depth(depth)
        if len(layer) == len(roots):
            return roots
        roots = layer
        depth += 1


def _elements(mat: CoxeterMatrix):
    """Reduced words of all elements of a finite Coxeter group (BFS by element key)."""
    rs = root_system(mat)
    seen = {tuple(rs.simple): ()}
    level = [((), rs.walker())]
    out = [()]
    while level:
        nxt = []
        for word, wk in level:
            for s in range(rs.n):
                if rs.root_sign(wk.root(s)) < 0:
                    continue
                w2 = rs.walker()
                w2.images = list(wk.images)
                w2.push(s)
                key = w2.key()
                if key not in seen:
                    seen[key] = word + (s,)
                    out.append(word + (s,))
                    nxt.append((word + (s,), w2))
        level = nxt
    return out


def finite_arrangement_faces(finite_mat: CoxeterMatrix) -> set:
    """All nonzero faces of the reflection arrangement of a finite Coxeter group."""
    n = finite_mat.rank
    if subgroup_classify(finite_mat, range(1, n + 1)).tag != "spherical":
        raise CoxeterError("the arrangement is only finite for spherical matrices")
    rs = root_system(finite_mat)
    roots = _finite_positive_roots(rs)
    faces = set()
    for word in _elements(finite_mat):
        inv = tuple(reversed(word))
        images = [rs.apply_word(inv, b) for b in roots]
        for mask in range((1 << n) - 1):  # J = bits of mask, J != S
            J = [j for j in range(n) if mask >> j & 1]
            signs = []
            for img in images:
                support = {i for i in range(n) if any(rs.block(img, i))}
                if support <= set(J):
                    signs.append(0)
                else:
                    signs.append(rs.root_sign(img))
            faces.add(ArrangementFace(tuple(signs), n - len(J)))
    return faces


# ---------------------------------------------------------------------------
# Affine data


@dataclass(frozen=True)
class AffineData:
    mat: CoxeterMatrix
    node: int  # 0-based index of the removed (affine) node
    delta: tuple  # RingElements, delta[node] == 1
    finite_mat: CoxeterMatrix
    finite_roots: tuple  # raw vectors of the full system supported off ``node``


def is_irreducible_affine(mat: CoxeterMatrix) -> bool:
    st = subgroup_classify(mat, range(1, mat.rank + 1))
    return st.tag == "affine" and len(st.components) == 1


@lru_cache(maxsize=32)
def affine_data(mat: CoxeterMatrix) -> AffineData:
    if not is_irreducible_affine(mat):
        raise CoxeterError("expected an irreducible affine Coxeter matrix")
    n = mat.rank
    rs = root_system(mat)
    best = None
    for i in range(n):
        rest = [j for j in range(n) if j != i]
        order = len(reduced_word_dfa(mat.restrict(rest)).states)
        if best is None or order > best[0]:
            best = (order, i)
    node = best[1]
    gram = [[rs.form(rs.simple[a], rs.simple[b]) for b in range(n)] for a in range(n)]
    ker = kernel(gram, n, rs.field)
    if len(ker) != 1:
        raise CoxeterError("affine form must have a one-dimensional radical")
    v = ker[0]
    scale = v[node].inverse()
    delta = tuple(x * scale for x in v)
    rest = [j for j in range(n) if j != node]
    finite_mat = mat.restrict(rest)
    sub = root_system(finite_mat)
    d = rs.d
    froots = []
    for r in _finite_positive_roots(sub):
        vec = [0] * (n * d)
        for k, j in enumerate(rest):
            vec[j * d:(j + 1) * d] = sub.block(r, k)
        froots.append(tuple(vec))
    return AffineData(mat, node, delta, finite_mat, tuple(froots))


def _delta_coefficient(rs, data: AffineData, vec) -> RingElement:
    return RingElement(rs.field, rs.block(vec, data.node))


def projection(mat: CoxeterMatrix, root: Root) -> tuple:
    """(sign, index) of the finite root parallel to ``root``: root = sign * finite + c delta."""
    rs = root_system(mat)
    data = affine_data(mat)
    c = _delta_coefficient(rs, data, root.vec)
    coords = [RingElement(rs.field, rs.block(root.vec, i)) - c * data.delta[i] for i in range(rs.n)]
    flat = []
    for e in coords:
        flat.extend(e.coeffs)
    flat = tuple(flat)
    for k, f in enumerate(data.finite_roots):
        if flat == f:
            return 1, k
        if flat == rs.neg(f):
            return -1, k
    raise CoxeterError("projection is not a finite root")


def translation_power(mat: CoxeterMatrix, w: EPWord) -> int:
    """Least N with v^N a translation."""
    rs = root_system(mat)
    data = affine_data(mat)
    per = tuple(a - 1 for a in w.period)
    imgs = list(rs.simple)
    for N in range(1, MAX_TRANSLATION_POWER + 1):
        imgs = [rs.apply_word(per, x) for x in imgs]
        if all(_is_delta_multiple(rs, data, tuple(a - b for a, b in zip(x, e)))
               for x, e in zip(imgs, rs.simple)):
            return N
    raise CoxeterError("period has no translation power")


def _is_delta_multiple(rs, data, vec) -> bool:
    c = _delta_coefficient(rs, data, vec)
    return all((RingElement(rs.field, rs.block(vec, i)) - c * data.delta[i]).is_zero()
               for i in range(rs.n))


def translation_signs(mat: CoxeterMatrix, w: EPWord) -> tuple:
    """Sign of (T beta - beta) / delta over the finite positive roots, T = u v^N u^-1."""
    rs = root_system(mat)
    data = affine_data(mat)
    N = translation_power(mat, w)
    u = tuple(a - 1 for a in w.prefix)
    word = u + tuple(a - 1 for a in w.period) * N + tuple(reversed(u))
    out = []
    for b in data.finite_roots:
        diff = tuple(x - y for x, y in zip(rs.apply_word(word, b), b))
        out.append(_delta_coefficient(rs, data, diff).sign())
    return tuple(out)


def face_of(mat: CoxeterMatrix, w: EPWord, depth_bound: int = 8) -> ArrangementFace:
    """The face of the word, from its wall classifications.

    A parallelism class with a wall through the limit point gives 0.
    Otherwise exactly one of the families finite + K delta and
    -finite + K delta is crossed for all large K; it gives the sign.
    """
    require_reduced(mat, w)
    rs = root_system(mat)
    data = affine_data(mat)
    walls = {projection(mat, r)[1] for r in boundary_reflections(mat, w, depth_bound).roots}
    fams = {}
    for vec in rs.roots_up_to_depth(depth_bound):
        sgn, k = projection(mat, Root(vec, rs))
        c = _delta_coefficient(rs, data, vec)
        cur = fams.get((k, sgn))
        if cur is None or (c - cur[0]).sign() > 0:
            fams[(k, sgn)] = (c, vec)
    signs = []
    for k in range(len(data.finite_roots)):
        if k in walls:
            signs.append(0)
            continue
        crossed = {}
        for sgn in (1, -1):
            vec = fams[(k, sgn)][1]
            t = track_root(mat, w, Root(vec, rs))
            if t.orbit == "unknown":
                raise CoxeterError(f"unassigned word {w}: undecided wall")
            crossed[sgn] = t.crossed is not None
        if crossed[1] == crossed[-1]:
            raise CoxeterError(f"unassigned word {w}: depth bound too small")
        signs.append(1 if crossed[1] else -1)
    dim = data.finite_mat.rank - _rank_of_zeros(mat, signs)
    return ArrangementFace(tuple(signs), dim)


def _rank_of_zeros(mat, signs) -> int:
    from .linalg import rref
    rs = root_system(mat)
    data = affine_data(mat)
    rows = [[RingElement(rs.field, rs.block(data.finite_roots[k], i)) for i in range(rs.n)]
            for k, s in enumerate(signs) if s == 0]
    if not rows:
        return 0
    return len(rref(rows, rs.field)[0])


def affine_same_block(mat: CoxeterMatrix, i: EPWord, j: EPWord):
    """Verdict from the translation faces, or None if the system is not irreducible affine."""
    if not is_irreducible_affine(mat):
        return None
    from .order import YES, Verdict3
    si, sj = translation_signs(mat, i), translation_signs(mat, j)
    if si == sj:
        return YES
    rs = root_system(mat)
    k = next(k for k, (a, b) in enumerate(zip(si, sj)) if a != b)
    return Verdict3("no", Root(affine_data(mat).finite_roots[k], rs))


# ---------------------------------------------------------------------------
# Census


@dataclass(frozen=True)
class CensusEntry:
    word: EPWord
    face: ArrangementFace
    wxi: str
    wxi_infinite: bool


@dataclass(frozen=True)
class Census:
    faces: tuple  # all faces of the finite arrangement, sorted
    entries: tuple  # CensusEntry per input word

    def by_face(self) -> dict:
        out = {f: [] for f in self.faces}
        for e in self.entries:
            out[e.face].append(e)
        return out

    def report(self) -> str:
        lines = []
        for f, es in self.by_face().items():
            if not es:
                continue
            kind = "chamber" if 0 not in f.signs else f"dim {f.dimension}"
            wx = sorted({e.wxi + (" (infinite)" if e.wxi_infinite else "") for e in es})
            lines.append(f"{f}  {kind}  W(xi) {', '.join(wx)}  {len(es)} word(s): "
                         + "; ".join(str(e.word) for e in es))
        return "\n".join(lines) + "\n"


def affine_block_census(affine_mat: CoxeterMatrix, ep_words, depth_bound: int = 8) -> Census:
    """Assign each word to the face of the finite arrangement containing its direction."""
    from .order import wxi_group
    data = affine_data(affine_mat)
    faces = sorted(finite_arrangement_faces(data.finite_mat), key=lambda f: (-f.dimension, f.signs))
    face_set = set(faces)
    entries = []
    for w in ep_words:
        f = face_of(affine_mat, w, depth_bound)
        if f.signs != translation_signs(affine_mat, w):
            raise AssertionError(f"{w}: wall pattern {f} disagrees with its translation")
        if f not in face_set:
            raise AssertionError(f"{w}: sign vector {f} is not a face")
        sub = wxi_group(affine_mat, w, depth_bound)
        infinite = "infinite" in sub.flags
        if (0 not in f.signs) == infinite:
            raise AssertionError(f"{w}: W(xi) = {sub.type_name} does not match face {f}")
        entries.append(CensusEntry(w, f, sub.type_name, infinite))
    return Census(tuple(faces), tuple(entries))
