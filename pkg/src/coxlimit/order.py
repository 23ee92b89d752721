"""Limit weak order, blocks, reflection subgroups W(xi), hyperbolicity and ends.

Comparisons between infinite words are semi-decidable, so they return a
three-valued verdict.  ``no`` always carries a root whose classification
certifies the answer; ``yes`` rests on a periodicity argument: with
T_i = u_i v_i u_i^-1, Inv(u v^inf) is Inv(u) together with the translates
T_i^k X of the batch X = u_i Inv(v_i^a).  When T_i^a = T_j^b these
translates can be followed along j exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .automaton import ResourceBoundExceeded
from .core import (INF, CoxeterError, CoxeterMatrix, Root, Word, _pair_order,
                   diagram_components, element_key, format_word, is_spherical,
                   reduce_word, root_system, subgroup_classify)
from .epwords import (EPWord, _track, boundary_reflections, default_step_cap,
                      require_reduced)

MAX_POWER = 12
ORBIT_STEPS = 64


@dataclass(frozen=True)
class Verdict3:
    value: str  # "yes" | "no" | "unknown"
    witness: object = None  # Root for "no"
    bound: int | None = None  # probe bound for "unknown"

    def __str__(self):
        if self.value == "yes":
            return "yes"
        if self.value == "no":
            return f"no (witness {self.witness})"
        return f"unknown (bound {self.bound})"

    def __bool__(self):
        return self.value == "yes"


YES = Verdict3("yes")


def _no(witness) -> Verdict3:
    return Verdict3("no", witness)


def _unknown(bound) -> Verdict3:
    return Verdict3("unknown", None, bound)


# ---------------------------------------------------------------------------
# Root probes along infinite words


class _Probe:
    """Memoized wall tracking for one word."""

    def __init__(self, mat: CoxeterMatrix, w: EPWord):
        self.mat = mat
        self.rs = root_system(mat)
        self.w = w
        self.cap = default_step_cap(mat, w)
        self._memo = {}

    def track(self, vec):
        t = self._memo.get(vec)
        if t is None:
            t = self._memo[vec] = _track(self.rs, self.w, vec, self.rs.depth(vec), self.cap,
                                         stop_at_cross=False)
        return t

    def crossed(self, vec):
        """True, False or None (undecided)."""
        t = self.track(vec)
        if t.crossed is not None:
            return True
        return None if t.orbit == "unknown" else False


def _inversion_batch(rs, word_idx, start=()):
    """Inversion roots of ``start + word`` contributed by the ``word`` letters."""
    w = rs.walker()
    for s in start:
        w.push(s)
    out = []
    for s in word_idx:
        out.append(w.root(s))
        w.push(s)
    return out


def _truncation_roots(rs, w: EPWord, periods: int):
    word = [a - 1 for a in w.letters(len(w.prefix) + periods * len(w.period))]
    return _inversion_batch(rs, word)


def _idx(word):
    return tuple(a - 1 for a in word)


def _translation_key(mat, w: EPWord, power: int):
    u = w.prefix
    word = u + w.period * power + tuple(reversed(u))
    return element_key(mat, word)


def _common_power(mat, i: EPWord, j: EPWord):
    """(a, b) with T_i^a = T_j^b, smallest a + b, or None."""
    keys_j = {}
    for b in range(1, MAX_POWER + 1):
        keys_j.setdefault(_translation_key(mat, j, b), b)
    best = None
    for a in range(1, MAX_POWER + 1):
        b = keys_j.get(_translation_key(mat, i, a))
        if b is not None and (best is None or a + b < sum(best)):
            best = (a, b)
    return best


def _follow(rs, pj: _Probe, j: EPWord, tmap, x):
    """Follow x, T x, T^2 x, ... along j, where ``tmap`` applies T = T_j^b.

    Returns (state, first translate certified not crossed by j or None),
    where state is "done" when the translates are settled (absorbed into
    u_j Inv(v_j^inf), whose T-translates stay crossed, or cycling) and
    "unknown" otherwise.
    """
    uj_inv = tuple(reversed(_idx(j.prefix)))
    tail = _Probe(pj.mat, EPWord((), j.period))
    seen = set()
    first_out = None
    y = x
    for _ in range(ORBIT_STEPS):
        g = rs.apply_word(uj_inv, y)
        if rs.root_sign(g) > 0 and tail.crossed(g):
            return "done", first_out
        c = pj.crossed(y)
        if c is None:
            return "unknown", first_out
        if not c and first_out is None:
            first_out = y
        if y in seen:
            return "done", first_out
        seen.add(y)
        y = tmap(y)
    return "unknown", first_out


def _translation_map(rs, w: EPWord, power: int):
    word = _idx(w.prefix + w.period * power + tuple(reversed(w.prefix)))

    def act(vec):
        return rs.apply_word(word, vec)

    return act


def _no_witness(rs, pi: _Probe, pj: _Probe, candidates):
    """First candidate crossed by i and certified not crossed by j."""
    undecided = False
    for vec in candidates:
        if pi.crossed(vec) is not True:
            continue
        c = pj.crossed(vec)
        if c is False:
            return Root(vec, rs), undecided
        if c is None:
            undecided = True
    return None, undecided


def braid_limit_leq(mat: CoxeterMatrix, i: EPWord, j: EPWord, depth_bound: int = 6) -> Verdict3:
    """Decide Inv(i) <= Inv(j), i.e. whether j has a braid limit through i."""
    require_reduced(mat, i)
    require_reduced(mat, j)
    rs = root_system(mat)
    pi, pj = _Probe(mat, i), _Probe(mat, j)
    periods = max(4, depth_bound)
    cands = list(dict.fromkeys(_truncation_roots(rs, i, periods) + rs.roots_up_to_depth(depth_bound)))
    wit, _ = _no_witness(rs, pi, pj, cands)
    if wit is not None:
        return _no(wit)
    ab = _common_power(mat, i, j)
    if ab is None:
        return _unknown(depth_bound)
    a, b = ab
    ui = _idx(i.prefix)
    for vec in _inversion_batch(rs, ui):
        if pj.crossed(vec) is not True:
            return _unknown(depth_bound)
    tmap = _translation_map(rs, j, b)
    for x in _inversion_batch(rs, _idx(i.period * a), start=ui):
        state, y = _follow(rs, pj, j, tmap, x)
        if y is not None:
            return _no(Root(y, rs))
        if state != "done":
            return _unknown(depth_bound)
    return YES


def _eventually_contained(rs, pi, pj, i, j, ab):
    """Whether Inv(i) minus Inv(j) is finite, given T_i^a = T_j^b."""
    a, b = ab
    ui = _idx(i.prefix)
    tmap = _translation_map(rs, j, b)
    for x in _inversion_batch(rs, _idx(i.period * a), start=ui):
        state, _ = _follow(rs, pj, j, tmap, x)
        if state != "done":
            return False
    return True


def _block_witness(rs, pi: _Probe, pj: _Probe, candidates):
    """A wall through one limit point but not the other, or a wall separating them."""
    for vec in candidates:
        ti, tj = pi.track(vec), pj.track(vec)
        if "unknown" in (ti.orbit, tj.orbit):
            continue
        if ti.orbit != tj.orbit:
            return Root(vec, rs)
        if ti.orbit == "infinite" and (ti.crossed is None) != (tj.crossed is None):
            return Root(vec, rs)
    return None


def same_block(mat: CoxeterMatrix, i: EPWord, j: EPWord, depth_bound: int = 6) -> Verdict3:
    """Decide whether Inv(i) and Inv(j) differ by finitely many roots."""
    require_reduced(mat, i)
    require_reduced(mat, j)
    if i.canonical() == j.canonical():
        return YES
    rs = root_system(mat)
    pi, pj = _Probe(mat, i), _Probe(mat, j)
    periods = max(4, depth_bound)
    cands = list(dict.fromkeys(rs.roots_up_to_depth(depth_bound)
                               + _truncation_roots(rs, i, periods)
                               + _truncation_roots(rs, j, periods)))
    ab = _common_power(mat, i, j)
    if ab is not None:
        if (_eventually_contained(rs, pi, pj, i, j, ab)
                and _eventually_contained(rs, pj, pi, j, i, (ab[1], ab[0]))):
            return YES
    wit = _block_witness(rs, pi, pj, cands)
    if wit is not None:
        return _no(wit)
    from .affine import affine_same_block
    v = affine_same_block(mat, i, j)
    if v is not None:
        return v
    return _unknown(depth_bound)


# ---------------------------------------------------------------------------
# Reflection subgroups


DEFAULT_CLOSURE_CAP = 200


def _norm(rs, vec):
    return vec if rs.root_sign(vec) > 0 else rs.neg(vec)


def _closure(rs, roots, cap: int):
    """Positive roots of the reflections in the subgroup generated by ``roots``,
    or None when the closure exceeds ``cap``."""
    found = list(dict.fromkeys(roots))
    seen = set(found)
    todo = deque(found)
    while todo:
        b = todo.popleft()
        for g in list(found):
            for x in (rs.reflection_vec_action(b, g), rs.reflection_vec_action(g, b)):
                x = _norm(rs, x)
                if x not in seen:
                    seen.add(x)
                    found.append(x)
                    todo.append(x)
                    if len(found) > cap:
                        return None
    return found


def _canonical_from_closure(rs, closure):
    out = []
    for t in closure:
        if all(g == t or rs.root_sign(rs.reflection_vec_action(t, g)) > 0 for g in closure):
            out.append(t)
    return out


def _canonical_by_reduction(rs, roots, limit: int = 10000):
    """Pairwise reduction to a set with no positive or non-canonical dihedral pair.

    Each step replaces a pair by the canonical roots of the dihedral
    reflection subgroup it generates, which leaves the generated subgroup
    unchanged; a set whose pairs are all canonical is a simple system.
    """
    cur = list(dict.fromkeys(roots))
    for _ in range(limit):
        changed = False
        for x, y in combinations(list(cur), 2):
            c = list(rs.form2(x, y))
            c[0] += 2
            if rs.sign(c) <= 0:
                continue  # B <= -1: already canonical
            c[0] -= 4
            if rs.sign(c) >= 0:
                # B >= 1: Euclid step on the deeper root
                if rs.depth(x) < rs.depth(y):
                    x, y = y, x
                new = [y, _norm(rs, rs.reflection_vec_action(y, x))]
            else:
                clo = _closure(rs, [x, y], 10 * DEFAULT_CLOSURE_CAP)
                new = _canonical_from_closure(rs, clo)
            if set(new) != {x, y}:
                cur = [r for r in cur if r not in (x, y)]
                cur.extend(r for r in new if r not in cur)
                changed = True
                break
        if not changed:
            return cur
    raise ResourceBoundExceeded("canonical generator reduction did not settle")


@dataclass(frozen=True)
class ReflectionSubgroup:
    generators: tuple  # input Roots
    canonical: tuple  # canonical simple roots, sorted
    matrix: CoxeterMatrix | None  # Coxeter matrix on the canonical generators
    closure: tuple | None  # all positive roots of its reflections, None past the cap
    flags: frozenset = field(default_factory=frozenset)  # "infinite", "incomplete"

    @property
    def rank(self) -> int:
        return len(self.canonical)

    def is_finite(self) -> bool:
        return self.matrix is None or is_spherical(self.matrix, range(1, self.rank + 1))

    @property
    def type_name(self) -> str:
        return coxeter_type_name(self.matrix)

    def __str__(self):
        return self.type_name


def _component_name(mat: CoxeterMatrix, comp) -> str:
    k = len(comp)
    if k == 1:
        return "A1"
    labels = sorted((mat.m(a, b) for a, b in combinations(comp, 2) if mat.m(a, b) != 2),
                    key=lambda m: (m == INF, m))
    if k == 2:
        m = mat.m(comp[0], comp[1])
        return {3: "A2", 4: "B2", 6: "G2", INF: "Ã1"}.get(m, f"I2({m})")
    edges = len(labels)
    if edges == k - 1 and all(m == 3 for m in labels):
        degs = [sum(mat.m(a, b) != 2 for b in comp if b != a) for a in comp]
        if max(degs) <= 2:
            return f"A{k}"
    if edges == k and all(m == 3 for m in labels):
        return f"Ã{k - 1}"
    tag = subgroup_classify(mat, [a + 1 for a in comp]).tag
    return f"{tag}{k}"


def coxeter_type_name(mat: CoxeterMatrix | None) -> str:
    """Short name such as A1, A1xA1, A2, B2, I2(5), Ã1, or trivial."""
    if mat is None:
        return "trivial"
    comps = diagram_components(mat, range(mat.rank))
    return "x".join(_component_name(mat, c) for c in comps)


def canonical_generators(mat: CoxeterMatrix, refl, cap: int = DEFAULT_CLOSURE_CAP) -> ReflectionSubgroup:
    """Dyer's canonical simple roots of the subgroup generated by reflections in ``refl``."""
    rs = root_system(mat)
    vecs = []
    for r in refl:
        if rs.root_sign(r.vec) < 0:
            raise CoxeterError("reflections must be given by positive roots")
        vecs.append(r.vec)
    vecs = list(dict.fromkeys(vecs))
    flags = set()
    clo = _closure(rs, vecs, cap) if vecs else []
    if clo is not None:
        canon = _canonical_from_closure(rs, clo)
    else:
        # a settled reduction has only canonical pairs, which certifies it
        canon = _canonical_by_reduction(rs, vecs)
    canon.sort(key=rs.sort_key)
    sub_mat = None
    if canon:
        rows = []
        for x in canon:
            row = []
            for y in canon:
                if x == y:
                    row.append(1)
                    continue
                fin, m = _pair_order(rs, x, y)
                row.append(m if fin else INF)
            rows.append(tuple(row))
        sub_mat = CoxeterMatrix(tuple(rows))
        if not is_spherical(sub_mat, range(1, len(canon) + 1)):
            flags.add("infinite")
    return ReflectionSubgroup(
        tuple(Root(v, rs) for v in vecs),
        tuple(Root(v, rs) for v in canon),
        sub_mat,
        None if clo is None else tuple(Root(v, rs) for v in sorted(clo, key=rs.sort_key)),
        frozenset(flags),
    )


def wxi_group(mat: CoxeterMatrix, w: EPWord, depth_bound: int = 6) -> ReflectionSubgroup:
    """W(xi) for the limit point of ``w``, from the walls through it up to the depth bound."""
    bset = boundary_reflections(mat, w, depth_bound)
    sub = canonical_generators(mat, bset.roots)
    flags = set(sub.flags)
    if bset.infinite:
        flags.add("infinite")
    if bset.incomplete:
        flags.add("incomplete")
    return ReflectionSubgroup(sub.generators, sub.canonical, sub.matrix, sub.closure, frozenset(flags))


def _project(rs, inv: set, sub: ReflectionSubgroup) -> Word:
    if sub.closure is None:
        raise CoxeterError("subgroup closure incomplete; cannot project")
    closure = {r.vec for r in sub.closure}
    canon = [r.vec for r in sub.canonical]
    cur = {v for v in inv if v in closure}
    out = []
    while cur:
        k = next((k for k, t in enumerate(canon) if t in cur), None)
        if k is None:
            raise CoxeterError("inversion set is not biclosed in the subgroup")
        t = canon[k]
        out.append(k + 1)
        nxt = set()
        for v in cur:
            if v == t:
                continue
            x = rs.reflection_vec_action(t, v)
            if rs.root_sign(x) < 0:
                raise CoxeterError("projection left the positive roots")
            nxt.add(x)
        cur = nxt
    return tuple(out)


def project_inversions(mat: CoxeterMatrix, w: Word, sub: ReflectionSubgroup) -> Word:
    """The subgroup element w' (as a word in the canonical generators, 1-based)
    whose subgroup inversions are the inversions of w lying in the subgroup."""
    rs = root_system(mat)
    inv = set(_inversion_batch(rs, _idx(reduce_word(mat, tuple(w)))))
    return _project(rs, inv, sub)


def subgroup_word_to_word(mat: CoxeterMatrix, sub: ReflectionSubgroup, word: Word) -> Word:
    """Reduced word in S for a product of canonical generators."""
    rs = root_system(mat)
    out = []
    for k in word:
        letters, t = rs.descent_path(sub.canonical[k - 1].vec)
        out.extend(a + 1 for a in letters + (t,) + tuple(reversed(letters)))
    return reduce_word(mat, tuple(out))


def subgroup_elements(sub: ReflectionSubgroup, limit: int = 100000) -> list:
    """ShortLex-least words (in canonical generators) of all elements of a finite subgroup."""
    if sub.matrix is None:
        return [()]
    if not sub.is_finite():
        raise CoxeterError("subgroup is infinite")
    m = sub.matrix
    seen = {element_key(m, ()): ()}
    out = [()]
    level = [()]
    while level:
        nxt = []
        for w in level:
            for s in range(1, m.rank + 1):
                x = w + (s,)
                key = element_key(m, x)
                if key not in seen:
                    seen[key] = x
                    nxt.append(x)
                    if len(seen) > limit:
                        raise ResourceBoundExceeded("subgroup enumeration exceeds limit")
        out.extend(nxt)
        level = nxt
    return out


# ---------------------------------------------------------------------------
# Block fibers


@dataclass(frozen=True)
class BlockPoset:
    nodes: tuple  # canonical EPWord representatives
    elements: tuple  # matching W(xi) elements, words in the canonical generators
    covers: tuple  # (lower, upper) node indices
    subgroup: ReflectionSubgroup

    def __len__(self):
        return len(self.nodes)

    def cover_list(self) -> str:
        lines = [f"{k}: {w}  [{format_word(g) or 'e'}]"
                 for k, (w, g) in enumerate(zip(self.nodes, self.elements))]
        lines += [f"{a} < {b}" for a, b in self.covers]
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        lines = ["digraph block {", "  rankdir=BT;"]
        for k, w in enumerate(self.nodes):
            lines.append(f'  n{k} [label="{w}"];')
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _covers(n: int, leq) -> list:
    out = []
    for a in range(n):
        for b in range(n):
            if a == b or not leq[a][b]:
                continue
            if not any(c not in (a, b) and leq[a][c] and leq[c][b] for c in range(n)):
                out.append((a, b))
    return out


def block_fiber_poset(mat: CoxeterMatrix, w: EPWord, depth_bound: int = 6,
                      max_shift: int = 6) -> BlockPoset:
    """The equivalence classes of the block of ``w`` over its limit point, one per
    element of W(xi), ordered by the limit weak order."""
    require_reduced(mat, w)
    sub = wxi_group(mat, w, depth_bound)
    if "incomplete" in sub.flags or sub.closure is None:
        raise CoxeterError("W(xi) is not fully determined at this depth bound")
    if not sub.is_finite() or "infinite" in sub.flags:
        raise CoxeterError(f"W(xi) is infinite ({sub.type_name}); the fiber is not finite")
    rs = root_system(mat)
    closure = [r.vec for r in sub.closure]
    elements = subgroup_elements(sub)
    u, v = w.prefix, w.period
    found = {}
    for k in range(max_shift + 1):
        for h in elements:
            hw = subgroup_word_to_word(mat, sub, h)
            cand = EPWord(reduce_word(mat, hw + u + v * k), v).canonical()
            try:
                require_reduced(mat, cand)
            except CoxeterError:
                continue
            probe = _Probe(mat, cand)
            states = [probe.crossed(x) for x in closure]
            if None in states:
                continue
            g = _project(rs, {x for x, c in zip(closure, states) if c}, sub)
            if g in found or same_block(mat, w, cand, depth_bound).value != "yes":
                continue
            found[g] = cand
        if len(found) == len(elements):
            break
    if len(found) != len(elements):
        raise CoxeterError(f"found {len(found)} of {len(elements)} classes in the fiber")
    order = sorted(found, key=lambda g: (len(g), g))
    nodes = [found[g] for g in order]
    n = len(nodes)
    leq = [[a == b for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            verdict = braid_limit_leq(mat, nodes[a], nodes[b], depth_bound)
            if verdict.value == "unknown":
                raise CoxeterError(f"cannot compare {nodes[a]} and {nodes[b]}: {verdict}")
            leq[a][b] = verdict.value == "yes"
    return BlockPoset(tuple(nodes), tuple(order), tuple(_covers(n, leq)), sub)


# ---------------------------------------------------------------------------
# Hyperbolicity and ends


@dataclass(frozen=True)
class Obstruction:
    subset: tuple  # 1-based labels
    reason: str

    def __str__(self):
        return "{" + ", ".join(map(str, self.subset)) + "}: " + self.reason


def _subsets(n: int):
    for k in range(1, n + 1):
        yield from combinations(range(1, n + 1), k)


def moussong_hyperbolic(mat: CoxeterMatrix):
    """(hyperbolic?, obstruction or None).

    Obstructions: an irreducible affine special subgroup on at least three
    generators, or a special subgroup that is a product of two infinite ones.
    """
    for T in _subsets(mat.rank):
        st = subgroup_classify(mat, T)
        if len(st.components) == 1 and st.tag == "affine" and len(T) >= 3:
            return False, Obstruction(T, "irreducible affine")
        infinite = [c for c, tag in st.components if tag != "spherical"]
        if len(infinite) >= 2:
            a, b = infinite[0], tuple(sorted(set(T) - set(infinite[0])))
            return False, Obstruction(
                T, "product of infinite " + "{" + ", ".join(map(str, a)) + "} and {"
                + ", ".join(map(str, b)) + "}")
    return True, None


@dataclass(frozen=True)
class Ends:
    count: object  # 0, 1, 2 or INF
    evidence: str
    witness: tuple | None = None  # the spherical subset disconnecting the nerve

    def __str__(self):
        c = "infinity" if self.count == INF else str(self.count)
        return f"{c} ({self.evidence})"


def _connected(mat: CoxeterMatrix, vertices) -> bool:
    vs = list(vertices)
    if len(vs) <= 1:
        return True
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        a = stack.pop()
        for b in vs:
            if b not in seen and mat.m(a - 1, b - 1) != INF:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(vs)


def ends_count(mat: CoxeterMatrix) -> Ends:
    """Number of ends of W, read off the nerve of spherical subsets.

    Removing the open star of a spherical simplex sigma_T leaves a complex
    homotopy equivalent to the full subcomplex on S - T, whose connectivity
    is that of its 1-skeleton (edges = pairs with finite label).
    """
    n = mat.rank
    S = tuple(range(1, n + 1))
    if is_spherical(mat, S):
        return Ends(0, "W is finite")
    st = subgroup_classify(mat, S)
    nonsph = [(c, t) for c, t in st.components if t != "spherical"]
    if len(nonsph) == 1 and len(nonsph[0][0]) == 2 and nonsph[0][1] == "affine":
        c = nonsph[0][0]
        return Ends(2, f"W = D_inf on {{{c[0]}, {c[1]}}} times a finite group")
    candidates = [T for T in _subsets(n) if len(T) < n and is_spherical(mat, T)] + [()]
    for T in candidates:
        rest = [a for a in S if a not in T]
        if not _connected(mat, rest):
            label = "{" + ", ".join(map(str, T)) + "}"
            return Ends(INF, f"witness T = {label}", T)
    return Ends(1, "every punctured nerve is connected")
