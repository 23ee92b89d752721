"""Named Coxeter matrices used by tests, the CLI and the data directory."""

from __future__ import annotations

from itertools import combinations

from .core import INF, CoxeterMatrix


def from_edges(n: int, edges: dict, default=2) -> CoxeterMatrix:
    """Build a matrix from {(i, j): m} with 1-based labels; others get ``default``."""
    rows = [[1 if i == j else default for j in range(n)] for i in range(n)]
    for (i, j), m in edges.items():
        rows[i - 1][j - 1] = rows[j - 1][i - 1] = m
    return CoxeterMatrix(tuple(tuple(r) for r in rows))


def infinite_dihedral() -> CoxeterMatrix:
    return from_edges(2, {(1, 2): INF})


def type_a(n: int) -> CoxeterMatrix:
    return from_edges(n, {(i, i + 1): 3 for i in range(1, n)})


def type_b(n: int) -> CoxeterMatrix:
    edges = {(i, i + 1): 3 for i in range(1, n - 1)}
    edges[(n - 1, n)] = 4
    return from_edges(n, edges)


def dihedral(m) -> CoxeterMatrix:
    return from_edges(2, {(1, 2): m})


def affine_a(n: int) -> CoxeterMatrix:
    """Affine A~n on n+1 generators (a cycle of 3s; n >= 2)."""
    k = n + 1
    return from_edges(k, {(i, i % k + 1): 3 for i in range(1, k + 1)})


def affine_c2() -> CoxeterMatrix:
    return from_edges(3, {(1, 2): 4, (2, 3): 4})


def affine_g2() -> CoxeterMatrix:
    return from_edges(3, {(1, 2): 3, (2, 3): 6})


def pentagon() -> CoxeterMatrix:
    """Right-angled pentagon group: m = 2 between cyclic neighbours, else infinity."""
    edges = {}
    for i, j in combinations(range(1, 6), 2):
        edges[(i, j)] = 2 if (j - i) % 5 in (1, 4) else INF
    return from_edges(5, edges)


ICOSAHEDRON_EDGES = (
    [(1, i) for i in range(2, 7)]
    + [(i, (i - 1) % 5 + 2) for i in range(2, 7)]
    + [(i, (i - 6) % 5 + 7) for i in range(7, 12)]
    + [(12, i) for i in range(7, 12)]
    + [(i, i + 5) for i in range(2, 7)]
    + [(i, (i - 1) % 5 + 7) for i in range(2, 7)]
)


def dodecahedron() -> CoxeterMatrix:
    """Right-angled dodecahedron group: faces are generators, m = 2 for adjacent
    faces (the icosahedron graph), infinity otherwise."""
    adj = {tuple(sorted(e)) for e in ICOSAHEDRON_EDGES}
    edges = {}
    for i, j in combinations(range(1, 13), 2):
        edges[(i, j)] = 2 if (i, j) in adj else INF
    return from_edges(12, edges)


def dinf_x_dinf() -> CoxeterMatrix:
    return from_edges(4, {(1, 2): INF, (3, 4): INF})


def dinf_x_a1() -> CoxeterMatrix:
    return from_edges(3, {(1, 2): INF})


def free_a1(k: int = 3) -> CoxeterMatrix:
    """Free product of k copies of Z/2."""
    return from_edges(k, {}, default=INF)


def triangle(p, q, r) -> CoxeterMatrix:
    return from_edges(3, {(1, 2): p, (2, 3): q, (1, 3): r})


NAMED = {
    "a1": lambda: CoxeterMatrix(((1,),)),
    "a2": lambda: type_a(2),
    "a3": lambda: type_a(3),
    "b2": lambda: type_b(2),
    "b3": lambda: type_b(3),
    "h3": lambda: from_edges(3, {(1, 2): 5, (2, 3): 3}),
    "dinf": infinite_dihedral,
    "affine_a2": lambda: affine_a(2),
    "affine_c2": affine_c2,
    "affine_g2": affine_g2,
    "pentagon": pentagon,
    "dodecahedron": dodecahedron,
    "dinf_x_dinf": dinf_x_dinf,
    "dinf_x_a1": dinf_x_a1,
    "a1free3": free_a1,
    "triangle_237": lambda: triangle(2, 3, 7),
    "triangle_334": lambda: triangle(3, 3, 4),
}


def oracle_catalog() -> dict:
    """Fixed catalog of rank <= 4 systems with labels in {2,3,4,5,inf}."""
    return {
        "a1": NAMED["a1"](),
        "dinf": infinite_dihedral(),
        "a2": type_a(2),
        "b2": type_b(2),
        "i2_5": dihedral(5),
        "a3": type_a(3),
        "b3": type_b(3),
        "h3": NAMED["h3"](),
        "affine_a2": affine_a(2),
        "affine_c2": affine_c2(),
        "triangle_334": triangle(3, 3, 4),
        "triangle_245": triangle(2, 4, 5),
        "triangle_inf": triangle(INF, INF, INF),
        "dinf_x_a1": dinf_x_a1(),
        "a1free3": free_a1(3),
        "a4": type_a(4),
        "affine_a3": affine_a(3),
        "dinf_x_dinf": dinf_x_dinf(),
        "square_35": from_edges(4, {(1, 2): 3, (2, 3): 5, (3, 4): 3, (1, 4): INF}),
        "star_4inf": from_edges(4, {(1, 2): 4, (1, 3): INF, (1, 4): 3, (2, 3): 3}),
    }
