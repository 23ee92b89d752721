"""Exact linear algebra over Q(2cos(pi/L)) for the period-map computations."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .ring import RingElement, cyclotomic


def _totient(n: int) -> int:
    out = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic_orders(bound: int) -> tuple:
    """All N with phi(N) <= bound (phi(N) >= sqrt(N/2) bounds the search)."""
    return tuple(N for N in range(1, 2 * bound * bound + 3) if _totient(N) <= bound)


def rref(rows, field):
    """Reduced row echelon form over the field; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel(rows, ncols: int, field) -> list:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [[field.one() if i == j else field.zero() for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows, field)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [field.zero()] * ncols
        x[f] = field.one()
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(x)
    return basis


def integral_rows(rows, d: int) -> list:
    """Scale each row of field elements to coprime integer coefficient tuples (flattened)."""
    out = []
    for row in rows:
        den = 1
        for e in row:
            for x in e.coeffs:
                if isinstance(x, Fraction):
                    den = lcm(den, x.denominator)
        flat = []
        for e in row:
            for x in e.coeffs:
                flat.append(int(x * den))
        g = 0
        for x in flat:
            g = gcd(g, x)
        out.append(tuple(x // g for x in flat) if g > 1 else tuple(flat))
    return out


def as_elements(field, vec, n: int, d: int) -> list:
    return [RingElement(field, vec[i * d:(i + 1) * d]) for i in range(n)]


def finite_orbit_annihilator(rs, word_idx) -> list:
    """Integer rows A with A x = 0 iff x has a finite orbit under the linear map
    x -> s_{w_k} ... s_{w_1} x (letters applied in order).

    Finite orbit means Q^r x = x for some r, i.e. x lies in the direct sum of
    the kernels of Phi_N(Q); only N with phi(N) <= n * d can contribute.
    """
    n, d, field = rs.n, rs.d, rs.field
    seq = tuple(reversed(word_idx))

    def apply(vec):
        return rs.apply_word(seq, vec)

    top = max(cyclotomic_orders(n * d), key=lambda N: len(cyclotomic(N)))
    top_deg = len(cyclotomic(top)) - 1
    # powers[k][j] = Q^k e_j as raw vectors
    powers = [list(rs.simple)]
    for _ in range(top_deg):
        powers.append([apply(v) for v in powers[-1]])
    span = []
    for N in cyclotomic_orders(n * d):
        phi = cyclotomic(N)
        cols = []
        for j in range(n):
            acc = [0] * (n * d)
            for k, a in enumerate(phi):
                if a:
                    for t, x in enumerate(powers[k][j]):
                        acc[t] += a * x
            cols.append(acc)
        rows = [[RingElement(field, tuple(cols[j][i * d:(i + 1) * d])) for j in range(n)]
                for i in range(n)]
        span.extend(kernel([r for r in rows if any(not e.is_zero() for e in r)], n, field))
    if not span:
        return integral_rows([[field.one() if i == j else field.zero() for i in range(n)]
                              for j in range(n)], d)
    red, _ = rref(span, field)
    return integral_rows(kernel(red, n, field), d)


def annihilates(rs, rows, vec) -> bool:
    d = rs.d
    n = rs.n
    if d == 1:
        return all(sum(a * x for a, x in zip(row, vec)) == 0 for row in rows)
    for row in rows:
        acc = [0] * d
        for i in range(n):
            a = row[i * d:(i + 1) * d]
            b = vec[i * d:(i + 1) * d]
            if any(a) and any(b):
                for t, y in enumerate(rs.field.mul_raw(a, b)):
                    acc[t] += y
        if any(acc):
            return False
    return True
