"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/L)).

Elements are stored as coefficient tuples in the power basis
1, c, c^2, ..., c^(d-1) where c = 2cos(pi/L) and d is the degree of its
minimal polynomial.  Coefficients are Python ints or Fractions; integer
inputs stay integral under +, -, * because the minimal polynomial is monic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    """Polynomial long division over Q (b need not be monic)."""
    a = [Fraction(x) for x in _poly_trim(a)]
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        a = _poly_trim(a)
    return _poly_trim(q), a


def _exact_div(a, b):
    q, r = _poly_divmod(a, b)
    assert not r, "inexact cyclotomic division"
    return [int(x) for x in q]


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic(d))
    return tuple(num)


@lru_cache(maxsize=None)
def cheb2(k: int) -> tuple:
    """Integer polynomial P_k with P_k(2cos t) = 2cos(k t)."""
    if k == 0:
        return (2,)
    if k == 1:
        return (0, 1)
    a, b = [2], [0, 1]
    for _ in range(k - 1):
        xb = [0] + b
        nxt = [xb[i] - (a[i] if i < len(a) else 0) for i in range(len(xb))]
        a, b = b, nxt
    return tuple(_poly_trim(b))


@lru_cache(maxsize=None)
def minpoly_2cos(L: int) -> tuple:
    """Monic integer minimal polynomial of 2cos(pi/L), low to high."""
    if L < 1:
        raise ValueError("L must be positive")
    if L == 1:
        return (2, 1)
    phi = cyclotomic(2 * L)
    d = (len(phi) - 1) // 2
    out = [0] * (d + 1)
    out[0] += phi[d]
    for k in range(1, d + 1):
        for i, x in enumerate(cheb2(k)):
            out[i] += phi[d + k] * x
    return tuple(out)


def _interval_mul(a, b):
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(prods), max(prods)


def _interval_eval(coeffs, lo, hi):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = _interval_mul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc


def _eval_exact(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class CyclotomicRealField:
    """The field Q(c), c = 2cos(pi/L), with certified sign determination."""

    def __init__(self, L: int):
        self.L = L
        self.minpoly = minpoly_2cos(L)
        self.degree = len(self.minpoly) - 1
        self.gen_float = 2.0 * math.cos(math.pi / L)
        self._powers = [self.gen_float**k for k in range(self.degree)]
        self._rational_gen = None
        if self.degree == 1:
            self._rational_gen = Fraction(-self.minpoly[0])
        self._isolating = None

    def __repr__(self):
        return f"CyclotomicRealField(L={self.L})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicRealField) and other.L == self.L

    def __hash__(self):
        return hash(("Q2cos", self.L))

    # -- raw coefficient tuples -------------------------------------------

    def reduce(self, poly) -> tuple:
        """Reduce a coefficient list modulo the (monic) minimal polynomial."""
        p = list(poly)
        d = self.degree
        mp = self.minpoly
        for k in range(len(p) - 1, d - 1, -1):
            f = p[k]
            if f:
                for i in range(d):
                    p[k - d + i] -= f * mp[i]
            p[k] = 0
        p = p[:d] + [0] * (d - len(p))
        return tuple(p)

    def mul_raw(self, a, b) -> tuple:
        return self.reduce(_poly_mul(a, b))

    def cos_coeffs(self, m: int) -> tuple:
        """Coefficients of 2cos(pi/m); requires m | L."""
        if self.L % m:
            raise ValueError(f"2cos(pi/{m}) is not in Q(2cos(pi/{self.L}))")
        return self.reduce(cheb2(self.L // m))

    def to_float(self, a) -> float:
        return float(sum(float(x) * p for x, p in zip(a, self._powers)))

    def sign_raw(self, a) -> int:
        if not any(a):
            return 0
        if self._rational_gen is not None:
            v = _eval_exact(a, self._rational_gen)
            return (v > 0) - (v < 0)
        v = 0.0
        err = 0.0
        for x, p in zip(a, self._powers):
            t = float(x) * p
            v += t
            err += abs(t)
        if abs(v) > 1e-12 * err + 1e-300:
            return 1 if v > 0 else -1
        return self._sign_refine(a)

    def _isolate(self):
        if self._isolating is None:
            c = Fraction(self.gen_float)
            eps = Fraction(1, 10**9)
            lo, hi = c - eps, c + eps
            flo = _eval_exact(self.minpoly, lo)
            fhi = _eval_exact(self.minpoly, hi)
            if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
                raise ArithmeticError("failed to isolate 2cos(pi/L)")
            self._isolating = (lo, hi, flo > 0)
        return self._isolating

    def _sign_refine(self, a) -> int:
        lo, hi, lo_pos = self._isolate()
        for _ in range(4000):
            ilo, ihi = _interval_eval(a, lo, hi)
            if ilo > 0:
                return 1
            if ihi < 0:
                return -1
            mid = (lo + hi) / 2
            fm = _eval_exact(self.minpoly, mid)
            if fm == 0:
                v = _eval_exact(a, mid)
                return (v > 0) - (v < 0)
            if (fm > 0) == lo_pos:
                lo = mid
            else:
                hi = mid
        raise ArithmeticError("sign refinement did not terminate")

    def inverse_raw(self, a) -> tuple:
        """Inverse via the extended Euclidean algorithm over Q."""
        if not any(a):
            raise ZeroDivisionError("inverse of zero ring element")
        r0, r1 = list(self.minpoly), _poly_trim(a)
        s0, s1 = [], [Fraction(1)]
        while len(_poly_trim(r1)) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = _poly_mul(q, s1)
            n = max(len(s0), len(qs))
            s_new = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
            s0, s1 = s1, _poly_trim(s_new)
        const = Fraction(_poly_trim(r1)[0])
        out = self.reduce([Fraction(x) / const for x in s1])
        return tuple(_normalize(x) for x in out)

    # -- element constructors ---------------------------------------------

    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            return value
        if isinstance(value, (int, Fraction)):
            return RingElement(self, (value,) + (0,) * (self.degree - 1))
        return RingElement(self, self.reduce(list(value)))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        return self([0, 1])


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


class RingElement:
    """An element of Q(2cos(pi/L)); immutable and hashable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicRealField, coeffs):
        self.field = field
        self.coeffs = tuple(_normalize(x) for x in coeffs)

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.field != self.field:
                raise TypeError("ring elements from different fields")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (other,) + (0,) * (self.field.degree - 1)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.field, tuple(x + y for x, y in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.field, tuple(x - y for x, y in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.field, self.field.mul_raw(self.coeffs, o))

    __rmul__ = __mul__

    def inverse(self):
        return RingElement(self.field, self.field.inverse_raw(self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElement(self.field, tuple(Fraction(x) / other for x in self.coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sign(self) -> int:
        return self.field.sign_raw(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.coeffs == tuple(_normalize(x) for x in o)

    def __hash__(self):
        return hash((self.field.L, self.coeffs))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return self.field.to_float(self.coeffs)

    def __repr__(self):
        return f"RingElement({format_coeffs(self.coeffs)}, L={self.field.L})"

    def __str__(self):
        return format_coeffs(self.coeffs)


def format_coeffs(coeffs) -> str:
    """Render a coefficient tuple as a polynomial in c = 2cos(pi/L)."""
    terms = []
    for k, x in enumerate(coeffs):
        if x == 0:
            continue
        mono = "" if k == 0 else ("c" if k == 1 else f"c^{k}")
        if k == 0:
            terms.append(str(x))
        elif x == 1:
            terms.append(mono)
        elif x == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{x}{mono}" if isinstance(x, int) else f"({x}){mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out
