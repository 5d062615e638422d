"""Exact arithmetic in Q(sqrt 5) and in the ring Z[zeta_5].

``GoldenNumber`` holds ``p + q*phi`` with rational ``p, q``.  ``CycloPoint``
holds ``a0 + a1*z + a2*z**2 + a3*z**3`` with ``z = exp(2*pi*i/5)`` and integer
coefficients; every vertex of a generated tiling lives in this ring.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

__all__ = ["GoldenNumber", "CycloPoint", "PHI", "ZERO", "ONE", "fibonacci"]

_PHI_FLOAT = (1.0 + math.sqrt(5.0)) / 2.0


def fibonacci(n: int) -> int:
    """F(n) with F(0) = 0, F(1) = 1; negative n via F(-n) = (-1)**(n+1) F(n)."""
    if n < 0:
        return (-1) ** (n + 1) * fibonacci(-n)
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@total_ordering
class GoldenNumber:
    """An element ``p + q*phi`` of the golden field, phi**2 = phi + 1."""

    __slots__ = ("_p", "_q")

    def __init__(self, p=0, q=0):
        self._p = Fraction(p)
        self._q = Fraction(q)

    @property
    def p(self) -> Fraction:
        return self._p

    @property
    def q(self) -> Fraction:
        return self._q

    @classmethod
    def coerce(cls, value) -> GoldenNumber:
        if isinstance(value, GoldenNumber):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value, 0)
        raise TypeError(f"cannot convert {type(value).__name__} to GoldenNumber")

    @classmethod
    def phi_power(cls, n: int) -> GoldenNumber:
        """phi**n = F(n-1) + F(n)*phi, valid for every integer n."""
        return cls(fibonacci(n - 1), fibonacci(n))

    @classmethod
    def from_sqrt5(cls, a, b) -> GoldenNumber:
        """The number ``a + b*sqrt(5)``, using sqrt(5) = 2*phi - 1."""
        a, b = Fraction(a), Fraction(b)
        return cls(a - b, 2 * b)

    def conjugate(self) -> GoldenNumber:
        # phi -> 1 - phi
        return GoldenNumber(self._p + self._q, -self._q)

    def norm(self) -> Fraction:
        # (p + q phi)(p + q - q phi) = p^2 + pq - q^2
        return self._p * self._p + self._p * self._q - self._q * self._q

    def sign(self) -> int:
        """Exact sign of the real value."""
        p, q = self._p, self._q
        # value = (2p + q)/2 + q*sqrt(5)/2; compare (2p + q) against -q*sqrt(5)
        a = 2 * p + q
        b = q
        if a >= 0 and b >= 0:
            return 0 if (a == 0 and b == 0) else 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: the one with larger square wins
        lhs = a * a
        rhs = 5 * b * b
        if lhs == rhs:
            return 0
        if lhs > rhs:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __add__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenNumber(self._p + other._p, self._q + other._q)

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber(-self._p, -self._q)

    def __sub__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenNumber(self._p - other._p, self._q - other._q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, other._p, other._q
        qq = q1 * q2
        return GoldenNumber(p1 * p2 + qq, p1 * q2 + q1 * p2 + qq)

    __rmul__ = __mul__

    def inverse(self) -> GoldenNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GoldenNumber division by zero")
        c = self.conjugate()
        return GoldenNumber(c._p / n, c._q / n)

    def __truediv__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GoldenNumber.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = GoldenNumber(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def cmp(self, other) -> int:
        return (self - other).sign()

    def __eq__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self._p == other._p and self._q == other._q

    def __lt__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self):
        return hash((self._p, self._q))

    def __float__(self):
        return float(self._p) + float(self._q) * _PHI_FLOAT

    def __repr__(self):
        return f"GoldenNumber({self._p}, {self._q})"

    def __str__(self):
        p, q = self._p, self._q
        if q == 0:
            return str(p)
        qs = "" if abs(q) == 1 else str(abs(q))
        if p == 0:
            return ("-" if q < 0 else "") + f"{qs}φ"
        return f"{p}{'-' if q < 0 else '+'}{qs}φ"

    def sqrt5_form(self) -> tuple[Fraction, Fraction]:
        """Return ``(a, b)`` with value ``a + b*sqrt(5)``."""
        return self._p + self._q / 2, self._q / 2


PHI = GoldenNumber(0, 1)
ZERO = GoldenNumber(0)
ONE = GoldenNumber(1)

_COS = [math.cos(2 * math.pi * k / 5) for k in range(4)]
_SIN = [math.sin(2 * math.pi * k / 5) for k in range(4)]


class CycloPoint:
    """Integer combination of 1, z, z**2, z**3 with z a primitive 5th root of unity."""

    __slots__ = ("coeffs",)

    def __init__(self, a0: int = 0, a1: int = 0, a2: int = 0, a3: int = 0):
        self.coeffs = (int(a0), int(a1), int(a2), int(a3))

    @classmethod
    def from_power_coeffs(cls, c) -> CycloPoint:
        """Canonicalize coefficients of 1, z, ..., z**4 using 1+z+...+z**4 = 0."""
        c = list(c) + [0] * (5 - len(c))
        c4 = c[4]
        return cls(c[0] - c4, c[1] - c4, c[2] - c4, c[3] - c4)

    @classmethod
    def zeta(cls, k: int) -> CycloPoint:
        c = [0] * 5
        c[k % 5] = 1
        return cls.from_power_coeffs(c)

    @classmethod
    def unit(cls, direction: int) -> CycloPoint:
        """exp(i*pi*direction/5): one of the ten edge directions."""
        d = direction % 10
        # exp(i pi d/5) = exp(2 pi i (d/2)/5); odd d via -z**((d+5)/2)
        if d % 2 == 0:
            return cls.zeta(d // 2)
        return -cls.zeta((d + 5) // 2)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, CycloPoint):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        return CycloPoint(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        return CycloPoint(a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])

    def __neg__(self):
        a = self.coeffs
        return CycloPoint(-a[0], -a[1], -a[2], -a[3])

    def scale(self, n: int) -> CycloPoint:
        a = self.coeffs
        return CycloPoint(n * a[0], n * a[1], n * a[2], n * a[3])

    def mul_zeta(self, k: int = 1) -> CycloPoint:
        if not 0 <= k <= 4:
            raise ValueError("k must lie in 0..4")
        a0, a1, a2, a3 = self.coeffs
        for _ in range(k):
            a0, a1, a2, a3 = -a3, a0 - a3, a1 - a3, a2 - a3
        return CycloPoint(a0, a1, a2, a3)

    def rotate(self, steps: int) -> CycloPoint:
        """Rotate by ``steps * 36`` degrees."""
        return self * CycloPoint.unit(steps)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, CycloPoint):
            return NotImplemented
        out = [0] * 7
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        # z**5 = 1
        c = [out[0] + out[5], out[1] + out[6], out[2], out[3], out[4]]
        return CycloPoint.from_power_coeffs(c)

    __rmul__ = __mul__

    def mul_phi(self) -> CycloPoint:
        # phi = -(z**2 + z**3)
        return -(self.mul_zeta(2) + self.mul_zeta(3))

    def mul_golden(self, g: GoldenNumber) -> CycloPoint:
        """Multiply by an element ``p + q*phi`` with integer p, q."""
        if g.p.denominator != 1 or g.q.denominator != 1:
            raise ValueError("only integral golden numbers keep points in the ring")
        return self.scale(int(g.p)) + self.mul_phi().scale(int(g.q))

    def conj_galois(self, k: int) -> CycloPoint:
        """Image under the field automorphism z -> z**k (k = 1..4)."""
        c = [0] * 5
        for i, a in enumerate(self.coeffs):
            c[(i * k) % 5] += a
        return CycloPoint.from_power_coeffs(c)

    def complex_conjugate(self) -> CycloPoint:
        return self.conj_galois(4)

    def abs2(self) -> GoldenNumber:
        """Exact squared modulus ``|z|**2`` as an element of Z[phi]."""
        w = (self * self.complex_conjugate()).coeffs
        # a real element of the ring has canonical form w0 + w2*(z**2 + z**3)
        assert w[1] == 0 and w[2] == w[3], w
        return GoldenNumber(w[0], -w[2])

    def to_cartesian(self) -> tuple[float, float]:
        a = self.coeffs
        x = a[0] + a[1] * _COS[1] + a[2] * _COS[2] + a[3] * _COS[3]
        y = a[1] * _SIN[1] + a[2] * _SIN[2] + a[3] * _SIN[3]
        return (x, y)

    def to_complex(self) -> complex:
        x, y = self.to_cartesian()
        return complex(x, y)

    def __repr__(self):
        return f"CycloPoint{self.coeffs}"
