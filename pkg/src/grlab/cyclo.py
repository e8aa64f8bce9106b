"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Values are stored in the power basis 1, z, ..., z^(phi(m)-1) reduced mod
the m-th cyclotomic polynomial, with Fraction coefficients.  Conductors
grow on demand (lcm) when mixing values from different fields.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def _phi(m):
    out = 1
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            out *= p - 1
            n //= p
            while n % p == 0:
                out *= p
                n //= p
        p += 1
    if n > 1:
        out *= n - 1
    return out


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (little endian), den monic."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * max(len(num) - dd, 0)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            q[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Integer coefficients of Phi_m, little endian, monic."""
    if m == 1:
        return (-1, 1)
    poly = [0] * m + [1]
    poly[0] = -1  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_poly(d))
            assert not rem
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(m):
    """x^k mod Phi_m for phi(m) <= k < m, as integer tuples of length phi(m)."""
    phi = _phi(m)
    f = cyclotomic_poly(m)
    rows = []
    cur = [0] * phi
    if phi > 0:
        # start from x^phi = -(f[0] + ... + f[phi-1] x^{phi-1})
        cur = [-c for c in f[:phi]]
    rows.append(tuple(cur))
    for _ in range(phi + 1, m):
        nxt = [0] * phi
        carry = cur[phi - 1]
        for j in range(phi - 1):
            nxt[j + 1] = cur[j]
        if carry:
            for j in range(phi):
                nxt[j] -= carry * f[j]
        rows.append(tuple(nxt))
        cur = nxt
    return rows


def _reduce_raw(raw, m):
    """Reduce a length-m coefficient list (exponents mod m) to the power basis."""
    phi = _phi(m)
    out = list(raw[:phi]) + [Fraction(0)] * max(0, phi - len(raw))
    while len(out) < phi:
        out.append(Fraction(0))
    if len(raw) > phi:
        rows = _reduction_rows(m)
        for k in range(phi, len(raw)):
            c = raw[k]
            if c:
                row = rows[k - phi]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
    return tuple(Fraction(x) for x in out)


class CycNum:
    """An element of Q(zeta_m), immutable."""

    __slots__ = ("m", "co")

    def __init__(self, m, co):
        self.m = m
        self.co = co

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def rational(x):
        return CycNum(1, (Fraction(x),))

    @staticmethod
    def root_of_unity(m, k=1):
        k %= m
        raw = [Fraction(0)] * m
        raw[k] = Fraction(1)
        return CycNum(m, _reduce_raw(raw, m))

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.co)

    def is_rational(self):
        return all(c == 0 for c in self.co[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("value is not rational: %s" % (self,))
        return self.co[0]

    def rational_integer_value(self):
        v = self.rational_value()
        if v.denominator != 1:
            raise ValueError("value is not a rational integer: %s" % (self,))
        return int(v)

    # -- conductor handling -----------------------------------------------------

    def embed(self, M):
        """Rewrite in Q(zeta_M); M must be a multiple of m."""
        if M == self.m:
            return self
        assert M % self.m == 0
        step = M // self.m
        raw = [Fraction(0)] * M
        for j, c in enumerate(self.co):
            if c:
                raw[(j * step) % M] += c
        return CycNum(M, _reduce_raw(raw, M))

    def _common(self, other):
        M = self.m * other.m // gcd(self.m, other.m)
        return self.embed(M), other.embed(M), M

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        if self.m == other.m:
            return CycNum(self.m, tuple(a + b for a, b in zip(self.co, other.co)))
        a, b, M = self._common(other)
        return CycNum(M, tuple(x + y for x, y in zip(a.co, b.co)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, tuple(-c for c in self.co))

    def __sub__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return CycNum.rational(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        if other.is_rational():
            c = other.co[0]
            return CycNum(self.m, tuple(x * c for x in self.co))
        if self.is_rational():
            c = self.co[0]
            return CycNum(other.m, tuple(x * c for x in other.co))
        a, b, M = self._common(other)
        raw = [Fraction(0)] * M
        for i, x in enumerate(a.co):
            if x:
                for j, y in enumerate(b.co):
                    if y:
                        raw[(i + j) % M] += x * y
        return CycNum(M, _reduce_raw(raw, M))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic number")
        if self.is_rational():
            return CycNum(self.m, (1 / self.co[0],) + tuple(Fraction(0) for _ in self.co[1:]))
        # extended Euclid in Q[x] mod Phi_m
        f = [Fraction(c) for c in cyclotomic_poly(self.m)]
        a = list(self.co)
        r0, r1 = f, a
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def trim(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        def sub_scaled(p, q, c, shift):
            while len(p) < len(q) + shift:
                p.append(Fraction(0))
            for j, y in enumerate(q):
                p[j + shift] -= c * y
            return trim(p)

        r0, r1 = trim(r0), trim(r1)
        while len(r1) > 1:
            # divide r0 by r1, remainder stays in r0
            q = []
            while len(r0) >= len(r1) and r0:
                c = r0[-1] / r1[-1]
                shift = len(r0) - len(r1)
                r0 = sub_scaled(r0, r1, c, shift)
                while len(q) <= shift:
                    q.append(Fraction(0))
                q[shift] = c
            for sh, c in enumerate(q):
                if c:
                    s0 = sub_scaled(s0, s1, c, sh)
            r0, r1 = r1, r0
            s0, s1 = s1, s0
        if not r1:
            raise ZeroDivisionError("not invertible mod Phi_m")
        c = r1[0]
        inv = [x / c for x in s1]
        phi = _phi(self.m)
        inv = inv[:phi] + [Fraction(0)] * max(0, phi - len(inv))
        return CycNum(self.m, _reduce_raw(inv, self.m))

    def __truediv__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum.rational(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = CycNum.rational(1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    # -- Galois action -----------------------------------------------------------

    def galois(self, t):
        """Apply zeta -> zeta^t (t coprime to the conductor)."""
        t %= self.m
        assert gcd(t, self.m) == 1
        raw = [Fraction(0)] * self.m
        for j, c in enumerate(self.co):
            if c:
                raw[(j * t) % self.m] += c
        return CycNum(self.m, _reduce_raw(raw, self.m))

    def conjugate(self):
        if self.m <= 2:
            return self
        return self.galois(self.m - 1)

    # -- comparison / formatting ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CycNum):
            if isinstance(other, (int, Fraction)):
                return self.is_rational() and self.co[0] == other
            return NotImplemented
        if self.m == other.m:
            return self.co == other.co
        a, b, _ = self._common(other)
        return a.co == b.co

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    __hash__ = None

    def sort_key(self, M):
        """Deterministic key after embedding into Q(zeta_M)."""
        e = self.embed(M)
        return tuple((c.numerator, c.denominator) for c in e.co)

    def __repr__(self):
        if self.is_rational():
            return str(self.co[0])
        parts = []
        for j, c in enumerate(self.co):
            if c:
                if j == 0:
                    parts.append(str(c))
                elif j == 1:
                    parts.append("%s*z" % c)
                else:
                    parts.append("%s*z^%d" % (c, j))
        return ("%s@%d" % (" + ".join(parts), self.m)) if parts else "0"

    def text_form(self):
        """Plain text form "c0 + c1*z + ...@m" used in reports."""
        return repr(self)


ZERO = CycNum.rational(0)
ONE = CycNum.rational(1)


def cyc_sum(values):
    acc = ZERO
    for v in values:
        acc = acc + v
    return acc


# -- exact square roots of rationals (Gauss sums) ------------------------------


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


@lru_cache(maxsize=None)
def _sqrt_prime(p):
    """Exact square root of the prime p as a CycNum."""
    if p == 2:
        z = CycNum.root_of_unity(8)
        return z + z ** 7
    g = cyc_sum(CycNum.root_of_unity(p, a) * _legendre(a, p) for a in range(1, p))
    if p % 4 == 1:
        return g  # g^2 = p
    # g^2 = -p, so sqrt(p) = g / i with a fixed choice of i
    i = CycNum.root_of_unity(4)
    return g * i.inverse()


def rational_sqrt(r):
    """An exact cyclotomic square root of the rational r (choice fixed)."""
    r = Fraction(r)
    if r == 0:
        return ZERO
    num, den = r.numerator, r.denominator
    sign = 1
    if num < 0:
        sign = -1
        num = -num
    out = CycNum.rational(Fraction(1, den))
    n = num * den  # sqrt(num/den) = sqrt(num*den)/den
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out = out * (p ** (e // 2))
            if e % 2:
                out = out * _sqrt_prime(p)
        p += 1
    if n > 1:
        out = out * _sqrt_prime(n)
    if sign < 0:
        out = out * CycNum.root_of_unity(4)
    return out


def rational_nth_root(r, n):
    """Exact rational n-th root of the rational r, or None."""
    r = Fraction(r)
    if r == 0:
        return Fraction(0)
    sign = 1
    if r < 0:
        if n % 2 == 0:
            return None
        sign = -1
        r = -r

    def iroot(x):
        if x == 1:
            return 1
        lo, hi = 1, x
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** n < x:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** n == x else None

    a = iroot(r.numerator)
    b = iroot(r.denominator)
    if a is None or b is None:
        return None
    return sign * Fraction(a, b)
