"""Finite chain rings Z/p^ell and their unramified (Galois ring) extensions.

Ring elements are encoded as plain ints: an element sum_j c_j x^j with
0 <= c_j < p^ell is stored as sum_j c_j * (p^ell)^j.  For d = 1 this is
just the residue mod p^ell.  Small rings get full add/mul lookup tables.
"""

from functools import lru_cache


class CapExceededError(RuntimeError):
    """An enumeration would exceed its configured cap."""


MAX_RING_SIZE = 2 ** 40
TABLE_CAP = 4096


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# --- dense polynomial helpers over F_p (coefficient lists, little endian) ---

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a

def _poly_mulmod(a, b, f, p):
    """a*b mod (f, p) with f monic."""
    d = len(f) - 1
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for k in range(len(res) - 1, d - 1, -1):
        c = res[k]
        if c:
            res[k] = 0
            for j in range(d):
                res[k - d + j] = (res[k - d + j] - c * f[j]) % p
    _poly_trim(res)
    return res

def _poly_gcd_fp(a, b, p):
    a, b = list(a), list(b)
    _poly_trim(a); _poly_trim(b)
    while b:
        # a mod b
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            c = (a[-1] * inv_lead) % p
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            _poly_trim(a)
        a, b = b, a
    return a

def poly_is_irreducible_fp(f, p):
    """Monic f over F_p, little-endian coefficient list."""
    d = len(f) - 1
    if d == 1:
        return True
    # x^(p^k) mod f, k = 1..d//2 ; gcd(x^(p^k) - x, f) must be 1
    xq = [0, 1]
    for _ in range(d // 2):
        # raise to p-th power
        acc = [1]
        base = list(xq)
        e = p
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            e >>= 1
        xq = acc
        diff = list(xq)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        _poly_trim(diff)
        if diff:
            g = _poly_gcd_fp(diff, f, p)
            if len(g) > 1:
                return False
        else:
            return False  # x^(p^k) == x already
    return True


def least_irreducible(p, d):
    """Lexicographically least monic irreducible of degree d over F_p.

    Polynomials are ordered by the integer sum_j a_j p^j of their
    non-leading coefficients.
    """
    if d == 1:
        return (0, 1)
    for code in range(p ** d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if poly_is_irreducible_fp(f, p):
            return tuple(f)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class ChainRing:
    """The Galois ring GR(p^ell, d) = Z[x]/(p^ell, f); d=1 gives Z/p^ell."""

    def __init__(self, p, ell, d, f):
        self.p = p
        self.ell = ell
        self.d = d
        self.f = tuple(f)
        self.m = p ** ell
        self.q = p ** d
        self.size = self.m ** d
        self.zero = 0
        self.one = 1
        self._mul_tbl = None
        self._inv_tbl = None
        # x^k mod (f, p^ell) for k in [d, 2d-2], as coefficient tuples mod p^ell
        red = []
        for k in range(d, 2 * d - 1):
            if k == d:
                cur = [(-c) % self.m for c in self.f[:d]]
            else:
                prev = red[-1]
                cur = [0] * d
                for j in range(d):
                    if prev[j]:
                        if j + 1 < d:
                            cur[j + 1] = (cur[j + 1] + prev[j]) % self.m
                        else:
                            for t in range(d):
                                cur[t] = (cur[t] - prev[j] * self.f[t]) % self.m
            red.append(cur)
        self._red = red
        if d > 1 and self.size <= TABLE_CAP:
            self._build_tables()

    # -- encoding -----------------------------------------------------------

    def encode(self, coeffs):
        x = 0
        for c in reversed(coeffs):
            x = x * self.m + (c % self.m)
        return x

    def decode(self, x):
        out = []
        for _ in range(self.d):
            out.append(x % self.m)
            x //= self.m
        return out

    def elements(self):
        return range(self.size)

    def units(self):
        return [x for x in range(self.size) if self.is_unit(x)]

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        if self.d == 1:
            return (a + b) % self.m
        ca, cb = self.decode(a), self.decode(b)
        return self.encode([x + y for x, y in zip(ca, cb)])

    def sub(self, a, b):
        if self.d == 1:
            return (a - b) % self.m
        ca, cb = self.decode(a), self.decode(b)
        return self.encode([x - y for x, y in zip(ca, cb)])

    def neg(self, a):
        if self.d == 1:
            return (-a) % self.m
        return self.encode([-x for x in self.decode(a)])

    def _mul_raw(self, a, b):
        ca, cb = self.decode(a), self.decode(b)
        d = self.d
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(ca):
            if ai:
                for j, bj in enumerate(cb):
                    prod[i + j] += ai * bj
        out = [c % self.m for c in prod[:d]]
        for k in range(d, 2 * d - 1):
            c = prod[k] % self.m
            if c:
                rk = self._red[k - d]
                for j in range(d):
                    out[j] = (out[j] + c * rk[j]) % self.m
        return self.encode(out)

    def mul(self, a, b):
        if self.d == 1:
            return (a * b) % self.m
        if self._mul_tbl is not None:
            return self._mul_tbl[a][b]
        return self._mul_raw(a, b)

    def _build_tables(self):
        n = self.size
        self._mul_tbl = [[0] * n for _ in range(n)]
        for a in range(n):
            row = self._mul_tbl[a]
            for b in range(a, n):
                v = self._mul_raw(a, b)
                row[b] = v
                self._mul_tbl[b][a] = v
        self._inv_tbl = {}
        for a in range(n):
            if self.is_unit(a):
                for b in range(n):
                    if self._mul_tbl[a][b] == 1:
                        self._inv_tbl[a] = b
                        break

    def is_unit(self, a):
        if self.d == 1:
            return a % self.p != 0
        return any(c % self.p for c in self.decode(a))

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit in the chain ring")
        if self.d == 1:
            return pow(a, -1, self.m)
        if self._inv_tbl is not None:
            return self._inv_tbl[a]
        # invert mod p via Fermat in F_q, then Hensel-lift
        res = self.residue()
        abar = self.reduce_to_level(a, 1)
        y1 = res._pow(abar, res.q - 2)
        y = self._lift_elem(y1, res)
        for _ in range(self.ell):
            # y <- y (2 - a y)
            ay = self.mul(a, y)
            y = self.mul(y, self.sub(self.add(self.one, self.one), ay))
        return y

    def _pow(self, a, e):
        acc = self.one
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    # -- valuation ------------------------------------------------------------

    def valuation(self, a):
        """pi-adic valuation; returns ell for 0."""
        if a == 0:
            return self.ell
        coeffs = self.decode(a) if self.d > 1 else [a]
        v = self.ell
        for c in coeffs:
            if c:
                w = 0
                while c % self.p == 0:
                    c //= self.p
                    w += 1
                v = min(v, w)
        return v

    def pi_power(self, v):
        if v >= self.ell:
            return 0
        return self.p ** v

    def divide_by_pi_power(self, a, v):
        if v == 0:
            return a
        pv = self.p ** v
        coeffs = self.decode(a) if self.d > 1 else [a]
        out = []
        for c in coeffs:
            if c % pv:
                raise ValueError("element not divisible by pi^%d" % v)
            out.append(c // pv)
        return self.encode(out) if self.d > 1 else out[0] % self.m

    def unit_part(self, a):
        if a == 0:
            raise ValueError("zero has no unit part")
        return self.divide_by_pi_power(a, self.valuation(a))

    # -- level changes ---------------------------------------------------------

    @lru_cache(maxsize=None)
    def ring_at_level(self, i):
        if i == self.ell:
            return self
        return ChainRing(self.p, i, self.d, self.f)

    def residue(self):
        return self.ring_at_level(1)

    def reduce_to_level(self, a, i):
        """Image of a in the level-i quotient ring (encoded there)."""
        pi = self.p ** i
        if self.d == 1:
            return a % pi
        r = self.ring_at_level(i)
        return r.encode([c % pi for c in self.decode(a)])

    def lift_from_level(self, a, i):
        """Digitwise lift of a level-i element (coefficients taken as ints)."""
        if self.d == 1:
            return a % self.m
        ri = self.ring_at_level(i)
        return self.encode(ri.decode(a))

    # -- trace -------------------------------------------------------------

    def trace(self, a):
        """Trace to Z/p^ell, computed as the regular-representation trace."""
        if self.d == 1:
            return a
        # trace of multiplication-by-a on the basis 1, x, ..., x^{d-1}
        t = 0
        b = a
        xs = self.encode([0, 1]) if self.d > 1 else 1
        for j in range(self.d):
            t = (t + self.decode(b)[j]) % self.m
            if j + 1 < self.d:
                b = self.mul(a, self._pow(xs, j + 1))
        return t

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, ChainRing)
                and (self.p, self.ell, self.d, self.f)
                == (other.p, other.ell, other.d, other.f))

    def __hash__(self):
        return hash((self.p, self.ell, self.d, self.f))

    def __repr__(self):
        if self.d == 1:
            return "Z/%d" % self.m
        return "GR(%d,%d)" % (self.m, self.d)


def make_ring(p, ell, d=1):
    """Build GR(p^ell, d) with the canonical least irreducible polynomial."""
    if not is_prime(p):
        raise ValueError("p = %d is not prime" % p)
    if ell < 1 or d < 1:
        raise ValueError("need ell >= 1 and d >= 1")
    if (p ** ell) ** d > MAX_RING_SIZE:
        raise CapExceededError("ring size p^(ell*d) exceeds the configured bound")
    f = least_irreducible(p, d)
    return ChainRing(p, ell, d, f)
