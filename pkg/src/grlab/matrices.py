"""Matrices over finite chain rings and the linear-algebra layer.

Matrices are flat tuples of encoded ring elements, row major.  A MatSpace
bundles the ring and the size and provides arithmetic, characteristic
polynomials (Berkowitz, division free), similarity classes, the Galois
subalgebra splitting Mat_n = A (+) Z, the conjugation algorithm moving an
f-primary matrix into the embedded Galois matrix algebra, and the additive
duality xi -> phi_xi.
"""

from functools import lru_cache

from grlab import _core
from grlab.chainring import ChainRing, CapExceededError
from grlab.cyclo import CycNum
from grlab import modlinalg

try:
    import numpy as _np
except ImportError:  # numpy only needed for the compiled table path
    _np = None

ENUM_CAP = 10 ** 6


class FieldOps:
    """Field-operations adapter for a level-1 chain ring (a finite field)."""

    def __init__(self, ring):
        assert ring.ell == 1
        self.ring = ring
        self.zero = ring.zero
        self.one = ring.one
        self.add = ring.add
        self.sub = ring.sub
        self.mul = ring.mul
        self.inv = ring.inv


def poly_gcd(a, b, ops):
    """Monic gcd of little-endian polynomials over a field given by ops."""
    def trim(p):
        p = list(p)
        while p and p[-1] == ops.zero:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        inv_lead = ops.inv(b[-1])
        while len(a) >= len(b) and a:
            c = ops.mul(a[-1], inv_lead)
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = ops.sub(a[shift + j], ops.mul(c, b[j]))
            a = trim(a)
        a, b = b, a
    if a:
        inv_lead = ops.inv(a[-1])
        a = [ops.mul(inv_lead, c) for c in a]
    return tuple(a)


def poly_mul(a, b, ops):
    out = [ops.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != ops.zero:
            for j, y in enumerate(b):
                out[i + j] = ops.add(out[i + j], ops.mul(x, y))
    return tuple(out)


def poly_pow(a, e, ops):
    acc = (ops.one,)
    for _ in range(e):
        acc = poly_mul(acc, a, ops)
    return acc


class MatSpace:
    """Square matrices of size n over a chain ring, as flat tuples."""

    def __init__(self, ring, n):
        self.ring = ring
        self.n = n
        self.identity = tuple(ring.one if i == j else ring.zero
                              for i in range(n) for j in range(n))
        self.zero = tuple(ring.zero for _ in range(n * n))
        self._setup_mul()

    def _setup_mul(self):
        ring, n = self.ring, self.n
        if ring.d == 1:
            m = ring.m
            self.mul = lambda a, b: _core.mat_mul_mod(a, b, n, m)
        elif ring._mul_tbl is not None:
            if _core.USING_COMPILED and _np is not None:
                mul_t = _np.array(ring._mul_tbl, dtype=_np.int32)
                add_t = _np.array(
                    [[ring.add(x, y) for y in range(ring.size)]
                     for x in range(ring.size)], dtype=_np.int32)
                self.mul = lambda a, b: _core.mat_mul_tbl(a, b, n, mul_t, add_t)
            else:
                mul_t = ring._mul_tbl
                add_t = [[ring.add(x, y) for y in range(ring.size)]
                         for x in range(ring.size)]
                from grlab._fallback import mat_mul_tbl
                self.mul = lambda a, b: mat_mul_tbl(a, b, n, mul_t, add_t)
        else:
            def slow_mul(a, b, ring=ring, n=n):
                out = []
                for i in range(n):
                    for j in range(n):
                        acc = ring.zero
                        for k in range(n):
                            acc = ring.add(acc, ring.mul(a[i * n + k], b[k * n + j]))
                        out.append(acc)
                return tuple(out)
            self.mul = slow_mul

    # -- basics ---------------------------------------------------------------

    def add(self, a, b):
        r = self.ring
        return tuple(r.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        r = self.ring
        return tuple(r.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        r = self.ring
        return tuple(r.neg(x) for x in a)

    def smul(self, c, a):
        r = self.ring
        return tuple(r.mul(c, x) for x in a)

    def transpose(self, a):
        n = self.n
        return tuple(a[j * n + i] for i in range(n) for j in range(n))

    def trace(self, a):
        n = self.n
        t = self.ring.zero
        for i in range(n):
            t = self.ring.add(t, a[i * n + i])
        return t

    def rows(self, a):
        n = self.n
        return [list(a[i * n:(i + 1) * n]) for i in range(n)]

    def from_rows(self, rows):
        return tuple(x for row in rows for x in row)

    def powm(self, a, e):
        acc = self.identity
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def inverse(self, a):
        return self.from_rows(modlinalg.chain_inverse(self.rows(a), self.ring))

    def conj(self, g, a, g_inv=None):
        if g_inv is None:
            g_inv = self.inverse(g)
        return self.mul(self.mul(g, a), g_inv)

    # -- determinant / characteristic polynomial --------------------------------

    def charpoly(self, a, at_level=None):
        """char(M mod pi^i) = det(t*I - M), little-endian monic tuple."""
        ring = self.ring
        if at_level is not None and at_level != ring.ell:
            ri = ring.ring_at_level(at_level)
            sp = MatSpace(ri, self.n)
            red = tuple(ring.reduce_to_level(x, at_level) for x in a)
            return sp.charpoly(red)
        return _berkowitz_toeplitz(self.rows(a), ring)

    def det(self, a):
        cp = self.charpoly(a)
        d = cp[0]
        if self.n % 2 == 1:
            d = self.ring.neg(d)
        return d

    def is_invertible(self, a):
        """Invertibility over the chain ring == nonzero residue determinant."""
        ring = self.ring
        n = self.n
        if ring.d == 1:
            p = ring.p
            if n == 1:
                return a[0] % p != 0
            if n == 2:
                return (a[0] * a[3] - a[1] * a[2]) % p != 0
            if n == 3:
                d = (a[0] * (a[4] * a[8] - a[5] * a[7])
                     - a[1] * (a[3] * a[8] - a[5] * a[6])
                     + a[2] * (a[3] * a[7] - a[4] * a[6]))
                return d % p != 0
        res = ring.residue()
        rsp = MatSpace(res, n)
        red = self.reduce_level(a, 1)
        ops = FieldOps(res)
        return modlinalg.field_rank(rsp.rows(red), ops, n) == n

    # -- structural helpers --------------------------------------------------------

    def reduce_level(self, a, i):
        ring = self.ring
        return tuple(ring.reduce_to_level(x, i) for x in a)

    def lift_from_level(self, a, i):
        ring = self.ring
        return tuple(ring.lift_from_level(x, i) for x in a)

    def elements(self, cap=ENUM_CAP):
        total = self.ring.size ** (self.n * self.n)
        if total > cap:
            raise CapExceededError(
                "matrix enumeration of size %d exceeds cap %d" % (total, cap))
        ring_elems = list(self.ring.elements())
        nn = self.n * self.n

        def rec(prefix, k):
            if k == nn:
                yield tuple(prefix)
                return
            for x in ring_elems:
                prefix.append(x)
                yield from rec(prefix, k + 1)
                prefix.pop()

        return rec([], 0)

    def __eq__(self, other):
        return (isinstance(other, MatSpace) and self.ring == other.ring
                and self.n == other.n)

    def __hash__(self):
        return hash((self.ring, self.n))

    def __repr__(self):
        return "Mat_%d(%r)" % (self.n, self.ring)


def _dot(row, vec, ring):
    acc = ring.zero
    for x, y in zip(row, vec):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def _berkowitz_toeplitz(rows, ring):
    """Division-free char poly det(tI - M) via Samuelson-Berkowitz."""
    n = len(rows)
    if n == 0:
        return (ring.one,)
    add, mul, neg = ring.add, ring.mul, ring.neg
    # vector of polynomial coefficients, highest degree first
    vect = [ring.one, neg(rows[0][0])]
    for k in range(1, n):
        a = rows[k][k]
        R = [rows[k][j] for j in range(k)]
        C = [rows[i][k] for i in range(k)]
        Ak = [[rows[i][j] for j in range(k)] for i in range(k)]
        # toeplitz column: [1, -a, -RC, -R A C, -R A^2 C, ...]
        col = [ring.one, neg(a)]
        v = C
        for _ in range(k):
            col.append(neg(_dot(R, v, ring)))
            v = [_dot(Ak[i], v, ring) for i in range(k)]
        # multiply lower-triangular Toeplitz matrix (k+2) x (k+1) by vect
        new = []
        for i in range(k + 2):
            acc = ring.zero
            for j in range(max(0, i - len(col) + 1), min(i, k) + 1):
                acc = add(acc, mul(col[i - j], vect[j]))
            new.append(acc)
        vect = new
    vect.reverse()
    return tuple(vect)


# ---------------------------------------------------------------------------
# block sums and coprimality


def block_sum(space1, a, space2, b):
    """Block-diagonal sum; both matrices over the same ring."""
    assert space1.ring == space2.ring, "ring mismatch"
    n1, n2 = space1.n, space2.n
    n = n1 + n2
    ring = space1.ring
    out = [ring.zero] * (n * n)
    for i in range(n1):
        for j in range(n1):
            out[i * n + j] = a[i * n1 + j]
    for i in range(n2):
        for j in range(n2):
            out[(n1 + i) * n + (n1 + j)] = b[i * n2 + j]
    return MatSpace(ring, n), tuple(out)


def is_coprime(space1, a, space2, b):
    """Coprimality of the mod-pi characteristic polynomials."""
    assert space1.ring == space2.ring, "ring mismatch"
    res = space1.ring.residue()
    ops = FieldOps(res)
    p1 = space1.charpoly(a, at_level=1)
    p2 = space2.charpoly(b, at_level=1)
    g = poly_gcd(p1, p2, ops)
    return len(g) == 1


# ---------------------------------------------------------------------------
# GL_n generators and similarity classes


def unit_generators(ring):
    """A generating set of the unit group of a chain ring."""
    gens = []
    # a unit whose residue generates the multiplicative group of the field
    res = ring.residue()
    target = res.q - 1
    for u in res.units():
        order = 1
        x = u
        while x != res.one:
            x = res.mul(x, u)
            order += 1
        if order == target:
            gens.append(ring.lift_from_level(u, 1))
            break
    # 1 + pi^k x^t generate the principal units
    for k in range(1, ring.ell):
        for t in range(ring.d):
            coeffs = [0] * ring.d
            coeffs[t] = ring.p ** k
            coeffs[0] += 1
            gens.append(ring.encode(coeffs) if ring.d > 1 else coeffs[0] % ring.m)
    return gens


def gl_generators(space):
    """Generators of GL_n over the chain ring."""
    ring, n = space.ring, space.n
    gens = []
    if n == 1:
        return [(u,) for u in unit_generators(ring)]
    adds = []
    for t in range(ring.d):
        coeffs = [0] * ring.d
        coeffs[t] = 1
        adds.append(ring.encode(coeffs) if ring.d > 1 else 1)
    for i in range(n - 1):
        for x in adds:
            e = list(space.identity)
            e[i * n + (i + 1)] = x
            gens.append(tuple(e))
            e = list(space.identity)
            e[(i + 1) * n + i] = x
            gens.append(tuple(e))
    for u in unit_generators(ring):
        e = list(space.identity)
        e[0] = u
        gens.append(tuple(e))
    # adjacent transpositions to keep orbits honest at small generator depth
    for i in range(n - 1):
        e = list(space.zero)
        for j in range(n):
            if j == i:
                e[j * n + (i + 1)] = ring.one
            elif j == i + 1:
                e[j * n + i] = ring.one
            else:
                e[j * n + j] = ring.one
        gens.append(tuple(e))
    return gens


def gl_order(ring, n):
    q = ring.q
    order = q ** ((ring.ell - 1) * n * n)
    for i in range(n):
        order *= q ** n - q ** i
    return order


class SimClass:
    """A similarity class: level, size, canonical representative, orbit size."""

    __slots__ = ("level", "n", "rep", "orbit_size")

    def __init__(self, level, n, rep, orbit_size):
        self.level = level
        self.n = n
        self.rep = rep
        self.orbit_size = orbit_size

    def __repr__(self):
        return "SimClass(i=%d, n=%d, rep=%s, orbit=%d)" % (
            self.level, self.n, self.rep, self.orbit_size)

    def __eq__(self, other):
        return (isinstance(other, SimClass)
                and (self.level, self.n, self.rep) == (other.level, other.n, other.rep))

    def __hash__(self):
        return hash((self.level, self.n, self.rep))


def conjugation_orbit(space, m0, cap=ENUM_CAP):
    """Orbit of m0 under GL-conjugation, via generator BFS.  Sorted list."""
    gens = gl_generators(space)
    gen_pairs = [(g, space.inverse(g)) for g in gens]
    seen = {m0}
    frontier = [m0]
    while frontier:
        new = []
        for x in frontier:
            for g, gi in gen_pairs:
                y = space.mul(space.mul(g, x), gi)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        raise CapExceededError("conjugation orbit exceeds cap")
        frontier = new
    return sorted(seen)


def similarity_classes(ring, n, level, cap=ENUM_CAP, filt=None):
    """All similarity classes of Mat_n over the level-i quotient ring.

    filt, if given, restricts enumeration to matrices with filt(M) true;
    the filter must be conjugation invariant.
    """
    ri = ring.ring_at_level(level)
    space = MatSpace(ri, n)
    total = ri.size ** (n * n)
    if total > cap:
        raise CapExceededError(
            "similarity enumeration of %d matrices exceeds cap %d" % (total, cap))
    remaining = set()
    for mat in space.elements(cap=cap):
        if filt is None or filt(space, mat):
            remaining.add(mat)
    classes = []
    while remaining:
        m0 = min(remaining)
        orbit = conjugation_orbit(space, m0, cap=cap)
        for x in orbit:
            remaining.discard(x)
        classes.append(SimClass(level, n, orbit[0], len(orbit)))
    classes.sort(key=lambda c: c.rep)
    return classes


def class_of(space, mat, classes):
    """Locate the similarity class of mat in a precomputed class list."""
    orbit = conjugation_orbit(space, mat)
    rep = orbit[0]
    for c in classes:
        if c.rep == rep:
            return c
    raise KeyError("matrix class not in list")


# ---------------------------------------------------------------------------
# the splitting Mat_{md}(o_ell) = A (+) Z for A = Mat_m(O_ell)


def companion_matrix(space, f):
    """Companion matrix of the monic f (little endian, ints) over space.ring."""
    n = space.n
    ring = space.ring
    assert len(f) == n + 1
    rows = [[ring.zero] * n for _ in range(n)]
    for a in range(n - 1):
        rows[a + 1][a] = ring.one
    for a in range(n):
        c = (-f[a]) % ring.p ** ring.ell if ring.d == 1 else None
        if ring.d == 1:
            rows[a][n - 1] = c
        else:
            rows[a][n - 1] = ring.encode([(-f[a])] + [0] * (ring.d - 1))
    return space.from_rows(rows)


class AZSplit:
    """The decomposition Mat_{md}(o_ell) = A (+) Z with A = Mat_m(O_ell)."""

    def __init__(self, base_ring, m, d, f):
        assert base_ring.d == 1, "ambient ring must be Z/p^ell"
        self.base_ring = base_ring
        self.m = m
        self.d = d
        self.n = m * d
        self.f = tuple(f)
        self.space = MatSpace(base_ring, self.n)
        self.galois_ring = ChainRing(base_ring.p, base_ring.ell, d, f)
        self.gspace = MatSpace(self.galois_ring, m)
        dspace = MatSpace(base_ring, d)
        comp = companion_matrix(dspace, self.f)
        self._xpow = [dspace.identity]
        for _ in range(d - 1):
            self._xpow.append(dspace.mul(self._xpow[-1], comp))
        # A basis: E_{rs} tensor comp^j
        self.a_basis = []
        for r in range(m):
            for s in range(m):
                for j in range(d):
                    self.a_basis.append(self._embed_block(r, s, self._xpow[j]))
        # Z basis: kernel of Y -> (tr(a_i Y))_i over the chain ring
        nn = self.n * self.n
        rows = []
        for a in self.a_basis:
            at = self.space.transpose(a)
            # tr(a Y) = sum_{u,v} a[v,u] Y[u,v] -> row of coefficients
            rows.append(list(at))
        gens = modlinalg.chain_kernel(rows, base_ring, nn)
        # the kernel is a free module here; check and echelonize for determinism
        self.z_basis = [tuple(v) for v in gens]
        assert len(self.z_basis) == nn - len(self.a_basis), "A (+) Z dimension failure"
        # combined basis matrix (columns = basis vectors), for exact projections
        cols = [list(v) for v in self.a_basis] + [list(v) for v in self.z_basis]
        basis_mat = [[cols[j][i] for j in range(nn)] for i in range(nn)]
        self._basis_inv = modlinalg.chain_inverse(basis_mat, base_ring)

    def _embed_block(self, r, s, dmat):
        n = self.n
        ring = self.base_ring
        out = [ring.zero] * (n * n)
        for a in range(self.d):
            for b in range(self.d):
                out[(r * self.d + a) * n + (s * self.d + b)] = dmat[a * self.d + b]
        return tuple(out)

    def coords(self, mat):
        ring = self.base_ring
        nn = self.n * self.n
        return [
            _dot(self._basis_inv[i], mat, ring)
            for i in range(nn)
        ]

    def proj_a(self, mat):
        co = self.coords(mat)
        acc = self.space.zero
        for c, b in zip(co[:len(self.a_basis)], self.a_basis):
            if c != self.base_ring.zero:
                acc = self.space.add(acc, self.space.smul(c, b))
        return acc

    def proj_z(self, mat):
        co = self.coords(mat)
        acc = self.space.zero
        for c, b in zip(co[len(self.a_basis):], self.z_basis):
            if c != self.base_ring.zero:
                acc = self.space.add(acc, self.space.smul(c, b))
        return acc

    def in_a(self, mat):
        return self.proj_z(mat) == self.space.zero

    def galois_to_ambient(self, gmat):
        """Map Mat_m(O_ell) (encoded entries) to the embedded Mat_{md}(o_ell)."""
        out = self.space.zero
        for r in range(self.m):
            for s in range(self.m):
                coeffs = self.galois_ring.decode(gmat[r * self.m + s])
                for j, c in enumerate(coeffs):
                    if c:
                        out = self.space.add(
                            out, self.space.smul(c, self._embed_block(r, s, self._xpow[j])))
        return out

    def ambient_to_galois(self, mat):
        """Inverse of galois_to_ambient on A; raises if mat is not in A."""
        co = self.coords(mat)
        na = len(self.a_basis)
        for c in co[na:]:
            if c != self.base_ring.zero:
                raise ValueError("matrix is not in the Galois subalgebra")
        out = []
        for r in range(self.m):
            for s in range(self.m):
                base = (r * self.m + s) * self.d
                out.append(self.galois_ring.encode(
                    [co[base + j] for j in range(self.d)]))
        return tuple(out)


def az_split(base_ring, m, d, f=None):
    if f is None:
        from grlab.chainring import least_irreducible
        f = least_irreducible(base_ring.p, d)
    return AZSplit(base_ring, m, d, f)


# ---------------------------------------------------------------------------
# moving an f-primary matrix into the Galois subalgebra (conjugation lift)


class PrimaryPreconditionError(ValueError):
    """Raised when a matrix is not f-primary; carries the witness charpoly."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def _poly_ext_gcd(a, b, ops):
    """(g, u, v) with u*a + v*b = g (monic) over a field."""
    def trim(p):
        p = list(p)
        while p and p[-1] == ops.zero:
            p.pop()
        return p

    r0, r1 = trim(a), trim(b)
    u0, u1 = [ops.one], []
    v0, v1 = [], [ops.one]
    while r1:
        q = []
        r = list(r0)
        inv_lead = ops.inv(r1[-1])
        while len(r) >= len(r1) and r:
            c = ops.mul(r[-1], inv_lead)
            shift = len(r) - len(r1)
            while len(q) <= shift:
                q.append(ops.zero)
            q[shift] = c
            for j in range(len(r1)):
                r[shift + j] = ops.sub(r[shift + j], ops.mul(c, r1[j]))
            r = trim(r)
        def comb(x0, x1):
            qx = poly_mul(tuple(q) if q else (ops.zero,), tuple(x1) if x1 else (ops.zero,), ops)
            out = list(x0) + [ops.zero] * max(0, len(qx) - len(x0))
            for j, c in enumerate(qx):
                out[j] = ops.sub(out[j], c)
            return trim(out)
        r0, r1 = r1, r
        u0, u1 = u1, comb(u0, u1)
        v0, v1 = v1, comb(v0, v1)
    c = ops.inv(r0[-1])
    return ([ops.mul(c, x) for x in r0],
            [ops.mul(c, x) for x in u0],
            [ops.mul(c, x) for x in v0])


def poly_eval_mat(space, poly, mat):
    acc = space.zero
    power = space.identity
    for c in poly:
        if c != space.ring.zero:
            acc = space.add(acc, space.smul(c, power))
        power = space.mul(power, mat)
    return acc


def semisimple_part(space, mbar, fbar):
    """Jordan-Chevalley: s with f(s) = 0, s = mbar + nilpotent commuting part.

    space is over the residue field; charpoly(mbar) must be fbar^m.
    """
    ops = FieldOps(space.ring)
    fprime = tuple(
        _scalar_times(space.ring, j, fbar[j]) for j in range(1, len(fbar)))
    g, u, v = _poly_ext_gcd(fbar, fprime, ops)
    assert len(g) == 1, "f is not separable"
    s = mbar
    for _ in range(len(fbar) + 2):
        fs = poly_eval_mat(space, fbar, s)
        if fs == space.zero:
            return s
        # s <- s - f(s) * v(s) * (correction for v*f' = 1 - u*f mod nothing)
        vs = poly_eval_mat(space, v, s)
        corr = space.mul(fs, vs)
        s = space.sub(s, corr)
    fs = poly_eval_mat(space, fbar, s)
    assert fs == space.zero, "semisimple-part iteration failed to converge"
    return s


def _scalar_times(ring, k, c):
    """k * c in the ring, k a nonnegative int."""
    acc = ring.zero
    for _ in range(k % (ring.p ** ring.ell if ring.d == 1 else ring.p ** ring.ell)):
        acc = ring.add(acc, c)
    return acc


def _ad_solve(space, mbar, target):
    """Solve mbar*y - y*mbar = target over the residue field; None if no solution."""
    ring = space.ring
    n = space.n
    nn = n * n
    cols = []
    for idx in range(nn):
        e = [ring.zero] * nn
        e[idx] = ring.one
        e = tuple(e)
        col = space.sub(space.mul(mbar, e), space.mul(e, mbar))
        cols.append(col)
    rows = [[cols[j][i] for j in range(nn)] for i in range(nn)]
    ops = FieldOps(ring)
    sol = modlinalg.field_solve(rows, list(target), ops, nn)
    return tuple(sol) if sol is not None else None


def lift_to_galois(az, mat):
    """Conjugate an fbar-primary matrix into A = Mat_m(O_ell).

    Returns (g, B) with g * mat * g^{-1} = embedded(B), B over the Galois
    ring, and checks that the centralizer of the embedded B lies in A.
    """
    ring = az.base_ring
    space = az.space
    m, d, n = az.m, az.d, az.n
    res = ring.residue()
    rspace = MatSpace(res, n)
    ops = FieldOps(res)
    fbar = tuple(c % ring.p for c in az.f)
    cp = space.charpoly(mat, at_level=1)
    want = poly_pow(fbar, m, ops)
    if tuple(cp) != tuple(want):
        raise PrimaryPreconditionError(
            "charpoly mod pi is not fbar^m", witness=cp)

    # step 1: conjugate the reduction into Abar (via the semisimple part)
    mbar = space.reduce_level(mat, 1)
    sbar = semisimple_part(rspace, mbar, fbar)
    # build an O_1-basis of the column space: v, s v, ..., s^{d-1} v, ...
    basis_cols = []
    ech_rows = []

    def try_add(vec):
        # maintain an echelon copy to test independence
        row = list(vec)
        for er in ech_rows:
            piv = next(i for i, x in enumerate(er) if x != res.zero)
            if row[piv] != res.zero:
                c = ops.mul(row[piv], ops.inv(er[piv]))
                row = [ops.sub(x, ops.mul(c, y)) for x, y in zip(row, er)]
        if any(x != res.zero for x in row):
            ech_rows.append(row)
            basis_cols.append(vec)
            return True
        return False

    def apply_mat(mt, vec):
        return tuple(_dot(mt[i * n:(i + 1) * n], vec, res) for i in range(n))

    for start in range(n):
        e = [res.zero] * n
        e[start] = res.one
        e = tuple(e)
        if len(basis_cols) >= n:
            break
        probe = e
        if try_add(probe):
            for _ in range(d - 1):
                probe = apply_mat(sbar, probe)
                ok = try_add(probe)
                assert ok, "semisimple action failed to extend the basis freely"
    assert len(basis_cols) == n
    sconj = tuple(basis_cols[j][i] for i in range(n) for j in range(n))
    # S has the new basis as columns; conjugating by S^{-1} moves sbar to the
    # standard companion blocks and hence mbar into Abar
    ginv1 = _field_inverse(rspace, sconj)
    g_total = space.lift_from_level(ginv1, 1)
    cur = space.conj(g_total, mat)

    # step 2: pi-adic induction killing the Z component digit by digit
    mbar_a = space.reduce_level(cur, 1)
    for i in range(2, ring.ell + 1):
        zpart = az.proj_z(cur)
        # z must be divisible by pi^{i-1}
        digit = []
        for x in zpart:
            v = ring.valuation(x) if x else ring.ell
            assert x == 0 or v >= i - 1, "Z component appeared below expected depth"
            digit.append(ring.divide_by_pi_power(x, i - 1) % ring.p if x else 0)
        target = tuple(d_ % ring.p for d_ in digit)
        if any(t != res.zero for t in target):
            y = _ad_solve(rspace, mbar_a, target)
            assert y is not None, "ad_M is not surjective onto Z (kernelQ failure)"
            ylift = space.lift_from_level(y, 1)
            conjg = space.add(space.identity,
                              space.smul(ring.p ** (i - 1) % ring.m, ylift))
            g_total = space.mul(conjg, g_total)
            cur = space.conj(conjg, cur)
    zfinal = az.proj_z(cur)
    assert zfinal == space.zero, "lift did not land in the Galois subalgebra"
    b_galois = az.ambient_to_galois(cur)

    # centralizer containment check: Ker(ad_cur) over o_ell inside A
    nn = n * n
    cols = []
    for idx in range(nn):
        e = [ring.zero] * nn
        e[idx] = ring.one
        e = tuple(e)
        cols.append(space.sub(space.mul(cur, e), space.mul(e, cur)))
    rows = [[cols[j][i] for j in range(nn)] for i in range(nn)]
    gens = modlinalg.chain_kernel(rows, ring, nn)
    for v in gens:
        if not az.in_a(tuple(v)):
            raise AssertionError("centralizer of the lifted matrix leaves A")
    return g_total, b_galois


def _field_inverse(space, mat):
    ring = space.ring
    ops = FieldOps(ring)
    n = space.n
    aug = [list(space.rows(mat)[i]) + [ring.one if j == i else ring.zero
                                       for j in range(n)] for i in range(n)]
    ech, piv = modlinalg.field_echelon(aug, ops, 2 * n)
    assert piv[:n] == list(range(n)), "matrix not invertible over the field"
    return space.from_rows([r[n:] for r in ech])


# ---------------------------------------------------------------------------
# duality between the U and V blocks (perfect pairing test)


def uv_pairing_is_perfect(space1, m1, space2, m2):
    """Nondegeneracy of (a,b) -> tr(M1 a b) - tr(b a M2) over the residue field."""
    ring = space1.ring
    assert ring.ell == 1, "pairing test works over the residue field"
    n1, n2 = space1.n, space2.n
    ops = FieldOps(ring)
    rows = []
    r1 = space1.rows(m1)
    r2 = space2.rows(m2)
    for i in range(n1):
        for j in range(n2):
            row = []
            for k in range(n2):
                for l in range(n1):
                    t1 = r1[l][i] if j == k else ring.zero
                    t2 = r2[j][k] if i == l else ring.zero
                    row.append(ring.sub(t1, t2))
            rows.append(row)
    rank = modlinalg.field_rank(rows, ops, n1 * n2)
    return rank == n1 * n2


# ---------------------------------------------------------------------------
# additive duality xi -> phi_xi and the congruence characters phi*_xi


class DualCharacter:
    """phi_xi on Mat_n(o_i) and phi*_xi on K^{ell-i}, with exact values."""

    def __init__(self, level_space, xi):
        self.space = level_space
        self.ring = level_space.ring
        self.xi = xi
        self.order = self.ring.p ** self.ring.ell  # values lie in mu_{p^i}

    def value(self, a):
        """phi_xi(a) as an exact root of unity."""
        ring = self.ring
        prod = self.space.mul(self.xi, a)
        t = self.space.trace(prod)
        t_int = ring.trace(t) if ring.d > 1 else t
        return CycNum.root_of_unity(self.order, t_int % self.order)

    def conjugated(self, g, g_inv=None):
        """The character phi_{g xi g^{-1}}."""
        return DualCharacter(self.space, self.space.conj(g, self.xi, g_inv))

    def star_value(self, group_space, g):
        """phi*_xi(g) for g in K^{ell-i} of the ambient level-ell group."""
        ring_big = group_space.ring
        i = self.ring.ell
        shift = ring_big.ell - i
        diff = group_space.sub(g, group_space.identity)
        entries = []
        for x in diff:
            entries.append(ring_big.reduce_to_level(
                ring_big.divide_by_pi_power(x, shift) if x else 0, i))
        return self.value(tuple(entries))


def phi_bar(ring1, x):
    """Level-one additive character of the residue field (exact)."""
    t = ring1.trace(x) if ring1.d > 1 else x
    return CycNum.root_of_unity(ring1.p, t % ring1.p)
