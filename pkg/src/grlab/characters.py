"""Exact character tables of the enumerated matrix groups.

The table is computed by eigenvector splitting of class-algebra matrices
modulo a prime P == 1 (mod exponent), then lifted to exact cyclotomic
values via root-of-unity multiplicities.  All verification (orthogonality,
Burnside) is exact; the mod-P step is only a vehicle, the lifted table is
checked independently.
"""

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from grlab.cyclo import CycNum, _reduce_raw


# -- mod-P helpers (int64 numpy) -------------------------------------------------


def _rref_modp(A, P):
    A = A % P
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = (A[r] * pow(int(A[r, c]), P - 2, P)) % P
        for i in range(m):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % P
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def _nullspace_modp(A, P):
    m, n = A.shape
    R, pivots = _rref_modp(A.copy(), P)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = np.zeros(n, dtype=np.int64)
        v[free] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-R[r, free]) % P
        basis.append(v)
    return basis


def _solve_cols_modp(V, W, P):
    """A with V @ A == W (mod P); V has full column rank."""
    n, s = V.shape
    aug = np.concatenate([V, W], axis=1) % P
    R, pivots = _rref_modp(aug, P)
    assert pivots[:s] == list(range(s)), "basis lost column rank"
    return R[:s, s:]


def _krylov_minpoly(A, v, P):
    """Monic minimal polynomial of v under A (little endian), mod P."""
    s = A.shape[0]
    iterates = [v % P]
    ech = []
    pivots = []
    coeffs_hist = []          # expression of each echelon row over iterates
    k = 0
    while True:
        w = iterates[-1].copy()
        expr = np.zeros(len(iterates), dtype=np.int64)
        expr[-1] = 1
        for (row, piv, ex) in zip(ech, pivots, coeffs_hist):
            c = w[piv]
            if c:
                w = (w - c * row) % P
                expr = (expr - c * np.concatenate(
                    [ex, np.zeros(len(expr) - len(ex), dtype=np.int64)])) % P
        nz = np.nonzero(w)[0]
        if len(nz) == 0:
            # dependence found: sum expr[j] * A^j v = 0, top coefficient expr[-1]
            top = int(expr[-1])
            inv = pow(top, P - 2, P)
            poly = [(int(c) * inv) % P for c in expr]
            return poly
        piv = int(nz[0])
        cinv = pow(int(w[piv]), P - 2, P)
        ech.append((w * cinv) % P)
        pivots.append(piv)
        coeffs_hist.append((expr * cinv) % P)
        k += 1
        iterates.append((A @ iterates[-1]) % P)
        if k > s:
            raise RuntimeError("Krylov iteration exceeded the dimension")


def _eigen_split_modp(A, P):
    """All (eigenvalue, kernel basis) pairs of a diagonalizable A mod P."""
    s = A.shape[0]
    found = {}
    covered = 0
    j = 0
    rng_extra = 0
    while covered < s:
        if j < s:
            v = np.zeros(s, dtype=np.int64)
            v[j] = 1
        else:
            rng_extra += 1
            v = (np.arange(1, s + 1, dtype=np.int64) ** rng_extra) % P
        j += 1
        poly = _krylov_minpoly(A, v, P)
        for lam in _poly_roots_modp(poly, P):
            if lam in found:
                continue
            M = (A - lam * np.eye(s, dtype=np.int64)) % P
            null = _nullspace_modp(M, P)
            if null:
                found[lam] = np.stack(null, axis=1)
                covered += len(null)
        if j > 2 * s + 4:
            raise RuntimeError("eigen split failed to converge")
    return list(found.items())


def _poly_roots_modp(coeffs, P):
    xs = np.arange(P, dtype=np.int64)
    acc = np.zeros(P, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % P
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _least_primitive_root(P):
    fac = []
    n = P - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            fac.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        fac.append(n)
    for g in range(2, P):
        if all(pow(g, (P - 1) // q, P) != 1 for q in fac):
            return g
    raise RuntimeError("no primitive root")


def _dixon_prime(order, exponent):
    bound = 2 * isqrt(order) + 1
    P = max(bound, exponent + 1)
    while True:
        if P % exponent == 1 and _isprime(P):
            return P
        P += 1


def _isprime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- the table -----------------------------------------------------------------


class CharTable:
    """An exact character table.

    raw[i, j, k] holds the multiplicity of zeta_e^k in chi_i(g_j); the
    CycNum value is recovered on demand.  Rows are sorted canonically by
    (degree, value key).
    """

    def __init__(self, group, exponent, raw, dims):
        self.group = group
        self.e = exponent
        self.raw = raw
        self.dims = dims
        self.nirr = raw.shape[0]
        self.nclasses = raw.shape[1]
        cls = group.classes()
        self.class_sizes = np.array([c.size for c in cls], dtype=np.int64)
        ident = group.identity()
        self.identity_class = group.class_index_of_element(ident)
        inv_cls = []
        for c in cls:
            gi = group.inv(c.rep)
            inv_cls.append(group.class_index_of_element(gi))
        self.inv_class = inv_cls
        self._value_cache = {}

    def value(self, i, j):
        key = (i, j)
        if key not in self._value_cache:
            raw = self.raw[i, j]
            self._value_cache[key] = CycNum(
                self.e, _reduce_raw([Fraction(int(x)) for x in raw], self.e))
        return self._value_cache[key]

    def row(self, i):
        return [self.value(i, j) for j in range(self.nclasses)]

    def label(self, i):
        return "X%d" % i

    # -- fast exact inner products ---------------------------------------------

    def raw_of_cyc_values(self, values):
        """Raw coordinate matrix for a list of CycNum class-function values."""
        e = self.e
        out = np.zeros((self.nclasses, e), dtype=np.int64)
        dens = 1
        for j, v in enumerate(values):
            if v.m == 1:
                co = [v.co[0]]
                step = 0
            else:
                assert e % v.m == 0, "value conductor does not divide exponent"
                co = v.co
                step = e // v.m
            for a, c in enumerate(co):
                if c:
                    if c.denominator != 1:
                        raise ValueError("non-integral class function")
                    out[j, (a * step) % e] += int(c)
        return out

    def decompose_raw(self, fraw):
        """Multiplicities <f, chi_i> for all i; exact, asserts integrality.

        (f * conj(chi))_k = sum_a f_a chi_{a-k} = <f, roll(chi, k)>.
        """
        e = self.e
        sizes = self.class_sizes
        T = self.raw  # (nirr, ncl, e)
        weightedf = fraw * sizes[:, None]
        N = np.zeros((self.nirr, e), dtype=np.int64)
        for k in range(e):
            rolled = np.roll(T, k, axis=2)  # chi_{a-k} at position a
            N[:, k] = np.einsum("ija,ja->i", rolled, weightedf)
        order = self.group.order
        out = []
        for i in range(self.nirr):
            co = _reduce_raw([Fraction(int(x), order) for x in N[i]], e)
            val = CycNum(self.e, co)
            out.append(val.rational_integer_value())
        return out

    def inner_values(self, values1, values2):
        """Exact <f1, f2> for CycNum class-function value lists."""
        f1 = self.raw_of_cyc_values(values1)
        f2 = self.raw_of_cyc_values(values2)
        e = self.e
        N = np.zeros(e, dtype=np.int64)
        weightedf = f1 * self.class_sizes[:, None]
        for k in range(e):
            N[k] = int(np.sum(np.roll(f2, k, axis=1) * weightedf))
        co = _reduce_raw([Fraction(int(x), self.group.order) for x in N], e)
        return CycNum(self.e, co)

    def inner_rows(self, i, j):
        return self.inner_values(self.row(i), self.row(j))

    def verify(self):
        """Exact orthogonality and Burnside checks."""
        assert sum(d * d for d in self.dims) == self.group.order, "Burnside failed"
        for i in range(self.nirr):
            assert self.value(i, self.identity_class) == self.dims[i]
        for i in range(self.nirr):
            fi = self.raw[i]
            mults = self.decompose_raw(fi)
            expect = [1 if t == i else 0 for t in range(self.nirr)]
            assert mults == expect, "orthogonality failed at row %d" % i
        return True


def dixon_table(group):
    if group.order == 1:
        raw = np.zeros((1, 1, 1), dtype=np.int64)
        raw[0, 0, 0] = 1
        return CharTable(group, 1, raw, [1])
    cls = group.classes()
    r = len(cls)
    class_of = group.class_of()
    e = group.exponent()
    P = _dixon_prime(group.order, e)
    # class element lists
    members = [[] for _ in range(r)]
    for idx, c in enumerate(class_of):
        members[c].append(idx)
    reps = [c.rep for c in cls]
    rep_elems = reps
    elements = group.elements
    inv_idx = group.inverse_idx

    def class_matrix(i):
        B = np.zeros((r, r), dtype=np.int64)
        for k in range(r):
            zk = rep_elems[k]
            for xi in members[i]:
                x_inv = elements[inv_idx[xi]]
                y = group.mul(x_inv, zk)
                B[class_of[group.index[y]], k] += 1
        return B

    # eigenvector splitting
    subspaces = [np.eye(r, dtype=np.int64)]  # columns span
    done = []
    mat_cache = {}
    order_i = sorted(range(r), key=lambda i: -cls[i].size)
    for i in order_i:
        if not subspaces:
            break
        if i not in mat_cache:
            mat_cache[i] = class_matrix(i)
        B = mat_cache[i]
        new_spaces = []
        for V in subspaces:
            W = (B @ V) % P
            A = _solve_cols_modp(V, W, P)
            pieces = _eigen_split_modp(A % P, P)
            if len(pieces) == 1:
                new_spaces.append(V)
                continue
            for lam, K in pieces:
                piece = (V @ K) % P
                if piece.shape[1] == 1:
                    done.append(piece[:, 0])
                else:
                    new_spaces.append(piece)
        subspaces = new_spaces
    for V in subspaces:
        assert V.shape[1] == 1, "class-matrix splitting incomplete"
        done.append(V[:, 0])
    assert len(done) == r, "wrong number of common eigenvectors"

    ident_cls = group.class_index_of_element(group.identity())
    inv_class = [class_of[inv_idx[group.index[c.rep]]] for c in cls]
    sizes = [c.size for c in cls]
    size_inv_modp = [pow(s % P, P - 2, P) for s in sizes]

    chi_modp = np.zeros((r, r), dtype=np.int64)
    dims = []
    for t, v in enumerate(done):
        v = v % P
        v0 = int(v[ident_cls])
        assert v0 % P != 0
        omega = (v * pow(v0, P - 2, P)) % P
        S = 0
        for j in range(r):
            S = (S + int(omega[j]) * int(omega[inv_class[j]]) * size_inv_modp[j]) % P
        d2 = (group.order % P) * pow(S, P - 2, P) % P
        d = None
        for x in range(1, P):
            if (x * x) % P == d2:
                d = x if x < P - x else P - x
                break
        assert d is not None and d * d <= group.order
        dims.append(d)
        for j in range(r):
            chi_modp[t, j] = d * int(omega[j]) % P * size_inv_modp[j] % P
    # lift to exact cyclotomic values
    g0 = _least_primitive_root(P)
    z = pow(g0, (P - 1) // e, P)
    zpow = [pow(z, k, P) for k in range(e)]
    power_maps = np.array([group.power_map(t) for t in range(e)], dtype=np.int64)
    e_inv = pow(e, P - 2, P)
    Zmat = np.array([[zpow[(-t * k) % e] for t in range(e)] for k in range(e)],
                    dtype=np.int64)
    raw = np.zeros((r, r, e), dtype=np.int64)
    for t in range(r):
        X = chi_modp[t][power_maps]        # (e, r): chi(g_j^t)
        M = (Zmat @ X) % P                 # (e, r)
        M = (M * e_inv) % P
        raw[t] = M.T
        assert (raw[t] <= dims[t]).all(), "multiplicity lift out of range"
    # sort canonically by degree then value key
    keys = []
    for t in range(r):
        keys.append((dims[t],) + tuple(int(x) for x in raw[t].reshape(-1)))
    order_rows = sorted(range(r), key=lambda t: keys[t])
    raw = raw[order_rows]
    dims = [dims[t] for t in order_rows]
    table = CharTable(group, e, raw, dims)
    table.verify()
    return table


# -- class functions as exact value lists ---------------------------------------


def restrict_values(table_g, sub_table, values):
    """Restrict a class function on G (CycNum list) to the subgroup table."""
    g = table_g.group
    h = sub_table.group
    out = []
    for c in h.classes():
        out.append(values[g.class_index_of_element(c.rep)])
    return out


def induce_values(group, sub_elems, psi, classes=None):
    """Induced-character values: psi a dict element -> CycNum on a subgroup."""
    cls = classes or group.classes()
    out = []
    scale = Fraction(1, len(sub_elems))
    sub_set = set(sub_elems)
    for c in cls:
        acc = CycNum.rational(0)
        g = c.rep
        for x in group.elements:
            y = group.mul(group.mul(group.inv(x), g), x)
            if y in sub_set:
                acc = acc + psi[y]
        out.append(acc * CycNum.rational(scale))
    return out


def character_of_rep_values(table, i):
    return table.row(i)
