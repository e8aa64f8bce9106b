"""Exact linear algebra over Z/m, finite chain rings and generic fields.

Matrices are lists of lists of ring elements (ints for Z/m, encoded ints
for table rings).  Everything here is exact; no floats.
"""

from fractions import Fraction


# ---------------------------------------------------------------------------
# linear algebra over a field given by an "ops" object
#
# ops must provide: zero, one, add(a,b), sub(a,b), mul(a,b), inv(a),
# and elements compare with ==.


def field_echelon(rows, ops, ncols):
    """Reduced row echelon form.  Returns (echelon_rows, pivot_cols)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != ops.zero:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = ops.inv(rows[r][c])
        rows[r] = [ops.mul(piv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != ops.zero:
                f = rows[i][c]
                rows[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def field_rank(rows, ops, ncols):
    ech, piv = field_echelon(rows, ops, ncols)
    return len(piv)


def field_kernel(rows, ops, ncols):
    """Right kernel basis of the matrix given by rows (each of length ncols)."""
    ech, pivots = field_echelon(rows, ops, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ops.zero] * ncols
        v[free] = ops.one
        for r, pc in enumerate(pivots):
            # pivot row r: x_pc = -sum_{c>pc} ech[r][c] x_c
            v[pc] = ops.sub(ops.zero, ech[r][free])
        basis.append(v)
    return basis


def field_solve(rows, rhs, ops, ncols):
    """One solution x of rows * x = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = field_echelon(aug, ops, ncols + 1)
    if ncols in pivots:
        return None
    x = [ops.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = ech[r][ncols]
    # back-substitute contributions of free columns are zero by choice
    # verify (cheap, sizes are small)
    for r, pc in enumerate(pivots):
        acc = ops.zero
        for c in range(ncols):
            acc = ops.add(acc, ops.mul(ech[r][c], x[c]))
        if acc != ech[r][ncols]:
            return None
    return x


# ---------------------------------------------------------------------------
# linear algebra over a finite chain ring (Z/p^ell or a Galois ring)
#
# The ring is given by a ChainRing-like object with attributes p, ell and
# methods add/sub/mul/neg/is_unit/inv/valuation/unit_scale.


def smith_form(mat, ring):
    """Smith normal form over a chain ring.

    Returns (U, D, V, rank_profile) with U*mat*V = D, U and V invertible,
    D diagonal with entries pi^{e_1} | pi^{e_2} | ...  rank_profile is the
    list of exponents e_i (ell means the diagonal entry is 0).
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    A = [list(r) for r in mat]
    U = [[ring.one if i == j else ring.zero for j in range(m)] for i in range(m)]
    V = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    exps = []

    def row_op(i, j, c):  # row_i += c * row_j
        A[i] = [ring.add(a, ring.mul(c, b)) for a, b in zip(A[i], A[j])]
        U[i] = [ring.add(a, ring.mul(c, b)) for a, b in zip(U[i], U[j])]

    def col_op(i, j, c):  # col_i += c * col_j
        for r in range(len(A)):
            A[r][i] = ring.add(A[r][i], ring.mul(c, A[r][j]))
        for r in range(n):
            V[r][i] = ring.add(V[r][i], ring.mul(c, V[r][j]))

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for r in range(len(A)):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def row_scale(i, u):
        A[i] = [ring.mul(u, a) for a in A[i]]
        U[i] = [ring.mul(u, a) for a in U[i]]

    k = 0
    while k < min(m, n):
        # find entry of minimal valuation in A[k:, k:]
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j] != ring.zero:
                    v = ring.valuation(A[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, bi, bj = best
        if bi != k:
            row_swap(k, bi)
        if bj != k:
            col_swap(k, bj)
        # make pivot pi^v exactly: A[k][k] = u * pi^v with u a unit
        u = ring.unit_part(A[k][k])
        row_scale(k, ring.inv(u))
        piv = A[k][k]  # == pi^v
        for i in range(k + 1, m):
            if A[i][k] != ring.zero:
                # A[i][k] has valuation >= v, so divisible by pivot
                c = ring.neg(ring.divide_by_pi_power(A[i][k], v))
                row_op(i, k, c)
        for j in range(k + 1, n):
            if A[k][j] != ring.zero:
                c = ring.neg(ring.divide_by_pi_power(A[k][j], v))
                col_op(j, k, c)
        exps.append(v)
        k += 1
    return U, A, V, exps


def chain_kernel(mat, ring, ncols):
    """Basis of {x : mat @ x = 0} over the chain ring (column vectors).

    Returns a list of generating vectors; the kernel is their span
    (as a module the generators may include pi^j-torsion directions).
    """
    if not mat:
        return [[ring.one if i == j else ring.zero for i in range(ncols)]
                for j in range(ncols)]
    U, D, V, exps = smith_form(mat, ring)
    ell = ring.ell
    gens = []
    for j in range(ncols):
        if j < len(exps):
            e = exps[j]
            if e == 0:
                continue
            # kernel of multiplication by pi^e is pi^(ell-e) R
            scale = ring.pi_power(ell - e)
            gens.append([ring.mul(scale, V[r][j]) for r in range(ncols)])
        else:
            gens.append([V[r][j] for r in range(ncols)])
    return gens


def chain_solve(mat, rhs, ring, ncols):
    """One solution of mat @ x = rhs over the chain ring, or None."""
    U, D, V, exps = smith_form(mat, ring)
    m = len(mat)
    # b' = U rhs
    b = [ring.zero] * m
    for i in range(m):
        acc = ring.zero
        for j in range(m):
            acc = ring.add(acc, ring.mul(U[i][j], rhs[j]))
        b[i] = acc
    y = [ring.zero] * ncols
    for i in range(m):
        if i < len(exps):
            e = exps[i]
            if b[i] == ring.zero:
                continue
            if ring.valuation(b[i]) < e:
                return None
            y[i] = ring.divide_by_pi_power(b[i], e)
        else:
            if b[i] != ring.zero:
                return None
    x = [ring.zero] * ncols
    for r in range(ncols):
        acc = ring.zero
        for j in range(ncols):
            acc = ring.add(acc, ring.mul(V[r][j], y[j]))
        x[r] = acc
    return x


def chain_inverse(mat, ring):
    """Inverse of a square matrix over the chain ring (unit determinant)."""
    n = len(mat)
    A = [list(r) + [ring.one if i == j else ring.zero for j in range(n)]
         for i, r in enumerate(mat)]
    for c in range(n):
        pr = None
        for i in range(c, n):
            if ring.is_unit(A[i][c]):
                pr = i
                break
        if pr is None:
            raise ValueError("matrix is not invertible over the chain ring")
        A[c], A[pr] = A[pr], A[c]
        inv = ring.inv(A[c][c])
        A[c] = [ring.mul(inv, x) for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != ring.zero:
                f = A[i][c]
                A[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


# ---------------------------------------------------------------------------
# rational (Fraction) linear algebra, dense, for small systems


def rat_echelon(rows, ncols):
    rows = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rat_solve(rows, rhs):
    """Solve rows * x = rhs over Q; returns None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = rat_echelon(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = ech[r][ncols]
    return x
