"""Symmetric functions by honest polynomial expansion, and the comparisons
between spans of induced powers and the Schur-basis structure.

The oracle side works with actual polynomials in enough variables:
products are polynomial products, the coproduct is the two-alphabet
expansion, and the bilinear form comes from the h/m duality.  No
structure-constant tables are quoted anywhere.
"""

from functools import lru_cache
from itertools import combinations_with_replacement


MAX_DEGREE = 6


def partitions(k, cap=None):
    """Partitions of k as weakly decreasing tuples."""
    cap = k if cap is None else cap
    if k == 0:
        return [()]
    out = []
    for first in range(min(k, cap), 0, -1):
        for rest in partitions(k - first, first):
            out.append((first,) + rest)
    return out


class Poly:
    """Sparse integer polynomial in a fixed number of variables."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def const(n, c=1):
        return Poly(n, {(0,) * n: c})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(self.n, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return Poly(self.n, out)

    def scale(self, c):
        return Poly(self.n, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return Poly(self.n, out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.n == other.n and self.terms == other.terms


class SymContext:
    """Symmetric-function computations in nvars >= maxdeg variables."""

    def __init__(self, maxdeg=MAX_DEGREE, nvars=None):
        self.maxdeg = maxdeg
        self.nvars = nvars or maxdeg
        assert self.nvars >= maxdeg, "need at least deg variables"

    # -- basic bases ---------------------------------------------------------

    @lru_cache(maxsize=None)
    def h(self, k):
        """Complete homogeneous symmetric polynomial."""
        n = self.nvars
        out = {}
        for combo in combinations_with_replacement(range(n), k):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out[tuple(e)] = out.get(tuple(e), 0) + 1
        return Poly(n, out)

    @lru_cache(maxsize=None)
    def h_partition(self, lam):
        out = Poly.const(self.nvars)
        for part in lam:
            out = out * self.h(part)
        return out

    @lru_cache(maxsize=None)
    def monomial(self, lam):
        """Monomial symmetric polynomial m_lambda."""
        from itertools import permutations
        n = self.nvars
        base = tuple(lam) + (0,) * (n - len(lam))
        out = {}
        for perm in set(permutations(base)):
            out[perm] = 1
        return Poly(n, out)

    @lru_cache(maxsize=None)
    def schur(self, lam):
        """Schur polynomial via the Jacobi-Trudi determinant of h's."""
        lam = tuple(lam)
        if not lam:
            return Poly.const(self.nvars)
        r = len(lam)
        # determinant of the r x r matrix (h_{lam_i - i + j})
        entries = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                d = lam[i] - (i + 1) + (j + 1)
                if d < 0:
                    entries[i][j] = Poly(self.nvars)
                else:
                    entries[i][j] = self.h(d)
        return self._det(entries)

    def _det(self, entries):
        r = len(entries)
        if r == 1:
            return entries[0][0]
        acc = Poly(self.nvars)
        for j in range(r):
            minor = [[entries[i][k] for k in range(r) if k != j]
                     for i in range(1, r)]
            term = entries[0][j] * self._det(minor)
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    # -- decompositions ----------------------------------------------------------

    def _leading_partition(self, poly):
        best = None
        for e, c in poly.terms.items():
            se = tuple(sorted(e, reverse=True))
            if se != e:
                continue
            if best is None or e > best[0]:
                best = (e, c)
        assert best is not None, "no partition-shaped leading term"
        lam = tuple(x for x in best[0] if x)
        return lam, best[1]

    def schur_decompose(self, poly):
        out = {}
        p = Poly(poly.n, dict(poly.terms))
        while not p.is_zero():
            lam, c = self._leading_partition(p)
            out[lam] = out.get(lam, 0) + c
            p = p - self.schur(lam).scale(c)
        return {k: v for k, v in out.items() if v}

    def h_decompose(self, poly):
        out = {}
        p = Poly(poly.n, dict(poly.terms))
        while not p.is_zero():
            lam, c = self._leading_partition(p)
            out[lam] = out.get(lam, 0) + c
            p = p - self.h_partition(lam).scale(c)
        return {k: v for k, v in out.items() if v}

    def m_decompose(self, poly):
        out = {}
        for e, c in poly.terms.items():
            se = tuple(x for x in sorted(e, reverse=True) if x)
            if tuple(sorted(e, reverse=True)) == e + (0,) * 0 and all(
                    e[i] >= e[i + 1] for i in range(len(e) - 1)):
                out[se] = c
        return out

    def form(self, f, g):
        """The standard form via <h_lam, m_mu> = delta (h/m duality)."""
        hf = self.h_decompose(f)
        mg = self.m_decompose(g)
        return sum(c * mg.get(lam, 0) for lam, c in hf.items())

    def comult_schur(self, lam):
        """Coefficients of s_mu (x) s_nu in s_lam(x, y), by splitting alphabets."""
        n = self.nvars
        big = SymContext(self.maxdeg, nvars=2 * n)
        p = big.schur(tuple(lam))
        # view exponents as (x-part, y-part)
        out = {}
        terms = dict(p.terms)
        while terms:
            # lexicographically largest x-exponent with partition shape
            xlead = None
            for e in terms:
                xe = e[:n]
                if all(xe[i] >= xe[i + 1] for i in range(n - 1)):
                    if xlead is None or xe > xlead:
                        xlead = xe
            assert xlead is not None
            ypoly = {}
            for e, c in terms.items():
                if e[:n] == xlead:
                    ypoly[e[n:]] = c
            mu = tuple(x for x in xlead if x)
            ydec = self.schur_decompose(Poly(n, ypoly))
            sx = self.schur(mu)
            for nu, c in ydec.items():
                out[(mu, nu)] = out.get((mu, nu), 0) + c
                sy = self.schur(nu)
                for ex, cx in sx.terms.items():
                    for ey, cy in sy.terms.items():
                        key = ex + ey
                        nv = terms.get(key, 0) - c * cx * cy
                        if nv:
                            terms[key] = nv
                        else:
                            terms.pop(key, None)
        return out

    def schur_mult(self, lam, mu):
        return self.schur_decompose(self.schur(tuple(lam)) * self.schur(tuple(mu)))
