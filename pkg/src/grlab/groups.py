"""Finite matrix groups GL_n(o_ell), standard subgroups, classes, orbits.

Groups are fully enumerated (desk scale); elements are flat tuples shared
with MatSpace.  All orderings are deterministic: element lists sorted,
classes keyed by their minimal element.
"""

from math import gcd

from grlab.chainring import CapExceededError
from grlab.matrices import MatSpace, gl_generators, gl_order

GROUP_CAP = 10 ** 5


class ConjClass:
    __slots__ = ("rep", "size", "index")

    def __init__(self, rep, size, index):
        self.rep = rep
        self.size = size
        self.index = index

    def __repr__(self):
        return "ConjClass(%d, size=%d)" % (self.index, self.size)


class Subgroup:
    """A subgroup given by its (sorted) element list inside a MatGroup."""

    def __init__(self, group, elems, kind="subgroup"):
        self.group = group
        self.elems = sorted(set(elems))
        self.set = set(self.elems)
        self.kind = kind

    @property
    def order(self):
        return len(self.elems)

    def __contains__(self, g):
        return g in self.set

    def __repr__(self):
        return "Subgroup(%s, order=%d)" % (self.kind, self.order)


class MatGroup:
    """GL_n over a chain ring (or a subgroup of it given by a predicate)."""

    def __init__(self, ring, n, cap=GROUP_CAP, predicate=None, kind=None,
                 generators=None):
        self.ring = ring
        self.n = n
        self.space = MatSpace(ring, n)
        self._gens = generators
        if n == 0:
            self.elements = [()]
            self.index = {(): 0}
            self.inverse_idx = [0]
            self.order = 1
            self._classes = None
            return
        expected = gl_order(ring, n) if predicate is None else None
        if expected is not None and expected > cap:
            raise CapExceededError(
                "group order %d exceeds cap %d" % (expected, cap))
        total_mats = ring.size ** (n * n)
        if total_mats > 32 * cap and predicate is None:
            raise CapExceededError(
                "matrix scan of %d entries is infeasible" % total_mats)
        elems = []
        for mat in self.space.elements(cap=64 * cap):
            if self.space.is_invertible(mat) and (predicate is None or predicate(mat)):
                elems.append(mat)
                if len(elems) > cap:
                    raise CapExceededError("group enumeration exceeds cap")
        self.elements = sorted(elems)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.order = len(self.elements)
        if expected is not None:
            assert self.order == expected, "order formula mismatch"
        inv = [None] * self.order
        for i, g in enumerate(self.elements):
            if inv[i] is None:
                gi = self.space.inverse(g)
                j = self.index[gi]
                inv[i] = j
                inv[j] = i
        self.inverse_idx = inv
        self._classes = None
        self._exponent = None
        self._power_maps = {}

    @classmethod
    def from_elements(cls, ring, n, elems, generators=None):
        """A group given by an explicit element list (closure not re-derived)."""
        self = object.__new__(cls)
        self.ring = ring
        self.n = n
        self.space = MatSpace(ring, n)
        self._gens = generators
        self.elements = sorted(set(elems))
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.order = len(self.elements)
        inv = [None] * self.order
        for i, g in enumerate(self.elements):
            if inv[i] is None:
                gi = self.space.inverse(g)
                j = self.index[gi]
                inv[i] = j
                inv[j] = i
        self.inverse_idx = inv
        self._classes = None
        self._exponent = None
        self._power_maps = {}
        return self

    # -- basic operations ---------------------------------------------------------

    def mul(self, a, b):
        return self.space.mul(a, b)

    def inv(self, a):
        return self.elements[self.inverse_idx[self.index[a]]]

    def identity(self):
        return self.space.identity if self.n else ()

    def generators(self):
        if self.n == 0:
            return []
        if self._gens is not None:
            return list(self._gens)
        return gl_generators(self.space)

    # -- conjugacy classes -----------------------------------------------------------

    def classes(self):
        if self._classes is None:
            self._compute_classes()
        return self._classes

    def class_of(self):
        if self._classes is None:
            self._compute_classes()
        return self._class_of

    def _compute_classes(self):
        gens = [g for g in self.generators() if g in self.index]
        # a generating set might leave a proper subgroup if predicate-built;
        # fall back to all elements as conjugators in that case (still exact)
        conj_pairs = [(g, self.inv(g)) for g in gens]
        class_of = [None] * self.order
        classes = []
        for start in range(self.order):
            if class_of[start] is not None:
                continue
            rep_idx = start
            frontier = [start]
            members = [start]
            class_of[start] = len(classes)
            while frontier:
                new = []
                for idx in frontier:
                    x = self.elements[idx]
                    for g, gi in conj_pairs:
                        y = self.mul(self.mul(g, x), gi)
                        j = self.index[y]
                        if class_of[j] is None:
                            class_of[j] = len(classes)
                            new.append(j)
                            members.append(j)
                frontier = new
            # generators conjugate within the group they generate; verify the
            # class is closed under full conjugation only if gens were partial
            if not gens:
                members = [start]
            rep = min(self.elements[i] for i in members)
            classes.append(ConjClass(rep, len(members), len(classes)))
        # safety: if the generator set did not generate the whole group the
        # orbits above can be too fine; merge by scanning all conjugators.
        if not gens or not self._generators_cover(gens):
            class_of, classes = self._classes_bruteforce()
        self._classes = classes
        self._class_of = class_of

    def _generators_cover(self, gens):
        # BFS closure of the generators must be the whole group
        seen = {self.identity()}
        frontier = [self.identity()]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
            if len(seen) == self.order:
                return True
        return len(seen) == self.order

    def _classes_bruteforce(self):
        class_of = [None] * self.order
        classes = []
        inv_elems = [self.elements[self.inverse_idx[i]] for i in range(self.order)]
        for start in range(self.order):
            if class_of[start] is not None:
                continue
            x = self.elements[start]
            members = set()
            for i, g in enumerate(self.elements):
                y = self.mul(self.mul(g, x), inv_elems[i])
                members.add(self.index[y])
            for j in members:
                class_of[j] = len(classes)
            rep = min(self.elements[j] for j in members)
            classes.append(ConjClass(rep, len(members), len(classes)))
        return class_of, classes

    def class_index_of_element(self, g):
        return self.class_of()[self.index[g]]

    def element_order(self, g):
        e = 1
        x = g
        ident = self.identity()
        while x != ident:
            x = self.mul(x, g)
            e += 1
        return e

    def exponent(self):
        if self._exponent is None:
            e = 1
            for c in self.classes():
                o = self.element_order(c.rep)
                e = e * o // gcd(e, o)
            self._exponent = e
        return self._exponent

    def power_map(self, t):
        """Class index of rep^t for each class."""
        t %= self.exponent()
        if t not in self._power_maps:
            out = []
            for c in self.classes():
                out.append(self.class_index_of_element(self.space.powm(c.rep, t)
                                                       if self.n else ()))
            self._power_maps[t] = out
        return self._power_maps[t]

    # -- standard subgroups ------------------------------------------------------------

    def subgroup(self, elems, kind="subgroup"):
        return Subgroup(self, elems, kind)

    def subgroup_where(self, pred, kind="subgroup"):
        return Subgroup(self, [g for g in self.elements if pred(g)], kind)

    def levi(self, comp):
        """Block-diagonal subgroup for a composition of n."""
        bounds = _comp_bounds(comp)

        def pred(g):
            n = self.n
            for i in range(n):
                for j in range(n):
                    if _block_of(i, bounds) != _block_of(j, bounds):
                        if g[i * n + j] != self.ring.zero:
                            return False
            return True

        return self.subgroup_where(pred, kind="levi%s" % (tuple(comp),))

    def block_u(self, comp):
        bounds = _comp_bounds(comp)
        return self.subgroup_where(
            lambda g: _is_block_unitriangular(self, g, bounds, upper=True),
            kind="U%s" % (tuple(comp),))

    def block_v(self, comp):
        bounds = _comp_bounds(comp)
        return self.subgroup_where(
            lambda g: _is_block_unitriangular(self, g, bounds, upper=False),
            kind="V%s" % (tuple(comp),))

    def congruence_kernel(self, i):
        ring = self.ring

        def pred(g):
            diff = self.space.sub(g, self.space.identity)
            return all(x == 0 or ring.valuation(x) >= i for x in diff)

        return self.subgroup_where(pred, kind="K^%d" % i)

    def torus(self):
        n = self.n

        def pred(g):
            return all(g[i * n + j] == self.ring.zero
                       for i in range(n) for j in range(n) if i != j)

        return self.subgroup_where(pred, kind="torus")

    # -- orbits and stabilizers ---------------------------------------------------------

    def conj_orbit_of_matrix(self, mat, mat_space=None):
        """Orbit and stabilizer of a matrix under conjugation by this group."""
        sp = mat_space or MatSpace(self.ring, self.n)
        orbit = set()
        stab = []
        for g in self.elements:
            y = sp.conj(g, mat)
            orbit.add(y)
            if y == mat:
                stab.append(g)
        return sorted(orbit), self.subgroup(stab, kind="stabilizer")

    # -- cosets -------------------------------------------------------------------

    def left_cosets(self, sub):
        """(reps, coset_of) for left cosets g*H, deterministic order."""
        coset_of = {}
        reps = []
        for g in self.elements:
            if g in coset_of:
                continue
            idx = len(reps)
            reps.append(g)
            for h in sub.elems:
                coset_of[self.mul(g, h)] = idx
        return reps, coset_of

    def __repr__(self):
        return "GL_%d(%r) order %d" % (self.n, self.ring, self.order)


def _comp_bounds(comp):
    bounds = []
    acc = 0
    for c in comp:
        if c > 0:
            bounds.append((acc, acc + c))
        acc += c
    return bounds


def _block_of(i, bounds):
    for k, (a, b) in enumerate(bounds):
        if a <= i < b:
            return k
    raise IndexError


def _is_block_unitriangular(group, g, bounds, upper):
    n = group.n
    ring = group.ring
    ident = group.space.identity
    for i in range(n):
        for j in range(n):
            bi, bj = _block_of(i, bounds), _block_of(j, bounds)
            if bi == bj:
                if g[i * n + j] != ident[i * n + j]:
                    return False
            elif (bi < bj) != upper:
                if g[i * n + j] != ring.zero:
                    return False
    return True


def build_group(ring, n, cap=GROUP_CAP):
    return MatGroup(ring, n, cap=cap)


def product_embed(g1, n1, g2, n2, ring):
    """Embed (g1, g2) as a block-diagonal element of GL_{n1+n2}."""
    n = n1 + n2
    out = [ring.zero] * (n * n)
    for i in range(n1):
        for j in range(n1):
            out[i * n + j] = g1[i * n1 + j]
    for i in range(n2):
        for j in range(n2):
            out[(n1 + i) * n + (n1 + j)] = g2[i * n2 + j]
    return tuple(out)


def split_levi(g, n1, n2, n):
    """Inverse of product_embed on block-diagonal elements."""
    g1 = tuple(g[i * n + j] for i in range(n1) for j in range(n1))
    g2 = tuple(g[(n1 + i) * n + (n1 + j)] for i in range(n2) for j in range(n2))
    return g1, g2


def virtual_iwahori_injective(group, comp):
    """|U| * |L| * |V| distinct products (the defining injectivity check)."""
    u = group.block_u(comp)
    l = group.levi(comp)
    v = group.block_v(comp)
    seen = set()
    for a in u.elems:
        for b in l.elems:
            ab = group.mul(a, b)
            for c in v.elems:
                seen.add(group.mul(ab, c))
    return len(seen) == u.order * l.order * v.order
