# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled matrix kernels: flat small-matrix products over Z/m and table rings."""


def mat_mul_mod(tuple a, tuple b, int n, int m):
    cdef long av[64]
    cdef long bv[64]
    cdef long ov[64]
    cdef int i, j, k, ri, rk
    cdef long acc, aik
    if n * n > 64:
        raise ValueError("kernel supports matrices up to 8x8")
    for i in range(n * n):
        av[i] = a[i]
        bv[i] = b[i]
    for i in range(n):
        ri = i * n
        for j in range(n):
            acc = 0
            for k in range(n):
                aik = av[ri + k]
                if aik != 0:
                    acc += aik * bv[k * n + j]
            ov[ri + j] = acc % m
    return tuple([ov[i] for i in range(n * n)])


def mat_mul_tbl(tuple a, tuple b, int n, int[:, :] mul_tbl, int[:, :] add_tbl):
    cdef int av[64]
    cdef int bv[64]
    cdef int ov[64]
    cdef int i, j, k, ri, acc
    if n * n > 64:
        raise ValueError("kernel supports matrices up to 8x8")
    for i in range(n * n):
        av[i] = a[i]
        bv[i] = b[i]
    for i in range(n):
        ri = i * n
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add_tbl[acc, mul_tbl[av[ri + k], bv[k * n + j]]]
            ov[ri + j] = acc
    return tuple([ov[i] for i in range(n * n)])
