"""Pure-Python implementations of the hot matrix kernels.

The compiled extension in _kernels.pyx provides the same callables; the
active implementation is chosen in _core at import time.
"""


def mat_mul_mod(a, b, n, m):
    """Product of two flat n*n matrices with int entries mod m."""
    out = [0] * (n * n)
    for i in range(n):
        ri = i * n
        for k in range(n):
            aik = a[ri + k]
            if aik:
                rk = k * n
                for j in range(n):
                    out[ri + j] += aik * b[rk + j]
        for j in range(n):
            out[ri + j] %= m
    return tuple(out)


def mat_mul_tbl(a, b, n, mul_tbl, add_tbl):
    """Product of flat matrices over a table ring (encoded int entries)."""
    out = [0] * (n * n)
    for i in range(n):
        ri = i * n
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add_tbl[acc][mul_tbl[a[ri + k]][b[k * n + j]]]
            out[ri + j] = acc
    return tuple(out)
