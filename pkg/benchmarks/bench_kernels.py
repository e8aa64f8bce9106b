"""Benchmark: compiled matrix kernels vs the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

from grlab import _fallback
from grlab._core import USING_COMPILED, mat_mul_mod as compiled_mul
from grlab.chainring import make_ring
from grlab.groups import build_group


def bench_mul(fn, mats, m, reps):
    t0 = time.perf_counter()
    acc = 0
    for _ in range(reps):
        for a, b in mats:
            acc ^= fn(a, b, 2, m)[0]
    return time.perf_counter() - t0


def bench_classes(label):
    t0 = time.perf_counter()
    G = build_group(make_ring(3, 2, 1), 2)
    G.classes()
    dt = time.perf_counter() - t0
    print("  GL_2(Z/9) build+classes: %6.2f s   [%s]" % (dt, label))


def main():
    random.seed(7)
    m = 9
    mats = [(tuple(random.randrange(m) for _ in range(4)),
             tuple(random.randrange(m) for _ in range(4))) for _ in range(2000)]
    reps = 50
    t_py = bench_mul(_fallback.mat_mul_mod, mats, m, reps)
    print("2x2 mod 9 products (%d):" % (len(mats) * reps))
    print("  pure python : %6.2f s  (%.2f Mops/s)"
          % (t_py, len(mats) * reps / t_py / 1e6))
    if USING_COMPILED:
        t_c = bench_mul(compiled_mul, mats, m, reps)
        print("  compiled    : %6.2f s  (%.2f Mops/s)  speedup x%.1f"
              % (t_c, len(mats) * reps / t_c / 1e6, t_py / t_c))
    else:
        print("  compiled    : not built")
    bench_classes("compiled" if USING_COMPILED else "fallback")


if __name__ == "__main__":
    main()
