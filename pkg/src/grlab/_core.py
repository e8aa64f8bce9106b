"""Kernel selection: compiled extension if built, else pure Python."""

try:
    from grlab import _kernels as _impl
    USING_COMPILED = True
except ImportError:  # extension not built; package works regardless
    from grlab import _fallback as _impl
    USING_COMPILED = False

mat_mul_mod = _impl.mat_mul_mod
mat_mul_tbl = _impl.mat_mul_tbl
