"""Build script: compiles the optional matrix-kernel extension.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); building it just makes the group
arithmetic hot loops faster.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/grlab/_kernels.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - environment dependent
    print("grlab: building without the compiled kernels (%s)" % exc)

setup(ext_modules=ext_modules)
