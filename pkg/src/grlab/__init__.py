"""Exact computational laboratory for Grothendieck rings of GL_n over
finite chain rings: induction/restriction through two-sided idempotents,
similarity-class gradings, primary decomposition, base change to Galois
rings, principal series, and symmetric-function comparisons.
"""

from grlab._core import USING_COMPILED

__version__ = "0.1.0"
__all__ = ["USING_COMPILED"]
