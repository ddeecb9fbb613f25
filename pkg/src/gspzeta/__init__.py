"""Exact and high-precision toolkit for critical L-values of GSp4 x GL2:
sparse Laurent-polynomial algebra, symplectic matrix identities, Weyl and
branching combinatorics, critical-region classification, non-archimedean
Euler factors, and archimedean Gamma-identity verification, with a CLI and
report surface on top."""

from .errors import DomainError, NumericFailure, SchemaError

__all__ = ["DomainError", "NumericFailure", "SchemaError"]

__version__ = "0.1.0"
