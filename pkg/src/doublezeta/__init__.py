"""Exact-arithmetic toolkit for Euler-style double zeta reductions.

Builds the integer matrix A_K and its conjectural inverses P and Q,
verifies the defining identities exactly over the rationals, assembles
zeta-reduction coefficient tables, and audits the reduction formulas
numerically at arbitrary precision.
"""

from __future__ import annotations

__version__ = "0.1.0"
