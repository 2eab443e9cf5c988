"""The (K-1)x(K-1) matrices A, B, C and the inverse formulas P, Q.

Mathematical indices r, s run 1..K-1 and map to zero-based storage by
subtracting 1; that mapping lives entirely in this module.  A is the
integer matrix of Euler-reduction coefficients, B and C its binomial
split (A = B + C), and P, Q the two Bernoulli-sum formulas for A^{-1}
that the package verifies are equal and do invert A.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .bernoulli import BernoulliCache
from .rationals import binomial, format_rational

__all__ = [
    "RationalMatrix",
    "build_a",
    "build_b_part",
    "build_c_part",
    "build_p",
    "build_q",
    "identity_matrix",
    "matrix_multiply",
    "determinant_fraction_free",
    "InverseReport",
    "verify_inverse",
    "pb_closed",
    "pc_closed",
    "matrix_to_json",
]


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    def at(self, i: int, j: int) -> Fraction:
        """Zero-based entry access."""
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list[Fraction]]:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]


def _from_rows(rows: list[list[Fraction]]) -> RationalMatrix:
    return RationalMatrix(
        len(rows), len(rows[0]), tuple(x for row in rows for x in row)
    )


def _check_k(K: int) -> None:
    if K < 2:
        raise ValueError(f"K must be >= 2 (matrices are (K-1)x(K-1)), got {K}")


def build_a(K: int) -> RationalMatrix:
    """A_{r,s} = C(2K-2s, 2r-1) + C(2K-2s, 2K-2r), indices 1..K-1."""
    _check_k(K)
    rows = [
        [
            binomial(2 * K - 2 * s, 2 * r - 1) + binomial(2 * K - 2 * s, 2 * K - 2 * r)
            for s in range(1, K)
        ]
        for r in range(1, K)
    ]
    return _from_rows(rows)


def build_b_part(K: int) -> RationalMatrix:
    """B_{r,s} = C(2K-2s, 2r-1); vanishes when r + s > K."""
    _check_k(K)
    rows = [
        [binomial(2 * K - 2 * s, 2 * r - 1) for s in range(1, K)] for r in range(1, K)
    ]
    return _from_rows(rows)


def build_c_part(K: int) -> RationalMatrix:
    """C_{r,s} = C(2K-2s, 2K-2r); vanishes when r < s."""
    _check_k(K)
    rows = [
        [binomial(2 * K - 2 * s, 2 * K - 2 * r) for s in range(1, K)]
        for r in range(1, K)
    ]
    return _from_rows(rows)


def _p_entry(K: int, s: int, r: int, cache: BernoulliCache) -> Fraction:
    total = Fraction(0)
    for n in range(2 * K - 2 * s + 1):
        bn = cache.get(n)
        if bn:
            total += (
                binomial(2 * r - 1, 2 * K - 2 * s - n + 1)
                * binomial(n + 2 * s - 2, n)
                * bn
            )
    return Fraction(2, 2 * s - 1) * total


def _q_entry(K: int, s: int, r: int, cache: BernoulliCache) -> Fraction:
    total = Fraction(0)
    for n in range(2 * K - 2 * s + 1):
        bn = cache.get(n)
        if bn:
            total += (
                binomial(2 * K - 2 * r, 2 * K - 2 * s - n + 1)
                * binomial(n + 2 * s - 2, n)
                * bn
            )
    return -Fraction(2, 2 * s - 1) * total


def build_p(K: int, cache: BernoulliCache | None = None) -> RationalMatrix:
    """P_{s,r} = (2/(2s-1)) sum_n C(2r-1, 2K-2s-n+1) C(n+2s-2, n) B_n.

    The sum runs n = 0..2K-2s; odd-n terms are kept and vanish through
    B_n = 0 rather than being skipped.
    """
    _check_k(K)
    if cache is None:
        cache = BernoulliCache()
    rows = [[_p_entry(K, s, r, cache) for r in range(1, K)] for s in range(1, K)]
    return _from_rows(rows)


def build_q(K: int, cache: BernoulliCache | None = None) -> RationalMatrix:
    """Q_{s,r} = -(2/(2s-1)) sum_n C(2K-2r, 2K-2s-n+1) C(n+2s-2, n) B_n."""
    _check_k(K)
    if cache is None:
        cache = BernoulliCache()
    rows = [[_q_entry(K, s, r, cache) for r in range(1, K)] for s in range(1, K)]
    return _from_rows(rows)


def identity_matrix(n: int) -> RationalMatrix:
    return RationalMatrix(
        n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n))
    )


def matrix_multiply(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.cols != b.rows:
        raise ValueError(
            f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}"
        )
    out = []
    for i in range(a.rows):
        arow = a.entries[i * a.cols : (i + 1) * a.cols]
        for j in range(b.cols):
            out.append(
                sum(
                    (arow[k] * b.entries[k * b.cols + j] for k in range(a.cols)),
                    Fraction(0),
                )
            )
    return RationalMatrix(a.rows, b.cols, tuple(out))


def determinant_fraction_free(a: RationalMatrix) -> Fraction:
    """Exact determinant by Bareiss (fraction-free) elimination.

    Rows are scaled to integers first; elimination then stays in the
    integers, which keeps intermediate growth under control for the
    integer matrices A_K.
    """
    if a.rows != a.cols:
        raise ValueError("determinant requires a square matrix")
    n = a.rows
    scale = Fraction(1)
    m: list[list[int]] = []
    for row in a.row_lists():
        d = lcm(*(x.denominator for x in row))
        scale *= d
        m.append([int(x * d) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1]) / scale


@dataclass(frozen=True)
class InverseReport:
    """Exact verdicts of the inverse-conjecture checks for one K."""

    K: int
    p_eq_q: bool
    pa_is_identity: bool
    ap_is_identity: bool
    det_nonzero: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.p_eq_q
            and self.pa_is_identity
            and self.ap_is_identity
            and self.det_nonzero
        )


def verify_inverse(K: int, cache: BernoulliCache | None = None) -> InverseReport:
    """Exact check that P = Q and P A = A P = I and det A != 0."""
    _check_k(K)
    if cache is None:
        cache = BernoulliCache()
    a = build_a(K)
    p = build_p(K, cache)
    q = build_q(K, cache)
    ident = identity_matrix(K - 1)
    return InverseReport(
        K=K,
        p_eq_q=p == q,
        pa_is_identity=matrix_multiply(p, a) == ident,
        ap_is_identity=matrix_multiply(a, p) == ident,
        det_nonzero=determinant_fraction_free(a) != 0,
    )


def _check_indices(K: int, s: int, sp: int) -> None:
    _check_k(K)
    if not (1 <= s <= K - 1 and 1 <= sp <= K - 1):
        raise IndexError(f"indices (s={s}, s'={sp}) out of range for K={K}")


def _closed_sum(K: int, s: int, sp: int, n_start: int, cache: BernoulliCache) -> Fraction:
    # sum over even n only; the paper's even-n reductions of (PB)/(PC)
    total = Fraction(0)
    for n in range(n_start, 2 * K - 2 * s + 1):
        bn = cache.get(n)
        if bn:
            total += (
                binomial(2 * K - 2 * sp, 2 * s - 2 * sp + n - 1)
                * binomial(n + 2 * s - 2, n)
                * Fraction(2) ** (2 * s - 2 * sp + n - 2)
                * bn
            )
    return Fraction(2, 2 * s - 1) * total


def pb_closed(K: int, s: int, sp: int, cache: BernoulliCache | None = None) -> Fraction:
    """(P B)_{s,s'} from the closed-form Bernoulli sum, no matrix product.

    For s <= s' the sum starts at n = 2s'-2s+2; for s > s' it starts at
    n = 0 and picks up the B_1 term through the merged power of two.
    """
    _check_indices(K, s, sp)
    if cache is None:
        cache = BernoulliCache()
    n_start = 2 * sp - 2 * s + 2 if s <= sp else 0
    return _closed_sum(K, s, sp, n_start, cache)


def pc_closed(K: int, s: int, sp: int, cache: BernoulliCache | None = None) -> Fraction:
    """(P C)_{s,s'} from the closed-form case analysis.

    The diagonal case carries the extra 1 contributed by the r = s,
    n = 1 term; off-diagonal cases are the negated companion sums so
    that PB + PC is exactly the identity.
    """
    _check_indices(K, s, sp)
    if cache is None:
        cache = BernoulliCache()
    if s == sp:
        return Fraction(1) - _closed_sum(K, s, sp, 2, cache)
    if s < sp:
        return -_closed_sum(K, s, sp, 2 * sp - 2 * s + 2, cache)
    return -_closed_sum(K, s, sp, 0, cache)


def matrix_to_json(K: int, name: str, matrix: RationalMatrix) -> str:
    """Serialize to the published JSON schema (row-major, "p/q" entries)."""
    payload = {
        "K": K,
        "name": name,
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [
            [format_rational(x) for x in row] for row in matrix.row_lists()
        ],
    }
    return json.dumps(payload, sort_keys=False, separators=(", ", ": "))
