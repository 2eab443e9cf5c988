"""Arbitrary-precision zeta evaluation with rigorous error bounds.

Values are carried as a :class:`BigFloat`: an mpmath float at a working
precision of roughly twice the requested digits, paired with an absolute
error bound that covers series truncation and accumulated rounding.  The
bound, not the precision, is the contract: every arithmetic helper
propagates bounds conservatively.

Single zeta tails use Euler-Maclaurin with the classical periodic-
Bernoulli remainder bound; double zeta tails expand the inner partial
sum by the same machinery, reducing the outer tail to a finite
combination of single-zeta tails plus a rigorously bounded remainder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .bernoulli import BernoulliCache
from .matrices import build_a

__all__ = [
    "BigFloat",
    "zeta_single",
    "zeta_double",
    "pi_value",
    "eval_products",
    "rational_reconstruct",
    "AuditReport",
    "audit_euler_constant",
    "HAuditReport",
    "audit_h_ab",
]

_BERNOULLI = BernoulliCache()


def _slack(x) -> mpf:
    # generous per-operation rounding allowance at the current precision
    return (abs(x) + mpf(1)) * mp.eps * 8


@dataclass(frozen=True)
class BigFloat:
    """Arbitrary-precision value with a conservative absolute error bound."""

    value: mpf
    error_bound: mpf

    def __post_init__(self) -> None:
        if not self.error_bound >= 0:
            raise ValueError("error bound must be finite and >= 0")

    def __add__(self, other: BigFloat) -> BigFloat:
        v = self.value + other.value
        return BigFloat(v, self.error_bound + other.error_bound + _slack(v))

    def __sub__(self, other: BigFloat) -> BigFloat:
        v = self.value - other.value
        return BigFloat(v, self.error_bound + other.error_bound + _slack(v))

    def __neg__(self) -> BigFloat:
        return BigFloat(-self.value, self.error_bound)

    def __mul__(self, other: BigFloat) -> BigFloat:
        v = self.value * other.value
        e = (
            abs(self.value) * other.error_bound
            + abs(other.value) * self.error_bound
            + self.error_bound * other.error_bound
            + _slack(v)
        )
        return BigFloat(v, e)

    def __truediv__(self, other: BigFloat) -> BigFloat:
        denom = abs(other.value) - other.error_bound
        if not denom > 0:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / other.value
        e = (abs(self.value) * other.error_bound + abs(other.value) * self.error_bound) / (
            abs(other.value) * denom
        ) + _slack(v)
        return BigFloat(v, e)

    def scale(self, c: Fraction | int) -> BigFloat:
        """Multiply by an exact rational (no extra error beyond rounding)."""
        cf = mpf(c.numerator) / mpf(c.denominator) if isinstance(c, Fraction) else mpf(c)
        exact = isinstance(c, int) or c.denominator == 1
        v = self.value * cf
        extra = 0 if exact else _slack(v)
        return BigFloat(v, abs(cf) * self.error_bound + _slack(v) + extra)

    def to_string(self, digits: int) -> str:
        return f"{mp.nstr(self.value, digits)} ± {mp.nstr(self.error_bound, 3)}"


def _rising(k: int, j: int) -> int:
    """k (k+1) ... (k+j-1)."""
    return math.factorial(k + j - 1) // math.factorial(k - 1)


def _zeta_tail(k: int, start: int, target: mpf) -> tuple[mpf, mpf]:
    """sum_{m >= start} m^{-k} by Euler-Maclaurin, with remainder bound.

    Derivative terms j = 1..J-1 are added until the periodic-Bernoulli
    remainder bound 2|B_{2J}|/(2J)! * int |f^(2J)| drops below target
    (or stops improving; the asymptotic series eventually diverges).
    """
    M = mpf(start)
    tail = M ** (1 - k) / (k - 1) + M ** (-k) / 2
    prev_bound = mpf("inf")
    J = 1
    while True:
        b2j = _BERNOULLI.get(2 * J)
        b2j_f = mpf(b2j.numerator) / mpf(b2j.denominator)
        # remainder bound valid for the state with terms j = 1..J-1 included
        bound = (
            2
            * abs(b2j_f)
            / mpf(math.factorial(2 * J))
            * _rising(k, 2 * J)
            * M ** (1 - k - 2 * J)
            / (k + 2 * J - 1)
        )
        if bound <= target or bound >= prev_bound or J > 400:
            return tail, bound + _slack(tail) * (J + 4)
        tail += b2j_f / mpf(math.factorial(2 * J)) * _rising(k, 2 * J - 1) * M ** (
            1 - k - 2 * J
        )
        prev_bound = bound
        J += 1


def _choose_cutoff(digits: int) -> int:
    # Euler-Maclaurin converges once 2*pi*M exceeds the term count;
    # M near the digit count keeps both the direct sum and J small.
    return max(16, digits)


def zeta_single(k: int, digits: int = 30) -> BigFloat:
    """Riemann zeta at an integer k >= 2, |error| <= 10^-digits."""
    if k < 2:
        raise ValueError(f"zeta_single requires k >= 2, got {k}")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    with mp.workdps(2 * digits + 15):
        target = mpf(10) ** (-(digits + 10))
        M = _choose_cutoff(digits)
        partial = mpf(0)
        for m in range(1, M):
            partial += mpf(m) ** (-k)
        tail, bound = _zeta_tail(k, M, target)
        value = partial + tail
        err = bound + _slack(value) * (M + 4)
        return BigFloat(value, err)


def zeta_double(k1: int, k2: int, digits: int = 30) -> BigFloat:
    """Double zeta sum_{j < m} j^{-k1} m^{-k2}, |error| <= 10^-digits.

    Requires k2 >= 2 (convergence of the outer sum).  The outer tail is
    written as zeta(k1) * tail(k2) minus sum_{m > M} m^{-k2} T(m) with
    T(m) = sum_{j >= m} j^{-k1}; T is expanded by Euler-Maclaurin into
    powers of m, so the correction is again a sum of single-zeta tails.
    """
    if k2 < 2:
        raise ValueError(f"zeta_double requires k2 >= 2, got k2={k2}")
    if k1 < 1:
        raise ValueError(f"zeta_double requires k1 >= 1, got k1={k1}")
    if k1 == 1 and k2 == 2:
        raise ValueError("zeta(1, 2) is divergent in this summation order")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    with mp.workdps(2 * digits + 15):
        target = mpf(10) ** (-(digits + 10))
        M = max(_choose_cutoff(digits), 2 * digits)

        # direct part: m = 2..M with incremental inner partial sums
        inner = mpf(0)
        direct = mpf(0)
        for m in range(2, M + 1):
            inner += mpf(m - 1) ** (-k1)
            direct += mpf(m) ** (-k2) * inner

        z1 = zeta_single(k1, digits + 10)
        t2, t2_bound = _zeta_tail(k2, M + 1, target)

        # Euler-Maclaurin expansion of T(m) = sum_{j>=m} j^{-k1} in powers
        # of 1/m; each power folds into a single-zeta tail of the outer sum.
        J = max(4, digits)
        powers: list[tuple[int, mpf]] = [
            (k1 - 1, mpf(1) / (k1 - 1)),
            (k1, mpf("0.5")),
        ]
        for j in range(1, J):
            b2j = _BERNOULLI.get(2 * j)
            c = (
                mpf(b2j.numerator)
                / mpf(b2j.denominator)
                / mpf(math.factorial(2 * j))
                * _rising(k1, 2 * j - 1)
            )
            powers.append((k1 + 2 * j - 1, c))
        b2J = _BERNOULLI.get(2 * J)
        rho = (
            2
            * abs(mpf(b2J.numerator) / mpf(b2J.denominator))
            / mpf(math.factorial(2 * J))
            * _rising(k1, 2 * J)
            / (k1 + 2 * J - 1)
        )

        correction = mpf(0)
        corr_bound = mpf(0)
        for alpha, c in powers:
            tv, tb = _zeta_tail(k2 + alpha, M + 1, target)
            correction += c * tv
            corr_bound += abs(c) * tb
        # T-expansion remainder summed over the outer tail
        rem_tail, rem_bound = _zeta_tail(k2 + k1 + 2 * J - 1, M + 1, target)
        corr_bound += rho * (rem_tail + rem_bound)

        value = direct + z1.value * t2 - correction
        err = (
            z1.error_bound * (t2 + t2_bound)
            + abs(z1.value) * t2_bound
            + corr_bound
            + _slack(value) * (M + J + 16)
        )
        return BigFloat(value, err)


def pi_value(digits: int = 30) -> BigFloat:
    """pi with an error bound of a few ulps at the working precision."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    with mp.workdps(2 * digits + 15):
        v = +mp.pi
        return BigFloat(v, _slack(v))


def eval_products(K: int, digits: int = 30) -> list[BigFloat]:
    """zeta(2s) * zeta(2K+1-2s) for s = 1..K-1, bounds propagated."""
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    with mp.workdps(2 * digits + 15):
        return [
            zeta_single(2 * s, digits) * zeta_single(2 * K + 1 - 2 * s, digits)
            for s in range(1, K)
        ]


def rational_reconstruct(x: BigFloat, max_denominator: int = 64) -> Fraction | None:
    """The unique p/q with q <= max_denominator inside the error interval.

    Distinct rationals with denominators <= D differ by at least 1/D^2,
    so a candidate is unique whenever the interval is shorter than that.
    Returns None when no candidate fits or uniqueness cannot be shown.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    if 2 * x.error_bound >= mpf(1) / (max_denominator * max_denominator):
        return None
    sign, man, exp, _ = x.value._mpf_
    exact = Fraction((-1) ** sign * man) * Fraction(2) ** exp
    candidate = exact.limit_denominator(max_denominator)
    cv = mpf(candidate.numerator) / mpf(candidate.denominator)
    if abs(cv - x.value) <= x.error_bound + _slack(cv):
        return candidate
    return None


@dataclass(frozen=True)
class AuditReport:
    """Numeric audit of one row of the Euler odd-weight reduction."""

    K: int
    r: int
    digits: int
    lhs: BigFloat
    rhs_products: BigFloat
    residual_ratio: BigFloat
    reconstructed: Fraction | None
    printed_constant_consistent: bool


def audit_euler_constant(K: int, r: int, digits: int = 40) -> AuditReport:
    """Compare zeta(2r, 2K+1-2r) against the A-weighted product sum.

    residual_ratio = (lhs - sum_s A_{r,s} products_s) / zeta(2K+1); the
    printed constant is consistent iff -1/2 lies within the residual's
    error bound.  Disagreement is reported, never raised.
    """
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    if not 1 <= r <= K - 1:
        raise ValueError(f"row r={r} out of range for K={K}")
    with mp.workdps(2 * digits + 15):
        a = build_a(K)
        products = eval_products(K, digits)
        lhs = zeta_double(2 * r, 2 * K + 1 - 2 * r, digits)
        rhs = products[0].scale(a.at(r - 1, 0))
        for s in range(2, K):
            rhs = rhs + products[s - 1].scale(a.at(r - 1, s - 1))
        z_odd = zeta_single(2 * K + 1, digits)
        residual = (lhs - rhs) / z_odd
        reconstructed = rational_reconstruct(residual, 64)
        consistent = bool(
            abs(residual.value - mpf("-0.5")) <= residual.error_bound
        )
        return AuditReport(
            K=K,
            r=r,
            digits=digits,
            lhs=lhs,
            rhs_products=rhs,
            residual_ratio=residual,
            reconstructed=reconstructed,
            printed_constant_consistent=consistent,
        )


@dataclass(frozen=True)
class HAuditReport:
    """Numeric audit of the H(a,b) odd-zeta expansion."""

    a: int
    b: int
    digits: int
    formula_value: BigFloat
    direct_value: BigFloat
    abs_difference: mpf
    agrees_within_bounds: bool


def audit_h_ab(a: int, b: int, digits: int = 30) -> HAuditReport:
    """Check the H(a,b) coefficient formula against direct summation.

    Supported scope: (a, b) in {(0,0), (1,0), (0,1)} - the depth-1 and
    depth-2 targets zeta(3), zeta(2,3), zeta(3,2).  Deeper targets would
    need an independent depth >= 3 summation engine and are rejected.
    """
    from .reductions import h_ab_coefficients, h_value

    supported = {(0, 0), (1, 0), (0, 1)}
    if (a, b) not in supported:
        raise ValueError(
            f"audit_h_ab supports (a,b) in {sorted(supported)}, got ({a}, {b})"
        )
    if digits < 1:
        raise ValueError("digits must be >= 1")
    with mp.workdps(2 * digits + 15):
        K = a + b + 1
        table = h_ab_coefficients(a, b)
        pi_bf = pi_value(digits)
        formula = None
        for r, term in enumerate(table.rows[0].terms, start=1):
            n = K - r
            hv = h_value(n)
            h_num = _pi_power(pi_bf, 2 * n).scale(hv.coefficient)
            contrib = (h_num * zeta_single(2 * r + 1, digits)).scale(term.coeff)
            formula = contrib if formula is None else formula + contrib
        assert formula is not None

        if (a, b) == (0, 0):
            direct = zeta_single(3, digits)
        elif (a, b) == (1, 0):
            direct = zeta_double(2, 3, digits)
        else:
            direct = zeta_double(3, 2, digits)

        diff = abs(formula.value - direct.value)
        agrees = bool(diff <= formula.error_bound + direct.error_bound)
        return HAuditReport(
            a=a,
            b=b,
            digits=digits,
            formula_value=formula,
            direct_value=direct,
            abs_difference=diff,
            agrees_within_bounds=agrees,
        )


def _pi_power(pi_bf: BigFloat, m: int) -> BigFloat:
    out = BigFloat(mpf(1), mpf(0))
    for _ in range(m):
        out = out * pi_bf
    return out
