"""Structural consequences of the symbol computation.

Gauge directions (symmetrized products of the evaluation covector with
any covector) lie in the kernel of the symbol's bilinear form; weighted
alternating sums over form degree vanish on a precise domain of weights;
the projector traces obey a Cauchy-Schwarz inequality; and the signs of
the closed-form pair classify critical metrics as finite-index or
essential-saddle.  Everything except `zeta_constants` stays in exact
rational arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exactalg import (
    Covector,
    FPair,
    PerturbH,
    Scalar,
    SPoly,
    complement_projector,
    projector_traces,
    scalar_invariants,
)
from .symbolengine import (
    DstarDComparison,
    closed_form_fpair,
    closed_form_reduced,
    direct_symbol,
    dstar_d_fpair,
    grouped_symbol,
)
from .variation import OperatorKind

_ROUTES: dict[str, Callable] = {
    "grouped": grouped_symbol,
    "direct": direct_symbol,
    "closed": closed_form_reduced,
}


def _route(name: str) -> Callable:
    try:
        return _ROUTES[name]
    except KeyError:
        raise ValueError(
            f"route must be one of {sorted(_ROUTES)}, got {name!r}"
        ) from None


# ---------------------------------------------------------------------------
# Gauge directions
# ---------------------------------------------------------------------------


def gauge_perturbation(xi: Covector, eta: Covector) -> PerturbH:
    """The symmetrized product xi (x) eta + eta (x) xi."""
    if xi.n != eta.n:
        raise ValueError("dimension mismatch")
    n = xi.n
    return PerturbH.from_rows(
        [[xi[i] * eta[j] + eta[i] * xi[j] for j in range(n)] for i in range(n)]
    )


def is_gauge_direction(h: PerturbH, xi: Covector) -> bool:
    """True iff the projected perturbation P H P vanishes (P = complement of xi)."""
    n = h.n
    proj = complement_projector(xi)
    for i in range(n):
        for j in range(n):
            v = sum(
                proj[i][a] * h[a, b] * proj[b][j] for a in range(n) for b in range(n)
            )
            if v != 0:
                return False
    return True


def polarized_symbol(
    op: OperatorKind,
    n: int,
    p: int,
    k: PerturbH,
    h: PerturbH,
    xi: Covector,
    mode: str = "real",
    route: str = "grouped",
) -> SPoly:
    """Bilinear form of the reduced symbol by polarization of the quadratic form."""
    fn = _route(route)
    plus = fn(op, n, p, k + h, xi, mode)
    minus = fn(op, n, p, k - h, xi, mode)
    return (plus - minus) / 4


def gauge_kernel_check(
    op: OperatorKind,
    n: int,
    p: int,
    k: PerturbH,
    xi: Covector,
    eta: Covector,
    mode: str = "real",
    route: str = "grouped",
) -> SPoly:
    """Residual of the bilinear form against a gauge direction; zero when correct."""
    gauge = gauge_perturbation(xi, eta)
    return polarized_symbol(op, n, p, k, gauge, xi, mode, route)


# ---------------------------------------------------------------------------
# Weighted alternating sums over form degree
# ---------------------------------------------------------------------------


def torsion_sum(
    op: OperatorKind,
    n: int,
    k: int,
    h: PerturbH,
    xi: Covector,
    mode: str = "real",
    route: str = "closed",
) -> SPoly:
    """sum_p (-1)^(p+1) p^k rho_p(S) with the convention 0^0 = 1.

    For k = 0 this is the plain alternating sum of reduced symbols.
    """
    if k < 0:
        raise ValueError("weight power k must be nonnegative")
    fn = _route(route)
    total = SPoly.zero()
    for p in range(n + 1):
        weight = 1 if k == 0 else p**k
        if weight == 0:
            continue
        sign = 1 if (p + 1) % 2 == 0 else -1
        total = total + sign * weight * fn(op, n, p, h, xi, mode)
    return total


def torsion_sum_valid(op: OperatorKind, n: int, k: int) -> bool:
    """Domain on which the weighted alternating sum vanishes identically in S.

    The binomial alternating sums behind the closed-form pairs vanish for
    k <= n - 3.  At n = 2 the two projector traces coincide as functions
    (the projected endomorphism has rank one), which rescues the
    exterior-derivative Laplacian for k <= 1; nothing rescues the
    connection Laplacian there.  Outside this domain the sum is a nonzero
    polynomial, although it still vanishes at the special point S = -n/2
    relevant to determinant torsion (k = 1, s = 0).
    """
    if k <= n - 3:
        return True
    return op is OperatorKind.DERHAM and n == 2 and k <= 1


# ---------------------------------------------------------------------------
# Projector-trace inequalities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InequalityCheck:
    """Exact survey of the trace inequalities for one (h, xi)."""

    n: int
    t2: Fraction
    t1sq: Fraction
    is_gauge: bool
    positivity_ok: bool  # t2 > 0 whenever h is not a gauge direction
    cauchy_schwarz_ok: bool  # t1sq <= (n-1) t2
    printed_direction_ok: bool  # t2/(n-1) >= t1sq, surveyed only


def projector_inequalities(h: PerturbH, xi: Covector) -> InequalityCheck:
    """Check the strict positivity and both orderings of the trace inequality.

    The Cauchy-Schwarz direction t1sq <= (n-1) t2 always holds; the
    reversed ordering is surveyed and reported because h = identity
    violates it in dimensions >= 3.
    """
    n = h.n
    t2, t1sq = projector_traces(h, xi)
    gauge = is_gauge_direction(h, xi)
    positivity_ok = gauge or t2 > 0
    cs_ok = t1sq <= (n - 1) * t2
    printed_ok = Fraction(t2, 1) / (n - 1) >= t1sq
    return InequalityCheck(n, t2, t1sq, gauge, positivity_ok, cs_ok, printed_ok)


# ---------------------------------------------------------------------------
# Critical-metric classification
# ---------------------------------------------------------------------------


class Classification(enum.Enum):
    FINITE_INDEX_MIN = "finite_index_min"
    FINITE_INDEX_MAX = "finite_index_max"
    ESSENTIAL_SADDLE = "essential_saddle"
    DEGENERATE = "degenerate"


def classify_critical_metric(
    f: FPair, n: int, s: Scalar, k: int = 0
) -> Classification:
    """Sign classification of a critical metric from the coefficient pair.

    Evaluates a = f1 and b = f1/(n-1) + f2 at S = s - n/2.  Equal nonzero
    signs give finite index: the k-th derivative functional is min-type
    when (-1)^k sgn(a) is positive, max-type otherwise.  Opposite signs
    give an essential saddle regardless of k; a zero value is degenerate.
    """
    if n < 3:
        raise ValueError("classification requires dimension n >= 3")
    s = Fraction(s)
    if not s < Fraction(n, 2) - 1:
        raise ValueError(f"requires s < n/2 - 1 = {Fraction(n, 2) - 1}, got {s}")
    big_s = s - Fraction(n, 2)
    a = f.f1(big_s)
    b = a / (n - 1) + f.f2(big_s)
    if a == 0 or b == 0:
        return Classification.DEGENERATE
    if (a > 0) != (b > 0):
        return Classification.ESSENTIAL_SADDLE
    positive = (a > 0) == (k % 2 == 0)
    return (
        Classification.FINITE_INDEX_MIN if positive else Classification.FINITE_INDEX_MAX
    )


# ---------------------------------------------------------------------------
# Transcendental constants (reporting only; never part of identity checks)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZetaConstants:
    """Floating-point grading constant and determinant conversion sign."""

    n: int
    s: float
    value: float  # (1/4pi)^(n/2) Gamma(1-S)^2 / Gamma(2-2S) at S = s - n/2
    conversion_sign: Optional[int]  # sign of 1/Gamma(-n/2); odd n only


def zeta_constants(n: int, s: float) -> ZetaConstants:
    big_s = s - n / 2
    try:
        value = (
            (1 / (4 * math.pi)) ** (n / 2)
            * math.gamma(1 - big_s) ** 2
            / math.gamma(2 - 2 * big_s)
        )
    except ValueError as exc:
        raise ValueError(
            f"Gamma pole at the requested arguments (n={n}, s={s})"
        ) from exc
    sign = (-1) ** ((n + 1) // 2) if n % 2 == 1 else None
    return ZetaConstants(n, s, value, sign)


# ---------------------------------------------------------------------------
# Classification scan over dimension and degree
# ---------------------------------------------------------------------------

_DR_FAMILY = ("derham", "dstar_d", "ddstar")


def _scan_fpair(op_name: str, n: int, p: int) -> FPair:
    if op_name == "bochner":
        return closed_form_fpair(OperatorKind.BOCHNER, n, p)
    if op_name == "derham":
        return closed_form_fpair(OperatorKind.DERHAM, n, p)
    if op_name == "dstar_d":
        return dstar_d_fpair(n, p).alt_sum
    if op_name == "ddstar":
        if p == 0:
            return FPair(SPoly.zero(), SPoly.zero())
        return dstar_d_fpair(n, p - 1).alt_sum
    raise ValueError(f"unknown operator {op_name!r}")


@dataclass(frozen=True)
class ScanCase:
    operator: str
    n: int
    p: int
    classification: Classification


@dataclass(frozen=True)
class ScanReport:
    n_max: int
    s: Fraction
    k: int
    cases: tuple[ScanCase, ...]
    bochner_smallest_saddle: Optional[int]
    saddle_free: dict[str, bool]
    odd_directions: dict[int, str]  # odd n -> "det" or "1/det"
    alternation_consistent: bool


def scan_critical_metrics(n_max: int, s: Scalar = 0, k: int = 1) -> ScanReport:
    """Classify every operator family over 3 <= n <= n_max, 0 <= p <= n.

    Asserts nothing; collects classifications, the smallest dimension with
    a connection-Laplacian saddle, whether the exterior-derivative family
    is saddle-free, and the finite-index direction of the determinant for
    odd n (combining the positive coefficient signs with the sign of
    1/Gamma(-n/2)), checking the direction alternates with n mod 4.
    """
    if n_max < 4:
        raise ValueError("scan needs n_max >= 4")
    s = Fraction(s)
    cases: list[ScanCase] = []
    smallest_saddle: Optional[int] = None
    saddle_free = {name: True for name in _DR_FAMILY}
    odd_directions: dict[int, str] = {}
    alternation_ok = True
    for n in range(3, n_max + 1):
        odd_positive = n % 2 == 1
        for op_name in ("bochner",) + _DR_FAMILY:
            for p in range(n + 1):
                f = _scan_fpair(op_name, n, p)
                cls = classify_critical_metric(f, n, s, k)
                cases.append(ScanCase(op_name, n, p, cls))
                if cls is Classification.ESSENTIAL_SADDLE:
                    if op_name == "bochner":
                        if smallest_saddle is None:
                            smallest_saddle = n
                    else:
                        saddle_free[op_name] = False
                if op_name in _DR_FAMILY and n % 2 == 1:
                    big_s = s - Fraction(n, 2)
                    a = f.f1(big_s)
                    b = a / (n - 1) + f.f2(big_s)
                    if not (a == 0 and b == 0) and not (a > 0 and b > 0):
                        odd_positive = False
        if n % 2 == 1:
            sign = (-1) ** ((n + 1) // 2)
            # Positive pair means the determinant's log-reciprocal is
            # min-type exactly when 1/Gamma(-n/2) is positive.
            direction = "1/det" if sign > 0 else "det"
            odd_directions[n] = direction if odd_positive else "indefinite"
            expected = "det" if n % 4 == 1 else "1/det"
            if odd_directions[n] != expected:
                alternation_ok = False
    return ScanReport(
        n_max=n_max,
        s=s,
        k=k,
        cases=tuple(cases),
        bochner_smallest_saddle=smallest_saddle,
        saddle_free=saddle_free,
        odd_directions=odd_directions,
        alternation_consistent=alternation_ok,
    )
