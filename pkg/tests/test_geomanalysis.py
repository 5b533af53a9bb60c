import math
from fractions import Fraction

import mpmath
import pytest

from tests.conftest import draw_h, draw_xi
from zetahessian.exactalg import Covector, FPair, PerturbH, S, SPoly
from zetahessian.geomanalysis import (
    Classification,
    classify_critical_metric,
    gauge_kernel_check,
    gauge_perturbation,
    is_gauge_direction,
    projector_inequalities,
    scan_critical_metrics,
    torsion_sum,
    torsion_sum_valid,
    zeta_constants,
)
from zetahessian.symbolengine import closed_form_fpair
from zetahessian.variation import OperatorKind

B, DR = OperatorKind.BOCHNER, OperatorKind.DERHAM


# ---------------------------------------------------------------------------
# gauge directions
# ---------------------------------------------------------------------------


def test_gauge_perturbation_matrices():
    g = gauge_perturbation(Covector.of(1, 0), Covector.of(0, 1))
    assert g.entries == ((0, 1), (1, 0))
    xi = Covector.of(1, 2, -1)
    doubled = gauge_perturbation(xi, xi)
    assert doubled.entries == tuple(
        tuple(2 * xi[i] * xi[j] for j in range(3)) for i in range(3)
    )


def test_gauge_perturbation_projects_to_zero(rng):
    # direct matrix oracle: P H P must vanish for every gauge direction
    from zetahessian.exactalg import complement_projector

    for n in (2, 3, 4):
        for _ in range(10):
            xi, eta = draw_xi(rng, n), draw_xi(rng, n)
            h = gauge_perturbation(xi, eta)
            proj = complement_projector(xi)
            for i in range(n):
                for j in range(n):
                    assert (
                        sum(
                            proj[i][a] * h[a, b] * proj[b][j]
                            for a in range(n)
                            for b in range(n)
                        )
                        == 0
                    )
            assert is_gauge_direction(h, xi)


def test_gauge_kernel_exterior_laplacian(rng):
    for _ in range(5):
        k = draw_h(rng, 4)
        xi, eta = draw_xi(rng, 4), draw_xi(rng, 4)
        assert gauge_kernel_check(DR, 4, 2, k, xi, eta).is_zero()


def test_gauge_kernel_connection_laplacian_twenty_draws(rng):
    for _ in range(20):
        k = draw_h(rng, 3)
        xi, eta = draw_xi(rng, 3), draw_xi(rng, 3)
        assert gauge_kernel_check(B, 3, 1, k, xi, eta).is_zero()


def test_gauge_kernel_gauge_against_gauge(rng):
    xi = draw_xi(rng, 3)
    k = gauge_perturbation(xi, draw_xi(rng, 3))
    assert gauge_kernel_check(DR, 3, 1, k, xi, draw_xi(rng, 3)).is_zero()


def test_gauge_kernel_all_routes(rng):
    k = draw_h(rng, 3)
    xi, eta = draw_xi(rng, 3), draw_xi(rng, 3)
    for route in ("grouped", "direct", "closed"):
        assert gauge_kernel_check(B, 3, 2, k, xi, eta, route=route).is_zero()


# ---------------------------------------------------------------------------
# weighted alternating sums
# ---------------------------------------------------------------------------


def test_alternating_sum_vanishes_on_valid_domain(rng):
    cases = [(B, 5, 2), (DR, 5, 2), (B, 4, 1), (DR, 4, 1), (B, 7, 2), (DR, 2, 1)]
    for op, n, k in cases:
        assert torsion_sum_valid(op, n, k)
        h, xi = draw_h(rng, n), draw_xi(rng, n)
        assert torsion_sum(op, n, k, h, xi).is_zero()


def test_alternating_sum_plain_k0_convention(rng):
    # k = 0 uses 0^0 = 1, the plain alternating sum; vanishes from n = 3 on
    for op in (B, DR):
        for n in (3, 4, 5):
            h, xi = draw_h(rng, n), draw_xi(rng, n)
            assert torsion_sum(op, n, 0, h, xi).is_zero()


def test_alternating_sum_grouped_route_spot_check(rng):
    h, xi = draw_h(rng, 4), draw_xi(rng, 4)
    assert torsion_sum(DR, 4, 1, h, xi, route="grouped").is_zero()
    assert torsion_sum(B, 4, 0, h, xi, route="direct").is_zero()


def test_alternating_sum_known_nonzero_case():
    """The weight-1 sum in dimension 3 is a nonzero polynomial: for the
    exterior-derivative Laplacian with h the identity and a unit axis
    covector it equals 8 S^2 + 8 S - 6, which vanishes at S = -3/2 (the
    determinant point s = 0) but at no other rational point of interest."""
    h, xi = PerturbH.identity(3), Covector.axis(3, 0)
    residual = torsion_sum(DR, 3, 1, h, xi)
    assert residual == 8 * S * S + 8 * S - 6
    assert residual(Fraction(-3, 2)) == 0
    assert not torsion_sum_valid(DR, 3, 1)
    # no pairing of exact and coexact spectra rescues the connection
    # Laplacian: its residual -8S + 4 is nonzero even at S = -3/2
    bochner_residual = torsion_sum(B, 3, 1, h, xi)
    assert bochner_residual == -8 * S + 4
    assert bochner_residual(Fraction(-3, 2)) == 16


def test_alternating_sum_validity_table():
    assert torsion_sum_valid(B, 7, 2) and torsion_sum_valid(DR, 7, 2)
    assert torsion_sum_valid(B, 5, 2) and not torsion_sum_valid(B, 4, 2)
    assert not torsion_sum_valid(B, 2, 0)
    assert torsion_sum_valid(DR, 2, 0) and torsion_sum_valid(DR, 2, 1)
    assert not torsion_sum_valid(DR, 2, 2)


def test_alternating_sum_rejects_negative_weight(rng):
    with pytest.raises(ValueError):
        torsion_sum(B, 3, -1, draw_h(rng, 3), draw_xi(rng, 3))


# ---------------------------------------------------------------------------
# trace inequalities
# ---------------------------------------------------------------------------


def test_identity_perturbation_violates_reversed_ordering():
    for n in (3, 4, 5):
        chk = projector_inequalities(PerturbH.identity(n), Covector.axis(n, 0))
        assert chk.t2 == n - 1 and chk.t1sq == (n - 1) ** 2
        assert chk.cauchy_schwarz_ok  # (n-1)^2 <= (n-1)(n-1), tight
        assert not chk.printed_direction_ok  # (n-1)/(n-1) < (n-1)^2
    chk2 = projector_inequalities(PerturbH.identity(2), Covector.axis(2, 0))
    assert chk2.printed_direction_ok  # n = 2 is the boundary case


def test_gauge_direction_sits_on_the_boundary(rng):
    xi = draw_xi(rng, 3)
    h = gauge_perturbation(xi, draw_xi(rng, 3))
    chk = projector_inequalities(h, xi)
    assert chk.is_gauge and chk.t2 == 0 and chk.positivity_ok


def test_traceless_diagonal_cauchy_schwarz(rng):
    # with xi on the first axis only the lower diagonal block survives
    for _ in range(10):
        diag = [rng.randint(-5, 5) for _ in range(3)]
        diag.append(-sum(diag))
        h = PerturbH.diagonal(diag)
        xi = Covector.axis(4, 0)
        chk = projector_inequalities(h, xi)
        tail = diag[1:]
        assert chk.t1sq == sum(tail) ** 2
        assert chk.t2 == sum(x * x for x in tail)
        assert chk.t1sq <= 3 * chk.t2  # Cauchy-Schwarz over 3 slots


def test_random_survey_positivity_and_cauchy_schwarz(rng):
    for n in (2, 3, 4):
        for _ in range(30):
            h, xi = draw_h(rng, n), draw_xi(rng, n)
            chk = projector_inequalities(h, xi)
            assert chk.positivity_ok and chk.cauchy_schwarz_ok


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def test_classify_connection_laplacian_saddle_at_n4():
    f = closed_form_fpair(B, 4, 1)
    assert f.f1(Fraction(-2)) == -8
    assert f.f2(Fraction(-2)) == 6
    assert classify_critical_metric(f, 4, 0, 1) is Classification.ESSENTIAL_SADDLE


def test_classify_exterior_laplacian_never_saddle_at_s0():
    for n in range(3, 9):
        for p in range(n + 1):
            f = closed_form_fpair(DR, n, p)
            cls = classify_critical_metric(f, n, 0, 1)
            assert cls is not Classification.ESSENTIAL_SADDLE
            big_s = Fraction(-n, 2)
            assert f.f1(big_s) > 0  # (n-3)(n+1)/4 >= 0 keeps f1 positive


def test_classify_zero_pair_degenerate():
    f = FPair(SPoly.zero(), 3 * S + 1)
    assert classify_critical_metric(f, 4, 0, 1) is Classification.DEGENERATE


def test_classify_scaling_invariance():
    f = closed_form_fpair(B, 5, 2)
    base = classify_critical_metric(f, 5, 0, 1)
    scaled = FPair(3 * f.f1, 3 * f.f2)
    assert classify_critical_metric(scaled, 5, 0, 1) == base
    flipped = FPair(-1 * f.f1, -1 * f.f2)
    result = classify_critical_metric(flipped, 5, 0, 1)
    if base is Classification.ESSENTIAL_SADDLE:
        assert result is Classification.ESSENTIAL_SADDLE
    else:
        assert result in (
            Classification.FINITE_INDEX_MIN,
            Classification.FINITE_INDEX_MAX,
        )


def test_classify_min_max_flips_with_k():
    f = closed_form_fpair(DR, 5, 1)  # positive pair at s = 0
    assert classify_critical_metric(f, 5, 0, 0) is Classification.FINITE_INDEX_MIN
    assert classify_critical_metric(f, 5, 0, 1) is Classification.FINITE_INDEX_MAX


def test_classify_domain_errors():
    f = closed_form_fpair(B, 4, 1)
    with pytest.raises(ValueError):
        classify_critical_metric(f, 4, 3, 1)  # s >= n/2 - 1
    with pytest.raises(ValueError):
        classify_critical_metric(f, 2, 0, 1)  # n < 3


# ---------------------------------------------------------------------------
# transcendental constants
# ---------------------------------------------------------------------------


def _grading_constant_oracle(n, s):
    with mpmath.workdps(40):
        big_s = mpmath.mpf(s) - mpmath.mpf(n) / 2
        value = (
            (1 / (4 * mpmath.pi)) ** (mpmath.mpf(n) / 2)
            * mpmath.gamma(1 - big_s) ** 2
            / mpmath.gamma(2 - 2 * big_s)
        )
        return float(value)


def test_grading_constant_against_high_precision_oracle():
    for n, s in ((3, 0.0), (2, 0.0), (5, 0.5), (4, -1.0)):
        zc = zeta_constants(n, s)
        oracle = _grading_constant_oracle(n, s)
        assert abs(zc.value - oracle) <= 1e-10 * abs(oracle)
    assert abs(zeta_constants(3, 0.0).value - 1.653e-3) < 1e-6
    assert abs(zeta_constants(2, 0.0).value - 1 / (24 * math.pi)) < 1e-15


def test_grading_constant_pole_raises():
    # at n = 4, s = 3 the first Gamma argument hits zero
    with pytest.raises(ValueError):
        zeta_constants(4, 3.0)


def test_conversion_sign_matches_gamma_sign():
    for n in (3, 5, 7, 9, 11):
        zc = zeta_constants(n, 0.0)
        assert zc.conversion_sign == int(math.copysign(1, math.gamma(-n / 2)))
    assert zeta_constants(4, 0.25).conversion_sign is None


# ---------------------------------------------------------------------------
# classification scan
# ---------------------------------------------------------------------------


def test_scan_reproduces_expected_conclusions():
    rep = scan_critical_metrics(12)
    assert rep.bochner_smallest_saddle == 4
    assert all(rep.saddle_free.values())
    assert rep.alternation_consistent
    assert rep.odd_directions == {
        3: "1/det",
        5: "det",
        7: "1/det",
        9: "det",
        11: "1/det",
    }


def test_scan_is_stable_in_the_cutoff():
    small = scan_critical_metrics(8)
    large = scan_critical_metrics(12)
    assert small.bochner_smallest_saddle == large.bochner_smallest_saddle == 4
    assert small.saddle_free == large.saddle_free


def test_scan_degenerate_cases_are_labelled():
    rep = scan_critical_metrics(6)
    degenerate = {
        (c.operator, c.n, c.p)
        for c in rep.cases
        if c.classification is Classification.DEGENERATE
    }
    # the half Laplacian vanishes on top forms, its adjoint twin on functions
    assert ("dstar_d", 4, 4) in degenerate
    assert ("ddstar", 4, 0) in degenerate


def test_scan_rejects_small_cutoff():
    with pytest.raises(ValueError):
        scan_critical_metrics(3)
