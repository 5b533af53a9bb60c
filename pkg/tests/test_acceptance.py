"""Acceptance gate: one test per criterion, one printed line per criterion.

Every check here is exact rational arithmetic at the tolerances stated in
the criteria (residual identically zero unless marked as surveyed).  Seeds
are fixed constants so reruns are byte-for-byte reproducible.
"""

import time
from fractions import Fraction
from itertools import combinations

import pytest

from zetahessian.exactalg import (
    Covector,
    PerturbH,
    S,
    projector_traces,
    scalar_invariants,
)
from zetahessian.formcombi import (
    CHI,
    CHI_COMP,
    SGN,
    FormIndex,
    binom,
    chi_chicomp_closed,
    free_term,
    identity_sum,
    sgn4_free_term_closed,
    sgn_sgn_closed,
)
from zetahessian.geomanalysis import (
    Classification,
    gauge_kernel_check,
    projector_inequalities,
    scan_critical_metrics,
    torsion_sum,
)
from zetahessian.sampling import case_rng, covector, nondiagonal_perturbation, perturbation
from zetahessian.symbolengine import (
    closed_form_reduced,
    combined_square_part,
    direct_symbol,
    dstar_d_fpair,
    first_order_part,
    grouped_symbol,
    leading_cross_part,
)
from zetahessian.variation import (
    OperatorKind,
    cached_variation_tensor,
    coefficient_symbols,
)

B, DR = OperatorKind.BOCHNER, OperatorKind.DERHAM
SEED = 20240811

SQ_WEIGHT = S * S - Fraction(1, 4)
LIN_WEIGHT = S - Fraction(1, 2)


def _line(num: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" -- {detail}" if detail else ""
    print(f"ACCEPTANCE {num} [{name}]: {status}{suffix}")


def test_criterion_1_route_equality():
    # both operators, 2 <= n <= 7, all p, 5 random non-diagonal (h, xi) per
    # case, three routes exactly equal; single-threaded under two minutes
    start = time.monotonic()
    cases = 0
    for op in (B, DR):
        for n in range(2, 8):
            for p in range(n + 1):
                for trial in range(5):
                    rng = case_rng(SEED, "c1", op.value, n, p, trial)
                    h = nondiagonal_perturbation(rng, n)
                    xi = covector(rng, n)
                    direct = direct_symbol(op, n, p, h, xi)
                    grouped = grouped_symbol(op, n, p, h, xi)
                    closed = closed_form_reduced(op, n, p, h, xi)
                    assert (direct - grouped).is_zero(), (op, n, p, trial)
                    assert (grouped - closed).is_zero(), (op, n, p, trial)
                    cases += 1
    elapsed = time.monotonic() - start
    _line(1, "route equality", True,
          f"{cases} cases, 2 exact identities each, {elapsed:.1f}s (seed {SEED})")
    assert elapsed < 120.0


def test_criterion_2_part_level_equality():
    # interaction parts match their summed closed forms: connection
    # Laplacian with general h, exterior-derivative Laplacian with
    # diagonal h, n <= 6
    checked = 0
    for n in range(2, 7):
        for p in range(n + 1):
            b1, b2 = binom(n, p), binom(n - 2, p - 1)
            for trial in range(2):
                rng = case_rng(SEED, "c2", n, p, trial)
                xi = covector(rng, n)
                q = xi.norm2

                h = perturbation(rng, n)
                inv = scalar_invariants(h, xi)
                t2, t1sq = projector_traces(h, xi)
                t2s, t1s = q * q * t2, q * q * t1sq
                css = coefficient_symbols(cached_variation_tensor(B, n, p), h, xi)
                assert combined_square_part(css) == SQ_WEIGHT * (b1 * t1s)
                assert first_order_part(css, xi) == LIN_WEIGHT * (
                    4 * b2 * t2s + b1 * (-2 * q * inv.hxi2 + 2 * inv.xhx**2)
                )
                assert leading_cross_part(css, h, xi) == LIN_WEIGHT * (
                    b1 * t1s
                    + b1 * (4 * q * inv.hxi2 - 3 * inv.xhx**2 - q * inv.xhx * inv.trh)
                )

                hd = perturbation(rng, n, diagonal=True)
                inv = scalar_invariants(hd, xi)
                t2, t1sq = projector_traces(hd, xi)
                t2s, t1s = q * q * t2, q * q * t1sq
                css = coefficient_symbols(cached_variation_tensor(DR, n, p), hd, xi)
                assert combined_square_part(css) == SQ_WEIGHT * (
                    4 * b2 * t2s + (b1 - 4 * b2) * t1s
                )
                assert first_order_part(css, xi) == LIN_WEIGHT * (
                    4 * b2 * t2s + b1 * (-2 * q * inv.hxi2 + 2 * inv.xhx**2)
                )
                assert leading_cross_part(css, hd, xi) == LIN_WEIGHT * (
                    (b1 - 4 * b2) * t1s
                    + b1 * (4 * q * inv.hxi2 - 3 * inv.xhx**2 - q * inv.xhx * inv.trh)
                )
                checked += 6
    _line(2, "part-level closed forms", True, f"{checked} part identities, n <= 6")


def test_criterion_3_entrywise_cancellations():
    # connection Laplacian: sigma2 - 2 sigma1 + 4 sigma0 = 0 on every
    # off-diagonal entry, exhaustively over the symmetric basis of h;
    # exterior-derivative Laplacian: every size-4 entry dies on diagonal h
    entries_checked = 0
    for n in range(2, 7):
        rng = case_rng(SEED, "c3", n)
        xis = [covector(rng, n) for _ in range(2)]
        basis = [
            PerturbH.symmetric_basis(n, a, b)
            for a in range(n)
            for b in range(a, n)
        ]
        for p in range(n + 1):
            vt = cached_variation_tensor(B, n, p)
            for h in basis:
                for xi in xis:
                    css = coefficient_symbols(vt, h, xi)
                    for kmask, imask in vt.entries:
                        if kmask == imask:
                            continue
                        combo = (
                            css.s2x2.get((kmask, imask), 0)
                            - 2 * css.s1x2.get((kmask, imask), 0)
                            + 4 * css.s0x2.get((kmask, imask), 0)
                        )
                        assert combo == 0, (n, p, kmask, imask)
                        entries_checked += 1
    size4_checked = 0
    for n in range(4, 7):
        rng = case_rng(SEED, "c3d", n)
        for p in range(2, n - 1):
            vt = cached_variation_tensor(DR, n, p)
            for trial in range(3):
                hd = perturbation(rng, n, diagonal=True)
                xi = covector(rng, n)
                css = coefficient_symbols(vt, hd, xi)
                for kmask, imask in vt.entries:
                    if bin(kmask ^ imask).count("1") == 4:
                        assert css.s0x2.get((kmask, imask), 0) == 0
                        size4_checked += 1
    _line(3, "entrywise cancellations", True,
          f"{entries_checked} off-diagonal combos, {size4_checked} size-4 entries")


def test_criterion_4_gauge_kernel():
    # polarized form against gauge directions: 20 draws per (op, n <= 6, p)
    draws = 0
    for op in (B, DR):
        for n in range(2, 7):
            for p in range(n + 1):
                for trial in range(20):
                    rng = case_rng(SEED, "c4", op.value, n, p, trial)
                    k = perturbation(rng, n)
                    xi = covector(rng, n)
                    eta = covector(rng, n)
                    residual = gauge_kernel_check(op, n, p, k, xi, eta)
                    assert residual.is_zero(), (op, n, p, trial)
                    draws += 1
    _line(4, "gauge-direction kernel", True, f"{draws} draws, exact zero")


def test_criterion_5_weighted_alternating_sums():
    # k in {0, 1, 2}, both operators, 2 <= n <= 7, residual identically zero
    failures = []
    passed = 0
    for op in (B, DR):
        for n in range(2, 8):
            rng = case_rng(SEED, "c5", op.value, n)
            h = perturbation(rng, n)
            xi = covector(rng, n)
            for k in (0, 1, 2):
                residual = torsion_sum(op, n, k, h, xi)
                if residual.is_zero():
                    passed += 1
                else:
                    at_half = residual(Fraction(-n, 2))
                    failures.append((op.value, n, k, residual.canonical(), at_half))
    if failures:
        listing = "\n".join(
            f"  op={o:8s} n={n} k={k}: residual {r}  (value at S=-n/2: {v})"
            for o, n, k, r, v in failures
        )
        detail = (
            f"{passed} combinations vanish exactly; {len(failures)} provably cannot"
        )
        _line(5, "weighted alternating sums", False, detail)
        pytest.fail(
            "nonzero alternating-sum residuals:\n"
            + listing
            + "\n\nThe identity sum_p (-1)^(p+1) p^k rho_p = 0 holds as a polynomial"
            " identity in S exactly when k <= n-3: the weight-k alternating sum of"
            " C(n,p) vanishes for k < n, but the shifted sum of C(n-2,p-1) only for"
            " k < n-2.  The one exception is the exterior-derivative case n=2, k<=1,"
            " rescued by the rank-one trace identity (the two projector traces"
            " coincide as functions in dimension 2)."
            "  The combinations listed above lie outside that domain and"
            " their residuals are nonzero polynomials; all three computation routes"
            " (raw kernel sum, grouped parts, closed form) produce the same nonzero"
            " values, so this is a property of the formulas, not of this"
            " implementation.  Note every exterior-derivative k=1 residual still"
            " vanishes at S = -n/2, the determinant-torsion point s = 0."
        )
    _line(5, "weighted alternating sums", True, f"{passed} combinations, exact zero")


def test_criterion_6_subset_sum_identities():
    # indicator-pair and sign-pair sums vs closed forms for all n <= 10,
    # all p, all index pairs (coincidences included); fourth-power sign
    # free term vs its closed form on every distinct index quadruple
    pair_checks = 0
    quad_checks = 0
    for n in range(2, 11):
        for p in range(n + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    got = identity_sum(n, p, (CHI, CHI_COMP), (i, j)).value
                    assert got == chi_chicomp_closed(n, p, i, j)
                    got = identity_sum(n, p, (SGN, SGN), (i, j)).value
                    assert got == sgn_sgn_closed(n, p, i, j)
                    pair_checks += 2
            if n >= 4:
                expected = sgn4_free_term_closed(n, p)
                assert free_term(n, p, (SGN,) * 4) == expected
                for quad in combinations(range(1, n + 1), 4):
                    got = identity_sum(n, p, (SGN,) * 4, quad).value
                    assert got == expected, (n, p, quad)
                    quad_checks += 1
    _line(6, "subset-sum identities", True,
          f"{pair_checks} pair sums, {quad_checks} sign-quadruple sums, n <= 10")


def test_criterion_7_half_laplacian_consistency():
    # alternating-sum pair proportional to the dimension-shifted closed
    # form with one constant across all n <= 7; the constant is reported
    scales = set()
    checked = 0
    for n in range(2, 8):
        for p in range(n + 1):
            comparison = dstar_d_fpair(n, p)
            assert comparison.proportional, (n, p)
            if comparison.scale is not None:
                scales.add(comparison.scale)
            checked += 1
    assert len(scales) == 1  # (n, p)-independent
    constant = scales.pop()
    _line(7, "half-Laplacian consistency", True,
          f"{checked} pairs proportional; constant = {constant} (reported, not asserted)")


def test_criterion_8_classification_scan():
    start = time.monotonic()
    rep = scan_critical_metrics(12, s=0, k=1)
    elapsed = time.monotonic() - start
    assert rep.bochner_smallest_saddle == 4
    assert all(rep.saddle_free.values()), rep.saddle_free
    assert rep.alternation_consistent
    for n, direction in rep.odd_directions.items():
        assert direction == ("det" if n % 4 == 1 else "1/det"), (n, direction)
    count = sum(
        1 for c in rep.cases if c.classification is Classification.ESSENTIAL_SADDLE
    )
    _line(8, "classification scan", True,
          f"smallest saddle n=4, {count} saddle cases all bochner, {elapsed:.3f}s")
    assert elapsed < 1.0


def test_criterion_9_trace_inequality_survey():
    # >= 100 random non-gauge draws per n <= 6: strict positivity and the
    # Cauchy-Schwarz ordering hold exactly; the reversed printed ordering
    # is surveyed and its identity-perturbation counterexample recorded,
    # never failing the suite
    recorded = []
    for n in range(2, 7):
        surveyed = 0
        reversed_violations = 0
        trial = 0
        while surveyed < 100:
            rng = case_rng(SEED, "c9", n, trial)
            trial += 1
            h = perturbation(rng, n)
            xi = covector(rng, n)
            chk = projector_inequalities(h, xi)
            if chk.is_gauge:
                continue
            surveyed += 1
            assert chk.t2 > 0, (n, trial)
            assert chk.t1sq <= (n - 1) * chk.t2, (n, trial)
            reversed_violations += not chk.printed_direction_ok
        ident = projector_inequalities(PerturbH.identity(n), Covector.axis(n, 0))
        if not ident.printed_direction_ok:
            recorded.append(n)
        assert ident.cauchy_schwarz_ok
        assert surveyed >= 100
    # dimensions where the identity perturbation violates the reversed
    # ordering (documented erratum candidate: every n >= 3)
    assert recorded == [3, 4, 5, 6]
    _line(9, "trace-inequality survey", True,
          "positivity and Cauchy-Schwarz exact on 500 draws; reversed ordering "
          f"violated by the identity perturbation for n in {recorded} (recorded)")
