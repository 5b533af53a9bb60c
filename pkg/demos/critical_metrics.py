"""Sign classification of critical metrics across dimensions.

With both f1 and f1/(n-1) + f2 of one sign, a critical metric has finite
index for the suitably signed derivative functional; with opposite signs
it is an essential saddle.  The scan shows the connection Laplacian first
admits a saddle in dimension 4, while the exterior-derivative family
never does, and the finite-index direction of the determinant alternates
with n mod 4 through the sign of 1/Gamma(-n/2).
"""

from fractions import Fraction

from zetahessian import (
    OperatorKind,
    classify_critical_metric,
    closed_form_fpair,
    scan_critical_metrics,
    zeta_constants,
)

f = closed_form_fpair(OperatorKind.BOCHNER, 4, 1)
big_s = Fraction(-2)  # S = s - n/2 at s = 0
print("connection Laplacian, n=4, p=1, s=0:")
print(f"  f1(S=-2) = {f.f1(big_s)},  f1/(n-1) + f2 = {f.f1(big_s) / 3 + f.f2(big_s)}")
print(f"  classification: {classify_critical_metric(f, 4, 0, 1).value}")
print()

report = scan_critical_metrics(12, s=0, k=1)
print(f"scan over 3 <= n <= 12 at s=0:")
print(f"  smallest dimension with a connection-Laplacian saddle: "
      f"{report.bochner_smallest_saddle}")
print(f"  exterior-derivative family saddle-free: {report.saddle_free}")
print("  odd-dimension finite-index direction for the determinant:")
for n, direction in sorted(report.odd_directions.items()):
    sign = zeta_constants(n, 0.0).conversion_sign
    print(f"    n={n:2d} (n mod 4 = {n % 4}): {direction:6s} "
          f"(sign of 1/Gamma(-n/2) = {sign:+d})")
print(f"  alternation consistent with n mod 4: {report.alternation_consistent}")
