"""Structural identities: gauge kernel and weighted alternating sums.

Perturbations of the form xi (x) eta + eta (x) xi come from flowing the
metric along a vector field, so the Hessian symbol must annihilate them;
the polarized bilinear form indeed returns the zero polynomial against
any other perturbation.  Alternating sums over form degree weighted by
p^k vanish identically for k <= n-3; outside that range the residual is
a nonzero polynomial that, for the exterior-derivative Laplacian at
k = 1, still vanishes at the determinant point S = -n/2.
"""

import random
from fractions import Fraction

from zetahessian import (
    Covector,
    OperatorKind,
    PerturbH,
    gauge_kernel_check,
    gauge_perturbation,
    is_gauge_direction,
    torsion_sum,
    torsion_sum_valid,
)
from zetahessian.sampling import covector, perturbation

rng = random.Random(7)
n = 4
xi = covector(rng, n)
eta = covector(rng, n)
k = perturbation(rng, n)

gauge = gauge_perturbation(xi, eta)
print(f"gauge direction for xi = {tuple(map(str, xi.components))}:")
for row in gauge.entries:
    print("   ", tuple(str(x) for x in row))
print("projects to zero under the complement projector:", is_gauge_direction(gauge, xi))

for op in (OperatorKind.BOCHNER, OperatorKind.DERHAM):
    for p in range(n + 1):
        residual = gauge_kernel_check(op, n, p, k, xi, eta)
        assert residual.is_zero()
print("polarized form annihilates the gauge direction for every (operator, p)")
print()

h = PerturbH.identity(3)
axis = Covector.axis(3, 0)
for op in (OperatorKind.BOCHNER, OperatorKind.DERHAM):
    for weight in (0, 1, 2):
        residual = torsion_sum(op, 3, weight, h, axis)
        valid = torsion_sum_valid(op, 3, weight)
        note = "vanishes identically" if valid else "nonzero outside its domain"
        print(
            f"n=3 {op.value:8s} k={weight}: residual = {residual.canonical():16s} ({note})"
        )
        assert residual.is_zero() == valid

res = torsion_sum(OperatorKind.DERHAM, 3, 1, h, axis)
print(
    "the exterior-derivative k=1 residual at the determinant point "
    f"S = -3/2 evaluates to {res(Fraction(-3, 2))}"
)
