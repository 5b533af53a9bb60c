"""Compute one reduced symbol three independent ways and compare exactly.

The symbol of the zeta-Hessian for a Laplacian on p-forms, reduced by its
transcendental grading prefactor, is a degree-2 polynomial in the shifted
spectral variable S.  This script evaluates it at a concrete perturbation
and covector by:

  1. the raw kernel-table sum over matrix-entry pairs,
  2. the grouped interaction-part decomposition,
  3. the closed projector-trace form,

and prints all three.  They agree coefficient by coefficient, with no
floating point anywhere.
"""

from zetahessian import (
    Covector,
    OperatorKind,
    PerturbH,
    closed_form_fpair,
    closed_form_reduced,
    direct_symbol,
    grouped_symbol,
    projector_traces,
)

n, p = 4, 2
h = PerturbH.from_rows(
    [
        [2, 1, 0, -1],
        [1, 0, 3, 0],
        [0, 3, -2, 1],
        [-1, 0, 1, 1],
    ]
)
xi = Covector.of(1, -1, 2, 0)

for op in (OperatorKind.BOCHNER, OperatorKind.DERHAM):
    print(f"== {op.value} Laplacian on {p}-forms, n = {n} ==")
    direct = direct_symbol(op, n, p, h, xi)
    grouped = grouped_symbol(op, n, p, h, xi)
    closed = closed_form_reduced(op, n, p, h, xi)
    print(f"  raw kernel sum   : {direct.canonical()}")
    print(f"  grouped parts    : {grouped.canonical()}")
    print(f"  projector form   : {closed.canonical()}")
    assert direct == grouped == closed

    f1, f2 = closed_form_fpair(op, n, p)
    t2, t1sq = projector_traces(h, xi)
    print(f"  coefficient pair : f1 = {f1.canonical()},  f2 = {f2.canonical()}")
    print(f"  projector traces : tr(sq) = {t2},  (tr)^2 = {t1sq}")
    doubled = grouped_symbol(op, n, p, h, xi, mode="complex")
    assert doubled == 2 * grouped
    print("  complex-line mode doubles the symbol: OK")
    print()

print("all three routes agree exactly")
