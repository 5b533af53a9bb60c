"""Print the closed-form coefficient pairs and the half-Laplacian check.

For each form degree p the symbol is f1 * tr((H P)^2) + f2 * (tr H P)^2
with (f1, f2) exact polynomials in S.  The table also shows the
alternating-sum pair for d*d acting on p-forms next to the closed form
obtained by lowering the binomial dimension by one; the two agree with a
single constant ratio for every (n, p).
"""

from zetahessian import OperatorKind, closed_form_fpair, dstar_d_fpair

n = 5
for op in (OperatorKind.BOCHNER, OperatorKind.DERHAM):
    print(f"== {op.value}, n = {n} ==")
    for p in range(n + 1):
        f1, f2 = closed_form_fpair(op, n, p)
        print(f"  p={p}:  f1 = {f1.canonical():24s}  f2 = {f2.canonical()}")
    print()

print(f"== half Laplacian d*d on p-forms, n = {n} ==")
for p in range(n + 1):
    comparison = dstar_d_fpair(n, p)
    alt = comparison.alt_sum
    closed = comparison.closed
    print(
        f"  p={p}:  alternating = ({alt.f1.canonical()}, {alt.f2.canonical()})  "
        f"closed = ({closed.f1.canonical()}, {closed.f2.canonical()})  "
        f"scale = {comparison.scale}"
    )
    assert comparison.proportional
