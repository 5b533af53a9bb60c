"""Subset-sum identities: brute force against closed forms.

Sums over all size-p subsets of products of membership indicators and
sign factors reduce to binomial expressions; the free term (the value on
distinct indices) is what general-coordinate symbol computations consume.
"""

from zetahessian import CHI, CHI_COMP, SGN, FormIndex, binom, crossing_count
from zetahessian.formcombi import free_term, identity_sum, sgn4_free_term_closed

n, p = 6, 3

value, closed = identity_sum(n, p, (CHI, CHI_COMP), (1, 2))
print(f"indicator pair over all C({n},{p}) = {binom(n, p)} subsets: "
      f"{value} (closed form {closed}, equals C(n-2, p-1) = {binom(n - 2, p - 1)})")

value, closed = identity_sum(n, p, (SGN, SGN), (1, 2))
print(f"sign pair: {value}  (closed form C(n,p) - 4 C(n-2,p-1) = "
      f"{binom(n, p) - 4 * binom(n - 2, p - 1)})")

value, _ = identity_sum(n, p, (SGN, SGN), (2, 2))
print(f"sign pair on a coincident index squares away: {value} = C({n},{p})")

quad = free_term(n, p, (SGN,) * 4)
print(f"fourth-power sign free term: {quad} = 16 C(n-4,p-2) - 8 C(n-2,p-1) + C(n,p)"
      f" = {sgn4_free_term_closed(n, p)}")

J = FormIndex.from_members(6, (1, 2, 5))
print(f"crossing count of 3 across {{1,2,5}}: {crossing_count(3, J)} "
      f"(wedge reordering sign {(-1) ** crossing_count(3, J):+d})")
