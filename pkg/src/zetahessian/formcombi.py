"""Subset combinatorics and sign calculus for form indices.

A form index is a size-p subset of {1, ..., n}; subsets are
stored as bit sets (bit i-1 records membership of i) so that n <= 20
keeps everything in one machine word.  Enumeration is lexicographic on
the sorted member tuples and is total.

The module also evaluates subset-sum identities two ways: brute force
over all C(n, p) subsets, and a closed form obtained by expanding each
sign factor as the difference of the two membership indicators and
counting subsets per inclusion pattern.  The value of such a sum when
all fixed indices are distinct is the sum's "free term".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

MAX_N = 20

# Factor kinds for subset-sum identities.
CHI = "chi"  # membership indicator of the subset
CHI_COMP = "chi_comp"  # membership indicator of the complement
SGN = "sgn"  # +1 on the subset, -1 off it

_KINDS = (CHI, CHI_COMP, SGN)

FactorPattern = Sequence[str]


def binom(m: int, k: int) -> int:
    """Binomial coefficient with C(m, k) = 0 for k < 0 or k > m."""
    if k < 0 or k > m:
        return 0
    return math.comb(m, k)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"ambient dimension must be in 1..{MAX_N}, got {n}")


def _check_index(n: int, j: int) -> None:
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")


@dataclass(frozen=True)
class FormIndex:
    """A subset of {1, ..., n} indexing a basis alternating form."""

    n: int
    mask: int

    def __post_init__(self):
        _check_n(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has bits outside 1..{self.n}")

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "FormIndex":
        mask = 0
        for j in members:
            _check_index(n, j)
            mask |= 1 << (j - 1)
        return cls(n, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.n + 1) if self.mask >> (j - 1) & 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def contains(self, j: int) -> bool:
        _check_index(self.n, j)
        return bool(self.mask >> (j - 1) & 1)

    def complement(self) -> "FormIndex":
        return FormIndex(self.n, ~self.mask & ((1 << self.n) - 1))

    def __repr__(self) -> str:
        return f"FormIndex({self.n}, {{{', '.join(map(str, self.members))}}})"


def enumerate_masks(n: int, p: int) -> list[int]:
    """All size-p subsets of {1..n} as bit masks, lexicographic in members."""
    _check_n(n)
    if not 0 <= p <= n:
        raise ValueError(f"subset size {p} out of range 0..{n}")
    out = []
    for combo in combinations(range(n), p):
        mask = 0
        for b in combo:
            mask |= 1 << b
        out.append(mask)
    return out


def enumerate_form_indices(n: int, p: int) -> list[FormIndex]:
    return [FormIndex(n, m) for m in enumerate_masks(n, p)]


def chi(index: FormIndex, j: int) -> int:
    """1 iff j belongs to the subset."""
    return 1 if index.contains(j) else 0


def sgn(index: FormIndex, j: int) -> int:
    """+1 iff j belongs to the subset, else -1."""
    return 1 if index.contains(j) else -1


def crossing_count(i: int, index: FormIndex) -> int:
    """Number of members strictly below i.

    (-1) to this power is the sign picked up by moving the 1-form with
    label i past the wedge factors of the subset that precede it.
    """
    return (index.mask & ((1 << (i - 1)) - 1)).bit_count()


def _crossing_mask(i: int, mask: int) -> int:
    return (mask & ((1 << (i - 1)) - 1)).bit_count()


class IdentitySum(NamedTuple):
    value: int
    closed_form: Optional[int]


def _closed_sum(n: int, p: int, pattern: FactorPattern, fixed: Sequence[int]) -> int:
    """Closed form of the subset sum by indicator expansion.

    Group the factors by their fixed index.  Repeated sign factors on one
    index square away; a membership indicator and its complement on the
    same index annihilate the sum.  Each surviving sign factor expands as
    (in) - (out), and each resolved assignment contributes a binomial count
    of the subsets containing the forced-in indices and avoiding the
    forced-out ones.
    """
    per_index: dict[int, list[str]] = {}
    for kind, j in zip(pattern, fixed):
        per_index.setdefault(j, []).append(kind)

    forced_in = 0  # indices that must lie in the subset
    forced_out = 0  # indices that must avoid the subset
    free_signs = 0  # indices carrying an unresolved odd sign power
    multiplier = 1  # sign from odd sign powers on a forced index
    for j, kinds in per_index.items():
        has_chi = CHI in kinds
        has_comp = CHI_COMP in kinds
        odd_sgn = kinds.count(SGN) % 2 == 1
        if has_chi and has_comp:
            return 0
        if has_chi:
            forced_in += 1
        elif has_comp:
            forced_out += 1
            if odd_sgn:
                multiplier = -multiplier
        elif odd_sgn:
            free_signs += 1
        # even sign power with no indicator: the factor is identically 1
        # and places no constraint on the subset

    constrained = forced_in + forced_out + free_signs
    total = 0
    for inside in range(free_signs + 1):
        sign = (-1) ** (free_signs - inside)
        ways = binom(free_signs, inside)
        total += sign * ways * binom(n - constrained, p - forced_in - inside)
    return multiplier * total


def identity_sum(
    n: int, p: int, pattern: FactorPattern, fixed: Sequence[int]
) -> IdentitySum:
    """Sum the factor product over all size-p subsets; check the closed form.

    `pattern` lists factor kinds, `fixed` the index each factor is evaluated
    at (coincidences allowed).  The brute-force enumeration and the
    indicator-expansion closed form are both computed and must agree.
    """
    if len(pattern) != len(fixed):
        raise ValueError("pattern and fixed index list must have equal length")
    for kind in pattern:
        if kind not in _KINDS:
            raise ValueError(f"unknown factor kind {kind!r}")
    for j in fixed:
        _check_index(n, j)
    if not 0 <= p <= n:
        raise ValueError(f"subset size {p} out of range 0..{n}")

    bits = [1 << (j - 1) for j in fixed]
    total = 0
    for mask in enumerate_masks(n, p):
        term = 1
        for kind, bit in zip(pattern, bits):
            inside = mask & bit
            if kind == CHI:
                if not inside:
                    term = 0
                    break
            elif kind == CHI_COMP:
                if inside:
                    term = 0
                    break
            else:
                if not inside:
                    term = -term
        total += term

    closed = _closed_sum(n, p, pattern, fixed)
    if total != closed:
        raise ArithmeticError(
            f"brute force {total} != closed form {closed} for "
            f"pattern {tuple(pattern)} at indices {tuple(fixed)} (n={n}, p={p})"
        )
    return IdentitySum(total, closed)


def free_term(n: int, p: int, pattern: FactorPattern) -> int:
    """Value of the subset sum when all fixed indices are distinct.

    By index-permutation symmetry this does not depend on which distinct
    indices are chosen, so no index list is needed.  For a pure sign
    pattern of length m this equals
    sum_t (-1)^(m-t) C(m, t) C(n-m, p-t); for length 4 that collapses to
    16 C(n-4, p-2) - 8 C(n-2, p-1) + C(n, p).
    """
    m = len(pattern)
    if m > 4:
        raise ValueError("patterns longer than 4 factors are not needed")
    if n < m:
        raise ValueError(f"need {m} distinct indices but n = {n}")
    return _closed_sum(n, p, pattern, list(range(1, m + 1)))


def chi_chicomp_closed(n: int, p: int, i: int, j: int) -> int:
    """Closed form of the chi x chi-complement subset sum at (i, j)."""
    return binom(n - 2, p - 1) * (0 if i == j else 1)


def sgn_sgn_closed(n: int, p: int, j: int, k: int) -> int:
    """Closed form of the sgn x sgn subset sum at (j, k)."""
    base = binom(n, p) - 4 * binom(n - 2, p - 1)
    return base + (4 * binom(n - 2, p - 1) if j == k else 0)


def sgn4_free_term_closed(n: int, p: int) -> int:
    """Closed form of the free term of the fourth-power sign sum."""
    return 16 * binom(n - 4, p - 2) - 8 * binom(n - 2, p - 1) + binom(n, p)
