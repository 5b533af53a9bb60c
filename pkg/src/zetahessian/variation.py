"""Total-degree-2 coefficient tensors of the first metric variation.

For either Laplacian acting on p-forms, the first variation in the metric
direction h is, up to terms of lower total degree, a matrix of scalar
differential operators over form-index pairs (K, I), each entry a
combination of terms

    h_jk d2_ab        (d_c h_jk) d_a        d2_cd h_jk

`variation_tensor` materializes every nonzero entry.  Nonzero entries
occur only for |K sym-diff I| in {0, 2, 4}, and the size-4 difference
occurs only for the exterior-derivative (de Rham) Laplacian.

Index conventions: tensor indices i, j, ... run 1..n as in the lemma
statements; matrix containers (PerturbH, Covector) are plain 0-based
Python sequences.  Term coefficients are half-integers and are stored
doubled as machine ints; the public accessors return true Fractions.

`coefficient_symbols` contracts a tensor with concrete (h, xi): each
derivative slot becomes a xi component, giving the scalar coefficient
symbols per entry plus their component matrices with the two derivative
slots left open.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactalg import Covector, PerturbH, Scalar
from .formcombi import MAX_N, FormIndex, _crossing_mask, enumerate_masks


class OperatorKind(enum.Enum):
    """Which Laplacian on p-forms the tensor describes."""

    BOCHNER = "bochner"
    DERHAM = "derham"


def christoffel_variation(
    dh: Mapping[tuple[int, int, int], Scalar], i: int, j: int, k: int
) -> Fraction:
    """First variation of the raised Christoffel symbol, in a normal frame.

    `dh` maps (c, a, b) to the jet value d_c h_ab (indices 1-based, h
    symmetric so either order of (a, b) is accepted); missing keys are 0.
    Returns (d_i h_jk + d_j h_ik - d_k h_ij) / 2.
    """

    def jet(c: int, a: int, b: int) -> Fraction:
        if (c, a, b) in dh:
            return Fraction(dh[(c, a, b)])
        if (c, b, a) in dh:
            return Fraction(dh[(c, b, a)])
        return Fraction(0)

    return (jet(i, j, k) + jet(j, i, k) - jet(k, i, j)) / 2


# A term (j, k, x, y, c2) contributes (c2/2) * <h-monomial with pair (j,k)
# and slots (x, y)>; the slot meaning depends on the bucket:
#   second:  h_jk d2_xy      first:  (d_x h_jk) d_y      zeroth:  d2_xy h_jk
Term = tuple[int, int, int, int, int]


@dataclass(frozen=True)
class EntryTerms:
    second: tuple[Term, ...]
    first: tuple[Term, ...]
    zeroth: tuple[Term, ...]


@dataclass(frozen=True)
class VariationTensor:
    op: OperatorKind
    n: int
    p: int
    entries: dict[tuple[int, int], EntryTerms]

    def entry(self, K: FormIndex, I: FormIndex) -> EntryTerms:
        """Terms of the (row K, column I) matrix entry (empty if zero)."""
        return self.entries.get(
            (K.mask, I.mask), EntryTerms((), (), ())
        )

    def second_order_coefficient(
        self, K: FormIndex, I: FormIndex, hpair: tuple[int, int], slots: tuple[int, int]
    ) -> Fraction:
        """Total coefficient of h_{hpair} d2_{slots}, both pairs unordered."""
        return self._total(self.entry(K, I).second, hpair, slots, slots_ordered=False)

    def first_order_coefficient(
        self, K: FormIndex, I: FormIndex, hpair: tuple[int, int], dh: int, dsec: int
    ) -> Fraction:
        """Total coefficient of (d_dh h_{hpair}) d_dsec (hpair unordered)."""
        return self._total(self.entry(K, I).first, hpair, (dh, dsec), slots_ordered=True)

    def zeroth_order_coefficient(
        self, K: FormIndex, I: FormIndex, hpair: tuple[int, int], slots: tuple[int, int]
    ) -> Fraction:
        """Total coefficient of d2_{slots} h_{hpair}, both pairs unordered."""
        return self._total(self.entry(K, I).zeroth, hpair, slots, slots_ordered=False)

    @staticmethod
    def _total(
        terms: tuple[Term, ...],
        hpair: tuple[int, int],
        slots: tuple[int, int],
        slots_ordered: bool,
    ) -> Fraction:
        hset = frozenset(hpair)
        total = 0
        for j, k, x, y, c2 in terms:
            if frozenset((j, k)) != hset:
                continue
            if slots_ordered:
                if (x, y) != slots:
                    continue
            elif frozenset((x, y)) != frozenset(slots):
                continue
            total += c2
        return Fraction(total, 2)


def _build_II(op: OperatorKind, n: int, imask: int) -> EntryTerms:
    second: list[Term] = []
    first: list[Term] = []
    zeroth: list[Term] = []
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            second.append((i, j, i, j, 2))  # h_ij d2_ij
            first.append((i, j, i, j, 2))  # (d_i h_ij) d_j
    if op is OperatorKind.BOCHNER:
        for i in rng:
            s_i = 1 if imask >> (i - 1) & 1 else -1
            for j in rng:
                first.append((i, i, j, j, s_i))  # (1/2) sgn(i) (d_j h_ii) d_j
                zeroth.append((i, i, j, j, 1 if s_i > 0 else 0))  # (1/2) chi(i) d2_jj h_ii
    else:
        for i in rng:
            chi_i = imask >> (i - 1) & 1
            for j in rng:
                s_j = 1 if imask >> (j - 1) & 1 else -1
                first.append((j, j, i, i, s_j))  # (1/2) sgn(j) (d_i h_jj) d_i
                if chi_i and not (imask >> (j - 1) & 1):
                    zeroth.append((i, j, i, j, 2))  # chi(i) chi'(j) d2_ij h_ij
                if chi_i:
                    zeroth.append((j, j, i, i, s_j))  # (1/2) chi(i) sgn(j) d2_ii h_jj
    return EntryTerms(tuple(second), tuple(first), tuple(zeroth))


def _build_KI(op: OperatorKind, n: int, imask: int, i: int, k: int) -> EntryTerms:
    """Entry for K = (I minus i) plus k, with i in I, k outside I."""
    jmask = imask & ~(1 << (i - 1))
    sign = -1 if (_crossing_mask(i, jmask) + _crossing_mask(k, jmask)) % 2 else 1
    s2 = 2 * sign
    first: list[Term] = []
    zeroth: list[Term] = []
    for j in range(1, n + 1):
        # (d_i h_jk + d_j h_ik - d_k h_ij) d_j, common to both operators
        first.append((j, k, i, j, s2))
        first.append((i, k, j, j, s2))
        first.append((i, j, k, j, -s2))
        if op is OperatorKind.BOCHNER:
            # (1/2)(d2_ij h_jk - d2_jk h_ij + d2_jj h_ik)
            zeroth.append((j, k, i, j, sign))
            zeroth.append((i, j, j, k, -sign))
            zeroth.append((i, k, j, j, sign))
        else:
            # d2_ij h_jk - (1/2) d2_ik h_jj
            zeroth.append((j, k, i, j, s2))
            zeroth.append((j, j, i, k, -sign))
            if jmask >> (j - 1) & 1 or j == i:
                # chi_I(j) (d2_ik h_jj + d2_jj h_ik - d2_ij h_jk - d2_jk h_ij)
                zeroth.append((j, j, i, k, s2))
                zeroth.append((i, k, j, j, s2))
                zeroth.append((j, k, i, j, -s2))
                zeroth.append((i, j, j, k, -s2))
    return EntryTerms((), tuple(first), tuple(zeroth))


def _build_LI(n: int, imask: int, i: int, j: int, k: int, ell: int) -> EntryTerms:
    """Size-4 difference entry: L = (I minus {i,j}) plus {k,l}, i<j in I, k<l outside."""
    jmask = imask & ~(1 << (i - 1)) & ~(1 << (j - 1))
    crossings = (
        _crossing_mask(i, jmask)
        + _crossing_mask(j, jmask)
        + _crossing_mask(k, jmask)
        + _crossing_mask(ell, jmask)
    )
    s2 = -2 if crossings % 2 else 2
    zeroth = (
        (j, ell, i, k, s2),
        (i, k, j, ell, s2),
        (j, k, i, ell, -s2),
        (i, ell, j, k, -s2),
    )
    return EntryTerms((), (), zeroth)


def variation_tensor(op: OperatorKind, n: int, p: int) -> VariationTensor:
    """All nonzero total-degree-2 matrix entries for the chosen operator."""
    if not 2 <= n <= MAX_N:
        raise ValueError(f"dimension must be in 2..{MAX_N}, got {n}")
    if not 0 <= p <= n:
        raise ValueError(f"form degree {p} out of range 0..{n}")
    entries: dict[tuple[int, int], EntryTerms] = {}
    for imask in enumerate_masks(n, p):
        entries[(imask, imask)] = _build_II(op, n, imask)
        inside = [i for i in range(1, n + 1) if imask >> (i - 1) & 1]
        outside = [k for k in range(1, n + 1) if not imask >> (k - 1) & 1]
        for i in inside:
            for k in outside:
                kmask = (imask & ~(1 << (i - 1))) | 1 << (k - 1)
                entries[(kmask, imask)] = _build_KI(op, n, imask, i, k)
        if op is OperatorKind.DERHAM and p >= 2 and n - p >= 2:
            for a in range(len(inside)):
                for b in range(a + 1, len(inside)):
                    i, j = inside[a], inside[b]
                    for c in range(len(outside)):
                        for d in range(c + 1, len(outside)):
                            k, ell = outside[c], outside[d]
                            lmask = (
                                imask
                                & ~(1 << (i - 1))
                                & ~(1 << (j - 1))
                            ) | 1 << (k - 1) | 1 << (ell - 1)
                            entries[(lmask, imask)] = _build_LI(n, imask, i, j, k, ell)
    return VariationTensor(op, n, p, entries)


_TENSOR_CACHE: dict[tuple[OperatorKind, int, int], VariationTensor] = {}


def cached_variation_tensor(op: OperatorKind, n: int, p: int) -> VariationTensor:
    key = (op, n, p)
    tensor = _TENSOR_CACHE.get(key)
    if tensor is None:
        tensor = _TENSOR_CACHE[key] = variation_tensor(op, n, p)
    return tensor


def _plain_matrix(h: PerturbH) -> list[list]:
    """h entries as ints when possible (fast path), else Fractions."""
    if all(x.denominator == 1 for row in h.entries for x in row):
        return [[x.numerator for x in row] for row in h.entries]
    return [list(row) for row in h.entries]


def _plain_vector(xi: Covector) -> list:
    if all(c.denominator == 1 for c in xi.components):
        return [c.numerator for c in xi.components]
    return list(xi.components)


@dataclass
class CoeffSymbolSet:
    """Coefficient symbols of a variation tensor contracted with (h, xi).

    Internal values are stored doubled (matching the doubled integer term
    coefficients); the sigma* accessors return true Fractions.  Component
    matrices are indexed [x][y] 0-based with x the derivative-on-h slot and
    y the derivative-on-section slot (for the first-order components) or
    the two derivative-on-h slots (zeroth-order).
    """

    op: OperatorKind
    n: int
    p: int
    xi2: Fraction
    s2x2: dict[tuple[int, int], object] = field(default_factory=dict)
    s1x2: dict[tuple[int, int], object] = field(default_factory=dict)
    s0x2: dict[tuple[int, int], object] = field(default_factory=dict)
    s1compx2: dict[tuple[int, int], list[list]] = field(default_factory=dict)
    s0compx2: dict[tuple[int, int], list[list]] = field(default_factory=dict)

    def pairs(self) -> list[tuple[int, int]]:
        keys = set(self.s1x2) | set(self.s0x2) | set(self.s2x2)
        return sorted(keys)

    def sigma2(self, K: FormIndex, I: FormIndex) -> Fraction:
        return Fraction(self.s2x2.get((K.mask, I.mask), 0)) / 2

    def sigma1(self, K: FormIndex, I: FormIndex) -> Fraction:
        return Fraction(self.s1x2.get((K.mask, I.mask), 0)) / 2

    def sigma0(self, K: FormIndex, I: FormIndex) -> Fraction:
        return Fraction(self.s0x2.get((K.mask, I.mask), 0)) / 2

    def sigma1_component(self, K: FormIndex, I: FormIndex, k: int, ell: int) -> Fraction:
        """Coefficient component at derivative slots (k, ell), 1-based."""
        mat = self.s1compx2.get((K.mask, I.mask))
        if mat is None:
            return Fraction(0)
        return Fraction(mat[k - 1][ell - 1]) / 2

    def sigma0_component(self, K: FormIndex, I: FormIndex, k: int, ell: int) -> Fraction:
        mat = self.s0compx2.get((K.mask, I.mask))
        if mat is None:
            return Fraction(0)
        return Fraction(mat[k - 1][ell - 1]) / 2


def _component_matrix(terms: Sequence[Term], hmat: list[list], n: int) -> list[list]:
    out = [[0] * n for _ in range(n)]
    for j, k, x, y, c2 in terms:
        v = hmat[j - 1][k - 1]
        if v:
            out[x - 1][y - 1] += c2 * v
    return out


def _contract_slots(mat: list[list], vec: list, n: int):
    total = 0
    for x in range(n):
        row = mat[x]
        vx = vec[x]
        if not vx:
            continue
        acc = 0
        for y in range(n):
            if row[y]:
                acc += row[y] * vec[y]
        total += vx * acc
    return total


def coefficient_symbols(
    vt: VariationTensor, h: PerturbH, xi: Covector
) -> CoeffSymbolSet:
    """Contract every matrix entry of vt with concrete (h, xi)."""
    if h.n != vt.n or xi.n != vt.n:
        raise ValueError(
            f"dimension mismatch: tensor is {vt.n}-dim, h is {h.n}-dim, xi is {xi.n}-dim"
        )
    n = vt.n
    hmat = _plain_matrix(h)
    vec = _plain_vector(xi)
    css = CoeffSymbolSet(vt.op, n, vt.p, xi.norm2)
    for key, entry in vt.entries.items():
        if entry.second:
            css.s2x2[key] = _contract_slots(
                _component_matrix(entry.second, hmat, n), vec, n
            )
        if entry.first:
            comp = _component_matrix(entry.first, hmat, n)
            css.s1compx2[key] = comp
            css.s1x2[key] = _contract_slots(comp, vec, n)
        if entry.zeroth:
            comp = _component_matrix(entry.zeroth, hmat, n)
            css.s0compx2[key] = comp
            css.s0x2[key] = _contract_slots(comp, vec, n)
    return css
