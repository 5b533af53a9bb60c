"""Reduced Hessian symbol by three independent routes.

Every route produces the same object: the reduced symbol rho(S), an exact
polynomial of degree <= 2, defined by

    <h, u(x, xi) h>  =  C(n, s) |xi|^(n-2s-4) rho(S),        S = s - n/2,

(doubled in "complex" mode, where the coefficient bundle carries a complex
line of real dimension 2).  The routes are:

* `direct_symbol`   -- the raw double sum over matrix-entry pairs of the
  variation tensor against the degree-2 kernel table;
* `grouped_symbol`  -- the same data reorganized into four interaction
  parts of the coefficient symbols;
* `closed_form_reduced` -- the projector-trace form with the closed-form
  coefficient pair (f1, f2).

Exact agreement of all three on random rational input is the core
verification this package exists to run.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactalg import (
    Covector,
    FPair,
    PerturbH,
    SPoly,
    projector_traces,
)
from .formcombi import binom
from .variation import (
    CoeffSymbolSet,
    OperatorKind,
    VariationTensor,
    _component_matrix,
    _contract_slots,
    _plain_matrix,
    _plain_vector,
    cached_variation_tensor,
    coefficient_symbols,
)

#: mode -> overall multiplicity of the coefficient bundle traces
_MODE_FACTOR = {"real": 1, "complex": 2}

#: S^2 + S - 3/4, the quadratic weight of the closed-form pairs
Q_WEIGHT = SPoly((Fraction(-3, 4), 1, 1))


def _mode_factor(mode: str) -> int:
    try:
        return _MODE_FACTOR[mode]
    except KeyError:
        raise ValueError(f"mode must be 'real' or 'complex', got {mode!r}") from None


def _assert_quadratic(rho: SPoly) -> SPoly:
    if rho.degree > 2:
        raise ArithmeticError(f"reduced symbol has degree {rho.degree} > 2: {rho!r}")
    return rho


# ---------------------------------------------------------------------------
# Closed form
# ---------------------------------------------------------------------------


def closed_form_fpair(op: OperatorKind, n: int, p: int) -> FPair:
    """The exact coefficient pair (f1, f2) of the projector-trace form."""
    if not 0 <= p <= n:
        raise ValueError(f"form degree {p} out of range 0..{n}")
    b_np = binom(n, p)
    b_sub = binom(n - 2, p - 1)
    if op is OperatorKind.BOCHNER:
        # f1 = 4 C(n-2,p-1) (S - 1/2) + C(n,p)/2
        f1 = SPoly((Fraction(b_np, 2) - 2 * b_sub, 4 * b_sub))
        # f2 = C(n,p) (S^2 + S - 3/4) + C(n,p)/4
        f2 = b_np * SPoly((Fraction(-1, 2), 1, 1))
    else:
        f1 = 4 * b_sub * Q_WEIGHT + SPoly.constant(Fraction(b_np, 2))
        f2 = (b_np - 4 * b_sub) * Q_WEIGHT + SPoly.constant(Fraction(b_np, 4))
    return FPair(f1, f2)


def closed_form_reduced(
    op: OperatorKind, n: int, p: int, h: PerturbH, xi: Covector, mode: str = "real"
) -> SPoly:
    """Reduced symbol via the closed-form pair and the projector traces."""
    factor = _mode_factor(mode)
    f1, f2 = closed_form_fpair(op, n, p)
    t2, t1sq = projector_traces(h, xi)
    q = xi.norm2
    return _assert_quadratic(factor * (f1 * (q * q * t2) + f2 * (q * q * t1sq)))


# ---------------------------------------------------------------------------
# Grouped route: four interaction parts of the coefficient symbols
# ---------------------------------------------------------------------------


def combined_square_part(css: CoeffSymbolSet) -> SPoly:
    """(S^2 - 1/4)-weighted trace of the squared combined coefficient symbol.

    The combined symbol is sigma2 - 2 sigma1 + 4 sigma0 per matrix entry.
    """
    comb: dict[tuple[int, int], object] = {}
    for key in set(css.s2x2) | set(css.s1x2) | set(css.s0x2):
        comb[key] = (
            css.s2x2.get(key, 0) - 2 * css.s1x2.get(key, 0) + 4 * css.s0x2.get(key, 0)
        )
    total = 0
    for (kmask, imask), value in comb.items():
        if value:
            rev = comb.get((imask, kmask), 0)
            if rev:
                total += value * rev
    return SPoly((Fraction(-1, 4), 0, 1)) * Fraction(total, 4)


def first_order_part(css: CoeffSymbolSet, xi: Covector) -> SPoly:
    """(2S - 1)-weighted self-interaction of the first-order symbol.

    Trace of sigma1 squared, minus |xi|^2 times the squared xi-contraction
    of the sigma1 components over their open section slot.
    """
    vec = _plain_vector(xi)
    n = css.n
    trace_sq = 0
    comp_sq = 0
    contracted: dict[tuple[int, int], list] = {}
    for key, mat in css.s1compx2.items():
        w = [0] * n
        for x in range(n):
            vx = vec[x]
            if vx:
                row = mat[x]
                for y in range(n):
                    if row[y]:
                        w[y] += vx * row[y]
        contracted[key] = w
    for (kmask, imask), value in css.s1x2.items():
        rev_key = (imask, kmask)
        rev = css.s1x2.get(rev_key, 0)
        if value and rev:
            trace_sq += value * rev
        w1 = contracted.get((kmask, imask))
        w2 = contracted.get(rev_key)
        if w1 is not None and w2 is not None:
            comp_sq += sum(a * b for a, b in zip(w1, w2))
    bracket = Fraction(trace_sq, 4) - css.xi2 * Fraction(comp_sq, 4)
    return SPoly((-1, 2)) * bracket


def leading_cross_part(css: CoeffSymbolSet, h: PerturbH, xi: Covector) -> SPoly:
    """(2S - 1)-weighted interaction of the leading term with the rest.

    Only diagonal entries of sigma1 and sigma0 enter, together with the
    xi- and (h.xi)-contractions of the diagonal sigma1 components.
    """
    n = css.n
    hmat = _plain_matrix(h)
    vec = _plain_vector(xi)
    hvec = [sum(hmat[x][y] * vec[y] for y in range(n)) for x in range(n)]
    xhx = sum(vec[x] * hvec[x] for x in range(n))
    trh = sum(hmat[x][x] for x in range(n))
    xi2 = sum(v * v for v in vec)

    minus_minus = 0  # sum over diagonal of (-sigma1 - 2 sigma0), doubled
    minus_plus = 0  # sum over diagonal of (-sigma1 + 2 sigma0), doubled
    comp_term = 0  # sum of sigma1 components against xi (x) h.xi, doubled
    for (kmask, imask), _ in css.s2x2.items():
        if kmask != imask:
            continue
        key = (kmask, imask)
        s1 = css.s1x2.get(key, 0)
        s0 = css.s0x2.get(key, 0)
        minus_minus += -s1 - 2 * s0
        minus_plus += -s1 + 2 * s0
        mat = css.s1compx2.get(key)
        if mat is not None:
            for x in range(n):
                row = mat[x]
                for y in range(n):
                    if row[y]:
                        comp_term += row[y] * (vec[x] * hvec[y] + vec[y] * hvec[x])
    bracket = (
        xhx * Fraction(minus_minus, 2)
        + xi2 * trh * Fraction(minus_plus, 2)
        + xi2 * Fraction(comp_term, 2)
    )
    return SPoly((-1, 2)) * bracket


def leading_square_part(
    n: int, p: int, h: PerturbH, xi: Covector, mode: str = "real"
) -> SPoly:
    """Self-interaction of the leading term; proportional to the bundle rank."""
    from .exactalg import scalar_invariants

    dim_e = binom(n, p) * _mode_factor(mode)
    inv = scalar_invariants(h, xi)
    q = inv.xi2
    const = (
        Fraction(1, 2) * q * q * inv.hnorm2
        + Fraction(1, 4) * inv.xhx * inv.xhx
        - q * inv.trh * inv.xhx
        + Fraction(1, 4) * q * q * inv.trh * inv.trh
    )
    linear = -2 * q * inv.hxi2 + inv.xhx * inv.xhx + q * inv.trh * inv.xhx
    return dim_e * SPoly((const, linear))


def grouped_symbol(
    op: OperatorKind, n: int, p: int, h: PerturbH, xi: Covector, mode: str = "real"
) -> SPoly:
    """Reduced symbol as the sum of the four interaction parts."""
    factor = _mode_factor(mode)
    css = coefficient_symbols(cached_variation_tensor(op, n, p), h, xi)
    total = (
        combined_square_part(css)
        + first_order_part(css, xi)
        + leading_cross_part(css, h, xi)
    )
    return _assert_quadratic(factor * total + leading_square_part(n, p, h, xi, mode))


# ---------------------------------------------------------------------------
# Direct route: raw kernel sum over matrix-entry pairs
# ---------------------------------------------------------------------------


class SlotShape(enum.Enum):
    """Where the two derivatives of a degree-2 term land."""

    D2_COEFF = "d2_coeff"  # both on the perturbation:   (d2 h) .
    D1_D1 = "d1_d1"  # one on each:                 (d h) d
    COEFF_D2 = "coeff_d2"  # both on the section:         h d2


@dataclass(frozen=True)
class KernelPattern:
    first: SlotShape
    second: SlotShape
    indices: tuple[int, int, int, int]  # (j, k) of the first factor, (p, q) of the second


def kernel_value(pattern: KernelPattern, xi: Covector) -> dict[int, SPoly]:
    """Kernel polynomial of one pattern pair, split by |xi|-power offset.

    Returns {-4: ..., -2: ..., 0: ...}: the exact S-polynomials multiplying
    |xi|^(n-2s-4), |xi|^(n-2s-2) and |xi|^(n-2s) with the printed xi and
    delta factors evaluated at the concrete covector.  Unprinted shape
    orderings are defined by the swap symmetry of the table.
    """
    j, k, p, q = pattern.indices
    for idx in pattern.indices:
        if not 1 <= idx <= xi.n:
            raise IndexError(f"kernel index {idx} out of range 1..{xi.n}")
    lookup = {
        (SlotShape.D2_COEFF, SlotShape.D2_COEFF): _kernel_bb,
        (SlotShape.D1_D1, SlotShape.D2_COEFF): _kernel_ab,
        (SlotShape.D1_D1, SlotShape.D1_D1): _kernel_aa,
        (SlotShape.COEFF_D2, SlotShape.D2_COEFF): _kernel_hb,
        (SlotShape.COEFF_D2, SlotShape.D1_D1): _kernel_ha,
        (SlotShape.COEFF_D2, SlotShape.COEFF_D2): _kernel_hh,
    }
    fn = lookup.get((pattern.first, pattern.second))
    if fn is None:
        fn = lookup[(pattern.second, pattern.first)]
        j, k, p, q = p, q, j, k
    x = xi.components
    g4, g2, g0 = fn(x[j - 1], x[k - 1], x[p - 1], x[q - 1], j == k, p == q,
                    j == p, j == q, k == p, k == q)
    return {-4: g4, -2: g2, 0: g0}


def _kernel_bb(xj, xk, xp, xq, djk, dpq, djp, djq, dkp, dkq):
    return SPoly((-4, 0, 16)) * (xj * xk * xp * xq), SPoly.zero(), SPoly.zero()


def _kernel_ab(xj, xk, xp, xq, djk, dpq, djp, djq, dkp, dkq):
    return SPoly((2, 0, -8)) * (xj * xk * xp * xq), SPoly.zero(), SPoly.zero()


def _kernel_aa(xj, xk, xp, xq, djk, dpq, djp, djq, dkp, dkq):
    g4 = SPoly((-2, 2, 4)) * (xj * xk * xp * xq)
    g2 = SPoly((1, -2)) * (xj * xp) if dkq else SPoly.zero()
    return g4, g2, SPoly.zero()


def _kernel_hb(xj, xk, xp, xq, djk, dpq, djp, djq, dkp, dkq):
    g4 = SPoly((0, -2, 4)) * (xj * xk * xp * xq)
    g2 = SPoly((-1, 2)) * (xp * xq) if djk else SPoly.zero()
    return g4, g2, SPoly.zero()


def _kernel_ha(xj, xk, xp, xq, djk, dpq, djp, djq, dkp, dkq):
    g4 = SPoly((1, -1, -2)) * (xj * xk * xp * xq)
    acc = 0
    if djk:
        acc -= xp * xq
    if djq:
        acc += xk * xp
    if dkq:
        acc += xj * xp
    g2 = SPoly((Fraction(-1, 2), 1)) * acc if acc else SPoly.zero()
    return g4, g2, SPoly.zero()


def _kernel_hh(xj, xk, xp, xq, djk, dpq, djp, djq, dkp, dkq):
    g4 = SPoly((0, 1, 1)) * (xj * xk * xp * xq)
    half_sm1 = 0
    if djk:
        half_sm1 += xp * xq
    if dpq:
        half_sm1 += xj * xk
    minus_half_s = 0
    if djp:
        minus_half_s += xk * xq
    if dkq:
        minus_half_s += xj * xp
    if djq:
        minus_half_s += xk * xp
    if dkp:
        minus_half_s += xj * xq
    g2 = (
        SPoly((Fraction(-1, 2), Fraction(1, 2))) * half_sm1
        + SPoly((0, Fraction(-1, 2))) * minus_half_s
    )
    deltas = int(djk and dpq) + int(djp and dkq) + int(djq and dkp)
    g0 = SPoly.constant(Fraction(deltas, 4))
    return g4, g2, g0


# Kernel coefficient triples (c0, c1, c2) scaled by 4, for the int-valued
# fast path of direct_symbol.  Aggregates carry a factor 2 per entry, so
# every accumulated product is 16x its true value.
_K_BB4 = (-16, 0, 64)
_K_AB4 = (8, 0, -32)
_K_AA4 = (-8, 8, 16)
_K_AA2 = (4, -8, 0)
_K_HB4 = (0, -8, 16)
_K_HB2 = (-4, 8, 0)
_K_HA4 = (4, -4, -8)
_K_HA2 = (-2, 4, 0)
_K_HH4 = (0, 4, 4)
_K_HH2_TRACE = (-2, 2, 0)
_K_HH2_MIX = (0, -2, 0)
_K_HH0 = (1, 0, 0)

_H, _A, _B = 0, 1, 2


class _Aggregate:
    """Slot contractions of one matrix entry against h and xi."""

    __slots__ = ("m", "r", "c", "t", "mat")

    def __init__(self, mat: list[list], vec: list, n: int, keep_matrix: bool):
        self.m = _contract_slots(mat, vec, n)
        self.r = [sum(vec[x] * mat[x][y] for x in range(n)) for y in range(n)]
        self.c = [sum(mat[x][y] * vec[y] for y in range(n)) for x in range(n)]
        self.t = sum(mat[x][x] for x in range(n))
        self.mat = mat if keep_matrix else None


def _dot(u: list, v: list):
    return sum(a * b for a, b in zip(u, v))


def _acc(target: list, triple: tuple[int, int, int], factor) -> None:
    if factor:
        target[0] += triple[0] * factor
        target[1] += triple[1] * factor
        target[2] += triple[2] * factor


def direct_symbol(
    op: OperatorKind, n: int, p: int, h: PerturbH, xi: Covector, mode: str = "real"
) -> SPoly:
    """Reduced symbol as the raw kernel-table sum over entry pairs.

    This route never forms the coefficient symbols: each pair of matrix
    entries is contracted directly through the printed kernel table, so it
    serves as the independent oracle for `grouped_symbol`.
    """
    factor = _mode_factor(mode)
    vt = cached_variation_tensor(op, n, p)
    if h.n != n or xi.n != n:
        raise ValueError("dimension mismatch")
    hmat = _plain_matrix(h)
    vec = _plain_vector(xi)
    xi2 = sum(v * v for v in vec)

    aggregates: dict[tuple[int, int], list] = {}
    for key, entry in vt.entries.items():
        kinds: list[Optional[_Aggregate]] = [None, None, None]
        if entry.second:
            kinds[_H] = _Aggregate(
                _component_matrix(entry.second, hmat, n), vec, n, keep_matrix=True
            )
        if entry.first:
            kinds[_A] = _Aggregate(
                _component_matrix(entry.first, hmat, n), vec, n, keep_matrix=False
            )
        if entry.zeroth:
            kinds[_B] = _Aggregate(
                _component_matrix(entry.zeroth, hmat, n), vec, n, keep_matrix=False
            )
        aggregates[key] = kinds

    g4 = [0, 0, 0]
    g2 = [0, 0, 0]
    g0 = [0, 0, 0]
    for (kmask, imask), kinds in aggregates.items():
        rev = aggregates.get((imask, kmask))
        if rev is None:
            continue
        a_h, a_a, a_b = kinds
        b_h, b_a, b_b = rev
        if a_b is not None and b_b is not None:
            _acc(g4, _K_BB4, a_b.m * b_b.m)
        if a_a is not None and b_b is not None:
            _acc(g4, _K_AB4, a_a.m * b_b.m)
        if a_b is not None and b_a is not None:
            _acc(g4, _K_AB4, a_b.m * b_a.m)
        if a_a is not None and b_a is not None:
            _acc(g4, _K_AA4, a_a.m * b_a.m)
            _acc(g2, _K_AA2, _dot(a_a.r, b_a.r))
        if a_h is not None and b_b is not None:
            _acc(g4, _K_HB4, a_h.m * b_b.m)
            _acc(g2, _K_HB2, a_h.t * b_b.m)
        if a_b is not None and b_h is not None:
            _acc(g4, _K_HB4, a_b.m * b_h.m)
            _acc(g2, _K_HB2, b_h.t * a_b.m)
        if a_h is not None and b_a is not None:
            _acc(g4, _K_HA4, a_h.m * b_a.m)
            _acc(g2, _K_HA2, -a_h.t * b_a.m + _dot(a_h.c, b_a.r) + _dot(a_h.r, b_a.r))
        if a_a is not None and b_h is not None:
            _acc(g4, _K_HA4, a_a.m * b_h.m)
            _acc(g2, _K_HA2, -b_h.t * a_a.m + _dot(b_h.c, a_a.r) + _dot(b_h.r, a_a.r))
        if a_h is not None and b_h is not None:
            _acc(g4, _K_HH4, a_h.m * b_h.m)
            _acc(g2, _K_HH2_TRACE, a_h.t * b_h.m + a_h.m * b_h.t)
            _acc(
                g2,
                _K_HH2_MIX,
                _dot(a_h.c, b_h.c)
                + _dot(a_h.r, b_h.r)
                + _dot(a_h.c, b_h.r)
                + _dot(a_h.r, b_h.c),
            )
            frob = 0
            frob_t = 0
            m1, m2 = a_h.mat, b_h.mat
            for x in range(n):
                row1 = m1[x]
                for y in range(n):
                    if row1[y]:
                        frob += row1[y] * m2[x][y]
                        frob_t += row1[y] * m2[y][x]
            _acc(g0, _K_HH0, a_h.t * b_h.t + frob + frob_t)

    coeffs = [
        Fraction(factor * (g4[d] + xi2 * g2[d] + xi2 * xi2 * g0[d]), 16)
        for d in range(3)
    ]
    return _assert_quadratic(SPoly(coeffs))


# ---------------------------------------------------------------------------
# Alternating-sum consistency for the half Laplacian
# ---------------------------------------------------------------------------


def _binom_top_extended(m: int, k: int) -> int:
    """Binomial continued to top index -1 (needed only at n = 2)."""
    if m >= 0:
        return binom(m, k)
    if m == -1:
        return 0 if k < 0 else (-1) ** k
    raise ValueError(f"top index {m} < -1 not supported")


@dataclass(frozen=True)
class DstarDComparison:
    """Alternating-sum pair vs the dimension-shifted closed form."""

    alt_sum: FPair
    closed: FPair
    scale: Optional[Fraction]
    proportional: bool


def dstar_d_fpair(n: int, p: int) -> DstarDComparison:
    """Coefficient pair of the half Laplacian d*d on p-forms, two ways.

    The alternating sum telescopes the full-Laplacian pairs over degrees
    0..p.  The closed side re-reads the full-Laplacian formulas with the
    binomial dimension lowered by one while S keeps its meaning.  The
    reported scale is the constant ratio alt/closed (None when both sides
    vanish); `proportional` records whether the two sides agree up to one
    constant across both components.
    """
    if not 0 <= p <= n:
        raise ValueError(f"form degree {p} out of range 0..{n}")
    alt1, alt2 = SPoly.zero(), SPoly.zero()
    for q in range(p + 1):
        f1, f2 = closed_form_fpair(OperatorKind.DERHAM, n, q)
        sign = -1 if (p - q) % 2 else 1
        alt1 = alt1 + sign * f1
        alt2 = alt2 + sign * f2
    b_np = binom(n - 1, p)
    b_sub = _binom_top_extended(n - 3, p - 1)
    closed1 = 4 * b_sub * Q_WEIGHT + SPoly.constant(Fraction(b_np, 2))
    closed2 = (b_np - 4 * b_sub) * Q_WEIGHT + SPoly.constant(Fraction(b_np, 4))
    alt = FPair(alt1, alt2)
    closed = FPair(closed1, closed2)

    scale: Optional[Fraction] = None
    for a_poly, c_poly in ((alt1, closed1), (alt2, closed2)):
        top = max(a_poly.degree, c_poly.degree)
        for d in range(top + 1):
            c = c_poly.coefficient(d)
            if c != 0:
                scale = a_poly.coefficient(d) / c
                break
        if scale is not None:
            break
    if scale is None:
        proportional = alt1.is_zero() and alt2.is_zero()
        return DstarDComparison(alt, closed, None, proportional)
    proportional = alt1 == scale * closed1 and alt2 == scale * closed2
    return DstarDComparison(alt, closed, scale, proportional)
