"""Exact scalar and polynomial arithmetic for reduced symbol computations.

Scalars are `fractions.Fraction` values throughout.  `SPoly` is a dense
polynomial in the shifted spectral variable S = s - n/2, stored as a
coefficient tuple with no trailing zeros, so `==` is exact polynomial
identity.  Quadratic symbols in a metric perturbation h are carried on the
five-element invariant basis

    V1 = |xi|^4 |h|^2           V2 = |xi|^2 |h.xi|^2      V3 = (xi.h.xi)^2
    V4 = |xi|^2 (tr h)(xi.h.xi) V5 = |xi|^4 (tr h)^2

via `InvariantVector`: the quadratic form of a symbol equals the graded
transcendental prefactor times sum_i c_i * V_i.  A "reduced" symbol value
rho (an SPoly) always means the bracketed quantity multiplying that
prefactor.  Nothing in this module ever touches a float.

Matrices and covectors are concrete rational data: the perturbation h is a
symmetric n x n matrix, xi a nonzero n-vector.  In the orthonormal-frame
convention used everywhere in this package, raising an index is trivial, so
h and the endomorphism it induces have the same matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class SPoly:
    """Polynomial in S with exact rational coefficients.

    Coefficients are ascending by power; trailing zeros are stripped on
    construction so each polynomial has a unique representation.  The zero
    polynomial is the empty tuple and has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Union[Scalar, Iterable[Scalar]] = ()):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "SPoly":
        return cls(())

    @classmethod
    def constant(cls, c: Scalar) -> "SPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __call__(self, value: Scalar) -> Fraction:
        v = _frac(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __add__(self, other) -> "SPoly":
        other = _coerce_spoly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return SPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "SPoly":
        return SPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "SPoly":
        other = _coerce_spoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SPoly":
        other = _coerce_spoly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "SPoly":
        if isinstance(other, (int, Fraction)):
            return SPoly(tuple(c * other for c in self.coeffs))
        if isinstance(other, SPoly):
            if not self.coeffs or not other.coeffs:
                return SPoly(())
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return SPoly(out)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of SPoly by zero scalar")
            return SPoly(tuple(c / other for c in self.coeffs))
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = _coerce_spoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def canonical(self) -> str:
        """Canonical text form: descending powers, explicit rationals.

        Examples: "8*S^2+8*S-3", "4*S-1/2", "S^2+S-1/2", "0".
        """
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                var = "S" if power == 1 else f"S^{power}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append(sign + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"SPoly({self.canonical()})"


def _coerce_spoly(x) -> "SPoly":
    if isinstance(x, SPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return SPoly((x,))
    return NotImplemented


#: The polynomial S itself, for building expressions like 4*S - Fraction(1, 2).
S = SPoly((0, 1))


class NotInProjectorSpan(ValueError):
    """A five-coefficient symbol is not in the two-dimensional trace span.

    Carries the nonzero residual (on the constraints for c2, c3, c4); this
    signals that an upstream symbol computation produced something outside
    the projector-trace form, i.e. a verification failure.
    """

    def __init__(self, residual: tuple[SPoly, SPoly, SPoly]):
        self.residual = residual
        super().__init__(
            "symbol not in projector-trace span, residual "
            f"({residual[0].canonical()}, {residual[1].canonical()}, "
            f"{residual[2].canonical()})"
        )


@dataclass(frozen=True)
class InvariantVector:
    """Coefficients (c1..c5) of a quadratic symbol on the invariant basis."""

    c1: SPoly
    c2: SPoly
    c3: SPoly
    c4: SPoly
    c5: SPoly

    @classmethod
    def zero(cls) -> "InvariantVector":
        z = SPoly.zero()
        return cls(z, z, z, z, z)

    @classmethod
    def from_values(cls, values: Sequence[Union[Scalar, SPoly]]) -> "InvariantVector":
        if len(values) != 5:
            raise ValueError("InvariantVector needs exactly 5 coefficients")
        return cls(*[v if isinstance(v, SPoly) else SPoly(v) for v in values])

    def as_tuple(self) -> tuple[SPoly, SPoly, SPoly, SPoly, SPoly]:
        return (self.c1, self.c2, self.c3, self.c4, self.c5)

    def __add__(self, other: "InvariantVector") -> "InvariantVector":
        return InvariantVector(
            *[a + b for a, b in zip(self.as_tuple(), other.as_tuple())]
        )

    def __sub__(self, other: "InvariantVector") -> "InvariantVector":
        return InvariantVector(
            *[a - b for a, b in zip(self.as_tuple(), other.as_tuple())]
        )

    def scale(self, factor: Union[Scalar, SPoly]) -> "InvariantVector":
        return InvariantVector(*[c * factor for c in self.as_tuple()])


class FPair(NamedTuple):
    """The pair (f1, f2) multiplying the two projector traces."""

    f1: SPoly
    f2: SPoly


def fpair_to_invariant(f: FPair) -> InvariantVector:
    """Expand (f1, f2) onto the invariant basis.

    tr((H P)^2)   = V1 - 2 V2 + V3   and   (tr H P)^2 = V3 - 2 V4 + V5
    with P the orthogonal complement projector of xi, after clearing the
    |xi| grading, so the image is (f1, -2 f1, f1 + f2, -2 f2, f2).
    """
    f1, f2 = f
    return InvariantVector(f1, -2 * f1, f1 + f2, -2 * f2, f2)


def invariant_to_fpair(v: InvariantVector) -> FPair:
    """Invert `fpair_to_invariant` on its two-dimensional image.

    Raises NotInProjectorSpan with the residual (c2 + 2c1, c3 - c1 - c5,
    c4 + 2c5) when the vector is outside the span.
    """
    r2 = v.c2 + 2 * v.c1
    r3 = v.c3 - v.c1 - v.c5
    r4 = v.c4 + 2 * v.c5
    if not (r2.is_zero() and r3.is_zero() and r4.is_zero()):
        raise NotInProjectorSpan((r2, r3, r4))
    return FPair(v.c1, v.c5)


@dataclass(frozen=True)
class PerturbH:
    """A symmetric rational n x n metric perturbation."""

    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise ValueError(f"expected a {self.n} x {self.n} matrix")
        for i in range(self.n):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("perturbation matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "PerturbH":
        n = len(rows)
        return cls(n, tuple(tuple(_frac(x) for x in row) for row in rows))

    @classmethod
    def zero(cls, n: int) -> "PerturbH":
        return cls.from_rows([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "PerturbH":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence[Scalar]) -> "PerturbH":
        n = len(diag)
        return cls.from_rows(
            [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def symmetric_basis(cls, n: int, a: int, b: int) -> "PerturbH":
        """e_a (x) e_b + e_b (x) e_a with 0-based a, b (diagonal entry is 2 when a == b)."""
        rows = [[0] * n for _ in range(n)]
        rows[a][b] += 1
        rows[b][a] += 1
        return cls.from_rows(rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def scale(self, factor: Scalar) -> "PerturbH":
        f = _frac(factor)
        return PerturbH(
            self.n, tuple(tuple(x * f for x in row) for row in self.entries)
        )

    def __add__(self, other: "PerturbH") -> "PerturbH":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return PerturbH(
            self.n,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "PerturbH") -> "PerturbH":
        return self + other.scale(-1)


@dataclass(frozen=True)
class Covector:
    """A nonzero rational covector."""

    n: int
    components: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.components) != self.n:
            raise ValueError(f"expected {self.n} components")
        if all(c == 0 for c in self.components):
            raise ValueError("covector must be nonzero")

    @classmethod
    def of(cls, *components: Scalar) -> "Covector":
        return cls(len(components), tuple(_frac(c) for c in components))

    @classmethod
    def from_components(cls, components: Sequence[Scalar]) -> "Covector":
        return cls(len(components), tuple(_frac(c) for c in components))

    @classmethod
    def axis(cls, n: int, i: int) -> "Covector":
        """The i-th coordinate covector (0-based)."""
        return cls.from_components([1 if j == i else 0 for j in range(n)])

    def __getitem__(self, i: int) -> Fraction:
        return self.components[i]

    @property
    def norm2(self) -> Fraction:
        return sum((c * c for c in self.components), Fraction(0))

    def scale(self, factor: Scalar) -> "Covector":
        f = _frac(factor)
        return Covector(self.n, tuple(c * f for c in self.components))


class ScalarInvariants(NamedTuple):
    hnorm2: Fraction  # sum h_ij^2
    hxi2: Fraction  # |h.xi|^2
    xhx: Fraction  # xi.h.xi
    trh: Fraction  # tr h
    xi2: Fraction  # |xi|^2


def scalar_invariants(h: PerturbH, xi: Covector) -> ScalarInvariants:
    """The five elementary contractions of (h, xi), computed exactly."""
    if h.n != xi.n:
        raise ValueError(f"dimension mismatch: h is {h.n}-dim, xi is {xi.n}-dim")
    n = h.n
    hnorm2 = sum((h[i, j] * h[i, j] for i in range(n) for j in range(n)), Fraction(0))
    hxi = [
        sum((h[i, j] * xi[j] for j in range(n)), Fraction(0)) for i in range(n)
    ]
    hxi2 = sum((v * v for v in hxi), Fraction(0))
    xhx = sum((xi[i] * hxi[i] for i in range(n)), Fraction(0))
    trh = sum((h[i, i] for i in range(n)), Fraction(0))
    return ScalarInvariants(hnorm2, hxi2, xhx, trh, xi.norm2)


def complement_projector(xi: Covector) -> tuple[tuple[Fraction, ...], ...]:
    """Matrix of I - xi xi^T / |xi|^2."""
    n = xi.n
    q = xi.norm2
    return tuple(
        tuple(
            (Fraction(1) if i == j else Fraction(0)) - xi[i] * xi[j] / q
            for j in range(n)
        )
        for i in range(n)
    )


def projector_traces(h: PerturbH, xi: Covector) -> tuple[Fraction, Fraction]:
    """(tr((H P)^2), (tr H P)^2) for P = I - xi xi^T/|xi|^2.

    Computed two independent ways -- explicit matrix products, and the
    expansion in the elementary invariants -- and checked equal before
    returning.
    """
    if h.n != xi.n:
        raise ValueError(f"dimension mismatch: h is {h.n}-dim, xi is {xi.n}-dim")
    n = h.n
    proj = complement_projector(xi)
    m = tuple(
        tuple(
            sum((h[i, k] * proj[k][j] for k in range(n)), Fraction(0))
            for j in range(n)
        )
        for i in range(n)
    )
    t2_matrix = sum(
        (m[i][k] * m[k][i] for i in range(n) for k in range(n)), Fraction(0)
    )
    tr_m = sum((m[i][i] for i in range(n)), Fraction(0))
    t1sq_matrix = tr_m * tr_m

    inv = scalar_invariants(h, xi)
    q = inv.xi2
    t2_expansion = inv.hnorm2 - 2 * inv.hxi2 / q + inv.xhx * inv.xhx / (q * q)
    trp = inv.trh - inv.xhx / q
    t1sq_expansion = trp * trp
    if t2_matrix != t2_expansion or t1sq_matrix != t1sq_expansion:
        raise ArithmeticError(
            "projector trace routes disagree: "
            f"matrix ({t2_matrix}, {t1sq_matrix}) vs "
            f"expansion ({t2_expansion}, {t1sq_expansion})"
        )
    return t2_matrix, t1sq_matrix


def invariant_values(h: PerturbH, xi: Covector) -> tuple[Fraction, ...]:
    """Concrete values (V1..V5) of the five basis invariants at (h, xi)."""
    inv = scalar_invariants(h, xi)
    q = inv.xi2
    return (
        q * q * inv.hnorm2,
        q * inv.hxi2,
        inv.xhx * inv.xhx,
        q * inv.trh * inv.xhx,
        q * q * inv.trh * inv.trh,
    )


def evaluate_reduced(v: InvariantVector, h: PerturbH, xi: Covector) -> SPoly:
    """Specialize an invariant-basis symbol at concrete (h, xi).

    Returns the reduced symbol rho(S) = sum_i c_i(S) * V_i(h, xi).
    """
    if h.n != xi.n:
        raise ValueError(f"dimension mismatch: h is {h.n}-dim, xi is {xi.n}-dim")
    values = invariant_values(h, xi)
    total = SPoly.zero()
    for c, val in zip(v.as_tuple(), values):
        total = total + c * val
    return total
