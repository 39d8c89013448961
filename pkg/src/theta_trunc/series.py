"""Exact truncated power series over arbitrary-precision integers.

A PowerSeries holds the coefficients of a formal q-expansion up to (but
excluding) a truncation order.  Everything in this module is exact integer
arithmetic; these series are the ground truth against which all floating
point asymptotics are compared.

Conventions:
  * ``order`` is exclusive: coefficients are indexed 0 .. order-1.
  * binary operations truncate to the smaller operand order.
  * values are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels


class NonUnitConstantTerm(ValueError):
    """Series inversion needs constant term +1 or -1."""


class NonIntegralExponent(ValueError):
    """A theta exponent a*j^2 + c*j + d landed outside the integers."""


class PowerSeries:
    """Integer coefficients of a q-series, truncated below ``order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs)
        if order <= 0:
            raise ValueError("order must be positive")
        if len(coeffs) < order:
            coeffs.extend([0] * (order - len(coeffs)))
        elif len(coeffs) > order:
            del coeffs[order:]
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([0] * order, order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        c = [0] * order
        c[0] = 1
        return cls(c, order)

    @classmethod
    def from_terms(cls, terms, order: int) -> "PowerSeries":
        """Build from (exponent, coefficient) pairs; exponents >= order drop."""
        c = [0] * order
        for e, v in terms:
            if 0 <= e < order:
                c[e] += v
            elif e < 0:
                raise ValueError("negative exponent %r" % (e,))
        return cls(c, order)

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(self.coeffs)))

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[:order], order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n)], n
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(n)], n
        )

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_mul(self, other)

    def shifted(self, d: int) -> "PowerSeries":
        """Multiply by q^d (d >= 0), keeping the order."""
        if d < 0:
            raise ValueError("shift must be non-negative")
        if d >= self.order:
            return PowerSeries.zero(self.order)
        return PowerSeries([0] * d + self.coeffs[: self.order - d], self.order)

    def first_mismatch(self, other: "PowerSeries"):
        """Lowest exponent where the two series differ, or None."""
        n = min(self.order, other.order)
        for i in range(n):
            if self.coeffs[i] != other.coeffs[i]:
                return i
        return None

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order > 8 else ""
        return "PowerSeries([%s%s], order=%d)" % (head, tail, self.order)


@dataclass(frozen=True)
class ThetaParams:
    """Parameters (a, c, d) of the theta partial sum sum_j q^(a j^2 + c j + d).

    a and c are rationals with denominator 1 or 2; all exponents must be
    non-negative integers, which holds for every j once it holds for
    j = 1 and j = 2 (a + c and 4a + 2c integral and non-negative).
    """

    a: Fraction
    c: Fraction
    d: int

    def __post_init__(self):
        a = Fraction(self.a)
        c = Fraction(self.c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)
        if a <= 0:
            raise ValueError("a must be positive")
        if a.denominator not in (1, 2) or c.denominator not in (1, 2):
            raise ValueError("a and c must have denominator 1 or 2")
        if (a + c).denominator != 1 or (4 * a + 2 * c).denominator != 1:
            raise ValueError("a*j^2 + c*j must be integral for all j")
        if a + c < 0:
            raise ValueError("a*j^2 + c*j must be non-negative for all j")
        if self.d < 0 or not isinstance(self.d, int):
            raise ValueError("d must be a non-negative integer")

    def exponent(self, j: int) -> int:
        """The integer exponent a*j^2 + c*j + d."""
        e = self.a * j * j + self.c * j + self.d
        if e.denominator != 1:
            raise NonIntegralExponent(
                "exponent %s at j=%d is not an integer" % (e, j)
            )
        return e.numerator


@dataclass(frozen=True)
class ProductSpec:
    """A product of factors 1/(q^A; q^B)_inf, one per (A, B) residue pair.

    Each pair contributes the parts A, A+B, A+2B, ...; we require
    1 <= A <= B (A == B is needed for plain (q^R; q^R)_inf factors).
    """

    residues: tuple

    def __init__(self, residues):
        pairs = tuple((int(a), int(b)) for a, b in residues)
        for a, b in pairs:
            if a < 1 or b < a:
                raise ValueError("need 1 <= A <= B, got (%d, %d)" % (a, b))
        object.__setattr__(self, "residues", pairs)

    def parts(self, order: int):
        """All part sizes A + j*B below ``order``, per residue pair."""
        out = []
        for a, b in self.residues:
            m = a
            while m < order:
                out.append(m)
                m += b
        return out


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def ps_mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to min(f.order, g.order)."""
    n = min(f.order, g.order)
    return PowerSeries(kernels.conv_trunc(f.coeffs, g.coeffs, n), n)


def ps_inv(f: PowerSeries) -> PowerSeries:
    """Series inverse; the constant term must be +1 or -1."""
    if not f.coeffs or f.coeffs[0] not in (1, -1):
        raise NonUnitConstantTerm(
            "constant term must be +1 or -1, got %r" % (f.coeffs[0] if f.coeffs else None,)
        )
    return PowerSeries(kernels.inv_unit(f.coeffs), f.order)


def finite_pochhammer(n: int, order: int) -> PowerSeries:
    """(q; q)_n = prod_{j=1..n} (1 - q^j), truncated."""
    if n < 0:
        raise ValueError("n must be non-negative")
    c = [0] * order
    c[0] = 1
    for j in range(1, min(n, order - 1) + 1):
        kernels.mul_one_minus(c, j)
    return PowerSeries(c, order)


def qbinomial(L: int, K: int, order: int) -> PowerSeries:
    """Gaussian binomial [L, K]_q via the Pascal recurrence.

    [L, K] = [L-1, K] + q^(L-K) [L-1, K-1]; zero when K < 0 or K > L.
    """
    if K < 0 or K > L:
        return PowerSeries.zero(order)
    # row[k] holds [l, k] as a coefficient list while l runs 0..L
    row = [[0] * order for _ in range(K + 1)]
    row[0][0] = 1
    for l in range(1, L + 1):
        for k in range(min(K, l), 0, -1):
            shift = l - k
            prev = row[k - 1]
            cur = row[k]
            for i in range(order - 1, shift - 1, -1):
                cur[i] += prev[i - shift]
    return PowerSeries(row[K], order)


def pochhammer(spec: ProductSpec, order: int) -> PowerSeries:
    """The forward product prod (1 - q^(A+jB)) over all parts below order."""
    c = [0] * order
    c[0] = 1
    for m in sorted(spec.parts(order)):
        kernels.mul_one_minus(c, m)
    return PowerSeries(c, order)


def pochhammer_inv(spec: ProductSpec, order: int) -> PowerSeries:
    """Coefficients of prod 1/(q^A; q^B)_inf, truncated.

    Equivalently the number of partitions of n with parts drawn from the
    multiset of allowed part sizes (a part size occurring in two residue
    pairs may be used with two colours).
    """
    c = [0] * order
    c[0] = 1
    for m in sorted(spec.parts(order)):
        kernels.div_one_minus(c, m)
    return PowerSeries(c, order)


def ps_div_pochhammer(f: PowerSeries, spec: ProductSpec) -> PowerSeries:
    """f times pochhammer_inv(spec, f.order), without the dense product.

    Same result as ps_mul(f, pochhammer_inv(spec, f.order)); dividing the
    numerator in place by each factor (1 - q^m) is much cheaper when f is
    sparse.
    """
    c = list(f.coeffs)
    for m in sorted(spec.parts(f.order)):
        kernels.div_one_minus(c, m)
    return PowerSeries(c, f.order)


def euler_product(order: int) -> PowerSeries:
    """(q; q)_inf truncated: the full product prod_{k>=1} (1 - q^k)."""
    return pochhammer(ProductSpec([(1, 1)]), order)


def theta_partial(p: ThetaParams, order: int) -> PowerSeries:
    """sum_j q^(a j^2 + c j + d) truncated below ``order``.

    Iterates j upward; stops once the exponent is past the truncation order
    and the exponent sequence has become increasing (a > 0 guarantees only
    finitely many j contribute even when c < 0 makes the first few exponents
    non-monotone).
    """
    c = [0] * order
    j = 0
    while True:
        e = p.exponent(j)
        if e < order:
            c[e] += 1
        elif 2 * p.a * j + p.c > 0:
            # exponent now strictly increasing in j: nothing more can land
            break
        j += 1
    return PowerSeries(c, order)
