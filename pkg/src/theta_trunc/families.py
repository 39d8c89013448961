"""Exact generating functions of the truncated theta coefficient families.

Four families of integer coefficient sequences are built here, all of the
shape (signed theta tail sum) / (q-Pochhammer product):

  C        tail of the Jacobi-triple-product theta series over the pair
           product (q^S, q^(R-S); q^R)_inf,
  Cprime   the complementary finite sum over the triple product
           (q^S, q^(R-S), q^R; q^R)_inf,
  D        two-sided tail of the quintuple-product theta series (k >= 0),
  Dprime   the asymmetric-range variant (k >= 1).

Each family also decomposes into four signed unilateral theta blocks
G_{a,c,d} sharing one denominator; ``genfun_family_via_decomposition``
rebuilds the series from that decomposition, and exact equality of the two
routes is one of the identity suites.  The classical pentagonal, truncated
pentagonal and quintuple product identities are provided as further exact
oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd

from . import kernels
from .series import (
    PowerSeries,
    ProductSpec,
    ThetaParams,
    euler_product,
    pochhammer,
    ps_div_pochhammer,
    qbinomial,
    theta_partial,
)

FAMILIES = ("C", "Cprime", "D", "Dprime")

PAIR = "pair"
TRIPLE = "triple"


class InsufficientRange(ValueError):
    """The bilateral sum was cut before exceeding the truncation order."""


@dataclass(frozen=True)
class FamilySpec:
    """One family instance: tag in {C, Cprime, D, Dprime} plus (R, S, k)."""

    family: str
    R: int
    S: int
    k: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown family %r" % (self.family,))
        if self.R < 1 or self.S < 1:
            raise ValueError("R and S must be positive")
        if gcd(self.R, self.S) != 1:
            raise ValueError("R and S must be coprime")
        if self.family in ("C", "Cprime"):
            if not self.S < self.R:
                raise ValueError("need 1 <= S < R")
            if self.k < 1:
                raise ValueError("need k >= 1 for %s" % self.family)
        else:
            if not 2 * self.S < self.R:
                raise ValueError("need 1 <= S < R/2")
            if self.family == "Dprime" and self.k < 1:
                raise ValueError("need k >= 1 for Dprime")
            if self.k < 0:
                raise ValueError("need k >= 0")


@dataclass(frozen=True)
class SignedThetaTerm:
    """A signed theta block: sign * G_{a,c,d} over a pair or triple product."""

    sign: int
    params: ThetaParams
    denominator: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.denominator not in (PAIR, TRIPLE):
            raise ValueError("denominator must be 'pair' or 'triple'")


def pair_product_spec(R: int, S: int) -> ProductSpec:
    """(q^S, q^(R-S); q^R)_inf."""
    return ProductSpec([(S, R), (R - S, R)])


def triple_product_spec(R: int, S: int) -> ProductSpec:
    """(q^S, q^(R-S), q^R; q^R)_inf."""
    return ProductSpec([(S, R), (R - S, R), (R, R)])


# ---------------------------------------------------------------------------
# decompositions into four signed theta blocks
# ---------------------------------------------------------------------------

def decompose_C(spec: FamilySpec):
    """Four-term decomposition of the C family tail sum.

    Offsets (with a = 2R):
      T1 = R k(k+1)/2 - S k              c = (2k+1)R - 2S   sign +
      T2 = R k(k+1)/2 + S(k+1)           c = (2k+1)R + 2S   sign -
      T3 = R (k+2)(k+1)/2 - S(k+1)       c = (2k+3)R - 2S   sign -
      T4 = R (k+2)(k+1)/2 + S(k+2)       c = (2k+3)R + 2S   sign +
    """
    if spec.family != "C":
        raise ValueError("decompose_C needs family C")
    R, S, k = spec.R, spec.S, spec.k
    a = Fraction(2 * R)
    t1 = R * k * (k + 1) // 2 - S * k
    t2 = R * k * (k + 1) // 2 + S * (k + 1)
    t3 = R * (k + 2) * (k + 1) // 2 - S * (k + 1)
    t4 = R * (k + 2) * (k + 1) // 2 + S * (k + 2)
    cs = [
        (1, (2 * k + 1) * R - 2 * S, t1),
        (-1, (2 * k + 1) * R + 2 * S, t2),
        (-1, (2 * k + 3) * R - 2 * S, t3),
        (1, (2 * k + 3) * R + 2 * S, t4),
    ]
    return [
        SignedThetaTerm(s, ThetaParams(a, Fraction(c), d), PAIR)
        for s, c, d in cs
    ]


def decompose_D(spec: FamilySpec):
    """Four-term decomposition of the D family (a = 3R/2).

      H1 = R(3k+2)(k+1)/2 + S(3k+3)      c = (6k+5)R/2 + 3S   sign -
      H2 = R(3k+2)(k+1)/2 - S(3k+2)      c = (6k+5)R/2 - 3S   sign +
      H3 = R(3k+4)(k+1)/2 - S(3k+3)      c = (6k+7)R/2 - 3S   sign -
      H4 = R(3k+4)(k+1)/2 + S(3k+4)      c = (6k+7)R/2 + 3S   sign +
    """
    if spec.family != "D":
        raise ValueError("decompose_D needs family D")
    R, S, k = spec.R, spec.S, spec.k
    a = Fraction(3 * R, 2)
    h1 = Fraction(R * (3 * k + 2) * (k + 1), 2) + S * (3 * k + 3)
    h2 = Fraction(R * (3 * k + 2) * (k + 1), 2) - S * (3 * k + 2)
    h3 = Fraction(R * (3 * k + 4) * (k + 1), 2) - S * (3 * k + 3)
    h4 = Fraction(R * (3 * k + 4) * (k + 1), 2) + S * (3 * k + 4)
    cs = [
        (-1, Fraction((6 * k + 5) * R, 2) + 3 * S, h1),
        (1, Fraction((6 * k + 5) * R, 2) - 3 * S, h2),
        (-1, Fraction((6 * k + 7) * R, 2) - 3 * S, h3),
        (1, Fraction((6 * k + 7) * R, 2) + 3 * S, h4),
    ]
    return [
        SignedThetaTerm(s, ThetaParams(a, c, int(d)), PAIR) for s, c, d in cs
    ]


def decompose_Dprime(spec: FamilySpec):
    """Four-term decomposition of the Dprime family (a = 3R/2, k >= 1).

    The first two blocks coincide with decompose_D; the last two use
      H3' = R k(3k+1)/2 - 3kS            c = (6k+1)R/2 - 3S   sign -
      H4' = R k(3k+1)/2 + S(3k+1)        c = (6k+1)R/2 + 3S   sign +
    """
    if spec.family != "Dprime":
        raise ValueError("decompose_Dprime needs family Dprime")
    R, S, k = spec.R, spec.S, spec.k
    a = Fraction(3 * R, 2)
    h1 = Fraction(R * (3 * k + 2) * (k + 1), 2) + S * (3 * k + 3)
    h2 = Fraction(R * (3 * k + 2) * (k + 1), 2) - S * (3 * k + 2)
    h3p = Fraction(R * k * (3 * k + 1), 2) - 3 * k * S
    h4p = Fraction(R * k * (3 * k + 1), 2) + S * (3 * k + 1)
    cs = [
        (-1, Fraction((6 * k + 5) * R, 2) + 3 * S, h1),
        (1, Fraction((6 * k + 5) * R, 2) - 3 * S, h2),
        (-1, Fraction((6 * k + 1) * R, 2) - 3 * S, h3p),
        (1, Fraction((6 * k + 1) * R, 2) + 3 * S, h4p),
    ]
    return [
        SignedThetaTerm(s, ThetaParams(a, c, int(d)), PAIR) for s, c, d in cs
    ]


def decompose_family(spec: FamilySpec):
    """Dispatch to the family's decomposition.

    Cprime shares the C offsets but sits over the triple product; its extra
    additive constant (-1)^(k-1) at q^0 is handled by the genfun builders.
    """
    if spec.family == "C":
        return decompose_C(spec)
    if spec.family == "Cprime":
        terms = decompose_C(replace(spec, family="C"))
        return [replace(t, denominator=TRIPLE) for t in terms]
    if spec.family == "D":
        return decompose_D(spec)
    return decompose_Dprime(spec)


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------

def genfun_B(p: ThetaParams, R: int, S: int, order: int) -> PowerSeries:
    """G_{a,c,d} / (q^S, q^(R-S); q^R)_inf, truncated."""
    return ps_div_pochhammer(theta_partial(p, order), pair_product_spec(R, S))


def genfun_Bprime(p: ThetaParams, R: int, S: int, order: int) -> PowerSeries:
    """G_{a,c,d} / (q^S, q^(R-S), q^R; q^R)_inf, truncated."""
    return ps_div_pochhammer(
        theta_partial(p, order), triple_product_spec(R, S)
    )


def _c_numerator(R, S, k, order, sign_k):
    """(-1)^k * sum_{j>=k} (-1)^j q^(Rj(j+1)/2) (q^(-jS) - q^(jS+S)).

    Exponents R j(j+1)/2 -+ jS are collected until the smaller one passes
    the order; one safety j is checked to contribute nothing.
    """
    terms = []
    j = k
    while True:
        base = R * j * (j + 1) // 2
        lo = base - j * S
        hi = base + j * S + S
        if lo >= order:
            # safety margin: the next j must clear the order as well
            nxt = R * (j + 1) * (j + 2) // 2 - (j + 1) * S
            assert nxt >= order
            break
        s = sign_k * (1 if (j - k) % 2 == 0 else -1)
        terms.append((lo, s))
        if hi < order:
            terms.append((hi, -s))
        j += 1
    return PowerSeries.from_terms(terms, order)


def genfun_family(spec: FamilySpec, order: int) -> PowerSeries:
    """Build the family series directly from its defining expression."""
    R, S, k = spec.R, spec.S, spec.k
    if spec.family == "C":
        num = _c_numerator(R, S, k, order, 1)
        return ps_div_pochhammer(num, pair_product_spec(R, S))
    if spec.family == "Cprime":
        # (-1)^(k-1) * sum_{j=0..k-1} (-1)^j q^(Rj(j+1)/2 - Sj)(1 - q^((2j+1)S))
        sign0 = 1 if (k - 1) % 2 == 0 else -1
        terms = []
        for j in range(k):
            s = sign0 * (1 if j % 2 == 0 else -1)
            base = R * j * (j + 1) // 2 - S * j
            terms.append((base, s))
            terms.append((base + (2 * j + 1) * S, -s))
        num = PowerSeries.from_terms(
            ((e, v) for e, v in terms if e < order), order
        )
        return ps_div_pochhammer(num, triple_product_spec(R, S))
    # D / Dprime: minus the two-sided tails of the quintuple theta sum
    neg_from = k + 1
    pos_from = k + 1 if spec.family == "D" else k
    terms = []
    n = pos_from
    while True:
        e1 = n * (3 * n + 1) * R // 2 - 3 * n * S
        e2 = n * (3 * n + 1) * R // 2 + (3 * n + 1) * S
        if e1 >= order:
            break
        terms.append((e1, -1))
        if e2 < order:
            terms.append((e2, 1))
        n += 1
    m = neg_from
    while True:
        e1 = m * (3 * m - 1) * R // 2 + 3 * m * S
        e2 = m * (3 * m - 1) * R // 2 - (3 * m - 1) * S
        if e2 >= order:
            break
        terms.append((e2, 1))
        if e1 < order:
            terms.append((e1, -1))
        m += 1
    num = PowerSeries.from_terms(terms, order)
    return ps_div_pochhammer(num, pair_product_spec(R, S))


def genfun_family_via_decomposition(spec: FamilySpec, order: int) -> PowerSeries:
    """Signed sum of genfun_B / genfun_Bprime over the decomposition."""
    terms = decompose_family(spec)
    total = PowerSeries.zero(order)
    for t in terms:
        if t.denominator == PAIR:
            block = genfun_B(t.params, spec.R, spec.S, order)
        else:
            block = genfun_Bprime(t.params, spec.R, spec.S, order)
        total = total + block if t.sign > 0 else total - block
    if spec.family == "Cprime":
        const = 1 if (spec.k - 1) % 2 == 0 else -1
        total = total + PowerSeries.from_terms([(0, const)], order)
    return total


# ---------------------------------------------------------------------------
# classical identities (exact oracles)
# ---------------------------------------------------------------------------

def pentagonal_sides(order: int):
    """(q; q)_inf versus sum_j (-1)^j q^(j(3j+1)/2) (1 - q^(2j+1))."""
    lhs = euler_product(order)
    terms = []
    j = 0
    while j * (3 * j + 1) // 2 < order:
        s = 1 if j % 2 == 0 else -1
        e = j * (3 * j + 1) // 2
        terms.append((e, s))
        if e + 2 * j + 1 < order:
            terms.append((e + 2 * j + 1, -s))
        j += 1
    return lhs, PowerSeries.from_terms(terms, order)


def truncated_pentagonal_sides(k: int, order: int):
    """Both sides of the truncated pentagonal number theorem.

    LHS: (1/(q;q)_inf) sum_{j=0..k-1} (-1)^j q^(j(3j+1)/2) (1 - q^(2j+1)).
    RHS: 1 + (-1)^(k-1) sum_{n>=1} q^((k+1)n + k(k-1)/2) / (q;q)_n
                                  * [n-1 choose k-1]_q.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    terms = []
    for j in range(k):
        e = j * (3 * j + 1) // 2
        s = 1 if j % 2 == 0 else -1
        if e < order:
            terms.append((e, s))
        if e + 2 * j + 1 < order:
            terms.append((e + 2 * j + 1, -s))
    lhs = ps_div_pochhammer(
        PowerSeries.from_terms(terms, order), ProductSpec([(1, 1)])
    )

    rhs = PowerSeries.one(order)
    sign = 1 if (k - 1) % 2 == 0 else -1
    # 1/(q;q)_n built incrementally: divide by (1 - q^n) at each step
    inv_pochh = [0] * order
    inv_pochh[0] = 1
    n = 1
    while True:
        lead = (k + 1) * n + k * (k - 1) // 2
        if lead >= order:
            break
        kernels.div_one_minus(inv_pochh, n)
        term = PowerSeries(list(inv_pochh), order) * qbinomial(n - 1, k - 1, order)
        term = term.shifted(lead)
        rhs = rhs + term if sign > 0 else rhs - term
        n += 1
    return lhs, rhs


def quintuple_default_range(R: int, S: int, order: int) -> int:
    """Smallest J whose |n|=J exponents clear the order, doubled."""
    j = 1
    while R * j * (3 * j - 1) // 2 - 3 * j * S <= order:
        j += 1
    return 2 * j


def quintuple_product_sides(R: int, S: int, J: int, order: int):
    """Both sides of the quintuple product identity, truncated.

    LHS: sum_{n=-J..J} q^(n(3n+1)R/2) (q^(-3nS) - q^((3n+1)S)).
    RHS: (q^S, q^(R-S), q^R; q^R)_inf (q^(R-2S), q^(R+2S); q^(2R))_inf.
    Raises InsufficientRange unless every dropped |n| > J term exceeds order.
    """
    if not (1 <= S and 2 * S < R):
        raise ValueError("need 1 <= S < R/2")
    if gcd(R, S) != 1:
        raise ValueError("R and S must be coprime")
    m = J + 1
    first_omitted = min(
        m * (3 * m + 1) * R // 2 - 3 * m * S,
        m * (3 * m + 1) * R // 2 + (3 * m + 1) * S,
        m * (3 * m - 1) * R // 2 + 3 * m * S,
        m * (3 * m - 1) * R // 2 - (3 * m - 1) * S,
    )
    if first_omitted <= order:
        raise InsufficientRange(
            "J=%d leaves exponent %d <= order %d" % (J, first_omitted, order)
        )
    terms = []
    for n in range(-J, J + 1):
        base = n * (3 * n + 1) * R // 2
        e1 = base - 3 * n * S
        e2 = base + (3 * n + 1) * S
        if e1 < order:
            terms.append((e1, 1))
        if e2 < order:
            terms.append((e2, -1))
    lhs = PowerSeries.from_terms(terms, order)
    rhs = pochhammer(
        ProductSpec(
            [(S, R), (R - S, R), (R, R), (R - 2 * S, 2 * R), (R + 2 * S, 2 * R)]
        ),
        order,
    )
    return lhs, rhs


# ---------------------------------------------------------------------------
# grids and scans
# ---------------------------------------------------------------------------

GRID_RS = ((3, 1), (4, 1), (5, 2), (7, 3))


def default_grid(families=FAMILIES):
    """The standard (R, S) x k test grid; D additionally gets k = 0."""
    specs = []
    for family in families:
        ks = (0, 1, 2, 3) if family == "D" else (1, 2, 3)
        for R, S in GRID_RS:
            for k in ks:
                specs.append(FamilySpec(family, R, S, k))
    return specs


def scan_signs(spec: FamilySpec, n_lo: int, n_hi: int):
    """Check the conjectured sign pattern of the coefficients.

    C, Cprime and D must be >= 0, Dprime must be <= 0, for every N in
    [n_lo, n_hi].  Returns the list of (N, coefficient) violations.
    """
    series = genfun_family(spec, n_hi + 1)
    bad = []
    for n in range(n_lo, n_hi + 1):
        v = series[n]
        if spec.family == "Dprime":
            if v > 0:
                bad.append((n, v))
        elif v < 0:
            bad.append((n, v))
    return bad
