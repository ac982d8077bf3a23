"""Desk-scale counting experiments for extensions with two or three graded
quotients, plus the Tamagawa-normalized ratio harness for height models.

Two-quotient counts enumerate a single extension lattice Z (both signs), so
the true leading term carries a factor 2 relative to the one-sided display;
that factor is part of the globally-unknown power of two, and all closed-form
coefficients are reported as (exact rational) * 2^(two_power) * (zeta part).
Three-quotient counts run over positive pairs with the exceptional-prime
divisibility constraint, evaluated both by the direct predicate and by
inclusion-exclusion; the two must agree exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath as mp
import numpy as np

from .counting import exact_count as _model_exact_count
from .counting import pair_count_leading
from .counting import region_volume as _model_region_volume
from .heights import HeightModel
from .ktheory import (
    MotiveTateParams,
    RegulatorValue,
    cup_product_support,
    mazur_wiles_torsion_order,
    regulator,
)
from .special_values import DEFAULT_PRECISION, zeta_neg_odd, zeta_pos_odd

__all__ = [
    "CoefficientForm",
    "TamagawaRatioRow",
    "TamagawaRatioSeries",
    "ThreeQuotientCounts",
    "ThreeQuotientModel",
    "TwoQuotientModel",
    "make_three_quotient_model",
    "make_two_quotient_model",
    "tamagawa_ratio_series",
    "three_quotient_counts",
    "three_quotient_exact",
    "three_quotient_leading",
    "three_quotient_coefficient",
    "two_quotient_coefficient",
    "two_quotient_display_forms",
    "two_quotient_exact",
    "two_quotient_leading",
]

_EXCEPTIONAL_PRIME = 691
_EXACT_COUNT_LIMIT = float(1 << 52)


# --------------------------------------------------------------------------
# Tamagawa ratio harness
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TamagawaRatioRow:
    bound: float
    lattice_count: int
    region_mass: float
    c1: float
    c2: float
    ratio: float
    normalized_ratio: float


@dataclass(frozen=True)
class TamagawaRatioSeries:
    """C1 = torsion * N_B against C2 = compact_mass * prod(local masses) * mu(T_B).

    `scalar_limit` is the exact scalar prefactor torsion / (compact * local
    masses); `normalized_ratio` divides it out, leaving N_B / mu(T_B), whose
    predicted limit is 1 under the covolume-1 normalization.
    `tamagawa_prediction` = 1 / tamagawa is the value the raw ratio attains
    when the supplied scalars satisfy the defining identity of the Tamagawa
    number.
    """

    rows: tuple[TamagawaRatioRow, ...]
    scalar_limit: float
    tamagawa_prediction: float

    def __post_init__(self) -> None:
        bounds = [r.bound for r in self.rows]
        if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
            raise ValueError(f"bounds must be strictly increasing, got {bounds}")


def tamagawa_ratio_series(
    model: HeightModel, schedule: Sequence[float]
) -> TamagawaRatioSeries:
    """Exact lattice counts and region masses over the schedule, assembled
    into the C1/C2 ratio with its scalar normalization split out."""
    mass = model.mass_product()
    scalar_limit = model.torsion_order / mass
    rows = []
    for bound in schedule:
        n_b = _model_exact_count(model, float(bound))
        mu_t = _model_region_volume(model, float(bound))
        c1 = float(model.torsion_order * n_b)
        c2 = mass * mu_t
        ratio = c1 / c2 if c2 else math.nan
        normalized = n_b / mu_t if mu_t else math.nan
        rows.append(
            TamagawaRatioRow(
                bound=float(bound),
                lattice_count=n_b,
                region_mass=mu_t,
                c1=c1,
                c2=c2,
                ratio=ratio,
                normalized_ratio=normalized,
            )
        )
    return TamagawaRatioSeries(
        rows=tuple(rows),
        scalar_limit=scalar_limit,
        tamagawa_prediction=1.0 / model.tamagawa,
    )


# --------------------------------------------------------------------------
# two graded quotients
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoQuotientModel:
    """Counting data for extensions with graded quotients of twists (m, n):
    the regulators of the degree-n and degree-(m-n) generators, the
    Mazur-Wiles torsion order, and the fixed extension class multiplier u."""

    params: MotiveTateParams
    reg_n: RegulatorValue
    reg_mn: RegulatorValue
    torsion: int
    u: int = 1

    def __post_init__(self) -> None:
        if self.torsion < 1:
            raise ValueError(f"torsion must be >= 1, got {self.torsion!r}")
        if self.u < 1:
            raise ValueError(f"u must be a positive integer, got {self.u!r}")
        if self.reg_n.m != self.params.n:
            raise ValueError(
                f"reg_n is for degree {self.reg_n.m}, expected {self.params.n}"
            )
        if self.reg_mn.m != self.params.m - self.params.n:
            raise ValueError(
                f"reg_mn is for degree {self.reg_mn.m}, "
                f"expected {self.params.m - self.params.n}"
            )


def make_two_quotient_model(
    m: int,
    n: int,
    *,
    sha_m: int = 1,
    sha_n: int = 1,
    sha_mn: int = 1,
    delta_order: int = 1,
    two_exp: int = 0,
    u: int = 1,
    precision: int = DEFAULT_PRECISION,
    reg_n: float | None = None,
    reg_mn: float | None = None,
    torsion: int | None = None,
) -> TwoQuotientModel:
    """Build the model from arithmetic defaults, with optional overrides for
    unit-regulator and sensitivity studies.

    Defaults: regulators from the Soule-element formula at the given sha
    orders and two_exp; torsion from the Mazur-Wiles order of (m, sha_m)
    (which must be integral).
    """
    params = MotiveTateParams(
        m=m, n=n, sha_m=sha_m, sha_n=sha_n, delta_order=delta_order, two_exp=two_exp
    )
    rn = (
        RegulatorValue(m=n, value=mp.mpf(reg_n), precision=precision)
        if reg_n is not None
        else regulator(n, sha_n, two_exp, precision)
    )
    rmn = (
        RegulatorValue(m=m - n, value=mp.mpf(reg_mn), precision=precision)
        if reg_mn is not None
        else regulator(m - n, sha_mn, two_exp, precision)
    )
    tors = torsion if torsion is not None else int(mazur_wiles_torsion_order(m, sha_m))
    return TwoQuotientModel(params=params, reg_n=rn, reg_mn=rmn, torsion=tors, u=u)


def two_quotient_exact(model: TwoQuotientModel, bound: float) -> int:
    """torsion * #{z in Z : (u*reg_mn)^(1/(m-n)) + (|z|*delta*reg_n)^(1/n)
    <= ln(bound)}."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound!r}")
    p = model.params
    log_b = math.log(bound)
    base = (model.u * float(model.reg_mn.value)) ** (1.0 / (p.m - p.n))
    resid = log_b - base
    if resid < 0:
        return 0
    z_limit = resid**p.n / (p.delta_order * float(model.reg_n.value))
    if z_limit > _EXACT_COUNT_LIMIT:
        raise OverflowError(
            f"z range {z_limit:.3e} exceeds exact 64-bit counting range"
        )
    return model.torsion * (2 * int(math.floor(z_limit)) + 1)


def two_quotient_leading(model: TwoQuotientModel, bound: float) -> float:
    """True leading term of the exact count: 2 * torsion * ln(B)^n /
    (delta * reg_n).  The factor 2 counts both signs of the extension lattice
    and is absorbed in the display's unknown power of two."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound!r}")
    p = model.params
    log_b = math.log(bound)
    return 2.0 * model.torsion * log_b**p.n / (p.delta_order * float(model.reg_n.value))


@dataclass(frozen=True)
class CoefficientForm:
    """Closed-form leading coefficient split as rational * 2^two_power *
    prod zeta(arg)^(-1).  Comparisons between display forms are performed
    modulo the two-power annotation."""

    rational: Fraction
    two_power: int
    zeta_args: tuple[int, ...]
    precision: int = DEFAULT_PRECISION

    def numeric(self) -> mp.mpf:
        with mp.workprec(self.precision + 10):
            value = mp.mpf(self.rational.numerator) / self.rational.denominator
            value *= mp.mpf(2) ** self.two_power
            for arg in self.zeta_args:
                value /= zeta_pos_odd(arg, self.precision)
        with mp.workprec(self.precision):
            return +value


def two_quotient_coefficient(model: TwoQuotientModel) -> CoefficientForm:
    """Closed form of the leading coefficient from the arithmetic inputs:
    2^(1 - two_exp) * torsion * sha_n / (delta * (n-1)!) / zeta(n)."""
    p = model.params
    rational = Fraction(
        model.torsion * p.sha_n, p.delta_order * math.factorial(p.n - 1)
    )
    return CoefficientForm(
        rational=rational,
        two_power=1 - p.two_exp,
        zeta_args=(p.n,),
        precision=model.reg_n.precision,
    )


def two_quotient_display_forms(params: MotiveTateParams) -> tuple[Fraction, Fraction]:
    """Rational parts of the two displayed one-sided coefficient forms
    (both are multiples of 1/zeta(n)):

        A: torsion / (delta * reg_n)  ->  #T * sha_n / (delta * 2^a (n-1)!)
        B: sha_D / ((n-1)! zeta(n) |zeta(1-m)|)

    Their quotient is exactly 2^(-two_exp).
    """
    p = params
    torsion = mazur_wiles_torsion_order(p.m, p.sha_m, strict=False)
    form_a = (
        torsion
        * p.sha_n
        / (p.delta_order * Fraction(2) ** p.two_exp * math.factorial(p.n - 1))
    )
    sha_d = Fraction(p.sha_m * p.sha_n, p.delta_order)
    form_b = sha_d / (math.factorial(p.n - 1) * abs(zeta_neg_odd(1 - p.m)))
    return form_a, form_b


# --------------------------------------------------------------------------
# three graded quotients (the exceptional-prime inclusion-exclusion)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ThreeQuotientModel:
    """Counting data for the three-quotient family: regulators of the
    degree-3 and degree-9 generators, the (a-independent) torsion order, and
    the unique prime where the relevant cup product is non-zero."""

    reg_3: RegulatorValue
    reg_9: RegulatorValue
    torsion: int
    exceptional_prime: int = _EXCEPTIONAL_PRIME
    sha_3: int = 1
    sha_9: int = 1
    two_exp_3: int = 0
    two_exp_9: int = 0

    def __post_init__(self) -> None:
        if self.torsion < 1:
            raise ValueError(f"torsion must be >= 1, got {self.torsion!r}")
        if self.reg_3.m != 3 or self.reg_9.m != 9:
            raise ValueError("regulators must be for degrees 3 and 9")
        if not cup_product_support(self.exceptional_prime):
            raise ValueError(
                f"{self.exceptional_prime} is not the cup-product support prime"
            )


def make_three_quotient_model(
    *,
    sha_3: int = 1,
    sha_9: int = 1,
    sha_12: int = 691,
    two_exp_3: int = 0,
    two_exp_9: int = 0,
    precision: int = DEFAULT_PRECISION,
    reg_3: float | None = None,
    reg_9: float | None = None,
    torsion: int | None = None,
) -> ThreeQuotientModel:
    r3 = (
        RegulatorValue(m=3, value=mp.mpf(reg_3), precision=precision)
        if reg_3 is not None
        else regulator(3, sha_3, two_exp_3, precision)
    )
    r9 = (
        RegulatorValue(m=9, value=mp.mpf(reg_9), precision=precision)
        if reg_9 is not None
        else regulator(9, sha_9, two_exp_9, precision)
    )
    tors = torsion if torsion is not None else int(mazur_wiles_torsion_order(12, sha_12))
    return ThreeQuotientModel(
        reg_3=r3,
        reg_9=r9,
        torsion=tors,
        sha_3=sha_3,
        sha_9=sha_9,
        two_exp_3=two_exp_3,
        two_exp_9=two_exp_9,
    )


@dataclass(frozen=True)
class ThreeQuotientCounts:
    """Set counts (without the torsion factor) of the constrained region:
    direct predicate versus the three inclusion-exclusion pieces."""

    direct: int
    s1: int
    s2: int
    s_both: int

    @property
    def inclusion_exclusion(self) -> int:
        return self.s1 + self.s2 - self.s_both


def three_quotient_counts(model: ThreeQuotientModel, bound: float) -> ThreeQuotientCounts:
    """Count pairs (m, u) of positive integers with

        (u * reg_9)^(1/9) + (m * reg_3)^(1/3) <= ln(bound)

    and p | u or p | m, where p is the exceptional prime.  The loop runs
    over m with closed-form inner u-counts; S1 (p | u), S2 (p | m) and their
    intersection reuse the same residual geometry, so the inclusion-exclusion
    identity is checked on genuinely different arithmetic paths.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound!r}")
    p = model.exceptional_prime
    log_b = math.log(bound)
    r3 = float(model.reg_3.value)
    r9 = float(model.reg_9.value)
    m_max = int(math.floor(log_b**3 / r3))
    if m_max < 1:
        return ThreeQuotientCounts(direct=0, s1=0, s2=0, s_both=0)
    if log_b**9 / r9 > _EXACT_COUNT_LIMIT:
        raise OverflowError("u range exceeds exact 64-bit counting range")
    direct = s1 = s2 = s_both = 0
    chunk = 1 << 20
    for lo in range(1, m_max + 1, chunk):
        hi = min(m_max, lo + chunk - 1)
        m = np.arange(lo, hi + 1, dtype=np.float64)
        resid = log_b - (m * r3) ** (1.0 / 3.0)
        np.maximum(resid, 0.0, out=resid)
        u_max = np.floor(resid**9 / r9).astype(np.int64)
        divisible_m = (np.arange(lo, hi + 1, dtype=np.int64) % p) == 0
        u_div = u_max // p
        s1 += int(u_div.sum())
        s2 += int(u_max[divisible_m].sum())
        s_both += int(u_div[divisible_m].sum())
        direct += int(u_max[divisible_m].sum() + u_div[~divisible_m].sum())
    return ThreeQuotientCounts(direct=direct, s1=s1, s2=s2, s_both=s_both)


def three_quotient_exact(model: ThreeQuotientModel, bound: float) -> int:
    """torsion * #S(B), computed by the direct predicate and verified against
    the inclusion-exclusion decomposition (the two must agree exactly)."""
    counts = three_quotient_counts(model, bound)
    if counts.direct != counts.inclusion_exclusion:
        raise ArithmeticError(
            f"inclusion-exclusion mismatch at bound {bound}: "
            f"direct={counts.direct}, "
            f"S1+S2-S12={counts.inclusion_exclusion}"
        )
    return model.torsion * counts.direct


def three_quotient_leading(model: ThreeQuotientModel, bound: float) -> float:
    """Leading term assembled from the three pair-count leading terms
    (S1, S2, and the intersection), each via pair_count_leading."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound!r}")
    p = model.exceptional_prime
    log_b = math.log(bound)
    r3 = float(model.reg_3.value)
    r9 = float(model.reg_9.value)
    s1 = pair_count_leading(3, 9, r3 ** (1.0 / 3.0), (p * r9) ** (1.0 / 9.0), log_b)
    s2 = pair_count_leading(3, 9, (p * r3) ** (1.0 / 3.0), r9 ** (1.0 / 9.0), log_b)
    s_both = pair_count_leading(
        3, 9, (p * r3) ** (1.0 / 3.0), (p * r9) ** (1.0 / 9.0), log_b
    )
    return model.torsion * (s1 + s2 - s_both)


def three_quotient_coefficient(model: ThreeQuotientModel) -> CoefficientForm:
    """Closed form of the leading coefficient from the arithmetic inputs:

        torsion * sha_3 * sha_9 * (2/p - 1/p^2)
          / (C(12,3) * 8! * 2!) * 2^-(a3+a9) / (zeta(9) zeta(3))
    """
    p = model.exceptional_prime
    density = Fraction(2, p) - Fraction(1, p * p)
    rational = (
        model.torsion
        * model.sha_3
        * model.sha_9
        * density
        / (220 * math.factorial(8) * math.factorial(2))
    )
    return CoefficientForm(
        rational=rational,
        two_power=-(model.two_exp_3 + model.two_exp_9),
        zeta_args=(9, 3),
        precision=model.reg_3.precision,
    )
