"""Tabulated K-theoretic input data and the derived arithmetic quantities.

Covers the K_n(Z) structure in the congruence classes actually used by the
counting experiments (n = 8k+1, n = 8k+5, and the torsion group at n = 22),
Soule-element regulators, Mazur-Wiles torsion orders, Tate-Shafarevich
bookkeeping, and the support of the relevant cup product (the prime 691).

Everything outside the tabulated cases raises OutOfTable rather than
extrapolating.  Unknown powers of two stay explicit: every regulator carries
its `two_exp` parameter and downstream results are reported up to that power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt

import mpmath as mp

from .special_values import DEFAULT_PRECISION, zeta_neg_odd, zeta_pos_odd

__all__ = [
    "KGroupShape",
    "MotiveTateParams",
    "NonIntegralSha",
    "NonIntegralTorsion",
    "OutOfTable",
    "RegulatorValue",
    "cup_product_support",
    "extension_sha_order",
    "h2_order",
    "is_prime",
    "k_group_shape",
    "mazur_wiles_torsion_order",
    "regulator",
]


class OutOfTable(LookupError):
    """The requested value is outside the tabulated cases; supply data manually."""


class NonIntegralTorsion(ValueError):
    """sha_m / |zeta(1-m)| is not an integer: inconsistent (m, sha_m) input."""


class NonIntegralSha(ValueError):
    """delta_order does not divide sha_m * sha_n: inconsistent input."""


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for f in range(3, isqrt(p) + 1, 2):
        if p % f == 0:
            return False
    return True


@dataclass(frozen=True)
class KGroupShape:
    """Shape of K_n(Z): free rank plus the modeled cyclic torsion factors.

    `modeled_only` flags that only the factors pinned by the tabulated results
    are listed; it does not assert completeness of the torsion description.
    """

    n: int
    free_rank: int
    torsion: tuple[tuple[int, int], ...]
    modeled_only: bool = True


def k_group_shape(n: int) -> KGroupShape:
    """Tabulated K_n(Z) shape for n = 8k+1 (n >= 9), n = 8k+5, or n = 22."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"K-group index must be a positive integer, got {n!r}")
    if n == 22:
        return KGroupShape(n=22, free_rank=0, torsion=((691, 1),))
    if n % 8 == 1 and n >= 9:
        return KGroupShape(n=n, free_rank=1, torsion=((2, 1),))
    if n % 8 == 5:
        return KGroupShape(n=n, free_rank=1, torsion=())
    raise OutOfTable(
        f"K_{n}(Z) is not tabulated here (supported: n = 8k+1 with n >= 9, "
        f"n = 8k+5, n = 22); supply the group data manually"
    )


@dataclass(frozen=True)
class RegulatorValue:
    """Archimedean regulator of the Soule generator of K_{2m-1}(Z), as an mpf."""

    m: int
    value: mp.mpf
    precision: int = DEFAULT_PRECISION

    def __post_init__(self) -> None:
        if self.value <= 0:
            raise ValueError(f"regulator value must be positive, got {self.value}")

    def __float__(self) -> float:
        return float(self.value)


def regulator(
    m: int,
    sha_m: int = 1,
    two_exp: int = 0,
    precision: int = DEFAULT_PRECISION,
) -> RegulatorValue:
    """r = 2**two_exp * (m-1)! * zeta(m) / sha_m for odd m >= 3.

    The power of two is genuinely unknown upstream; it is never folded in
    silently, callers pick `two_exp` and results are quoted modulo it.
    """
    if not isinstance(m, int) or m < 3 or m % 2 == 0:
        raise ValueError(f"regulator index must be an odd integer >= 3, got {m!r}")
    if sha_m < 1:
        raise ValueError(f"sha order must be a positive integer, got {sha_m!r}")
    with mp.workprec(precision + 10):
        value = (
            mp.mpf(2) ** two_exp * factorial(m - 1) * zeta_pos_odd(m, precision) / sha_m
        )
    with mp.workprec(precision):
        value = +value
    return RegulatorValue(m=m, value=value, precision=precision)


def mazur_wiles_torsion_order(m: int, sha_m: int, strict: bool = True) -> Fraction:
    """Torsion order #T = sha_m / |zeta(1-m)| for even m >= 2, as an exact rational.

    The quotient is an integer exactly when (m, sha_m) are arithmetically
    consistent.  With strict=True a non-integral quotient raises
    NonIntegralTorsion; with strict=False the fractional value is returned so
    the inconsistency can be inspected.
    """
    if not isinstance(m, int) or m < 2 or m % 2 == 1:
        raise ValueError(f"Mazur-Wiles order needs an even integer m >= 2, got {m!r}")
    if sha_m < 1:
        raise ValueError(f"sha order must be a positive integer, got {sha_m!r}")
    q = Fraction(sha_m) / abs(zeta_neg_odd(1 - m))
    if strict and q.denominator != 1:
        raise NonIntegralTorsion(
            f"sha_m/|zeta(1-m)| = {q} is not an integer for m={m}, sha_m={sha_m}; "
            f"the inputs are arithmetically inconsistent"
        )
    return q


@dataclass(frozen=True)
class MotiveTateParams:
    """Parameters of a two-quotient mixed Tate counting problem.

    m, n are the Tate twists of the graded quotients (m even, n odd,
    m - n >= 2); sha_m, sha_n are supplied Tate-Shafarevich orders;
    delta_order is |delta| = prod_p |im(delta)_p|; two_exp is the declared
    unknown exponent of two in the regulator formula.
    """

    m: int
    n: int
    sha_m: int = 1
    sha_n: int = 1
    delta_order: int = 1
    two_exp: int = 0

    def __post_init__(self) -> None:
        if self.m % 2 != 0 or self.m < 4:
            raise ValueError(f"m must be an even integer >= 4, got {self.m!r}")
        if self.n % 2 != 1 or self.n < 3:
            raise ValueError(f"n must be an odd integer >= 3, got {self.n!r}")
        if self.m - self.n < 2:
            raise ValueError(f"m - n >= 2 required, got m={self.m}, n={self.n}")
        for name in ("sha_m", "sha_n", "delta_order"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")


def extension_sha_order(params: MotiveTateParams, strict: bool = True) -> Fraction:
    """Sha order of the extension: sha_m * sha_n / delta_order.

    Integral for consistent inputs; strict=True raises NonIntegralSha when
    delta_order fails to divide the product.
    """
    q = Fraction(params.sha_m * params.sha_n, params.delta_order)
    if strict and q.denominator != 1:
        raise NonIntegralSha(
            f"delta_order={params.delta_order} does not divide "
            f"sha_m*sha_n={params.sha_m * params.sha_n}; got {q}"
        )
    return q


def cup_product_support(p: int) -> bool:
    """True iff the cup product of the degree-3 and degree-9 Soule classes
    is non-zero at p.  That happens at p = 691 and nowhere else."""
    if not is_prime(p):
        raise ValueError(f"cup_product_support expects a prime, got {p!r}")
    return p == 691


def h2_order(m: int, p: int) -> int:
    """Order of H^2(Z[1/p], Z_p(m)).  Only m = 12 is tabulated: 691 at
    p = 691, trivial elsewhere."""
    if m != 12:
        raise OutOfTable(f"H^2 order is only tabulated for twist 12, got m={m!r}")
    if not is_prime(p):
        raise ValueError(f"h2_order expects a prime, got {p!r}")
    return 691 if p == 691 else 1
