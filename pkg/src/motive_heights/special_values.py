"""Exact arithmetic constants: Bernoulli numbers, zeta special values, binomials.

Sign convention: B_1 = -1/2 (the value forced by the defining recurrence
sum_{j=0}^{k} C(k+1, j) B_j = 0 with B_0 = 1).  Under this convention the
identity zeta(1-m) = -B_m / m holds verbatim for even m >= 2.

Exact values are `fractions.Fraction`; high-precision reals are `mpmath.mpf`
computed under an explicit working precision in bits (default 128).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath as mp

DEFAULT_PRECISION = 128

__all__ = [
    "DEFAULT_PRECISION",
    "bernoulli",
    "binomial",
    "zeta_neg_odd",
    "zeta_pos_odd",
]


@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> tuple[Fraction, ...]:
    """B_0 .. B_k via the binomial recurrence, as exact Fractions."""
    table: list[Fraction] = [Fraction(1)]
    for m in range(1, k + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * table[j]
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number B_k with B_1 = -1/2."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"Bernoulli index must be a non-negative integer, got {k!r}")
    return _bernoulli_table(k)[k]


def binomial(a: int, b: int) -> int:
    """Exact binomial coefficient C(a, b) for 0 <= b <= a."""
    if not isinstance(a, int) or not isinstance(b, int) or a < 0 or b < 0:
        raise ValueError(f"binomial needs non-negative integers, got ({a!r}, {b!r})")
    if b > a:
        raise ValueError(f"binomial requires b <= a, got b={b} > a={a}")
    return comb(a, b)


def zeta_neg_odd(one_minus_m: int) -> Fraction:
    """zeta(1-m) = -B_m/m as an exact rational, for even m >= 2.

    The argument is the negative odd integer 1-m itself, e.g. -11 for m = 12.
    """
    if not isinstance(one_minus_m, int) or one_minus_m >= 0 or one_minus_m % 2 == 0:
        raise ValueError(
            f"zeta_neg_odd expects a negative odd integer argument, got {one_minus_m!r}"
        )
    m = 1 - one_minus_m
    return -bernoulli(m) / m


def zeta_pos_odd(n: int, precision: int = DEFAULT_PRECISION):
    """zeta(n) for odd n >= 3 as an mpf with relative error <= 2**(1-precision).

    Partial summation followed by the Euler-Maclaurin tail expansion; the tail
    is truncated when the first omitted term drops below the target error,
    which also bounds the truncation error for real arguments.
    """
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ValueError(f"zeta_pos_odd expects an odd integer >= 3, got {n!r}")
    if precision < 1:
        raise ValueError(f"precision must be a positive bit count, got {precision!r}")

    guard = 30
    with mp.workprec(precision + guard):
        cutoff = max(16, (precision + guard) // 2)
        target = mp.mpf(2) ** (-(precision + guard))

        acc = mp.fsum(mp.mpf(k) ** (-n) for k in range(1, cutoff + 1))
        ncut = mp.mpf(cutoff)
        acc += ncut ** (1 - n) / (n - 1)
        acc -= ncut ** (-n) / 2

        # tail terms: B_{2j}/(2j)! * n(n+1)...(n+2j-2) * cutoff^(-n-2j+1)
        rising = mp.mpf(1)
        factorial_2j = mp.mpf(1)
        for j in range(1, 4 * cutoff):
            rising *= (n + 2 * j - 2) * (n + 2 * j - 3) if j > 1 else n
            factorial_2j *= (2 * j) * (2 * j - 1)
            b2j = bernoulli(2 * j)
            term = (
                mp.mpf(b2j.numerator)
                / b2j.denominator
                / factorial_2j
                * rising
                * ncut ** (-n - 2 * j + 1)
            )
            if abs(term) < target * acc:
                break
            acc += term
        else:  # pragma: no cover - cutoff scales with precision, loop always breaks
            raise ArithmeticError("Euler-Maclaurin tail failed to converge")

    with mp.workprec(precision):
        return +acc
