"""Independent oracles used by the tests.

Each one computes its quantity by a route different from the implementation
under test: Akiyama-Tanigawa instead of the binomial recurrence, bracketed
direct series instead of Euler-Maclaurin tails, full brute-force grids
instead of closed-form inner counts.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def bernoulli_at(n: int) -> Fraction:
    """B_n by the Akiyama-Tanigawa triangle (B_1 = +1/2 convention); even
    indices agree with the first-kind convention."""
    row = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
    return row[0]


def bernoulli_first_kind(n: int) -> Fraction:
    value = bernoulli_at(n)
    return -value if n == 1 else value


def zeta_series_bracket(s: int, terms: int) -> tuple[float, float]:
    """[lower, upper] bracket for zeta(s) from the partial sum plus integral
    tail bounds."""
    main = math.fsum(k ** float(-s) for k in range(terms, 0, -1))
    lower = main + (terms + 1) ** (1 - s) / (s - 1)
    upper = main + terms ** (1 - s) / (s - 1)
    return lower, upper


def brute_pair_count(s: int, t: int, a: float, b: float, x: float) -> int:
    """Full double loop over the bounding rectangle."""
    count = 0
    m_top = int((x / a) ** s) + 2
    n_top = int((x / b) ** t) + 2
    for m in range(1, m_top + 1):
        for n in range(1, n_top + 1):
            if a * m ** (1.0 / s) + b * n ** (1.0 / t) <= x:
                count += 1
    return count


def brute_model_count_2blocks(
    weight_arch: float,
    weight_fin: float,
    degree: int,
    q_arch: float,
    q_fin: float,
    budget: float,
) -> int:
    """Double loop for a model with one rank-1 archimedean and one rank-1
    finite block with forms q*x^2."""
    count = 0
    z_top = int(math.floor((budget / weight_arch) ** degree / q_arch ** 0.5)) + 2
    a_top = int(math.floor((budget / weight_fin) ** degree / q_fin ** 0.5)) + 2
    for z in range(-z_top, z_top + 1):
        for a in range(-a_top, a_top + 1):
            h = weight_arch * (q_arch * z * z) ** (1.0 / degree)
            h += weight_fin * (q_fin * a * a) ** (1.0 / degree)
            if h <= budget:
                count += 1
    return count


def brute_mixed_mass_squares(bound: float) -> float:
    """Sum over n in Z with n^2 <= bound of the fiber length 2*sqrt(bound-n^2)."""
    top = int(math.floor(math.sqrt(bound)))
    return math.fsum(
        2.0 * math.sqrt(bound - n * n) for n in range(-top, top + 1) if n * n <= bound
    )


def brute_two_quotient_count(
    torsion: int, reg_mn: float, reg_n: float, m: int, n: int,
    delta: int, u: int, log_b: float,
) -> int:
    """Direct loop over z (both signs) under the two-root height condition."""
    z_top = int(log_b ** n / (delta * reg_n)) + 2
    count = 0
    for z in range(-z_top, z_top + 1):
        h = (u * reg_mn) ** (1.0 / (m - n)) + (abs(z) * delta * reg_n) ** (1.0 / n)
        if h <= log_b:
            count += 1
    return torsion * count


def brute_three_quotient_counts(
    reg_3: float, reg_9: float, log_b: float, p: int = 691
) -> tuple[int, int, int, int]:
    """Full grid over (m, u) with the divisibility predicate evaluated
    pointwise: returns (direct, s1, s2, s_both)."""
    m_top = int(math.floor(log_b**3 / reg_3)) + 1
    u_top = int(math.floor(log_b**9 / reg_9)) + 1
    m = np.arange(1, m_top + 1, dtype=np.float64)
    u = np.arange(1, u_top + 1, dtype=np.float64)
    height = (u[None, :] * reg_9) ** (1.0 / 9.0) + (m[:, None] * reg_3) ** (1.0 / 3.0)
    inside = height <= log_b
    div_m = (np.arange(1, m_top + 1) % p == 0)[:, None]
    div_u = (np.arange(1, u_top + 1) % p == 0)[None, :]
    s1 = int((inside & div_u).sum())
    s2 = int((inside & div_m).sum())
    s_both = int((inside & div_m & div_u).sum())
    direct = int((inside & (div_m | div_u)).sum())
    return direct, s1, s2, s_both
