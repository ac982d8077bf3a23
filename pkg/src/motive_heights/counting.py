"""Exact enumeration, volume quadrature, Euler summation, and the leading-order
counting formulas for mixed discrete/continuous sublevel regions.

Counting conventions fixed here:
  * pair counts range over positive integers m, n >= 1 (including 0 would
    only shift counts by lower-order terms);
  * every inequality is closed ("<="); this is immaterial for volumes but
    matters for exact counts;
  * bulk enumeration and quadrature run in IEEE doubles -- the fixed
    tolerances (1e-8 .. 1e-10) sit far above double rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .heights import HeightModel, PlaceBlock, QuadraticForm, sublevel_volume_arch
from .special_values import binomial

__all__ = [
    "CountResult",
    "HomogeneityMismatch",
    "HomogeneousFn",
    "RatioRow",
    "RatioSeries",
    "beta_integral",
    "beta_integral_quadrature",
    "divisibility_density",
    "euler_summation",
    "exact_count",
    "form_power_fn",
    "pair_count_exact",
    "pair_count_leading",
    "power_fn",
    "ratio_experiment",
    "region_volume",
]

_CHUNK = 1 << 20


class HomogeneityMismatch(ValueError):
    """The two homogeneous functions do not share the same degree."""


@dataclass(frozen=True)
class CountResult:
    """Exact count at a bound paired with the model's leading-order prediction."""

    bound: float
    exact_count: int
    asymptotic: float

    def __post_init__(self) -> None:
        if self.exact_count < 0:
            raise ValueError(f"exact_count must be >= 0, got {self.exact_count!r}")

    @property
    def ratio(self) -> float:
        return self.exact_count / self.asymptotic if self.asymptotic else math.nan


@dataclass(frozen=True)
class RatioRow:
    bound: float
    count: float
    volume: float
    ratio: float


@dataclass(frozen=True)
class RatioSeries:
    """Rows of (bound, mixed count/mass, volume, ratio) at increasing bounds."""

    rows: tuple[RatioRow, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        bounds = [r.bound for r in rows]
        if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
            raise ValueError(f"bounds must be strictly increasing, got {bounds}")
        object.__setattr__(self, "rows", rows)


# --------------------------------------------------------------------------
# quadrature and Euler summation
# --------------------------------------------------------------------------

def _adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Classic adaptive Simpson with Richardson correction."""

    def simpson(lo: float, hi: float, flo: float, fmid: float, fhi: float) -> float:
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, hi, flo, fmid, fhi, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = simpson(lo, mid, flo, flm, fmid)
        right = simpson(mid, hi, fmid, frm, fhi)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return recurse(lo, mid, flo, flm, fmid, left, eps / 2.0, depth - 1) + recurse(
            mid, hi, fmid, frm, fhi, right, eps / 2.0, depth - 1
        )

    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 48)


def _integer_pieces(y: float, x: float) -> list[tuple[float, float]]:
    """Split [y, x] at the integers strictly inside it."""
    pieces = []
    lo = y
    k = math.floor(y) + 1
    while k < x:
        if k > lo:
            pieces.append((lo, float(k)))
            lo = float(k)
        k += 1
    pieces.append((lo, x))
    return pieces


def euler_summation(
    f: Callable[[float], float],
    f_prime: Callable[[float], float],
    y: float,
    x: float,
    tol: float = 1e-10,
) -> float:
    """Euler's summation formula for sum_{y < n <= x} f(n):

        int_y^x f(u) du + int_y^x {u} f'(u) du - f(x){x} + f(y){y}

    with {u} the fractional part (boundary-term signs as in the classical
    statement, under which the right-hand side equals the sum).  Both
    integrals use adaptive Simpson split at the integer breakpoints of {u},
    so each piece integrates a smooth function; the result matches the
    direct sum up to ~tol*(1+|result|).
    """
    if not (y < x):
        raise ValueError(f"invalid interval: need y < x, got y={y!r}, x={x!r}")
    pieces = _integer_pieces(y, x)
    eps = tol / (2.0 * len(pieces))
    total = 0.0
    for lo, hi in pieces:
        base = math.floor(lo)
        total += _adaptive_simpson(f, lo, hi, eps)
        total += _adaptive_simpson(lambda u, k=base: (u - k) * f_prime(u), lo, hi, eps)
    total += -f(x) * (x - math.floor(x)) + f(y) * (y - math.floor(y))
    return total


# --------------------------------------------------------------------------
# pair counts under a sum of integer roots
# --------------------------------------------------------------------------

def _validate_pair_args(s: int, t: int, a: float, b: float, x: float) -> None:
    if not isinstance(s, int) or not isinstance(t, int) or s < 1 or t < 1:
        raise ValueError(f"s, t must be positive integers, got ({s!r}, {t!r})")
    if not a > 0 or not b > 0:
        raise ValueError(f"a, b must be positive, got ({a!r}, {b!r})")
    if x < 0:
        raise ValueError(f"bound must be non-negative, got {x!r}")


def pair_count_exact(s: int, t: int, a: float, b: float, x: float) -> int:
    """#{(m, n) in N x N : a*m^(1/s) + b*n^(1/t) <= x} with N = {1, 2, ...}.

    Enumerates n up to (x/b)^t and counts m <= ((x - b n^(1/t))/a)^s in
    closed form, chunked for large ranges.
    """
    _validate_pair_args(s, t, a, b, x)
    n_max = int(math.floor((x / b) ** t))
    total = 0
    for lo in range(1, n_max + 1, _CHUNK):
        hi = min(n_max, lo + _CHUNK - 1)
        n = np.arange(lo, hi + 1, dtype=np.float64)
        resid = x - b * n ** (1.0 / t)
        np.maximum(resid, 0.0, out=resid)
        total += int(np.floor((resid / a) ** s).sum())
    return total


def pair_count_leading(s: int, t: int, a: float, b: float, x: float) -> float:
    """Leading term x^(s+t) / (C(s+t, t) * a^s * b^t) of the pair count."""
    _validate_pair_args(s, t, a, b, x)
    return x ** (s + t) / (binomial(s + t, t) * a**s * b**t)


def beta_integral(s: int, t: int) -> Fraction:
    """Exact value of int_0^1 t (1-v)^s v^(t-1) dv = s! t! / (s+t)!."""
    if s < 1 or t < 1:
        raise ValueError(f"s, t must be positive integers, got ({s!r}, {t!r})")
    return Fraction(math.factorial(s) * math.factorial(t), math.factorial(s + t))


def beta_integral_quadrature(s: int, t: int, tol: float = 1e-12) -> float:
    """The same integral by adaptive Simpson, for cross-checking the exact value."""
    if s < 1 or t < 1:
        raise ValueError(f"s, t must be positive integers, got ({s!r}, {t!r})")
    return _adaptive_simpson(
        lambda v: t * (1.0 - v) ** s * v ** (t - 1), 0.0, 1.0, tol
    )


def divisibility_density(p: int) -> Fraction:
    """Density of pairs with at least one coordinate divisible by p:
    2/p - 1/p^2, by inclusion-exclusion on the two residues."""
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {p!r}")
    return Fraction(2, p) - Fraction(1, p * p)


# --------------------------------------------------------------------------
# model counts and volumes
# --------------------------------------------------------------------------

def _block_candidates(block: PlaceBlock, degree: int, budget: float):
    """Costs weight * Q(a)^(1/d) of all lattice vectors a of the block with
    cost <= budget."""
    if budget < 0:
        return
    if block.rank == 0:
        yield 0.0
        return
    w = block.weight
    qbound = (budget / w) ** degree
    for vec in block.form.lattice_points_within(qbound):
        q = block.form.evaluate_float([float(v) for v in vec])
        cost = w * q ** (1.0 / degree)
        if cost <= budget:
            yield cost


def _count_blocks(blocks: Sequence[PlaceBlock], degree: int, budget: float) -> int:
    if budget < 0:
        return 0
    if not blocks:
        return 1
    head, rest = blocks[0], blocks[1:]
    total = 0
    for cost in _block_candidates(head, degree, budget):
        total += _count_blocks(rest, degree, budget - cost)
    return total


def _finite_tuple_costs(blocks: Sequence[PlaceBlock], degree: int, budget: float):
    """Total cost of every finite-place lattice tuple within the budget."""
    if budget < 0:
        return
    if not blocks:
        yield 0.0
        return
    head, rest = blocks[0], blocks[1:]
    for cost in _block_candidates(head, degree, budget):
        for sub in _finite_tuple_costs(rest, degree, budget - cost):
            yield cost + sub


def exact_count(model: HeightModel, bound: float) -> int:
    """N_B: integer tuples over every block's lattice (archimedean included)
    whose log-height is at most ln(bound).

    Blocks are enumerated in a canonical order (archimedean first, then
    finite places by prime), so the result is invariant under permutation of
    the model's finite block list.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound!r}")
    budget = math.log(bound)
    blocks = (model.archimedean, *model.sorted_finite_blocks())
    return _count_blocks(blocks, model.degree, budget)


def region_volume(model: HeightModel, bound: float) -> float:
    """mu(T_B): Fubini sum, over finite-place lattice tuples within the
    bound, of the archimedean sublevel volume at the residual radius."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound!r}")
    budget = math.log(bound)
    total = 0.0
    for cost in _finite_tuple_costs(model.sorted_finite_blocks(), model.degree, budget):
        total += sublevel_volume_arch(model.archimedean.form, model.degree, budget - cost)
    return total


# --------------------------------------------------------------------------
# homogeneous-function ratio experiments
# --------------------------------------------------------------------------

_SAMPLE_SCALARS = (2.0, 3.0, 0.5)


@dataclass(frozen=True)
class HomogeneousFn:
    """Continuous f >= 0 on R^rank, positive away from 0, with
    f(lambda x) = |lambda|^degree_c f(x).

    `unit_volume` is vol{f <= 1}; when omitted it is computed from the
    evaluator (closed interval length in rank 1, polar quadrature in rank 2).
    Construction spot-checks positivity and homogeneity on fixed sample
    vectors.
    """

    rank: int
    degree_c: float
    evaluator: Callable[[tuple[float, ...]], float]
    unit_volume: float | None = None

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank!r}")
        if not self.degree_c > 0:
            raise ValueError(f"degree_c must be positive, got {self.degree_c!r}")
        zero = tuple([0.0] * self.rank)
        if abs(self.evaluator(zero)) > 1e-300:
            raise ValueError("homogeneous function must vanish at 0")
        for vec in self._sample_vectors():
            fv = self.evaluator(vec)
            if not fv > 0:
                raise ValueError(f"f must be positive away from 0; f({vec}) = {fv!r}")
            for lam in _SAMPLE_SCALARS:
                scaled = self.evaluator(tuple(lam * v for v in vec))
                expect = abs(lam) ** self.degree_c * fv
                if abs(scaled - expect) > 1e-9 * (1.0 + abs(expect)):
                    raise ValueError(
                        f"homogeneity violated at lambda={lam}, x={vec}: "
                        f"f(lambda x)={scaled!r}, |lambda|^c f(x)={expect!r}"
                    )

    def _sample_vectors(self) -> list[tuple[float, ...]]:
        vecs = []
        for i in range(self.rank):
            e = [0.0] * self.rank
            e[i] = 1.0
            vecs.append(tuple(e))
            e[i] = -1.0
            vecs.append(tuple(e))
        vecs.append(tuple([1.0] * self.rank))
        return vecs

    def __call__(self, x: Sequence[float]) -> float:
        return self.evaluator(tuple(float(v) for v in x))

    def sublevel_unit_volume(self) -> float:
        """vol{x : f(x) <= 1}."""
        if self.unit_volume is not None:
            return self.unit_volume
        c = self.degree_c
        if self.rank == 1:
            return self((1.0,)) ** (-1.0 / c) + self((-1.0,)) ** (-1.0 / c)
        if self.rank == 2:
            def radial(theta: float) -> float:
                r = self((math.cos(theta), math.sin(theta)))
                return r ** (-2.0 / c)

            return 0.5 * _adaptive_simpson(radial, 0.0, 2.0 * math.pi, 1e-10)
        raise ValueError(
            "unit_volume must be supplied explicitly for rank > 2 evaluators"
        )

    def sublevel_volume(self, level: float) -> float:
        """vol{f <= level} = level^(rank/c) * vol{f <= 1}."""
        if level < 0:
            return 0.0
        return level ** (self.rank / self.degree_c) * self.sublevel_unit_volume()

    def lattice_points_within(self, level: float) -> list[tuple[int, ...]]:
        """Integer vectors with f <= level (rank <= 2)."""
        if level < 0:
            return []
        c = self.degree_c
        if self.rank == 1:
            up = math.floor((level / self((1.0,))) ** (1.0 / c))
            down = math.floor((level / self((-1.0,))) ** (1.0 / c))
            pts = [(k,) for k in range(-down, up + 1)]
            return [p for p in pts if self((float(p[0]),)) <= level]
        if self.rank == 2:
            samples = 720
            fmin = min(
                self((math.cos(2 * math.pi * k / samples), math.sin(2 * math.pi * k / samples)))
                for k in range(samples)
            )
            box = int(math.floor((level / (0.8 * fmin)) ** (1.0 / c))) + 1
            out = []
            for i in range(-box, box + 1):
                for j in range(-box, box + 1):
                    if self((float(i), float(j))) <= level:
                        out.append((i, j))
            return out
        raise ValueError("lattice enumeration implemented for rank <= 2")


def power_fn(rank: int, degree_c: float, coeff: float = 1.0) -> HomogeneousFn:
    """coeff * |x|_2^degree_c, the Euclidean power family."""
    if not coeff > 0:
        raise ValueError(f"coeff must be positive, got {coeff!r}")

    def ev(x: tuple[float, ...]) -> float:
        return coeff * math.sqrt(sum(v * v for v in x)) ** degree_c

    c = degree_c
    if rank == 1:
        unit = 2.0 * coeff ** (-1.0 / c)
    elif rank == 2:
        unit = math.pi * coeff ** (-2.0 / c)
    else:
        unit = None
    return HomogeneousFn(rank=rank, degree_c=c, evaluator=ev, unit_volume=unit)


def form_power_fn(form: QuadraticForm, degree: int, weight: float = 1.0) -> HomogeneousFn:
    """weight * Q(x)^(1/d): the per-place log-height contribution, with its
    exact closed-form unit sublevel volume."""
    if form.rank == 0:
        raise ValueError("rank-0 forms have no homogeneous evaluator")

    def ev(x: tuple[float, ...]) -> float:
        return weight * form.evaluate_float(list(x)) ** (1.0 / degree)

    unit = sublevel_volume_arch(form, degree, 1.0 / weight)
    return HomogeneousFn(
        rank=form.rank, degree_c=2.0 / degree, evaluator=ev, unit_volume=unit
    )


def _mixed_mass(f1: HomogeneousFn, f2: HomogeneousFn, bound: float) -> float:
    """mu{(n, y) in Z^r1 x R^r2 : f1(n) + f2(y) <= bound} by lattice
    enumeration with closed-form fibers."""
    u2 = f2.sublevel_unit_volume()
    exp2 = f2.rank / f2.degree_c
    total = 0.0
    for n in f1.lattice_points_within(bound):
        resid = bound - f1(tuple(float(v) for v in n))
        if resid >= 0:
            total += u2 * resid**exp2
    return total


def _full_volume(f1: HomogeneousFn, f2: HomogeneousFn, bound: float) -> float:
    """vol{(x, y) : f1(x) + f2(y) <= bound} via the Dirichlet-integral
    closed form on the two sublevel-volume power laws."""
    a1 = f1.rank / f1.degree_c
    a2 = f2.rank / f2.degree_c
    u1 = f1.sublevel_unit_volume()
    u2 = f2.sublevel_unit_volume()
    coeff = math.gamma(a1 + 1.0) * math.gamma(a2 + 1.0) / math.gamma(a1 + a2 + 1.0)
    return u1 * u2 * coeff * bound ** (a1 + a2)


def ratio_experiment(
    f1: HomogeneousFn, f2: HomogeneousFn, schedule: Sequence[float]
) -> RatioSeries:
    """For each bound B in the schedule: the mixed lattice-fiber mass
    mu(I(B)), the full volume mu(V(B)), and their ratio (which tends to 1 as
    B grows, the Riemann-sum limit)."""
    if abs(f1.degree_c - f2.degree_c) > 1e-12:
        raise HomogeneityMismatch(
            f"homogeneity degrees differ: {f1.degree_c!r} vs {f2.degree_c!r}"
        )
    rows = []
    for bound in schedule:
        mixed = _mixed_mass(f1, f2, float(bound))
        full = _full_volume(f1, f2, float(bound))
        ratio = mixed / full if full else math.nan
        rows.append(RatioRow(bound=float(bound), count=mixed, volume=full, ratio=ratio))
    return RatioSeries(rows=tuple(rows))
