"""Height structures: one archimedean block plus finitely many finite-place
blocks, each carrying a positive-definite quadratic form with exact rational
Gram matrix.

The logarithmic height of a point is
    Q_inf(a_inf)^(1/d) + sum_p ln(p) * Q_p(a_p)^(1/d)
and the height is its exponential.  Positive definiteness is checked eagerly
by leading principal minors in exact rational arithmetic; evaluation returns
IEEE doubles (every stated tolerance downstream is >= 1e-10, far above double
rounding).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

__all__ = [
    "AdelicPoint",
    "DimensionMismatch",
    "HeightModel",
    "InvalidForm",
    "PlaceBlock",
    "QuadraticForm",
    "height",
    "log_height",
    "sublevel_volume_arch",
]


class InvalidForm(ValueError):
    """Gram matrix is not symmetric positive definite (or malformed)."""


class DimensionMismatch(ValueError):
    """Point components do not match the model's ranks."""


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidForm(f"Gram entries must be exact rationals, got {x!r}")


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by exact Gaussian elimination over the rationals."""
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric positive-definite form with exact rational Gram matrix.

    Rank 0 (the trivial form) is allowed and evaluates to 0.
    """

    gram: tuple[tuple[Fraction, ...], ...]

    def __init__(self, gram: Sequence[Sequence]) -> None:
        rows = tuple(tuple(_to_fraction(x) for x in row) for row in gram)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise InvalidForm(f"Gram matrix must be square, got rows {rows!r}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InvalidForm(
                        f"Gram matrix not symmetric at ({i},{j}): "
                        f"{rows[i][j]} != {rows[j][i]}"
                    )
        for k in range(1, n + 1):
            minor = _det([list(rows[i][:k]) for i in range(k)])
            if minor <= 0:
                raise InvalidForm(
                    f"leading principal minor of order {k} is {minor}; "
                    f"the form is not positive definite"
                )
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @classmethod
    def identity(cls, rank: int) -> "QuadraticForm":
        return cls(
            [[Fraction(int(i == j)) for j in range(rank)] for i in range(rank)]
        )

    def det(self) -> Fraction:
        return _det([list(r) for r in self.gram]) if self.rank else Fraction(1)

    def evaluate(self, x: Sequence) -> Fraction:
        """Exact Q(x) = x^T G x for rational/integer component vectors."""
        if len(x) != self.rank:
            raise DimensionMismatch(
                f"form has rank {self.rank}, point has {len(x)} components"
            )
        vec = [_to_fraction(v) if not isinstance(v, Fraction) else v for v in x]
        acc = Fraction(0)
        for i, gi in enumerate(self.gram):
            acc += vec[i] * sum(gij * vec[j] for j, gij in enumerate(gi))
        return acc

    def evaluate_float(self, x: Sequence[float]) -> float:
        if len(x) != self.rank:
            raise DimensionMismatch(
                f"form has rank {self.rank}, point has {len(x)} components"
            )
        acc = 0.0
        for i, gi in enumerate(self.gram):
            acc += x[i] * sum(float(gij) * x[j] for j, gij in enumerate(gi))
        return acc

    def inverse_diagonal(self) -> tuple[Fraction, ...]:
        """Diagonal of G^-1 (exact): max of x_i^2 over {Q <= R} is R * inv_ii."""
        d = self.det()
        out = []
        for i in range(self.rank):
            sub = [
                [self.gram[r][c] for c in range(self.rank) if c != i]
                for r in range(self.rank)
                if r != i
            ]
            out.append(_det(sub) / d if sub else Fraction(1) / d)
        return tuple(out)

    def lattice_points_within(self, bound: float) -> Iterable[tuple[int, ...]]:
        """All integer vectors with Q(x) <= bound (bound in float).

        Box from the exact inverse diagonal, then exhaustive filtering.
        """
        if bound < 0:
            return
        if self.rank == 0:
            yield ()
            return
        inv = self.inverse_diagonal()
        ranges = []
        for ii in inv:
            # max of x_i^2 over {Q <= bound} is bound * inv_ii
            m = math.isqrt(int(bound * float(ii)))
            ranges.append(range(-m, m + 1))
        for vec in product(*ranges):
            if self.evaluate_float([float(v) for v in vec]) <= bound:
                yield vec


@dataclass(frozen=True)
class PlaceBlock:
    """One place's contribution: a prime (or None for the archimedean place)
    and the positive-definite form on its rank-s_p lattice.

    The weight is ln(p) at a finite place and exactly 1 at infinity.
    """

    prime: int | None
    form: QuadraticForm

    def __post_init__(self) -> None:
        if self.prime is not None and (not isinstance(self.prime, int) or self.prime < 2):
            raise ValueError(f"finite place must be a prime >= 2, got {self.prime!r}")

    @property
    def rank(self) -> int:
        return self.form.rank

    @property
    def weight(self) -> float:
        return 1.0 if self.prime is None else math.log(self.prime)

    @classmethod
    def archimedean(cls, form: QuadraticForm) -> "PlaceBlock":
        return cls(prime=None, form=form)

    @classmethod
    def finite(cls, prime: int, form: QuadraticForm) -> "PlaceBlock":
        return cls(prime=prime, form=form)


@dataclass(frozen=True)
class HeightModel:
    """Degree-d height structure plus the auxiliary scalars of the counting
    harness: torsion order, compact mass, per-place local masses, and the
    supplied Tamagawa number.

    Compact factors enter only through their masses; the archimedean lattice
    is the standard integer lattice in R^{s_inf} (covolume normalization is
    the caller's responsibility).
    """

    degree: int
    archimedean: PlaceBlock
    finite_blocks: tuple[PlaceBlock, ...] = ()
    torsion_order: int = 1
    compact_mass: float = 1.0
    local_masses: Mapping[int, float] = field(default_factory=dict)
    tamagawa: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.degree, int) or self.degree < 2:
            raise ValueError(f"degree must be an integer >= 2, got {self.degree!r}")
        if self.archimedean.prime is not None:
            raise ValueError("archimedean block must have prime=None")
        blocks = tuple(self.finite_blocks)
        object.__setattr__(self, "finite_blocks", blocks)
        primes = [b.prime for b in blocks]
        if None in primes:
            raise ValueError("finite_blocks must all carry a prime")
        if len(set(primes)) != len(primes):
            raise ValueError(f"finite places must be distinct, got {primes}")
        if self.torsion_order < 1:
            raise ValueError(f"torsion_order must be >= 1, got {self.torsion_order!r}")
        if not self.compact_mass > 0 or not self.tamagawa > 0:
            raise ValueError("compact_mass and tamagawa must be positive")
        masses = {p: self.local_masses.get(p, 1.0) for p in primes}
        if any(not m > 0 for m in masses.values()):
            raise ValueError(f"local masses must be positive, got {masses}")
        extra = set(self.local_masses) - set(primes)
        if extra:
            raise ValueError(f"local masses given for absent places {sorted(extra)}")
        object.__setattr__(self, "local_masses", masses)

    def sorted_finite_blocks(self) -> tuple[PlaceBlock, ...]:
        return tuple(sorted(self.finite_blocks, key=lambda b: b.prime))

    def mass_product(self) -> float:
        out = self.compact_mass
        for p in sorted(self.local_masses):
            out *= self.local_masses[p]
        return out


@dataclass(frozen=True)
class AdelicPoint:
    """Real archimedean component plus integer components at the finite places."""

    arch: tuple[float, ...]
    finite: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "arch", tuple(float(v) for v in self.arch))
        object.__setattr__(
            self, "finite", {p: tuple(v) for p, v in self.finite.items()}
        )


def _check_conforms(model: HeightModel, point: AdelicPoint) -> None:
    if len(point.arch) != model.archimedean.rank:
        raise DimensionMismatch(
            f"archimedean rank {model.archimedean.rank} != "
            f"component length {len(point.arch)}"
        )
    primes = {b.prime for b in model.finite_blocks}
    unknown = set(point.finite) - primes
    if unknown:
        raise DimensionMismatch(f"point has components at absent places {sorted(unknown)}")
    for block in model.finite_blocks:
        comp = point.finite.get(block.prime, tuple([0] * block.rank))
        if len(comp) != block.rank:
            raise DimensionMismatch(
                f"place {block.prime}: rank {block.rank} != length {len(comp)}"
            )


def log_height(model: HeightModel, point: AdelicPoint) -> float:
    """Q_inf(arch)^(1/d) + sum_p ln(p) Q_p(a_p)^(1/d); zero iff every
    component vanishes."""
    _check_conforms(model, point)
    d = model.degree
    total = model.archimedean.form.evaluate_float(list(point.arch)) ** (1.0 / d)
    for block in model.sorted_finite_blocks():
        comp = point.finite.get(block.prime)
        if comp is None:
            continue
        q = float(block.form.evaluate(comp))
        total += block.weight * q ** (1.0 / d)
    return total


def height(model: HeightModel, point: AdelicPoint) -> float:
    """exp(log_height); always >= 1."""
    return math.exp(log_height(model, point))


def sublevel_volume_arch(form: QuadraticForm, degree: int, radius: float) -> float:
    """Lebesgue volume of {x in R^s : Q(x)^(1/d) <= radius}.

    Closed form radius^(d*s/2) * pi^(s/2) / (Gamma(s/2+1) * sqrt(det G));
    rank 0 returns 1.
    """
    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius!r}")
    if not isinstance(degree, int) or degree < 2:
        raise ValueError(f"degree must be an integer >= 2, got {degree!r}")
    s = form.rank
    if s == 0:
        return 1.0
    unit = math.pi ** (s / 2.0) / (math.gamma(s / 2.0 + 1.0) * math.sqrt(float(form.det())))
    return radius ** (degree * s / 2.0) * unit
