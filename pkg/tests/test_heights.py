import math
from fractions import Fraction

import pytest

from motive_heights import (
    AdelicPoint,
    DimensionMismatch,
    HeightModel,
    InvalidForm,
    PlaceBlock,
    QuadraticForm,
    exact_count,
    height,
    log_height,
    sublevel_volume_arch,
)


def arch_model(form: QuadraticForm, degree: int = 2, **kwargs) -> HeightModel:
    return HeightModel(degree=degree, archimedean=PlaceBlock.archimedean(form), **kwargs)


class TestQuadraticForm:
    def test_identity_evaluate(self):
        q = QuadraticForm.identity(2)
        assert q.evaluate([3, 4]) == 25

    def test_rational_entries_from_strings(self):
        q = QuadraticForm([["1/2", 0], [0, "3/4"]])
        assert q.evaluate([2, 2]) == Fraction(5)

    def test_rejects_asymmetric(self):
        with pytest.raises(InvalidForm):
            QuadraticForm([[1, 1], [0, 1]])

    def test_rejects_indefinite(self):
        with pytest.raises(InvalidForm):
            QuadraticForm([[1, 2], [2, 1]])

    def test_rejects_semidefinite(self):
        with pytest.raises(InvalidForm):
            QuadraticForm([[0]])

    def test_rejects_float_entries(self):
        with pytest.raises(InvalidForm):
            QuadraticForm([[1.5]])

    def test_rank_zero_allowed(self):
        q = QuadraticForm([])
        assert q.rank == 0
        assert q.evaluate([]) == 0

    def test_inverse_diagonal(self):
        q = QuadraticForm([[2, 1], [1, 2]])
        # G^-1 = (1/3) [[2,-1],[-1,2]]
        assert q.inverse_diagonal() == (Fraction(2, 3), Fraction(2, 3))

    def test_lattice_points_within(self):
        q = QuadraticForm.identity(2)
        pts = set(q.lattice_points_within(2.0))
        expected = {(i, j) for i in range(-1, 2) for j in range(-1, 2)}
        assert pts == expected


class TestLogHeight:
    def test_zero_point(self):
        model = arch_model(QuadraticForm.identity(1))
        assert log_height(model, AdelicPoint(arch=(0.0,))) == 0.0

    def test_unit_vector_at_finite_place(self):
        model = HeightModel(
            degree=2,
            archimedean=PlaceBlock.archimedean(QuadraticForm.identity(1)),
            finite_blocks=(PlaceBlock.finite(5, QuadraticForm.identity(1)),),
        )
        point = AdelicPoint(arch=(0.0,), finite={5: (1,)})
        assert abs(log_height(model, point) - math.log(5)) < 1e-15

    def test_cube_root_example(self):
        model = arch_model(QuadraticForm.identity(1), degree=3)
        point = AdelicPoint(arch=(8.0,))
        assert abs(log_height(model, point) - 4.0) < 1e-12

    def test_scaling_law(self):
        q = QuadraticForm([[2, 1], [1, 3]])
        for degree in (2, 3, 4):
            model = arch_model(q, degree=degree)
            base = log_height(model, AdelicPoint(arch=(1.0, 2.0)))
            for lam in (2.0, 0.5, -3.0):
                scaled = log_height(model, AdelicPoint(arch=(lam, 2.0 * lam)))
                assert abs(scaled - abs(lam) ** (2.0 / degree) * base) < 1e-12 * (1 + base)

    def test_block_additivity_and_permutation(self):
        qa = QuadraticForm.identity(1)
        q2 = QuadraticForm([[2]])
        q3 = QuadraticForm([["1/2"]])
        blocks = (PlaceBlock.finite(2, q2), PlaceBlock.finite(3, q3))
        m1 = HeightModel(degree=2, archimedean=PlaceBlock.archimedean(qa),
                         finite_blocks=blocks)
        m2 = HeightModel(degree=2, archimedean=PlaceBlock.archimedean(qa),
                         finite_blocks=blocks[::-1])
        point = AdelicPoint(arch=(1.5,), finite={2: (2,), 3: (1,)})
        total = log_height(m1, point)
        parts = (
            1.5,
            math.log(2) * float(q2.evaluate([2])) ** 0.5,
            math.log(3) * float(q3.evaluate([1])) ** 0.5,
        )
        assert abs(total - sum(parts)) < 1e-12
        assert log_height(m1, point) == log_height(m2, point)

    def test_dimension_mismatch(self):
        model = arch_model(QuadraticForm.identity(2))
        with pytest.raises(DimensionMismatch):
            log_height(model, AdelicPoint(arch=(1.0,)))
        with pytest.raises(DimensionMismatch):
            log_height(model, AdelicPoint(arch=(1.0, 2.0), finite={7: (1,)}))


class TestHeight:
    def test_zero_point_height_one(self):
        model = arch_model(QuadraticForm.identity(1))
        assert height(model, AdelicPoint(arch=(0.0,))) == 1.0

    def test_exp_of_log(self):
        model = arch_model(QuadraticForm.identity(1), degree=3)
        point = AdelicPoint(arch=(2.5,))
        assert height(model, point) == math.exp(log_height(model, point))

    def test_finite_unit_point_gives_p(self):
        model = HeightModel(
            degree=2,
            archimedean=PlaceBlock.archimedean(QuadraticForm([])),
            finite_blocks=(PlaceBlock.finite(7, QuadraticForm.identity(1)),),
        )
        point = AdelicPoint(arch=(), finite={7: (1,)})
        assert abs(height(model, point) - 7.0) < 1e-12


class TestSublevelVolume:
    def test_rank1_identity(self):
        q = QuadraticForm.identity(1)
        for r in (0.5, 1.0, 3.7):
            assert abs(sublevel_volume_arch(q, 2, r) - 2.0 * r) < 1e-12

    def test_rank2_disk(self):
        q = QuadraticForm.identity(2)
        assert abs(sublevel_volume_arch(q, 2, 3.0) - math.pi * 9.0) < 1e-10

    def test_determinant_factor(self):
        q = QuadraticForm([[4]])
        assert abs(sublevel_volume_arch(q, 2, 2.0) - 2.0) < 1e-12

    def test_homogeneity(self):
        q = QuadraticForm([[2, 1], [1, 3]])
        for degree in (2, 3):
            base = sublevel_volume_arch(q, degree, 1.0)
            for r in (0.5, 2.0, 5.0):
                expect = r ** (degree * 2 / 2.0) * base
                got = sublevel_volume_arch(q, degree, r)
                assert abs(got - expect) < 1e-12 * (1 + expect)

    def test_rank0(self):
        assert sublevel_volume_arch(QuadraticForm([]), 2, 5.0) == 1.0

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            sublevel_volume_arch(QuadraticForm.identity(1), 2, -1.0)


class TestModelValidation:
    def test_duplicate_primes_rejected(self):
        q = QuadraticForm.identity(1)
        with pytest.raises(ValueError):
            HeightModel(
                degree=2,
                archimedean=PlaceBlock.archimedean(q),
                finite_blocks=(PlaceBlock.finite(2, q), PlaceBlock.finite(2, q)),
            )

    def test_degree_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            arch_model(QuadraticForm.identity(1), degree=1)

    def test_positive_scalars(self):
        with pytest.raises(ValueError):
            arch_model(QuadraticForm.identity(1), compact_mass=0.0)
        with pytest.raises(ValueError):
            arch_model(QuadraticForm.identity(1), torsion_order=0)

    def test_mass_for_absent_place_rejected(self):
        with pytest.raises(ValueError):
            arch_model(QuadraticForm.identity(1), local_masses={3: 1.0})


class TestFiniteness:
    def test_bounded_counts_terminate_and_grow(self):
        q2 = QuadraticForm([[2]])
        model = HeightModel(
            degree=2,
            archimedean=PlaceBlock.archimedean(QuadraticForm.identity(1)),
            finite_blocks=(PlaceBlock.finite(2, q2),),
        )
        counts = [exact_count(model, math.exp(l)) for l in (0.5, 1.5, 3.0, 6.0)]
        assert all(c >= 1 for c in counts)
        assert all(a <= b for a, b in zip(counts, counts[1:]))
