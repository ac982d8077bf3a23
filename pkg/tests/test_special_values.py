from fractions import Fraction

import mpmath as mp
import pytest

from motive_heights import bernoulli, binomial, zeta_neg_odd, zeta_pos_odd

from oracles import bernoulli_first_kind, zeta_series_bracket


class TestBernoulli:
    def test_base_case(self):
        assert bernoulli(0) == 1

    def test_b1_convention(self):
        assert bernoulli(1) == Fraction(-1, 2)

    def test_b12_irregular_numerator(self):
        assert bernoulli(12) == Fraction(-691, 2730)

    @pytest.mark.parametrize("k", range(3, 31, 2))
    def test_odd_indices_vanish(self, k):
        assert bernoulli(k) == 0

    @pytest.mark.parametrize("k", range(0, 25))
    def test_against_akiyama_tanigawa(self, k):
        assert bernoulli(k) == bernoulli_first_kind(k)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            bernoulli(-1)


class TestZetaNegOdd:
    def test_minus_eleven(self):
        assert zeta_neg_odd(-11) == Fraction(691, 32760)

    def test_minus_one(self):
        assert zeta_neg_odd(-1) == Fraction(-1, 12)

    def test_minus_three(self):
        assert zeta_neg_odd(-3) == Fraction(1, 120)

    @pytest.mark.parametrize("m", range(2, 21, 2))
    def test_self_consistency_with_independent_recurrence(self, m):
        assert zeta_neg_odd(1 - m) == -bernoulli_first_kind(m) / m

    @pytest.mark.parametrize("bad", [0, 1, 3, -2, -4])
    def test_rejects_non_negative_or_even(self, bad):
        with pytest.raises(ValueError):
            zeta_neg_odd(bad)


class TestZetaPosOdd:
    def test_zeta3_against_series_bracket(self):
        lower, upper = zeta_series_bracket(3, 2_000_000)
        value = float(zeta_pos_odd(3, 128))
        assert lower - 1e-12 <= value <= upper + 1e-12
        assert abs(value - 1.2020569031595942) < 1e-13

    def test_zeta9_against_series_bracket(self):
        lower, upper = zeta_series_bracket(9, 200_000)
        value = float(zeta_pos_odd(9, 128))
        assert lower - 1e-12 <= value <= upper + 1e-12
        assert abs(value - 1.0020083928260821) < 1e-13

    def test_precision_monotonicity(self):
        coarse = zeta_pos_odd(3, 64)
        fine = zeta_pos_odd(3, 128)
        assert abs(float(coarse - fine)) <= 2.0 ** (1 - 64) * float(fine)

    @pytest.mark.parametrize("n", [3, 5, 9, 15, 21])
    @pytest.mark.parametrize("precision", [64, 128])
    def test_relative_error_bound(self, n, precision):
        value = zeta_pos_odd(n, precision)
        with mp.workprec(precision + 50):
            ref = mp.zeta(n)
            assert abs((value - ref) / ref) <= mp.mpf(2) ** (1 - precision)

    def test_decreasing_towards_one(self):
        values = [float(zeta_pos_odd(n, 64)) for n in range(3, 22, 2)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert all(v > 1.0 for v in values)
        assert values[-1] - 1.0 < 1e-6

    @pytest.mark.parametrize("bad", [1, 2, 4, 0, -3])
    def test_rejects_even_or_small(self, bad):
        with pytest.raises(ValueError):
            zeta_pos_odd(bad)


class TestBinomial:
    def test_twelve_choose_three(self):
        assert binomial(12, 3) == 220

    @pytest.mark.parametrize("a", [0, 1, 5, 17])
    def test_edges(self, a):
        assert binomial(a, 0) == 1
        assert binomial(a, a) == 1

    def test_pascal_rule(self):
        for a in range(1, 31):
            for b in range(1, a):
                assert binomial(a, b) == binomial(a - 1, b - 1) + binomial(a - 1, b)

    def test_rejects_b_above_a(self):
        with pytest.raises(ValueError):
            binomial(3, 4)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)
