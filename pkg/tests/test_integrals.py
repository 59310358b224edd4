import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ntrace.errors import DimensionMismatch, ParseError
from ntrace.integrals import (
    are_comonotonic, choquet_integral, decreasing_rearrangement, sorting_permutation, sugeno_integral,
)
from ntrace.models import MonotoneMeasure, NonNegVector, WeightFunction

entries = st.floats(min_value=0.0, max_value=10.0, allow_nan=False, allow_infinity=False)
vectors = st.lists(entries, min_size=1, max_size=6)


def counting(n):
    return MonotoneMeasure.cardinality_based(n, WeightFunction.linear())


class TestRearrangement:
    """Sorting permutation and decreasing rearrangement"""

    @pytest.mark.parametrize('x,expected', [
        ((1, 3, 2), (3, 2, 1)),
        ((0, 0), (0, 0)),
        ((2, 2, 5), (5, 2, 2)),
    ])
    def test_decreasing_rearrangement(self, x, expected):
        assert decreasing_rearrangement(x).entries == expected

    def test_ties_broken_by_index(self):
        assert sorting_permutation((2, 5, 2, 5)) == [1, 3, 0, 2]

    def test_negative_entries_rejected(self):
        with pytest.raises(ParseError):
            NonNegVector((1.0, -2.0))

    @given(vectors)
    def test_permutation_sorts(self, x):
        sigma = sorting_permutation(x)
        assert sorted(sigma) == list(range(len(x)))
        assert [x[i] for i in sigma] == list(decreasing_rearrangement(x))


class TestChoquetIntegral:
    """Discrete Choquet integral"""

    def test_counting_measure_gives_sum(self):
        assert choquet_integral((5, 3, 1), counting(3)) == pytest.approx(9)

    def test_operator_norm_measure_gives_max(self):
        m = MonotoneMeasure.cardinality_based(3, WeightFunction.operator_norm())
        assert choquet_integral((5, 3, 1), m) == pytest.approx(5)

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            choquet_integral((1, 2), counting(3))

    def test_table_matches_summation_by_parts(self):
        rng = np.random.default_rng(11)
        weights = rng.uniform(0.0, 1.0, 4)
        m = MonotoneMeasure.from_function(4, lambda s: float(np.sqrt(sum(weights[i - 1] for i in s))))
        x = rng.uniform(0.0, 5.0, 4)

        sigma = np.argsort(-x, kind='stable')
        expected, previous, chain = 0.0, 0.0, set()
        for i in sigma:
            chain.add(int(i) + 1)
            current = m.value(chain)
            expected += x[i] * (current - previous)
            previous = current
        assert choquet_integral(x, m) == pytest.approx(expected)

    @given(vectors)
    def test_sum_for_counting_measure(self, x):
        assert choquet_integral(x, counting(len(x))) == pytest.approx(sum(x), abs=1e-9)

    @settings(max_examples=50)
    @given(vectors, st.lists(st.floats(min_value=0.0, max_value=2.0), min_size=1, max_size=6))
    def test_comonotone_additivity(self, x, increments):
        n = len(x)
        y = sorted(np.random.default_rng(n).uniform(0.0, 3.0, n))
        x = sorted(x)
        m = MonotoneMeasure.cardinality_based(n, WeightFunction(tuple(increments), 0.0))
        total = choquet_integral(np.add(x, y), m)
        assert total == pytest.approx(choquet_integral(x, m) + choquet_integral(y, m), abs=1e-9)


class TestSugenoIntegral:
    """Discrete Sugeno integral"""

    def test_direct_evaluation(self):
        assert sugeno_integral((5, 3, 0.5), counting(3)) == 2

    def test_zero_vector(self):
        assert sugeno_integral((0, 0, 0), counting(3)) == 0

    def test_saturating_weight(self):
        m = MonotoneMeasure.cardinality_based(2, WeightFunction.constant(3))
        assert sugeno_integral((5, 4), m) == 3

    @given(vectors)
    def test_bounded_by_max_and_total_measure(self, x):
        m = counting(len(x))
        value = sugeno_integral(x, m)
        assert value <= max(x)
        assert value <= len(x)

    @given(vectors)
    def test_comonotone_max_additivity(self, x):
        n = len(x)
        x = sorted(x)
        y = sorted(np.random.default_rng(n + 1).uniform(0.0, 3.0, n))
        m = counting(n)
        assert sugeno_integral(np.maximum(x, y), m) == max(sugeno_integral(x, m), sugeno_integral(y, m))


class TestComonotonicity:

    @pytest.mark.parametrize('f,g,expected', [
        ((1, 2, 3), (10, 20, 30), True),
        ((1, 2), (2, 1), False),
        ((1, 1, 5), (7, 2, 9), True),
    ])
    def test_pairs(self, f, g, expected):
        assert are_comonotonic(f, g) is expected

    def test_lengths_must_match(self):
        with pytest.raises(DimensionMismatch):
            are_comonotonic((1, 2), (1, 2, 3))
