import pytest

from ntrace.config import get_config
from ntrace.errors import GroundTooLarge, IncompleteMeasure, IndexOutOfRange, InvalidWeight, ParseError
from ntrace.models import MonotoneMeasure, WeightFunction
from ntrace.weights import (
    check_measure_monotone, first_nonconcavity, is_concave, measure_of, subadditivity_gap, weight_alpha,
)


class TestWeightFunction:
    """alpha values, increments and the named families"""

    def test_linear_weight_counts(self):
        assert weight_alpha(WeightFunction.linear(), 4) == 4

    def test_alpha_zero_is_zero(self):
        assert weight_alpha(WeightFunction((3.0, 1.0), 0.5), 0) == 0

    def test_prefix_then_tail(self):
        w = WeightFunction((1.0, 2.0), 0.0)
        assert weight_alpha(w, 5) == 3
        assert w.increment(2) == 2.0
        assert w.increment(7) == 0.0
        assert list(w.alpha_values(3)) == [0.0, 1.0, 3.0, 3.0]

    def test_named_families(self):
        assert WeightFunction.selector(3).alpha_values(4).tolist() == [0, 0, 0, 1, 1]
        assert WeightFunction.top_k(2).alpha_values(3).tolist() == [0, 1, 2, 2]
        assert WeightFunction.constant(3).alpha(5) == 3
        assert WeightFunction.operator_norm().alpha(9) == 1

    def test_from_alpha(self):
        w = WeightFunction.from_alpha([0, 1, 3])
        assert w.increments == (1.0, 2.0)
        with pytest.raises(InvalidWeight):
            WeightFunction.from_alpha([1, 2])

    def test_negative_increment_rejected(self):
        with pytest.raises(InvalidWeight):
            WeightFunction((1.0, -0.5), 0.0)
        with pytest.raises(InvalidWeight):
            WeightFunction((1.0,), float('nan'))

    def test_bad_indices(self):
        with pytest.raises(IndexOutOfRange):
            WeightFunction.selector(0)
        with pytest.raises(IndexOutOfRange):
            WeightFunction.linear().increment(0)
        with pytest.raises(IndexOutOfRange):
            WeightFunction.linear().alpha(-1)

    def test_alpha_on_huge_cardinalities(self):
        w = WeightFunction((3.0, 2.0, 1.0), 0.5)
        assert measure_of(w, 10 ** 12) == 6.0 + 0.5 * (10 ** 12 - 3)
        assert weight_alpha(WeightFunction.linear(), 10 ** 15) == 1e15
        assert weight_alpha(WeightFunction.operator_norm(), 10 ** 18) == 1.0

    def test_alpha_agrees_with_alpha_values(self):
        w = WeightFunction((0.7, 0.3, 0.1), 0.1)
        values = w.alpha_values(12)
        assert [w.alpha(n) for n in range(13)] == values.tolist()


class TestConcavity:
    """Non-increasing increments and the subadditivity they imply"""

    @pytest.mark.parametrize('increments,tail,expected', [
        ((1.0,), 1.0, True),
        ((1.0, 2.0), 0.0, False),
        ((3.0, 2.0, 1.0), 1.0, True),
        ((1.0,), 2.0, False),
    ])
    def test_is_concave(self, increments, tail, expected):
        assert is_concave(WeightFunction(increments, tail)) is expected

    def test_first_nonconcavity(self):
        assert first_nonconcavity(WeightFunction((1.0, 2.0), 0.0)) == 0
        assert first_nonconcavity(WeightFunction((1.0, 1.0, 5.0), 0.0)) == 1
        assert first_nonconcavity(WeightFunction((2.0, 1.0), 1.5)) == 1
        assert first_nonconcavity(WeightFunction.linear()) is None

    def test_concave_weight_is_subadditive(self):
        assert subadditivity_gap(WeightFunction((3.0, 2.0, 1.0), 0.5), 6) is None
        assert subadditivity_gap(WeightFunction.linear(), 6) is None

    def test_jump_breaks_subadditivity(self):
        gap = subadditivity_gap(WeightFunction((1.0, 2.0), 0.0), 3)
        assert gap == {'m': 1, 'n': 1, 'alpha_sum': 3.0, 'split': 2.0}


class TestMeasures:
    """Cardinality-based and tabulated monotone measures"""

    def test_measure_of_cardinality(self):
        assert measure_of(WeightFunction.linear(), 3) == 3
        assert measure_of(WeightFunction((5.0,), 0.0), 0) == 0
        assert measure_of(WeightFunction((1.0, 1.0), 0.0), 7) == 2

    def test_counting_table_is_monotone(self):
        m = MonotoneMeasure.from_function(3, len)
        report = check_measure_monotone(m)
        assert report.verdict == 'pass'

    def test_violation_reports_witness(self):
        m = MonotoneMeasure(2, table={
            frozenset(): 0.0,
            frozenset({1}): 2.0,
            frozenset({2}): 0.5,
            frozenset({1, 2}): 1.0,
        })
        report = check_measure_monotone(m)
        assert report.verdict == 'fail'
        assert report.witness['smaller'] == [1]
        assert report.witness['larger'] == [1, 2]

    def test_nonzero_empty_set_fails(self):
        m = MonotoneMeasure.from_function(2, lambda s: 1.0 + len(s))
        report = check_measure_monotone(m)
        assert report.verdict == 'fail'
        assert 'empty' in report.detail

    def test_cardinality_rule_is_monotone(self):
        m = MonotoneMeasure.cardinality_based(5, WeightFunction((3.0, 2.0, 1.0), 0.5))
        assert check_measure_monotone(m).passed

    def test_incomplete_table(self):
        with pytest.raises(IncompleteMeasure):
            MonotoneMeasure(2, table={frozenset(): 0.0, frozenset({1}): 1.0})

    def test_subset_outside_ground_set(self):
        with pytest.raises(ParseError):
            MonotoneMeasure(1, table={frozenset(): 0.0, frozenset({2}): 1.0})

    def test_ground_size_cap(self):
        m = MonotoneMeasure.from_function(4, len)
        with pytest.raises(GroundTooLarge):
            check_measure_monotone(m, cap=3)

    def test_ground_size_cap_from_config(self, monkeypatch):
        monkeypatch.setattr(get_config(), 'MEASURE_GROUND_CAP', 3)
        with pytest.raises(GroundTooLarge) as info:
            check_measure_monotone(MonotoneMeasure.from_function(4, len))
        assert info.value.details['cap'] == 3

    def test_cardinality_rule_on_huge_ground_set(self):
        m = MonotoneMeasure.cardinality_based(10 ** 12, WeightFunction((3.0, 2.0, 1.0), 0.5))
        assert check_measure_monotone(m).passed
