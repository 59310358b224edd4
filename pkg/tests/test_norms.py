import math

import numpy as np
import pytest

from ntrace.errors import AlphaOneZero, DimensionMismatch, IndexOutOfRange, InvalidExponent, NotConcave
from ntrace.falsify import RandomSource, random_complex, random_unitary
from ntrace.models import NormSpec, WeightFunction
from ntrace.norms import (
    choquet_norm, kyfan_decomposition, kyfan_norm, kyfan_pk_norm, norm_of_norms, operator_norm,
    schatten_choquet_norm, sugeno_distance, sugeno_homogeneity_gap, sugeno_norm,
)

from tests import TEST_SEED

LINEAR = WeightFunction.linear()
CONCAVE = WeightFunction((3.0, 2.0, 1.0), 0.5)


@pytest.fixture
def rng():
    return RandomSource(TEST_SEED)


class TestChoquetNorm:
    """Weighted trace and Schatten norms"""

    def test_trace_norm_of_diagonal(self):
        assert choquet_norm(np.diag([-3.0, 1.0]), LINEAR) == pytest.approx(4)

    def test_top_k_weight_is_ky_fan(self, rng):
        a = random_complex(rng, 4)
        assert choquet_norm(a, WeightFunction.top_k(2)) == pytest.approx(kyfan_norm(a, 2))

    def test_unitary_invariance(self, rng):
        a = random_complex(rng, 4)
        u, v = random_unitary(rng, 4), random_unitary(rng, 4)
        assert choquet_norm(u @ a @ v, CONCAVE) == pytest.approx(choquet_norm(a, CONCAVE), abs=1e-8)

    def test_alpha_one_zero(self):
        with pytest.raises(AlphaOneZero):
            choquet_norm(np.eye(2), WeightFunction.selector(2))

    def test_p_one_matches_choquet(self, rng):
        a = random_complex(rng, 3)
        assert schatten_choquet_norm(a, NormSpec(CONCAVE, 1.0)) == pytest.approx(choquet_norm(a, CONCAVE))

    def test_schatten_two(self):
        assert schatten_choquet_norm(np.diag([3.0, 4.0]), NormSpec(LINEAR, 2.0)) == pytest.approx(5)

    def test_exponent_below_one(self):
        with pytest.raises(InvalidExponent):
            NormSpec(LINEAR, 0.5)

    def test_kyfan_decomposition_identity(self, rng):
        a = random_complex(rng, 5)
        for w in (CONCAVE, WeightFunction((1.0, 2.0), 0.0)):
            spec = NormSpec(w, 2.5)
            terms = kyfan_decomposition(a, spec)
            assert terms['value'] == pytest.approx(schatten_choquet_norm(a, spec), abs=1e-8)
            manual = sum(d * kyfan_pk_norm(a, 2.5, k + 1) ** 2.5 for k, d in enumerate(terms['d']))
            assert manual ** (1 / 2.5) == pytest.approx(terms['value'], abs=1e-8)

    def test_norm_of_norms(self, rng):
        a = random_complex(rng, 4)
        spec = NormSpec(CONCAVE, 3.0)
        assert norm_of_norms(a, spec) == pytest.approx(schatten_choquet_norm(a, spec), abs=1e-8)

    def test_norm_of_norms_needs_concavity(self, rng):
        with pytest.raises(NotConcave):
            norm_of_norms(random_complex(rng, 2), NormSpec(WeightFunction((1.0, 2.0), 0.0), 2.0))


class TestKyFanNorms:

    def test_top_two(self):
        assert kyfan_norm(np.diag([3.0, 2.0, 1.0]), 2) == pytest.approx(5)

    def test_extreme_indices(self, rng):
        a = random_complex(rng, 4)
        assert kyfan_norm(a, 1) == pytest.approx(operator_norm(a))
        assert kyfan_norm(a, 4) == pytest.approx(choquet_norm(a, LINEAR))

    def test_pk_norm(self):
        assert kyfan_pk_norm(np.diag([1.0, 2.0, 2.0]), 2.0, 2) == pytest.approx(math.sqrt(8))

    def test_pk_reduces(self, rng):
        a = random_complex(rng, 3)
        assert kyfan_pk_norm(a, 1.0, 2) == pytest.approx(kyfan_norm(a, 2))
        assert kyfan_pk_norm(a, 3.0, 1) == pytest.approx(operator_norm(a))

    def test_k_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            kyfan_norm(np.eye(2), 3)
        with pytest.raises(IndexOutOfRange):
            kyfan_norm(np.eye(2), 0)

    def test_pk_exponent(self):
        with pytest.raises(InvalidExponent):
            kyfan_pk_norm(np.eye(2), 0.5, 1)


class TestSugenoNorm:
    """psi_alpha(|a|), its metric and its failure of homogeneity"""

    def test_direct_evaluation(self):
        assert sugeno_norm(np.diag([5.0, 3.0, 0.5]), LINEAR) == 2

    def test_zero(self):
        assert sugeno_norm(np.zeros((2, 2)), LINEAR) == 0

    def test_small_matrix_gives_operator_norm(self, rng):
        a = random_complex(rng, 3)
        a = 0.5 * a / operator_norm(a)
        assert sugeno_norm(a, LINEAR) == pytest.approx(operator_norm(a))

    def test_metric(self, rng):
        a, b, c = (random_complex(rng, 3) for _ in range(3))
        assert sugeno_distance(a, a, CONCAVE) == pytest.approx(0, abs=1e-12)
        assert sugeno_distance(a, b, CONCAVE) == pytest.approx(sugeno_distance(b, a, CONCAVE))
        assert sugeno_distance(a, c, CONCAVE) <= sugeno_distance(a, b, CONCAVE) + sugeno_distance(b, c, CONCAVE) + 1e-9

    def test_metric_needs_concavity(self):
        with pytest.raises(NotConcave):
            sugeno_distance(np.eye(2), np.eye(2), WeightFunction((1.0, 2.0), 0.0))

    def test_metric_shapes(self):
        with pytest.raises(DimensionMismatch):
            sugeno_distance(np.eye(2), np.eye(3), LINEAR)

    def test_not_homogeneous(self):
        gap = sugeno_homogeneity_gap(np.diag([5.0, 3.0, 0.5]), LINEAR, 2.0)
        assert gap['scaled_norm'] == 2
        assert gap['scaled_by_k'] == 4
        assert gap['gap'] == -2

    def test_complex_scalar(self):
        gap = sugeno_homogeneity_gap(np.diag([0.1, 0.0]), LINEAR, 3j)
        assert gap['gap'] == pytest.approx(0, abs=1e-12)
