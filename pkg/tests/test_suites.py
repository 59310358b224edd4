import time

import pytest

from ntrace.errors import UnknownSuite
from ntrace.suites import P_VALUES, SUITES, TRIANGLE_WEIGHTS, run_suite

from tests import TEST_DIM, TEST_SEED, TEST_TRIALS

EXPECTED_CHECKS = {
    'comonotonic-additivity': {
        'phi-comonotone-additivity', 'psi-f-additivity', 'choquet-comonotone-additivity',
        'sugeno-f-additivity', 'choquet-matches-phi-on-diagonal',
    },
    'sugeno-max': {'oracle-equality', 'feasibility-bound', 'compression-monotone'},
    'triangle-choquet': {'concave-subadditive', 'nonconcave-violation-found', 'closed-form-instance'},
    'triangle-sugeno': {'norm-triangle', 'metric-identity', 'metric-symmetry', 'metric-triangle'},
    'majorization-equivalence': {
        'contraction-implies-domination', 'factorization', 'factor-is-contraction',
        'domination-iff-phi-weights', 'sequence-majorization',
    },
    'weight-monotonicity': {
        'alpha-non-decreasing', 'concave-alpha-subadditive', 'norm-monotone-in-weight', 'contraction-p-monotone',
    },
    'ideal-inequalities': {
        'right-ideal', 'adjoint-invariance', 'singular-value-product-bound', 'unitary-invariance',
        'absolute-homogeneity', 'operator-norm-lower-bound',
    },
    'worked-examples': {
        'linear-trace', 'largest-eigenvalue', 'selected-eigenvalue', 'top-k-sum', 'trace-monotone',
        'positive-homogeneity', 'psi-f-homogeneity',
    },
    'dual-formula': {'sum-equals-difference-form', 'partial-sums-increase-to-trace', 'truncations-increase-to-trace'},
    'observation-lemma': {'observation-inequalities', 'case-coverage', 'boundary-instance'},
    'norm-identities': {'kyfan-decomposition', 'norm-of-norms', 'sugeno-below-alpha-one', 'zero-iff-zero'},
}


class TestSuites:
    """Every property suite passes on a small seeded run"""

    def test_registry(self):
        assert set(SUITES) == set(EXPECTED_CHECKS)

    @pytest.mark.parametrize('name', sorted(EXPECTED_CHECKS))
    def test_suite_passes(self, name):
        run = run_suite(name, seed=TEST_SEED, trials=TEST_TRIALS, dim=TEST_DIM)
        checks = {c.name: c for c in run.checks}
        assert set(checks) == EXPECTED_CHECKS[name]
        failed = {n: c.witness for n, c in checks.items() if c.failed}
        assert not failed
        assert all(c.seed == TEST_SEED for c in checks.values())
        assert run.records

    def test_unknown_suite(self):
        with pytest.raises(UnknownSuite) as info:
            run_suite('no-such-suite')
        assert 'sugeno-max' in info.value.details['available']

    def test_zero_trials_skips(self):
        run = run_suite('sugeno-max', seed=TEST_SEED, trials=0, dim=TEST_DIM)
        assert {c.verdict for c in run.checks} == {'skipped'}

    def test_deterministic(self):
        first = run_suite('norm-identities', seed=5, trials=4, dim=3)
        second = run_suite('norm-identities', seed=5, trials=4, dim=3)
        assert first.records == second.records

    def test_tolerance_override_applies(self):
        run = run_suite('dual-formula', seed=TEST_SEED, trials=2, dim=3, tolerance=1e-6)
        assert {c.tolerance for c in run.checks} == {1e-6}

    def test_closed_form_instance_in_one_dimension(self):
        run = run_suite('triangle-choquet', seed=TEST_SEED, trials=1, dim=1)
        checks = {c.name: c for c in run.checks}
        assert checks['closed-form-instance'].passed

    def test_triangle_weights_each_see_every_pair(self):
        run = run_suite('triangle-choquet', seed=TEST_SEED, trials=3, dim=TEST_DIM)
        checks = {c.name: c for c in run.checks}
        assert checks['concave-subadditive'].trials == TRIANGLE_WEIGHTS * 3 * len(P_VALUES)
        assert checks['nonconcave-violation-found'].trials == TRIANGLE_WEIGHTS * len(P_VALUES)
        trials = {r['trial'] for r in run.records if r['check'] == 'concave-subadditive'}
        assert trials == set(range(TRIANGLE_WEIGHTS * 3))


@pytest.mark.slow
class TestAcceptanceScale:
    """Full-size suite runs inside their wall-clock budgets"""

    @pytest.mark.parametrize('name, trials, dim, budget', [
        ('sugeno-max', 1000, 6, 30.0),
        ('worked-examples', 100, 16, 5.0),
        ('comonotonic-additivity', 500, 6, 10.0),
        ('triangle-choquet', 200, 8, 60.0),
    ])
    def test_within_budget(self, name, trials, dim, budget):
        start = time.perf_counter()
        run = run_suite(name, seed=TEST_SEED, trials=trials, dim=dim)
        elapsed = time.perf_counter() - start
        failed = {c.name: c.witness for c in run.checks if c.failed}
        assert not failed
        assert elapsed < budget, f'{name} took {elapsed:.1f}s'
