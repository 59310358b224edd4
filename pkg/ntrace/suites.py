"""Randomized property suites behind the `check` command

Each suite runs `trials` independent trials, trial k drawing from the stream
seed + k, and folds the per-trial outcomes of its named checks into
CheckReports. Every observation is also kept as a flat record so a run can be
exported for inspection.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from ntrace.errors import NtraceError, SearchExhausted, UnknownSuite
from ntrace.falsify import (
    RandomSource, proof_family_counterexample, random_complex, random_complex_stack, random_contraction,
    random_projection, random_projections, random_psd, random_unitary, random_weight, verify_counterexample,
)
from ntrace.integrals import choquet_integral, sugeno_integral
from ntrace.majorization import (
    FACTORIZATION_RTOL, construct_contraction, eigen_dominates, factorization_error, majorizes, phi_weight_dominance,
    weak_majorizes,
)
from ntrace.models import CheckReport, HermitianMatrix, MonotoneMeasure, NonNegVector, SpectrumFunction, WeightFunction
from ntrace.norms import (
    kyfan_decomposition_from_singular, norm_of_norms_from_singular, operator_norm, schatten_from_singular,
    sugeno_distance, sugeno_norm,
)
from ntrace.spectral import (
    apply_spectrum_function, eigenvalue_sequence, psd_eigh, singular_value_stack, singular_values,
)
from ntrace.traces import (
    compressed_psi, f_truncate, feasible_levels, observation_margins, observation_projections, phi_alpha,
    phi_difference_form, phi_from_eigenvalues, phi_partial_sums, psi_alpha, psi_from_eigenvalues, psi_partial_sums,
    sugeno_max_oracle, truncation,
)
from ntrace.weights import is_concave, subadditivity_gap

logger = logging.getLogger(__name__)

P_VALUES = (1.0, 1.5, 2.0, 3.0)
FEASIBILITY_PROJECTIONS = 200
TRIANGLE_WEIGHTS = 20
INTEGRAL_GROUND_SIZE = 6

EXACT = 0.0
EIGEN_ATOL = 1e-9
TRACE_ATOL = 1e-8
INTEGRAL_ATOL = 1e-10
DUAL_RTOL = 1e-10


class _Tally:
    """Outcomes of one named check across the trials of a run"""

    def __init__(self, run, name, tolerance):
        self.run = run
        self.name = name
        self.tolerance = tolerance
        self.observed = 0
        self.witness = None
        self.worst = None

    def observe(self, trial, excess, ok=None, **witness):
        """Record one trial; `excess` is how far the property is violated (<= 0 is clean)"""
        excess = float(excess)
        if ok is None:
            ok = excess <= self.tolerance
        self.observed += 1
        if self.worst is None or excess > self.worst:
            self.worst = excess
        if not ok and self.witness is None:
            self.witness = {'trial': trial, 'excess': excess, **witness}
            logger.warning(f'{self.run.name}/{self.name} failed at trial {trial}: excess {excess:.3e}')
        self.run.records.append({
            'suite': self.run.name, 'check': self.name, 'trial': trial,
            'excess': excess, 'passed': bool(ok),
        })

    def flag(self, trial, ok, **witness):
        self.observe(trial, 0.0 if ok else 1.0, ok=bool(ok), **witness)

    def report(self):
        if self.observed == 0:
            verdict = 'skipped'
        else:
            verdict = 'pass' if self.witness is None else 'fail'
        detail = f'{self.observed} observations'
        if self.worst is not None:
            detail += f', worst excess {self.worst:.3e}'
        return CheckReport(self.name, verdict, self.tolerance, self.witness,
                           self.run.seed, self.observed, detail)


@dataclass
class SuiteRun:
    name: str
    seed: int
    trials: int
    dim: int
    tolerance: float | None = None
    records: list = field(default_factory=list)
    _tallies: dict = field(default_factory=dict)

    def check(self, name, default_tolerance) -> _Tally:
        if name not in self._tallies:
            tol = default_tolerance if self.tolerance is None else self.tolerance
            self._tallies[name] = _Tally(self, name, tol)
        return self._tallies[name]

    def streams(self, count=None):
        """(k, stream seed + k) for k below `count`, by default the number of trials"""
        root = RandomSource(self.seed)
        for k in range(self.trials if count is None else count):
            yield k, root.spawn(k)

    @property
    def checks(self):
        return [tally.report() for tally in self._tallies.values()]


def _random_measure(rng, n):
    """mu(A) = sqrt(sum of weights) + largest bonus in A: monotone, not additive"""
    weights = rng.uniform(0.0, 1.0, n)
    bonus = rng.uniform(0.0, 1.0, n)

    def mu(subset):
        if not subset:
            return 0.0
        idx = [i - 1 for i in subset]
        return float(np.sqrt(weights[idx].sum()) + bonus[idx].max())

    return MonotoneMeasure.from_function(n, mu)


def _comonotone_values(rng, n, order=None):
    """Two non-negative sequences rising along one shared ordering"""
    order = rng.generator.permutation(n) if order is None else order
    f = np.zeros(n)
    g = np.zeros(n)
    f[order] = np.cumsum(rng.uniform(0.0, 1.0, n))
    g[order] = np.cumsum(rng.uniform(0.0, 1.0, n))
    return f, g


def _spectrum_functions(rng, points, increasing):
    """Comonotone f, g on {0} + points, vanishing at 0"""
    points = np.sort(np.asarray(points))
    order = np.arange(len(points)) if increasing else None
    f, g = _comonotone_values(rng, len(points), order)
    mapping_f = {0.0: 0.0, **{float(x): float(v) for x, v in zip(points, f) if x != 0.0}}
    mapping_g = {0.0: 0.0, **{float(x): float(v) for x, v in zip(points, g) if x != 0.0}}
    return SpectrumFunction.from_mapping(mapping_f), SpectrumFunction.from_mapping(mapping_g)


def _spectrum(rng, dim, with_zero=False):
    values = np.sort(rng.uniform(0.2, 3.0, dim))[::-1]
    if with_zero and dim > 1:
        values[-1] = 0.0
    return values


def suite_comonotonic_additivity(run: SuiteRun):
    phi_add = run.check('phi-comonotone-additivity', TRACE_ATOL)
    psi_add = run.check('psi-f-additivity', EIGEN_ATOL)
    choquet_add = run.check('choquet-comonotone-additivity', INTEGRAL_ATOL)
    sugeno_add = run.check('sugeno-f-additivity', EXACT)
    scalar = run.check('choquet-matches-phi-on-diagonal', INTEGRAL_ATOL)

    for k, rng in run.streams():
        w = random_weight(rng, run.dim, concave=k % 2 == 0)
        spectrum = _spectrum(rng, run.dim, with_zero=k % 3 == 0)
        a = random_psd(rng, run.dim, spectrum)

        es = psd_eigh(a)
        f, g = _spectrum_functions(rng, spectrum, increasing=False)
        fa, ga = apply_spectrum_function(a, f, es), apply_spectrum_function(a, g, es)
        lhs = phi_alpha(HermitianMatrix(fa.data + ga.data), w)
        rhs = phi_alpha(fa, w) + phi_alpha(ga, w)
        phi_add.observe(k, abs(lhs - rhs), lhs=lhs, rhs=rhs)

        f, g = _spectrum_functions(rng, spectrum, increasing=True)
        lhs = psi_alpha(apply_spectrum_function(a, f.maximum(g), es), w)
        rhs = max(psi_alpha(apply_spectrum_function(a, f, es), w), psi_alpha(apply_spectrum_function(a, g, es), w))
        psi_add.observe(k, abs(lhs - rhs), lhs=lhs, rhs=rhs)

        n = min(run.dim, INTEGRAL_GROUND_SIZE)
        mu = _random_measure(rng, n)
        x, y = _comonotone_values(rng, n)
        lhs = choquet_integral(NonNegVector(tuple(x + y)), mu)
        rhs = choquet_integral(NonNegVector(tuple(x)), mu) + choquet_integral(NonNegVector(tuple(y)), mu)
        choquet_add.observe(k, abs(lhs - rhs), x=x.tolist(), y=y.tolist())
        lhs = sugeno_integral(NonNegVector(tuple(np.maximum(x, y))), mu)
        rhs = max(sugeno_integral(NonNegVector(tuple(x)), mu), sugeno_integral(NonNegVector(tuple(y)), mu))
        sugeno_add.observe(k, abs(lhs - rhs), x=x.tolist(), y=y.tolist())

        rule = MonotoneMeasure.cardinality_based(run.dim, w)
        lhs = choquet_integral(NonNegVector(tuple(spectrum)), rule)
        scalar.observe(k, abs(lhs - phi_from_eigenvalues(spectrum, w)))


def suite_sugeno_max(run: SuiteRun):
    oracle = run.check('oracle-equality', EXACT)
    feasibility = run.check('feasibility-bound', EIGEN_ATOL)
    compression = run.check('compression-monotone', EIGEN_ATOL)

    for k, rng in run.streams():
        w = random_weight(rng, run.dim, concave=k % 2 == 0)
        spectrum = np.sort(rng.uniform(0.0, 1.2 * w.alpha(run.dim), run.dim))[::-1]
        a = random_psd(rng, run.dim, spectrum)

        psi = psi_alpha(a, w)
        via_oracle = sugeno_max_oracle(a, w)
        oracle.observe(k, abs(psi - via_oracle), psi=psi, oracle=via_oracle)

        projections, _ = random_projections(rng, run.dim, FEASIBILITY_PROJECTIONS)
        feasibility.observe(k, float(np.max(feasible_levels(a, projections, w))) - psi, psi=psi)

        if run.dim >= 2:
            rank_q = rng.integers(2, run.dim + 1)
            q = random_projection(rng, run.dim, rank_q)
            # p <= q: project onto the span of a few vectors taken from range(q)
            inner = rng.integers(1, rank_q)
            basis, _ = np.linalg.qr(q @ (rng.normal((run.dim, inner)) + 1j * rng.normal((run.dim, inner))))
            p = basis @ basis.conj().T
            compression.observe(k, compressed_psi(a, p, w) - compressed_psi(a, q, w))


def suite_triangle_choquet(run: SuiteRun):
    """TRIANGLE_WEIGHTS concave weights, each tried on `trials` random pairs

    Weight j draws from the stream seed + j: first the weight, then its
    pairs, then one non-concave weight handed to the counterexample search.
    Pair k of weight j is recorded as trial j * trials + k.
    """
    concave_tri = run.check('concave-subadditive', TRACE_ATOL)
    found = run.check('nonconcave-violation-found', EXACT)
    closed = run.check('closed-form-instance', EXACT)

    w_closed = WeightFunction((1.0, 2.0), 0.0)
    lhs = schatten_from_singular(np.ones(2), w_closed)
    rhs = 2 * schatten_from_singular(np.array([1.0, 0.0]), w_closed)
    closed.flag(0, lhs == 3.0 and rhs == 2.0, lhs=lhs, rhs=rhs)
    if run.trials == 0:
        return

    for j, rng in run.streams(TRIANGLE_WEIGHTS):
        w = random_weight(rng, run.dim, concave=True)
        a = random_complex_stack(rng, run.trials, run.dim)
        b = random_complex_stack(rng, run.trials, run.dim)
        sa, sb, sab = singular_value_stack(a), singular_value_stack(b), singular_value_stack(a + b)
        for k in range(run.trials):
            for p in P_VALUES:
                lhs = schatten_from_singular(sab[k], w, p)
                rhs = schatten_from_singular(sa[k], w, p) + schatten_from_singular(sb[k], w, p)
                concave_tri.observe(j * run.trials + k, lhs - rhs, p=p, weight=w.to_dict())

        w_bad = random_weight(rng, run.dim, concave=False)
        for p in P_VALUES:
            try:
                verdict = verify_counterexample(proof_family_counterexample(w_bad, p))
                found.flag(j, verdict['verified'], p=p, margin=verdict['margin'])
            except SearchExhausted as e:
                found.flag(j, False, p=p, weight=w_bad.to_dict(), error=e.message)


def suite_triangle_sugeno(run: SuiteRun):
    triangle = run.check('norm-triangle', EIGEN_ATOL)
    identity = run.check('metric-identity', EIGEN_ATOL)
    symmetry = run.check('metric-symmetry', EIGEN_ATOL)
    metric_tri = run.check('metric-triangle', EIGEN_ATOL)

    for k, rng in run.streams():
        w = random_weight(rng, run.dim, concave=True)
        scale = rng.uniform(0.5, 2.0)
        b = random_complex(rng, run.dim, scale)
        c = random_complex(rng, run.dim, scale)
        lhs = sugeno_norm(b + c, w)
        rhs = sugeno_norm(b, w) + sugeno_norm(c, w)
        triangle.observe(k, lhs - rhs, lhs=lhs, rhs=rhs)

        a = random_complex(rng, run.dim, scale)
        identity.observe(k, sugeno_distance(a, a, w))
        symmetry.observe(k, abs(sugeno_distance(a, b, w) - sugeno_distance(b, a, w)))
        metric_tri.observe(k, sugeno_distance(a, c, w) - sugeno_distance(a, b, w) - sugeno_distance(b, c, w))


def suite_majorization_equivalence(run: SuiteRun):
    compressed = run.check('contraction-implies-domination', EXACT)
    factor = run.check('factorization', FACTORIZATION_RTOL)
    contraction = run.check('factor-is-contraction', EIGEN_ATOL)
    phi_check = run.check('domination-iff-phi-weights', EXACT)
    sequences = run.check('sequence-majorization', EXACT)

    for k, rng in run.streams():
        b = random_psd(rng, run.dim)
        x = random_contraction(rng, run.dim)
        a = HermitianMatrix(x @ b.data @ x.conj().T)
        compressed.flag(k, eigen_dominates(b, a))

        c = construct_contraction(a, b)
        scale = 1.0 + float(np.linalg.norm(a.data))
        factor.observe(k, factorization_error(a, b, c) / scale)
        contraction.observe(k, operator_norm(c) - 1.0)

        extra = [random_weight(rng, run.dim, concave=bool(j % 2)) for j in range(4)]
        other = random_psd(rng, run.dim)
        for left, right in ((b, a), (b, other), (other, b)):
            dominated = eigen_dominates(left, right)
            phi_holds = phi_weight_dominance(left, right, extra)['holds']
            phi_check.flag(k, dominated == phi_holds, dominated=dominated, phi_holds=phi_holds)

        la = NonNegVector(tuple(eigenvalue_sequence(a)))
        lb = NonNegVector(tuple(eigenvalue_sequence(b)))
        reflexive = bool(weak_majorizes(lb, lb))
        dominated = bool(weak_majorizes(lb, la))
        implied = dominated or not majorizes(lb, la)
        sequences.flag(k, reflexive and dominated and implied)


def suite_weight_monotonicity(run: SuiteRun):
    alpha_up = run.check('alpha-non-decreasing', EXACT)
    subadd = run.check('concave-alpha-subadditive', EXACT)
    in_weight = run.check('norm-monotone-in-weight', EIGEN_ATOL)
    in_p = run.check('contraction-p-monotone', EIGEN_ATOL)

    for k, rng in run.streams():
        w = random_weight(rng, run.dim, concave=k % 2 == 0)
        alpha = w.alpha_values(2 * run.dim)
        alpha_up.flag(k, bool(np.all(np.diff(alpha) >= 0)))
        if is_concave(w):
            gap = subadditivity_gap(w, run.dim)
            subadd.flag(k, gap is None, gap=gap)

        bigger = WeightFunction(
            tuple(np.asarray(w.increments) + rng.uniform(0.0, 1.0, w.prefix_length)),
            w.tail + rng.uniform(0.0, 1.0))
        s = singular_values(random_complex(rng, run.dim))
        for p in P_VALUES:
            in_weight.observe(k, schatten_from_singular(s, w, p) - schatten_from_singular(s, bigger, p), p=p)

        sc = singular_values(random_contraction(rng, run.dim))
        for p, q in zip(P_VALUES, P_VALUES[1:]):
            eigen_gap = float(np.max(sc ** q - sc ** p))
            phi_gap = phi_from_eigenvalues(sc ** q, w) - phi_from_eigenvalues(sc ** p, w)
            in_p.observe(k, max(eigen_gap, phi_gap), p=p, q=q)


def suite_ideal_inequalities(run: SuiteRun):
    ideal = run.check('right-ideal', TRACE_ATOL)
    adjoint = run.check('adjoint-invariance', TRACE_ATOL)
    singular = run.check('singular-value-product-bound', EIGEN_ATOL)
    invariance = run.check('unitary-invariance', TRACE_ATOL)
    homogeneity = run.check('absolute-homogeneity', TRACE_ATOL)
    lower = run.check('operator-norm-lower-bound', TRACE_ATOL)

    for k, rng in run.streams():
        w = random_weight(rng, run.dim, concave=True)
        p = P_VALUES[k % len(P_VALUES)]
        a = random_complex(rng, run.dim)
        b = random_complex(rng, run.dim)
        sa = singular_values(a)
        norm_a = schatten_from_singular(sa, w, p)
        norm_b = operator_norm(b)

        s_ab = singular_values(a @ b)
        ideal.observe(k, schatten_from_singular(s_ab, w, p) - norm_a * norm_b, p=p)
        adjoint.observe(k, abs(schatten_from_singular(singular_values(a.conj().T), w, p) - norm_a), p=p)
        singular.observe(k, float(np.max(s_ab - sa * norm_b)))

        u, v = random_unitary(rng, run.dim), random_unitary(rng, run.dim)
        invariance.observe(k, abs(schatten_from_singular(singular_values(u @ a @ v), w, p) - norm_a), p=p)

        scalar = complex(rng.normal(), rng.normal())
        scaled = schatten_from_singular(singular_values(scalar * a), w, p)
        homogeneity.observe(k, abs(scaled - abs(scalar) * norm_a), p=p)
        lower.observe(k, w.increment(1) * float(sa[0]) - schatten_from_singular(sa, w, 1.0))


def suite_worked_examples(run: SuiteRun):
    linear = run.check('linear-trace', TRACE_ATOL)
    top = run.check('largest-eigenvalue', TRACE_ATOL)
    selector = run.check('selected-eigenvalue', TRACE_ATOL)
    top_k = run.check('top-k-sum', TRACE_ATOL)
    monotone = run.check('trace-monotone', TRACE_ATOL)
    homogeneous = run.check('positive-homogeneity', TRACE_ATOL)
    f_homogeneous = run.check('psi-f-homogeneity', EIGEN_ATOL)

    for k, rng in run.streams():
        n = rng.integers(1, run.dim + 1)
        a = random_psd(rng, n)
        oracle = np.sort(np.linalg.eigvalsh(a.data))[::-1]
        scale = 1.0 + float(np.sum(np.abs(oracle)))
        lam = eigenvalue_sequence(a)

        linear.observe(k, abs(phi_alpha(a, WeightFunction.linear()) - oracle.sum()) / scale)
        top.observe(k, abs(phi_from_eigenvalues(lam, WeightFunction.operator_norm()) - oracle[0]))
        i = rng.integers(1, n + 1)
        selector.observe(k, abs(phi_from_eigenvalues(lam, WeightFunction.selector(i)) - oracle[i - 1]), i=i)
        m = rng.integers(1, n + 1)
        top_k.observe(k, abs(phi_from_eigenvalues(lam, WeightFunction.top_k(m)) - oracle[:m].sum()), k=m)

        w = random_weight(rng, n, concave=k % 2 == 0)
        phi_a, psi_a = phi_from_eigenvalues(lam, w), psi_from_eigenvalues(lam, w)
        bigger = eigenvalue_sequence(HermitianMatrix(a.data + random_psd(rng, n).data))
        monotone.observe(k, max(phi_a - phi_from_eigenvalues(bigger, w), psi_a - psi_from_eigenvalues(bigger, w)))

        factor = rng.uniform(0.0, 5.0)
        scaled = phi_alpha(HermitianMatrix(factor * a.data), w)
        homogeneous.observe(k, abs(scaled - factor * phi_a) / (1.0 + factor))

        level = rng.uniform(0.0, 2.0)
        f_homogeneous.observe(k, abs(psi_alpha(f_truncate(a, level), w) - min(level, psi_a)))


def suite_dual_formula(run: SuiteRun):
    dual = run.check('sum-equals-difference-form', DUAL_RTOL)
    partial = run.check('partial-sums-increase-to-trace', TRACE_ATOL)
    truncated = run.check('truncations-increase-to-trace', TRACE_ATOL)

    for k, rng in run.streams():
        w = random_weight(rng, run.dim, concave=k % 2 == 0)
        a = random_psd(rng, run.dim, _spectrum(rng, run.dim, with_zero=k % 3 == 0))
        lam = eigenvalue_sequence(a)
        value = phi_from_eigenvalues(lam, w)
        dual.observe(k, abs(value - phi_difference_form(lam, w)) / (1.0 + abs(value)))

        sums = np.asarray(phi_partial_sums(a, w))
        psi_sums = np.asarray(psi_partial_sums(a, w))
        drift = max(float(np.max(-np.diff(sums), initial=0.0)), float(np.max(-np.diff(psi_sums), initial=0.0)),
                    abs(sums[-1] - value), abs(psi_sums[-1] - psi_alpha(a, w)))
        partial.observe(k, drift)

        rank = int(np.count_nonzero(lam > EIGEN_ATOL))
        phis = [phi_alpha(truncation(a, m), w) for m in range(rank + 1)]
        drift = max(float(np.max(-np.diff(phis), initial=0.0)), abs(phis[-1] - value))
        truncated.observe(k, drift, rank=rank)


def _targeted_spectrum(rng, w, dim, case):
    """Eigenvalues steering the observation lemma into case a, b or c"""
    alpha = w.alpha_values(dim)
    if case == 'c':
        return np.sort(alpha[1] * rng.uniform(0.0, 0.9, dim))[::-1]
    n = rng.integers(2, dim + 1)
    head = alpha[n - 1] + np.arange(n - 1, 0, -1, dtype=float)
    if case == 'a':
        crossing = alpha[n - 1] + 0.9 * rng.uniform(0.05, 1.0) * min(w.increment(n), 1.0)
    else:
        crossing = alpha[n - 1] * rng.uniform(0.05, 0.9)
    rest = np.sort(crossing * rng.uniform(0.0, 1.0, dim - n))[::-1]
    return np.concatenate((head, [crossing], rest))


def suite_observation_lemma(run: SuiteRun):
    inequalities = run.check('observation-inequalities', EIGEN_ATOL)
    coverage = run.check('case-coverage', EXACT)
    boundary = run.check('boundary-instance', EIGEN_ATOL)
    dim = max(run.dim, 2)
    seen = {'a': 0, 'b': 0, 'c': 0}

    for k, rng in run.streams():
        case = 'abc'[k % 3]
        w = random_weight(rng, dim, concave=k % 2 == 0)
        a = random_psd(rng, dim, _targeted_spectrum(rng, w, dim, case))
        witness = observation_projections(a, w)
        seen[witness.case_tag] += 1
        margins = observation_margins(a, w, witness)
        inequalities.observe(k, -min(margins.values()), case=witness.case_tag, target=case)

    needed = run.trials // 3
    coverage.flag(run.trials, all(count >= needed for count in seen.values()), counts=dict(seen))

    w = WeightFunction.linear()
    a = HermitianMatrix.diag([w.alpha(1)] + [0.0] * (dim - 1))
    witness = observation_projections(a, w)
    boundary.observe(0, -min(observation_margins(a, w, witness).values()), case=witness.case_tag)


def suite_norm_identities(run: SuiteRun):
    decomposition = run.check('kyfan-decomposition', TRACE_ATOL)
    composition = run.check('norm-of-norms', TRACE_ATOL)
    small = run.check('sugeno-below-alpha-one', EIGEN_ATOL)
    faithful = run.check('zero-iff-zero', INTEGRAL_ATOL)

    for k, rng in run.streams():
        w = random_weight(rng, run.dim, concave=k % 2 == 0)
        p = P_VALUES[k % len(P_VALUES)]
        s = singular_values(random_complex(rng, run.dim))
        norm = schatten_from_singular(s, w, p)
        terms = kyfan_decomposition_from_singular(s, w, p)
        decomposition.observe(k, abs(norm - terms['value']), p=p)
        if is_concave(w):
            composition.observe(k, abs(norm - norm_of_norms_from_singular(s, w, p)), p=p)

        a = random_complex(rng, run.dim)
        a = a * (rng.uniform(0.1, 0.95) * w.alpha(1) / operator_norm(a))
        small.observe(k, abs(sugeno_norm(a, w) - operator_norm(a)))

        zero = schatten_from_singular(singular_values(np.zeros((run.dim, run.dim))), w, p)
        faithful.flag(k, zero <= INTEGRAL_ATOL < norm, zero=zero, norm=norm)


SUITES = {
    'comonotonic-additivity': suite_comonotonic_additivity,
    'sugeno-max': suite_sugeno_max,
    'triangle-choquet': suite_triangle_choquet,
    'triangle-sugeno': suite_triangle_sugeno,
    'majorization-equivalence': suite_majorization_equivalence,
    'weight-monotonicity': suite_weight_monotonicity,
    'ideal-inequalities': suite_ideal_inequalities,
    'worked-examples': suite_worked_examples,
    'dual-formula': suite_dual_formula,
    'observation-lemma': suite_observation_lemma,
    'norm-identities': suite_norm_identities,
}


def run_suite(name, seed=0, trials=100, dim=8, tolerance=None) -> SuiteRun:
    """Run one named suite and return the populated SuiteRun"""
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"Unknown suite '{name}'", available=sorted(SUITES))

    run = SuiteRun(name, seed, trials, dim, tolerance)
    try:
        logger.info(f'Starting suite {name}: seed={seed}, trials={trials}, dim={dim}')
        suite(run)
        failed = [c.name for c in run.checks if c.failed]
        logger.info(f'Suite {name} finished with {len(failed)} failing checks {failed}')
        return run
    except NtraceError as e:
        logger.error(f'Suite {name} aborted: {e.message}')
        raise
