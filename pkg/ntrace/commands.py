"""Report-producing commands shared by the CLI and the HTTP API

Inputs arrive as already-decoded JSON documents (from files on the command
line, inline in request bodies) and every command returns a Report.
"""
import logging
import math
import time
from functools import wraps

import numpy as np

from ntrace.config import Config
from ntrace.errors import ConcaveWeight, MatrixTooLarge, ParseError
from ntrace.falsify import (
    SEARCH_DIM, RandomSource, proof_family_counterexample, random_search_counterexample,
    trace_norm_projection_counterexample, verify_counterexample,
)
from ntrace.integrals import are_comonotonic, choquet_integral, decreasing_rearrangement, sorting_permutation, sugeno_integral
from ntrace.majorization import (
    DOMINATION_ATOL, FACTORIZATION_RTOL, MAJORIZATION_ATOL, PHI_WEIGHT_ATOL, construct_contraction, eigen_dominates,
    factorization_error, majorizes, phi_weight_dominance, weak_majorizes,
)
from ntrace.models import VIOLATION_THRESHOLD, CheckReport, HermitianMatrix, MonotoneMeasure, NonNegVector, NormSpec, Report
from ntrace.norms import (
    kyfan_decomposition, kyfan_norm, kyfan_pk_norm, operator_norm, schatten_choquet_norm, sugeno_homogeneity_gap,
    sugeno_norm,
)
from ntrace.spectral import PSD_FLOOR, eigenvalue_sequence, four_parts, singular_values
from ntrace.suites import run_suite
from ntrace.traces import phi_alpha, phi_alpha_extended, psi_alpha, psi_alpha_extended
from ntrace.utils import counterexample_schema, export_records, matrix_document, parse_matrix, parse_measure, parse_weight
from ntrace.weights import check_measure_monotone, is_concave

logger = logging.getLogger(__name__)

TRACE_KINDS = ('choquet', 'sugeno')
NORM_FAMILIES = ('choquet', 'sugeno', 'kyfan', 'kyfan_pk')
FALSIFY_MODES = ('proof', 'random', 'projection')

DECOMPOSITION_ATOL = 1e-8
HOMOGENEITY_ATOL = 1e-9


def timed(command):
    """Fill in elapsed_ms on the Report a command returns"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            report = func(*args, **kwargs)
            report.elapsed_ms = int((time.perf_counter() - start) * 1000)
            logger.debug(f'{command} finished in {report.elapsed_ms} ms')
            return report
        return wrapper
    return decorator


def _choice(value, allowed, what):
    if value not in allowed:
        raise ParseError(f"{what} must be one of {', '.join(allowed)}, got '{value}'")
    return value


def _tolerance(value, default):
    """A caller-supplied tolerance, or `default` when none was given"""
    if value is None:
        return default
    if not math.isfinite(value) or value < 0:
        raise ParseError(f'tolerance must be a finite non-negative number, got {value!r}')
    return float(value)


def _concavity_check(w):
    if is_concave(w):
        return CheckReport('concavity', 'pass', detail='increments are non-increasing')
    logger.warning(f'Weight {w.to_dict()} is not concave; the functional need not be subadditive')
    return CheckReport('concavity', 'skipped',
                       detail='NotConcave: increments increase somewhere, so the triangle inequality is not guaranteed')


@timed('trace')
def cmd_trace(matrix_doc, weight_doc, kind='choquet', extended=False, max_dim=Config.MAX_DIM,
              tolerance=None) -> Report:
    """`tolerance` is the relative PSD floor: eigenvalues down to -tolerance (1 + ||a||) count as zero"""
    _choice(kind, TRACE_KINDS, 'kind')
    rtol = _tolerance(tolerance, PSD_FLOOR)
    a = parse_matrix(matrix_doc, max_dim)
    w = parse_weight(weight_doc)
    inputs = {'n': a.rows, 'weight': w.to_dict(), 'kind': kind, 'extended': extended, 'tolerance': tolerance}

    if extended:
        trace = phi_alpha_extended if kind == 'choquet' else psi_alpha_extended
        parts = four_parts(a)
        results = {
            'trace': trace(a, w, rtol),
            'eigenvalues': {name: eigenvalue_sequence(part, rtol)
                            for name, part in zip(('a1', 'a2', 'a3', 'a4'), parts)},
        }
    else:
        h = HermitianMatrix.of(a)
        trace = phi_alpha if kind == 'choquet' else psi_alpha
        results = {'trace': trace(h, w, rtol), 'eigenvalues': eigenvalue_sequence(h, rtol)}
    return Report('trace', inputs, results)


def _decomposition_check(norm, terms, atol):
    excess = abs(norm - terms['value']) / (1.0 + norm)
    if excess <= atol:
        return CheckReport('kyfan-decomposition', 'pass', atol)
    return CheckReport('kyfan-decomposition', 'fail', atol,
                       {'norm': norm, 'decomposition': terms['value'], 'excess': excess})


@timed('norm')
def cmd_norm(matrix_doc, weight_doc=None, p=1.0, family='choquet', k=None, max_dim=Config.MAX_DIM,
             tolerance=None) -> Report:
    _choice(family, NORM_FAMILIES, 'family')
    a = parse_matrix(matrix_doc, max_dim)
    inputs = {'n': a.rows, 'family': family, 'p': p, 'k': k, 'tolerance': tolerance}
    results = {'singular_values': singular_values(a), 'operator_norm': operator_norm(a)}
    checks = []

    if family in ('choquet', 'sugeno'):
        if weight_doc is None:
            raise ParseError(f'the {family} norm needs a weight')
        w = parse_weight(weight_doc)
        inputs['weight'] = w.to_dict()
        checks.append(_concavity_check(w))
        if family == 'choquet':
            spec = NormSpec(w, p)
            results['norm'] = schatten_choquet_norm(a, spec)
            if spec.p > 1:
                results['kyfan_decomposition'] = kyfan_decomposition(a, spec)
                checks.append(_decomposition_check(results['norm'], results['kyfan_decomposition'],
                                                   _tolerance(tolerance, DECOMPOSITION_ATOL)))
        else:
            results['norm'] = sugeno_norm(a, w)
    else:
        if k is None:
            raise ParseError('Ky Fan norms need k')
        results['norm'] = kyfan_norm(a, k) if family == 'kyfan' else kyfan_pk_norm(a, p, k)
    if tolerance is not None and 'kyfan_decomposition' not in results:
        raise ParseError('--tolerance applies only to the Ky Fan decomposition of a choquet norm with p > 1')
    return Report('norm', inputs, results, checks)


@timed('major')
def cmd_major(x=None, y=None, a_doc=None, b_doc=None, max_dim=Config.MAX_DIM, tolerance=None) -> Report:
    """Sequence majorization of x by y, or eigenvalue domination of a by b

    A given tolerance replaces every comparison tolerance: prefix sums,
    eigenvalue domination, the phi weight family and the relative factorization bound.
    """
    inputs, results, checks = {'tolerance': tolerance}, {}, []
    if x is not None and y is not None:
        atol = _tolerance(tolerance, MAJORIZATION_ATOL)
        x, y = NonNegVector.from_csv(x), NonNegVector.from_csv(y)
        inputs.update(x=list(x), y=list(y))
        results['weak_majorization'] = weak_majorizes(y, x, atol).to_dict()
        results['majorization'] = majorizes(y, x, atol).to_dict()
    elif a_doc is not None and b_doc is not None:
        a = HermitianMatrix.of(parse_matrix(a_doc, max_dim))
        b = HermitianMatrix.of(parse_matrix(b_doc, max_dim))
        inputs.update(n=a.dim)
        atol = _tolerance(tolerance, DOMINATION_ATOL)
        dominated = eigen_dominates(b, a, atol)
        results['eigen_dominates'] = dominated
        results['phi_weights'] = phi_weight_dominance(b, a, atol=_tolerance(tolerance, PHI_WEIGHT_ATOL))
        if dominated:
            c = construct_contraction(a, b, atol)
            error = factorization_error(a, b, c)
            bound = _tolerance(tolerance, FACTORIZATION_RTOL) * (1.0 + float(np.linalg.norm(a.data)))
            results['contraction'] = matrix_document(c.data)
            results['factorization_error'] = error
            checks.append(CheckReport('factorization', 'pass' if error <= bound else 'fail', bound,
                                      None if error <= bound else {'error': error}))
    else:
        raise ParseError('major needs either two vectors or two matrices')
    return Report('major', inputs, results, checks)


@timed('integral')
def cmd_integral(x, weight_doc=None, measure_doc=None, y=None) -> Report:
    vector = NonNegVector.from_csv(x)
    if measure_doc is not None:
        measure = parse_measure(measure_doc)
    elif weight_doc is not None:
        measure = MonotoneMeasure.cardinality_based(len(vector), parse_weight(weight_doc))
    else:
        raise ParseError('integral needs a weight or a measure table')

    inputs = {'x': list(vector), 'ground_size': measure.ground_size}
    results = {
        'choquet': choquet_integral(vector, measure),
        'sugeno': sugeno_integral(vector, measure),
        'sorting_permutation': [i + 1 for i in sorting_permutation(vector)],
        'rearrangement': list(decreasing_rearrangement(vector)),
    }
    checks = [check_measure_monotone(measure)]
    if y is not None:
        other = NonNegVector.from_csv(y)
        inputs['y'] = list(other)
        results['comonotonic'] = are_comonotonic(vector, other)
    return Report('integral', inputs, results, checks)


@timed('check')
def cmd_check(suite, seed=None, trials=None, dim=None, tolerance=None, export=None) -> Report:
    seed = Config.DEFAULT_SEED if seed is None else seed
    trials = Config.DEFAULT_TRIALS if trials is None else trials
    dim = Config.DEFAULT_DIM if dim is None else dim
    if trials < 0 or dim < 1:
        raise ParseError(f'trials must be >= 0 and dim >= 1, got {trials} and {dim}')
    if dim > Config.MAX_DIM:
        raise MatrixTooLarge(f'dimension {dim} exceeds the limit of {Config.MAX_DIM}', n=dim, max_dim=Config.MAX_DIM)

    run = run_suite(suite, seed, trials, dim, tolerance)
    checks = run.checks
    results = {
        'suite': suite,
        'failed': [c.name for c in checks if c.failed],
        'observations': len(run.records),
    }
    if export:
        results['export'] = export_records(run.records, export)
    inputs = {'suite': suite, 'trials': trials, 'dim': dim, 'tolerance': tolerance}
    return Report('check', inputs, results, checks, seed)


def _counterexample_results(cx, threshold):
    return {
        'counterexample': counterexample_schema.dump(cx),
        'verification': verify_counterexample(cx, threshold),
    }


@timed('falsify')
def cmd_falsify(weight_doc, p=1.0, mode='proof', seed=None, dim=None, trials=None, tolerance=None) -> Report:
    """`tolerance` is the margin a violation must exceed, both when found and when re-verified"""
    _choice(mode, FALSIFY_MODES, 'mode')
    w = parse_weight(weight_doc)
    threshold = _tolerance(tolerance, VIOLATION_THRESHOLD)
    seed = Config.DEFAULT_SEED if seed is None else seed
    inputs = {'weight': w.to_dict(), 'p': p, 'mode': mode, 'dim': dim, 'tolerance': tolerance}
    concave = is_concave(w)

    if mode == 'random':
        trials = Config.DEFAULT_TRIALS if trials is None else trials
        dim = SEARCH_DIM if dim is None else dim
        inputs.update(trials=trials, dim=dim)
        cx = random_search_counterexample(w, p, trials, RandomSource(seed), dim, threshold)
        if cx is None:
            results = {'counterexample': None, 'search_budget': {'trials': trials, 'dim': dim}}
            verdict = 'pass' if concave else 'skipped'
            check = CheckReport('random-search', verdict, threshold, detail=f'no violation in {trials} trials',
                                seed=seed, trials=trials)
        else:
            results = _counterexample_results(cx, threshold)
            check = CheckReport('random-search', 'fail' if concave else 'pass', threshold,
                                witness={'trial': cx.parameters['trial'], 'margin': cx.margin},
                                seed=seed, trials=trials,
                                detail='violation for a concave weight' if concave else 'violation found')
        return Report('falsify', inputs, results, [check], seed)

    try:
        if mode == 'proof':
            cx = proof_family_counterexample(w, p, dim, threshold)
        else:
            cx = trace_norm_projection_counterexample(w, dim, threshold)
    except ConcaveWeight as e:
        results = {'counterexample': None}
        return Report('falsify', inputs, results, [CheckReport('counterexample', 'skipped', detail=e.message)], seed)

    results = _counterexample_results(cx, threshold)
    verified = results['verification']['verified']
    check = CheckReport('counterexample', 'pass' if verified else 'fail', threshold, witness=results['verification'])
    return Report('falsify', inputs, results, [check], seed)


@timed('homogeneity')
def cmd_homogeneity(matrix_doc, weight_doc, k=2.0, max_dim=Config.MAX_DIM, tolerance=None) -> Report:
    """`tolerance` bounds |gap| for the result to count as homogeneous"""
    a = parse_matrix(matrix_doc, max_dim)
    w = parse_weight(weight_doc)
    gap = sugeno_homogeneity_gap(a, w, k)
    atol = _tolerance(tolerance, HOMOGENEITY_ATOL)
    inputs = {'n': a.rows, 'weight': w.to_dict(), 'k': k, 'tolerance': tolerance}
    results = {**gap, 'homogeneous': abs(gap['gap']) <= atol}
    return Report('homogeneity', inputs, results)
