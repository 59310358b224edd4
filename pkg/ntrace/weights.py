"""Weight functions alpha, their increments and the measures mu_alpha they induce"""
import logging

from ntrace.config import get_config
from ntrace.errors import GroundTooLarge
from ntrace.models import CheckReport, MonotoneMeasure, WeightFunction

logger = logging.getLogger(__name__)

SUBADDITIVITY_ATOL = 1e-12


def weight_alpha(w: WeightFunction, n: int) -> float:
    """alpha(n) = c_1 + ... + c_n, using the tail increment past the prefix"""
    return w.alpha(n)


def is_concave(w: WeightFunction) -> bool:
    """True iff c_1 >= c_2 >= ... >= c_N >= tail"""
    sequence = w.increments + (w.tail,)
    return all(a >= b for a, b in zip(sequence, sequence[1:]))


def first_nonconcavity(w: WeightFunction):
    """Smallest i >= 0 with 2 alpha(i+1) < alpha(i) + alpha(i+2), or None

    Equivalently the first i with c_{i+2} > c_{i+1}. Past the prefix the
    increments are constant, so only i <= N - 1 can qualify.
    """
    for i in range(w.prefix_length):
        if w.increment(i + 2) > w.increment(i + 1):
            return i
    return None


def measure_of(w: WeightFunction, subset_size: int) -> float:
    """mu_alpha(A) = alpha(#A)"""
    return weight_alpha(w, subset_size)


def subadditivity_gap(w: WeightFunction, max_n: int):
    """First (m, n) with alpha(m + n) > alpha(m) + alpha(n), scanning m, n <= max_n"""
    alpha = w.alpha_values(2 * max_n)
    for m in range(max_n + 1):
        for n in range(m, max_n + 1):
            if alpha[m + n] - alpha[m] - alpha[n] > SUBADDITIVITY_ATOL * (1.0 + alpha[m + n]):
                return {'m': m, 'n': n, 'alpha_sum': float(alpha[m + n]),
                        'split': float(alpha[m] + alpha[n])}
    return None


def _subset_key(mask, n):
    return frozenset(i + 1 for i in range(n) if mask >> i & 1)


def check_measure_monotone(m: MonotoneMeasure, cap: int | None = None) -> CheckReport:
    """Verify mu(empty) = 0 and A subset B => mu(A) <= mu(B)

    Tables are checked exhaustively over covering pairs (B = A plus one
    element), which implies the full inclusion order. Rule-based measures
    check the rule along cardinalities up to one step past the prefix; the
    constant tail repeats from there. `cap` defaults to MEASURE_GROUND_CAP.
    """
    name = 'measure-monotone'
    n = m.ground_size
    if cap is None:
        cap = get_config().MEASURE_GROUND_CAP

    if m.is_rule_based:
        limit = min(n, m.weight.prefix_length + 1)
        alpha = m.weight.alpha_values(limit)
        for k in range(limit):
            if alpha[k + 1] < alpha[k]:
                return CheckReport(name, 'fail', 0.0, {'size': k, 'mu_k': float(alpha[k]),
                                                        'mu_k_plus_1': float(alpha[k + 1])})
        return CheckReport(name, 'pass', 0.0, detail='cardinality-based rule')

    if n > cap:
        raise GroundTooLarge(f'exhaustive check is capped at ground size {cap}, got {n}',
                             ground_size=n, cap=cap)

    if m.value(frozenset()) != 0.0:
        return CheckReport(name, 'fail', 0.0, {'subset': [], 'value': m.value(frozenset())},
                           detail='mu(empty) must be 0')

    for mask in range(2 ** n):
        smaller = _subset_key(mask, n)
        mu_small = m.value(smaller)
        for j in range(n):
            if mask >> j & 1:
                continue
            larger = _subset_key(mask | 1 << j, n)
            if m.value(larger) < mu_small:
                logger.debug(f'Monotonicity violated between {sorted(smaller)} and {sorted(larger)}')
                return CheckReport(name, 'fail', 0.0, {
                    'smaller': sorted(smaller), 'larger': sorted(larger),
                    'mu_smaller': mu_small, 'mu_larger': m.value(larger),
                })
    return CheckReport(name, 'pass', 0.0, detail=f'{2 ** n} subsets checked')
