"""Non-linear traces of Choquet type (phi_alpha) and Sugeno type (psi_alpha)

Both are functions of the eigenvalue sequence only. phi_alpha is computed in
two algebraically equal forms and the pair is cross-checked on every call.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ntrace.errors import AlphaOneZero, InternalInconsistency
from ntrace.models import HermitianMatrix, WeightFunction
from ntrace.spectral import (
    PSD_FLOOR, apply_scalar_function, apply_spectrum_function, eigenvalue_sequence, eigenvalue_stack, eigenvalues,
    four_parts, psd_eigh,
)

logger = logging.getLogger(__name__)

DUAL_FORM_RTOL = 1e-10
OBSERVATION_ATOL = 1e-9


def phi_from_eigenvalues(lam, w: WeightFunction) -> float:
    """sum_i c_i lambda_i"""
    lam = np.asarray(lam, dtype=float)
    return float(np.dot(lam, w.increments_upto(len(lam))))


def phi_difference_form(lam, w: WeightFunction) -> float:
    """sum_i (lambda_i - lambda_{i+1}) alpha(i)"""
    lam = np.asarray(lam, dtype=float)
    gaps = lam - np.append(lam[1:], 0.0)
    return float(np.dot(gaps, w.alpha_values(len(lam))[1:]))


def psi_from_eigenvalues(lam, w: WeightFunction) -> float:
    """max_i min(lambda_i, alpha(i))"""
    lam = np.asarray(lam, dtype=float)
    if lam.size == 0:
        return 0.0
    return float(np.max(np.minimum(lam, w.alpha_values(len(lam))[1:])))


def phi_alpha(a, w: WeightFunction, rtol: float = PSD_FLOOR) -> float:
    lam = eigenvalue_sequence(a, rtol)
    value = phi_from_eigenvalues(lam, w)
    check = phi_difference_form(lam, w)
    if abs(value - check) > DUAL_FORM_RTOL * (1.0 + abs(value)):
        raise InternalInconsistency(
            f'phi_alpha forms disagree: {value!r} vs {check!r}', sum_form=value, difference_form=check)
    return value


def psi_alpha(a, w: WeightFunction, rtol: float = PSD_FLOOR) -> float:
    return psi_from_eigenvalues(eigenvalue_sequence(a, rtol), w)


def _extended(a, trace, w, rtol):
    a1, a2, a3, a4 = four_parts(a)
    return complex(trace(a1, w, rtol) - trace(a2, w, rtol), trace(a3, w, rtol) - trace(a4, w, rtol))


def phi_alpha_extended(a, w: WeightFunction, rtol: float = PSD_FLOOR) -> complex:
    """phi(a1) - phi(a2) + i(phi(a3) - phi(a4))"""
    return _extended(a, phi_alpha, w, rtol)


def psi_alpha_extended(a, w: WeightFunction, rtol: float = PSD_FLOOR) -> complex:
    """psi(a1) - psi(a2) + i(psi(a3) - psi(a4))"""
    return _extended(a, psi_alpha, w, rtol)


def sugeno_max_oracle(a, w: WeightFunction) -> float:
    """max { lambda : exists p with lambda <= alpha(dim p), pap >= lambda p }

    Only the top-n spectral projections need to be tried: for them the
    largest admissible lambda is lambda_n(pap) = lambda_n(a).
    """
    lam = eigenvalue_sequence(a)
    best = 0.0
    for n in range(1, len(lam) + 1):
        level = lam[n - 1]
        bound = w.alpha(n)
        feasible = level if level <= bound else bound
        if feasible > best:
            best = feasible
    return best


def feasible_level(a, p, w: WeightFunction) -> float:
    """lambda_r(pap) min alpha(r) for a projection p of rank r"""
    return float(feasible_levels(a, np.asarray(p, dtype=complex)[np.newaxis], w)[0])


def feasible_levels(a, projections, w: WeightFunction) -> np.ndarray:
    """feasible_level for each projection of a (count, n, n) stack

    All compressions pap are diagonalized in one batched solve.
    """
    a = HermitianMatrix.of(a)
    projections = np.asarray(projections, dtype=complex)
    if projections.shape[0] == 0:
        return np.zeros(0)
    ranks = np.rint(np.trace(projections, axis1=-2, axis2=-1).real).astype(int)
    lam = eigenvalue_stack(projections @ a.data @ projections)
    alpha = w.alpha_values(a.dim)
    levels = np.zeros(len(ranks))
    live = ranks > 0
    levels[live] = np.minimum(lam[live, ranks[live] - 1], alpha[ranks[live]])
    return levels


def compressed_psi(a, p, w: WeightFunction) -> float:
    """psi_alpha(pap)"""
    a = HermitianMatrix.of(a)
    p = np.asarray(p, dtype=complex)
    return psi_alpha(HermitianMatrix(p @ a.data @ p), w)


def truncation(a, k: int) -> HermitianMatrix:
    """Sum of the top-k spectral terms lambda_i p_i"""
    es = psd_eigh(a)
    kept = np.where(np.arange(es.dim) < k, es.values, 0.0)
    return HermitianMatrix(es.reconstruct(kept))


def phi_partial_sums(a, w: WeightFunction) -> list:
    """S_n = sum_{i <= n} (lambda_i - lambda_{i+1}) alpha(i), n = 1..dim"""
    lam = eigenvalue_sequence(a)
    gaps = lam - np.append(lam[1:], 0.0)
    return np.cumsum(gaps * w.alpha_values(len(lam))[1:]).tolist()


def psi_partial_sums(a, w: WeightFunction) -> list:
    """S_n = max_{i <= n} min(lambda_i, alpha(i)), n = 1..dim"""
    lam = eigenvalue_sequence(a)
    return np.maximum.accumulate(np.minimum(lam, w.alpha_values(len(lam))[1:])).tolist()


def phi_additive_family(a, functions, w: WeightFunction):
    """(phi(sum_i f_i(a)), sum_i phi(f_i(a))) for spectrum functions f_i"""
    parts = [apply_spectrum_function(a, f) for f in functions]
    total = HermitianMatrix(sum(part.data for part in parts))
    return phi_alpha(total, w), sum(phi_alpha(part, w) for part in parts)


def f_truncate(a, k: float) -> HermitianMatrix:
    """Functional calculus of x -> min(k, x)"""
    return apply_scalar_function(a, lambda x: min(k, x))


@dataclass(eq=False)
class ObservationWitness:
    p: np.ndarray
    q0: np.ndarray
    case_tag: str
    psi: float
    rank_p: int
    rank_q0: int
    crossing: int

    def to_dict(self):
        return {'case': self.case_tag, 'psi': self.psi, 'rank_p': self.rank_p,
                'rank_q0': self.rank_q0, 'crossing': self.crossing}


def observation_projections(a, w: WeightFunction) -> ObservationWitness:
    """Projections p, q0 with pap >= psi p, psi <= alpha(rank p),
    (I-q0) a (I-q0) <= psi (I-q0) and alpha(rank q0) <= psi

    Case c: lambda_1 < alpha(1). Otherwise n >= 2 is the first index with
    lambda_n < alpha(n); case a when lambda_n >= alpha(n-1), else case b.
    """
    if w.alpha(1) <= 0:
        raise AlphaOneZero('the observation lemma needs alpha(1) > 0')
    es = psd_eigh(a)
    dim = es.dim
    alpha = w.alpha_values(dim + 1)
    psi = psi_from_eigenvalues(es.values, w)

    if es.value(1) < alpha[1]:
        case_tag, n, rank_p, rank_q0 = 'c', 1, 1, 0
    else:
        n = next(k for k in range(2, dim + 2) if es.value(k) < alpha[k])
        if es.value(n) >= alpha[n - 1]:
            case_tag, rank_p, rank_q0 = 'a', n, n - 1
        else:
            case_tag, rank_p, rank_q0 = 'b', n - 1, n - 1

    logger.debug(f'Observation lemma case {case_tag} with crossing n={n}, psi={psi}')
    return ObservationWitness(es.top_projection(rank_p), es.top_projection(rank_q0),
                              case_tag, psi, rank_p, rank_q0, n)


def _signed_spectrum(h):
    return eigenvalues(HermitianMatrix(h))


def observation_margins(a, w: WeightFunction, witness: ObservationWitness) -> dict:
    """Slack of the four inequalities; each must be >= -OBSERVATION_ATOL"""
    a = HermitianMatrix.of(a)
    dim = a.dim
    psi = witness.psi
    p, q0 = witness.p, witness.q0
    rest = np.eye(dim) - q0

    lower = _signed_spectrum(p @ a.data @ p - psi * p)
    upper = _signed_spectrum(psi * rest - rest @ a.data @ rest)
    return {
        'compression_lower': float(lower[-1]),
        'alpha_rank_p': w.alpha(witness.rank_p) - psi,
        'complement_upper': float(upper[-1]),
        'alpha_rank_q0': psi - w.alpha(witness.rank_q0),
    }
