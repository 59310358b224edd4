"""Majorization of sequences and the contraction factorization a = c b c*"""
import logging

import numpy as np

from ntrace.errors import DimensionMismatch, NotDominated
from ntrace.integrals import decreasing_rearrangement
from ntrace.models import ComplexMatrix, HermitianMatrix, MajorizationVerdict, NonNegVector, WeightFunction
from ntrace.spectral import eigenvalue_sequence, psd_eigh
from ntrace.traces import phi_from_eigenvalues

logger = logging.getLogger(__name__)

MAJORIZATION_ATOL = 1e-10
DOMINATION_ATOL = 1e-9
RANK_CUTOFF = 1e-12
PHI_WEIGHT_ATOL = 1e-8
FACTORIZATION_RTOL = 1e-7


def _padded_prefix_sums(y, x):
    y = decreasing_rearrangement(y).as_array()
    x = decreasing_rearrangement(x).as_array()
    n = max(len(x), len(y))
    y = np.pad(y, (0, n - len(y)))
    x = np.pad(x, (0, n - len(x)))
    return np.cumsum(y), np.cumsum(x)


def weak_majorizes(y: NonNegVector, x: NonNegVector, atol: float = MAJORIZATION_ATOL) -> MajorizationVerdict:
    """x <_w y: every prefix sum of x-decreasing is at most that of y-decreasing"""
    sums_y, sums_x = _padded_prefix_sums(y, x)
    failing = np.nonzero(sums_x > sums_y + atol)[0]
    index = int(failing[0]) + 1 if failing.size else None
    return MajorizationVerdict(index is None, index, tuple(sums_x.tolist()), tuple(sums_y.tolist()))


def majorizes(y: NonNegVector, x: NonNegVector, atol: float = MAJORIZATION_ATOL) -> MajorizationVerdict:
    """x < y: weak majorization plus equal totals

    A total mismatch reports the last index as the failing prefix.
    """
    verdict = weak_majorizes(y, x, atol)
    if not verdict:
        return verdict
    sums_x, sums_y = verdict.partial_sums_x, verdict.partial_sums_y
    n = len(sums_x)
    if n and abs(sums_x[-1] - sums_y[-1]) > atol:
        return MajorizationVerdict(False, n, sums_x, sums_y)
    return verdict


def _pair(b, a):
    b = HermitianMatrix.of(b)
    a = HermitianMatrix.of(a)
    if a.dim != b.dim:
        raise DimensionMismatch(f'dimensions differ: {a.dim} vs {b.dim}')
    return b, a


def eigen_dominates(b, a, atol: float = DOMINATION_ATOL) -> bool:
    """lambda_i(a) <= lambda_i(b) for every i"""
    b, a = _pair(b, a)
    return bool(np.all(eigenvalue_sequence(a) <= eigenvalue_sequence(b) + atol))


def construct_contraction(a, b, atol: float = DOMINATION_ATOL) -> ComplexMatrix:
    """Contraction c with a = c b c*, from eigenvalue domination of a by b

    With a = U diag(la) U* and b = V diag(lb) V*, both ordered decreasingly,
    c = U diag(d) V* where d_i = sqrt(la_i / lb_i), or 0 when lb_i vanishes.
    """
    b, a = _pair(b, a)
    ea = psd_eigh(a)
    eb = psd_eigh(b)
    excess = ea.values - eb.values
    if np.any(excess > atol):
        i = int(np.argmax(excess > atol))
        raise NotDominated(
            f'lambda_{i + 1}(a) = {ea.values[i]:.6g} exceeds lambda_{i + 1}(b) = {eb.values[i]:.6g}',
            index=i + 1)
    live = eb.values > RANK_CUTOFF
    d = np.zeros(ea.dim)
    d[live] = np.sqrt(ea.values[live] / eb.values[live])
    d = np.minimum(d, 1.0)
    return ComplexMatrix((ea.vectors * d) @ eb.vectors.conj().T)


def factorization_error(a, b, c) -> float:
    """||a - c b c*||_F"""
    a = ComplexMatrix.of(a).data
    b = ComplexMatrix.of(b).data
    c = ComplexMatrix.of(c).data
    return float(np.linalg.norm(a - c @ b @ c.conj().T))


def phi_weight_dominance(b, a, weights=(), atol: float = PHI_WEIGHT_ATOL) -> dict:
    """phi_alpha(a) <= phi_alpha(b) over the selector weights plus any extra weights"""
    b, a = _pair(b, a)
    la = eigenvalue_sequence(a)
    lb = eigenvalue_sequence(b)
    family = [WeightFunction.selector(i) for i in range(1, a.dim + 1)] + list(weights)
    for index, w in enumerate(family):
        lhs = phi_from_eigenvalues(la, w)
        rhs = phi_from_eigenvalues(lb, w)
        if lhs > rhs + atol:
            logger.debug(f'Weight {index} separates: {lhs} > {rhs}')
            return {'holds': False, 'separating': index, 'weight': w.to_dict(), 'phi_a': lhs, 'phi_b': rhs}
    return {'holds': True, 'weights': len(family)}
