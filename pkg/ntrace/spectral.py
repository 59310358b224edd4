"""Hermitian eigendecomposition and the spectral primitives built on it

The eigensolver is a cyclic complex Jacobi method: each rotation first
removes the phase of the pivot a[p, q] and then applies a real plane rotation
that annihilates it. A sweep visits every pair once, in round-robin order, so
the pairs of one round are disjoint and the whole round is applied with array
operations. Stacks of matrices along a leading axis are solved together.
"""
import functools
import logging

import numpy as np

from ntrace.config import get_config
from ntrace.errors import DimensionMismatch, NoConvergence, NotHermitian, NotPositive, ParseError
from ntrace.models import HERMITIAN_ATOL, ComplexMatrix, EigenSequence, HermitianMatrix, SpectrumFunction

logger = logging.getLogger(__name__)

JACOBI_RTOL = 1e-13
JACOBI_ACCEPT = 1e-9
PSD_FLOOR = 1e-9


@functools.lru_cache(maxsize=None)
def round_robin(n):
    """Rounds of disjoint (p, q) index arrays; every pair p < q occurs in exactly one round"""
    m = n + n % 2
    seats = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = sorted(
            (min(seats[i], seats[m - 1 - i]), max(seats[i], seats[m - 1 - i]))
            for i in range(m // 2))
        # odd n pads with a bye seat
        pairs = [(p, q) for p, q in pairs if q < n]
        if pairs:
            p, q = zip(*pairs)
            rounds.append((np.array(p), np.array(q)))
        seats = [seats[0], seats[-1]] + seats[1:-1]
    return tuple(rounds)


def _off_diagonal_norms(a):
    off = a.copy()
    idx = np.arange(a.shape[-1])
    off[:, idx, idx] = 0.0
    return np.linalg.norm(off, axis=(-2, -1))


def _mix_columns(m, p, q, c, s, g10, g11):
    cols_p = m[:, :, p]
    cols_q = m[:, :, q]
    m[:, :, p] = cols_p * c[:, None, :] + cols_q * g10[:, None, :]
    m[:, :, q] = cols_p * s[:, None, :] + cols_q * g11[:, None, :]


def _rotate(a, v, p, q):
    g = a[:, p, q]
    mag = np.abs(g)
    dead = mag == 0.0
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * mag)
        t = np.copysign(1.0, theta) / (np.abs(theta) + np.hypot(theta, 1.0))
        conj_phase = np.conj(g) / mag
    t[dead] = 0.0
    conj_phase[dead] = 1.0
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on every (p, q) plane
    g10 = -s * conj_phase
    g11 = c * conj_phase

    _mix_columns(a, p, q, c, s, g10, g11)
    rows_p = a[:, p, :]
    rows_q = a[:, q, :]
    a[:, p, :] = rows_p * c[:, :, None] + rows_q * np.conj(g10)[:, :, None]
    a[:, q, :] = rows_p * s[:, :, None] + rows_q * np.conj(g11)[:, :, None]
    a[:, p, q] = 0.0
    a[:, q, p] = 0.0

    if v is not None:
        _mix_columns(v, p, q, c, s, g10, g11)


def jacobi_eigh(data, max_sweeps=None, vectors=True):
    """Eigenvalues (unsorted) and eigenvector columns of a Hermitian array

    `data` is one (n, n) matrix or a (count, n, n) stack; the results carry
    the same leading axis. With vectors=False no rotations are accumulated
    and None is returned in place of the eigenvectors.
    """
    if max_sweeps is None:
        max_sweeps = get_config().JACOBI_MAX_SWEEPS
    a = np.array(data, dtype=complex, copy=True)
    single = a.ndim == 2
    if single:
        a = a[np.newaxis]
    count, n = a.shape[0], a.shape[-1]
    idx = np.arange(n)
    v = np.tile(np.eye(n, dtype=complex), (count, 1, 1)) if vectors else None
    threshold = JACOBI_RTOL * (np.linalg.norm(a, axis=(-2, -1)) + 1.0)

    sweeps = 0
    off = _off_diagonal_norms(a)
    while np.any(off >= threshold) and sweeps < max_sweeps:
        for p, q in round_robin(n):
            _rotate(a, v, p, q)
        a[:, idx, idx] = a[:, idx, idx].real
        sweeps += 1
        off = _off_diagonal_norms(a)

    stalled = off >= threshold
    if np.any(stalled):
        worst = float(np.max(off[stalled]))
        if worst > JACOBI_ACCEPT:
            raise NoConvergence(
                f'Jacobi iteration stalled after {sweeps} sweeps with off-diagonal mass {worst:.3e}',
                sweeps=sweeps, off_diagonal=worst)
        logger.warning(f'Jacobi sweep cap hit; accepting off-diagonal mass {worst:.3e}')
    logger.debug(f'Jacobi converged in {sweeps} sweeps for {count} matrices of size {n}')

    values = a[:, idx, idx].real.copy()
    if single:
        return values[0], (v[0] if vectors else None)
    return values, v


def eigh(a) -> EigenSequence:
    """Eigenvalues in non-increasing order with orthonormal eigenvectors"""
    a = HermitianMatrix.of(a)
    values, vectors = jacobi_eigh(a.data)
    order = np.argsort(-values, kind='stable')
    return EigenSequence(values[order], vectors[:, order])


def eigenvalues(a) -> np.ndarray:
    """Eigenvalues in non-increasing order, without accumulating eigenvectors"""
    a = HermitianMatrix.of(a)
    values, _ = jacobi_eigh(a.data, vectors=False)
    return np.sort(values)[::-1]


def psd_floor(values, rtol=PSD_FLOOR):
    """Most negative eigenvalue still treated as round-off"""
    scale = float(np.max(np.abs(values))) if len(values) else 0.0
    return -rtol * (1.0 + scale)


def _clamp_psd(values, rtol):
    floor = psd_floor(values, rtol)
    if len(values) and values[-1] < floor:
        raise NotPositive(
            f'matrix is not positive semidefinite: smallest eigenvalue {values[-1]:.3e} < {floor:.3e}',
            smallest_eigenvalue=float(values[-1]))
    return np.clip(values, 0.0, None)


def psd_eigh(a, rtol=PSD_FLOOR) -> EigenSequence:
    """eigh with the positive-semidefinite precondition enforced and round-off clamped"""
    es = eigh(a)
    return EigenSequence(_clamp_psd(es.values, rtol), es.vectors)


def eigenvalue_sequence(a, rtol=PSD_FLOOR) -> np.ndarray:
    """lambda_1 >= ... >= lambda_n >= 0; indices past n are zero by convention"""
    return _clamp_psd(eigenvalues(a), rtol)


def _stack_of(stack):
    arr = np.asarray(stack, dtype=complex)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2] or arr.shape[1] == 0:
        raise ParseError(f'expected a stack of square matrices, got shape {arr.shape}')
    if not np.all(np.isfinite(arr)):
        raise ParseError('matrix stack has non-finite entries')
    return arr


def _adjoint(arr):
    return np.conj(np.swapaxes(arr, -1, -2))


def eigenvalue_stack(stack, rtol=PSD_FLOOR) -> np.ndarray:
    """eigenvalue_sequence of every matrix in a (count, n, n) stack, one row each"""
    arr = _stack_of(stack)
    adjoint = _adjoint(arr)
    deviation = np.max(np.abs(arr - adjoint), axis=(-2, -1))
    scale = 1.0 + np.max(np.abs(arr), axis=(-2, -1))
    if np.any(deviation > HERMITIAN_ATOL * scale):
        k = int(np.argmax(deviation > HERMITIAN_ATOL * scale))
        raise NotHermitian(f'matrix {k} of the stack is not Hermitian', index=k, deviation=float(deviation[k]))

    values, _ = jacobi_eigh((arr + adjoint) / 2, vectors=False)
    values = np.sort(values, axis=-1)[:, ::-1]
    floor = -rtol * (1.0 + np.max(np.abs(values), axis=-1))
    below = values[:, -1] < floor
    if np.any(below):
        k = int(np.argmax(below))
        raise NotPositive(
            f'matrix {k} of the stack is not positive semidefinite: smallest eigenvalue {values[k, -1]:.3e}',
            index=k, smallest_eigenvalue=float(values[k, -1]))
    return np.clip(values, 0.0, None)


def _square(a):
    a = ComplexMatrix.of(a)
    if not a.is_square:
        raise DimensionMismatch(f'operator must be square, got {a.rows}x{a.cols}')
    return a


def abs_eigen(a) -> EigenSequence:
    """Spectral data of |a| = (a* a)^(1/2)"""
    a = _square(a)
    gram = a.data.conj().T @ a.data
    es = eigh(HermitianMatrix(gram))
    return EigenSequence(np.sqrt(np.clip(es.values, 0.0, None)), es.vectors)


def abs_value(a) -> HermitianMatrix:
    return HermitianMatrix(abs_eigen(a).reconstruct())


def singular_values(a) -> np.ndarray:
    """s_i(a) = lambda_i(|a|), non-increasing"""
    a = _square(a)
    gram = a.data.conj().T @ a.data
    return np.sqrt(np.clip(eigenvalues(HermitianMatrix(gram)), 0.0, None))


def singular_value_stack(stack) -> np.ndarray:
    """singular_values of every matrix in a (count, n, n) stack, one row each"""
    arr = _stack_of(stack)
    gram = _adjoint(arr) @ arr
    values, _ = jacobi_eigh((gram + _adjoint(gram)) / 2, vectors=False)
    return np.sqrt(np.clip(np.sort(values, axis=-1)[:, ::-1], 0.0, None))


def apply_spectrum_function(a, f: SpectrumFunction, es: EigenSequence | None = None) -> HermitianMatrix:
    """f(a) = sum_i f(lambda_i) p_i, matching eigenvalues to the nearest point of f

    Pass `es = psd_eigh(a)` to reuse one decomposition for several functions.
    """
    es = psd_eigh(a) if es is None else es
    mapped = [f.evaluate(x) for x in es.values]
    return HermitianMatrix(es.reconstruct(mapped))


def apply_scalar_function(a, func) -> HermitianMatrix:
    """Functional calculus of a PSD matrix by an arbitrary scalar function"""
    es = psd_eigh(a)
    return HermitianMatrix(es.reconstruct([func(x) for x in es.values]))


def _split_signs(h):
    es = eigh(HermitianMatrix(h))
    positive = HermitianMatrix(es.reconstruct(np.clip(es.values, 0.0, None)))
    negative = HermitianMatrix(es.reconstruct(np.clip(-es.values, 0.0, None)))
    return positive, negative


def four_parts(a):
    """a = a1 - a2 + i(a3 - a4) with a1 a2 = a3 a4 = 0, all four PSD"""
    a = _square(a)
    real_part = (a.data + a.data.conj().T) / 2
    imag_part = (a.data - a.data.conj().T) / 2j
    a1, a2 = _split_signs(real_part)
    a3, a4 = _split_signs(imag_part)
    return a1, a2, a3, a4
