"""Counterexample search for the triangle inequality of non-concave weights

Also home to the seeded random generators every property suite draws from.
All randomness flows through RandomSource, a numpy PCG64 stream keyed by a
64-bit seed; trial k of a run uses seed + k so trials are independent and
reproducible one by one.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from ntrace.errors import BadSpectrum, ConcaveWeight, IndexOutOfRange, InvalidExponent, SearchExhausted
from ntrace.models import VIOLATION_THRESHOLD, Counterexample, HermitianMatrix, WeightFunction
from ntrace.norms import schatten_from_singular
from ntrace.spectral import singular_values
from ntrace.weights import first_nonconcavity, is_concave

logger = logging.getLogger(__name__)

SEED_MODULUS = 2 ** 64
GRID_SIZE = 64
SEARCH_DIM = 4


@dataclass(frozen=True)
class RandomSource:
    """Deterministic PCG64 stream"""
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'seed', int(self.seed) % SEED_MODULUS)
        object.__setattr__(self, '_generator', np.random.Generator(np.random.PCG64(self.seed)))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def spawn(self, index: int) -> 'RandomSource':
        """Independent stream for trial `index`"""
        return RandomSource(self.seed + index)

    def normal(self, size=None):
        return self._generator.standard_normal(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._generator.uniform(low, high, size)

    def integers(self, low, high):
        return int(self._generator.integers(low, high))


def _check_p(p):
    if not math.isfinite(p) or p < 1:
        raise InvalidExponent(f'p must be a finite real >= 1, got {p!r}')


def random_complex(rng: RandomSource, dim: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.normal((dim, dim)) + 1j * rng.normal((dim, dim))) / math.sqrt(2.0)


def random_complex_stack(rng: RandomSource, count: int, dim: int) -> np.ndarray:
    return (rng.normal((count, dim, dim)) + 1j * rng.normal((count, dim, dim))) / math.sqrt(2.0)


def random_unitary(rng: RandomSource, dim: int) -> np.ndarray:
    """QR of a complex Gaussian matrix with the phases of R moved into Q"""
    q, r = np.linalg.qr(random_complex(rng, dim))
    d = np.diag(r)
    phases = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return q * phases


def random_psd(rng: RandomSource, dim: int, spectrum=None) -> HermitianMatrix:
    """u diag(spectrum) u* for a random unitary u; |Gaussian| spectrum by default"""
    if dim < 1:
        raise IndexOutOfRange(f'dimension must be >= 1, got {dim}')
    if spectrum is None:
        values = np.abs(rng.normal(dim))
    else:
        values = np.asarray(spectrum, dtype=float)
        if values.shape != (dim,):
            raise BadSpectrum(f'spectrum needs {dim} values, got {values.size}')
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise BadSpectrum('spectrum values must be finite and non-negative')
    u = random_unitary(rng, dim)
    return HermitianMatrix((u * values) @ u.conj().T)


def random_contraction(rng: RandomSource, dim: int) -> np.ndarray:
    """u diag(s) v with singular values s drawn from [0, 1]"""
    s = rng.uniform(0.0, 1.0, dim)
    return (random_unitary(rng, dim) * s) @ random_unitary(rng, dim)


def random_projection(rng: RandomSource, dim: int, rank: int) -> np.ndarray:
    """Orthogonal projection onto the span of `rank` Gaussian vectors"""
    if not 0 <= rank <= dim:
        raise IndexOutOfRange(f'rank must lie in 0..{dim}, got {rank}')
    if rank == 0:
        return np.zeros((dim, dim), dtype=complex)
    g = (rng.normal((dim, rank)) + 1j * rng.normal((dim, rank))) / math.sqrt(2.0)
    q, _ = np.linalg.qr(g)
    return q @ q.conj().T


def random_projections(rng: RandomSource, dim: int, count: int):
    """Stack of `count` projections with ranks drawn uniformly from 1..dim, and those ranks

    Each projection keeps the first `rank` columns of the QR factor of its
    own complex Gaussian matrix.
    """
    if dim < 1:
        raise IndexOutOfRange(f'dimension must be >= 1, got {dim}')
    ranks = rng.generator.integers(1, dim + 1, size=count)
    g = (rng.normal((count, dim, dim)) + 1j * rng.normal((count, dim, dim))) / math.sqrt(2.0)
    q, _ = np.linalg.qr(g)
    basis = q * (np.arange(dim)[None, :] < ranks[:, None])[:, None, :]
    return basis @ np.conj(np.swapaxes(basis, -1, -2)), ranks


def random_weight(rng: RandomSource, length: int, concave: bool) -> WeightFunction:
    """Random positive increments; sorted down when concave, rejection-sampled otherwise"""
    if length < 1:
        raise IndexOutOfRange(f'weight length must be >= 1, got {length}')
    if concave:
        increments = np.sort(rng.uniform(0.1, 2.0, length))[::-1]
        tail = float(increments[-1] * rng.uniform(0.0, 1.0))
        return WeightFunction(tuple(increments.tolist()), tail)
    while True:
        w = WeightFunction(tuple(rng.uniform(0.1, 2.0, length).tolist()), float(rng.uniform(0.0, 2.0)))
        if not is_concave(w):
            return w


def _diagonal_norm(entries, w, p):
    return schatten_from_singular(np.sort(np.abs(entries))[::-1], w, p)


def _row_norms(rows, w, p):
    """Norm of each row read as a diagonal matrix"""
    s = -np.sort(-np.abs(rows), axis=1)
    total = (s ** p) @ w.increments_upto(rows.shape[1])
    return total ** (1.0 / p)


def _diagonal_counterexample(x, y, w, p, parameters, threshold):
    lhs = _diagonal_norm(x + y, w, p)
    rhs = _diagonal_norm(x, w, p) + _diagonal_norm(y, w, p)
    return Counterexample(np.diag(x).astype(complex), np.diag(y).astype(complex), w, p, lhs, rhs, parameters,
                          threshold)


def _require_nonconcave(w):
    i = first_nonconcavity(w)
    if i is None:
        raise ConcaveWeight('weight is concave, so its norms satisfy the triangle inequality',
                            weight=w.to_dict())
    return i


def proof_family_counterexample(w: WeightFunction, p: float = 1.0, dim: int | None = None,
                                threshold: float = VIOLATION_THRESHOLD) -> Counterexample:
    """Grid search over a = 2P + (1+s)p_{i+1} + (1-t)p_{i+2}, b = 2P + (1-t)p_{i+1} + (1+s)p_{i+2}

    P = p_1 + ... + p_i with i the first non-concavity index. The grid is
    log-spaced in s over (0, s0] and linear in t over [0, 1]; the point of
    largest margin wins; it must exceed `threshold`.
    """
    _check_p(p)
    i = _require_nonconcave(w)
    dim = i + 2 if dim is None else dim
    if dim < i + 2:
        raise IndexOutOfRange(f'the family needs dim >= {i + 2}, got {dim}', first_nonconcavity=i)

    c_lo, c_hi = w.increment(i + 1), w.increment(i + 2)
    s0 = 1.0 if c_lo == 0 else min(1.0, ((c_lo + c_hi) / c_lo) ** (1.0 / p) - 1.0)
    s_grid = np.geomspace(s0 * 1e-3, s0, GRID_SIZE)
    t_grid = np.linspace(0.0, 1.0, GRID_SIZE)

    ss, tt = (g.ravel() for g in np.meshgrid(s_grid, t_grid, indexing='ij'))
    x = np.zeros((ss.size, dim))
    x[:, :i] = 2.0
    y = x.copy()
    x[:, i], x[:, i + 1] = 1.0 + ss, 1.0 - tt
    y[:, i], y[:, i + 1] = 1.0 - tt, 1.0 + ss
    margins = _row_norms(x + y, w, p) - _row_norms(x, w, p) - _row_norms(y, w, p)

    best = int(np.argmax(margins))
    if not margins[best] > threshold:
        raise SearchExhausted(f'no violation on the {GRID_SIZE}x{GRID_SIZE} grid',
                              first_nonconcavity=i, s0=s0, p=p)
    s, t, x, y = ss[best], tt[best], x[best], y[best]
    cx = _diagonal_counterexample(x, y, w, p, {
        'mode': 'proof', 'first_nonconcavity': i, 's0': s0, 's': float(s), 't': float(t)}, threshold)
    logger.info(f'Proof-family counterexample at s={s:.4g}, t={t:.4g} with margin {cx.margin:.4g}')
    return cx


def trace_norm_projection_counterexample(w: WeightFunction, dim: int | None = None,
                                         threshold: float = VIOLATION_THRESHOLD) -> Counterexample:
    """p = 1 pair x = p_1 + p_3 + ... + p_{k+1}, y = p_2 + p_3 + ... + p_{k+1}

    k = i + 1 is the index where concavity first fails (c_{k+1} > c_k), so
    |||x + y||| = alpha(k+1) + alpha(k-1) exceeds |||x||| + |||y||| = 2 alpha(k).
    """
    k = _require_nonconcave(w) + 1
    dim = k + 1 if dim is None else dim
    if dim < k + 1:
        raise IndexOutOfRange(f'the construction needs dim >= {k + 1}, got {dim}')
    x = np.zeros(dim)
    y = np.zeros(dim)
    x[0] = 1.0
    y[1] = 1.0
    x[2:k + 1] = 1.0
    y[2:k + 1] = 1.0
    margin = w.increment(k + 1) - w.increment(k)
    if margin <= threshold:
        raise SearchExhausted(f'concavity gap {margin:.3e} does not exceed the threshold {threshold:.3e}',
                              margin=margin, threshold=threshold)
    return _diagonal_counterexample(x, y, w, 1.0, {'mode': 'projection', 'k': k}, threshold)


def _norm(a, w, p):
    return schatten_from_singular(singular_values(a), w, p)


def random_search_counterexample(w: WeightFunction, p: float, trials: int, rng: RandomSource,
                                 dim: int = SEARCH_DIM, threshold: float = VIOLATION_THRESHOLD) -> Counterexample | None:
    """Random pairs: diagonal on even trials, general complex on odd ones

    Returns the first violation by more than `threshold`, or None.
    """
    _check_p(p)
    for k in range(trials):
        sub = rng.spawn(k)
        if k % 2 == 0:
            x = sub.uniform(0.0, 1.0, dim)
            y = sub.uniform(0.0, 1.0, dim)
            lhs = _diagonal_norm(x + y, w, p)
            rhs = _diagonal_norm(x, w, p) + _diagonal_norm(y, w, p)
            a, b = np.diag(x).astype(complex), np.diag(y).astype(complex)
        else:
            a = random_complex(sub, dim)
            b = random_complex(sub, dim)
            lhs = _norm(a + b, w, p)
            rhs = _norm(a, w, p) + _norm(b, w, p)
        if lhs - rhs > threshold:
            logger.info(f'Random search violation at trial {k} with margin {lhs - rhs:.4g}')
            return Counterexample(a, b, w, p, lhs, rhs, {'mode': 'random', 'trial': k, 'seed': rng.seed}, threshold)
    return None


def verify_counterexample(cx: Counterexample, threshold: float | None = None) -> dict:
    """Recompute both sides through the general eigensolver path

    The margin is held to the counterexample's own threshold unless one is given.
    """
    threshold = cx.threshold if threshold is None else threshold
    lhs = _norm(cx.a + cx.b, cx.weight, cx.p)
    rhs = _norm(cx.a, cx.weight, cx.p) + _norm(cx.b, cx.weight, cx.p)
    margin = lhs - rhs
    return {'lhs': lhs, 'rhs': rhs, 'margin': margin, 'verified': margin > threshold}
