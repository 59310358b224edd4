"""Domain types shared across ntrace modules

All values are immutable after construction: array fields are copied and
flagged read-only, tuples replace lists.
"""
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from ntrace.errors import (
    BadSpectrum, IncompleteMeasure, IndexOutOfRange, InvalidWeight,
    NotHermitian, ParseError, SpectrumMismatch, DimensionMismatch,
    AlphaOneZero, InvalidExponent, InternalInconsistency,
)

HERMITIAN_ATOL = 1e-12
SPECTRUM_ATOL = 1e-9
VIOLATION_THRESHOLD = 1e-9

VERDICTS = ('pass', 'fail', 'skipped')


def _frozen_array(values, dtype):
    arr = np.array(values, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


def _check_non_negative(values, what, error=InvalidWeight):
    for v in values:
        if not math.isfinite(v) or v < 0:
            raise error(f'{what} must be finite and non-negative, got {v!r}')


@dataclass(frozen=True)
class WeightFunction:
    """Monotone increasing alpha with alpha(0) = 0

    Stored as the increments c_1..c_N followed by a constant tail increment
    used for every index beyond N.
    """
    increments: tuple = ()
    tail: float = 0.0

    def __post_init__(self):
        incs = tuple(float(c) for c in self.increments)
        tail = float(self.tail)
        _check_non_negative(incs, 'weight increments')
        _check_non_negative((tail,), 'tail increment')
        object.__setattr__(self, 'increments', incs)
        object.__setattr__(self, 'tail', tail)

    @classmethod
    def linear(cls):
        """alpha = (0, 1, 2, 3, ...): the usual trace"""
        return cls((1.0,), 1.0)

    @classmethod
    def operator_norm(cls):
        """alpha = (0, 1, 1, 1, ...): picks lambda_1"""
        return cls((1.0,), 0.0)

    @classmethod
    def selector(cls, i):
        """alpha = (0, ..., 0, 1, 1, ...) with the jump at i: picks lambda_i"""
        if i < 1:
            raise IndexOutOfRange(f'selector index must be >= 1, got {i}')
        return cls((0.0,) * (i - 1) + (1.0,), 0.0)

    @classmethod
    def top_k(cls, k):
        """alpha = (0, 1, ..., k, k, ...): Ky Fan k-sum"""
        if k < 1:
            raise IndexOutOfRange(f'k must be >= 1, got {k}')
        return cls((1.0,) * k, 0.0)

    @classmethod
    def constant(cls, r):
        """alpha = (0, r, r, ...)"""
        return cls((float(r),), 0.0)

    @classmethod
    def from_alpha(cls, values, tail=0.0):
        """Build from alpha(0), alpha(1), ..., alpha(N); alpha(0) must be 0"""
        values = [float(v) for v in values]
        if not values or values[0] != 0.0:
            raise InvalidWeight('alpha(0) must be 0')
        return cls(tuple(b - a for a, b in zip(values, values[1:])), tail)

    @property
    def prefix_length(self):
        return len(self.increments)

    def increment(self, i):
        """c_i = alpha(i) - alpha(i-1), 1-based"""
        if i < 1:
            raise IndexOutOfRange(f'increment index must be >= 1, got {i}')
        if i <= len(self.increments):
            return self.increments[i - 1]
        return self.tail

    def increments_upto(self, n):
        """Array (c_1, ..., c_n)"""
        head = list(self.increments[:n])
        head.extend([self.tail] * max(0, n - len(head)))
        return np.asarray(head, dtype=float)

    def alpha_values(self, n):
        """Array (alpha(0), alpha(1), ..., alpha(n))"""
        head = np.cumsum(np.asarray(self.increments[:n], dtype=float))
        total = float(head[-1]) if head.size else 0.0
        tail = total + self.tail * np.arange(1, max(0, n - self.prefix_length) + 1, dtype=float)
        return np.concatenate(([0.0], head, tail))

    def alpha(self, n):
        """alpha(n) in closed form; no length-n arrays are built"""
        if n < 0:
            raise IndexOutOfRange(f'alpha is defined on non-negative integers, got {n}')
        head = np.cumsum(np.asarray(self.increments[:n], dtype=float))
        total = float(head[-1]) if head.size else 0.0
        extra = max(0, n - self.prefix_length)
        return total + self.tail * extra if extra else total

    def to_dict(self):
        return {'increments': list(self.increments), 'tail': self.tail}


@dataclass(frozen=True)
class MonotoneMeasure:
    """Set function on {1, ..., n}

    Either an explicit table keyed by frozensets of 1-based indices, or the
    cardinality rule mu(A) = alpha(#A) of a weight function. Monotonicity is
    not enforced here; check_measure_monotone reports on it.
    """
    ground_size: int
    table: Mapping[frozenset, float] | None = None
    weight: WeightFunction | None = None

    def __post_init__(self):
        if self.ground_size < 1:
            raise ParseError(f'ground size must be positive, got {self.ground_size}')
        if (self.table is None) == (self.weight is None):
            raise ParseError('a measure needs exactly one of a table or a weight rule')
        if self.table is not None:
            table = {frozenset(k): float(v) for k, v in self.table.items()}
            universe = frozenset(range(1, self.ground_size + 1))
            for subset, value in table.items():
                if not subset <= universe:
                    raise ParseError(f'subset {sorted(subset)} is outside the ground set 1..{self.ground_size}')
                _check_non_negative((value,), f'measure of {sorted(subset)}', ParseError)
            expected = 2 ** self.ground_size
            if len(table) != expected:
                raise IncompleteMeasure(
                    f'measure table lists {len(table)} of {expected} subsets',
                    ground_size=self.ground_size)
            object.__setattr__(self, 'table', table)

    @classmethod
    def cardinality_based(cls, ground_size, weight):
        return cls(ground_size, weight=weight)

    @classmethod
    def from_function(cls, ground_size, func):
        """Tabulate func(frozenset) over every subset"""
        indices = range(1, ground_size + 1)
        table = {}
        for r in range(ground_size + 1):
            for combo in itertools.combinations(indices, r):
                subset = frozenset(combo)
                table[subset] = func(subset)
        return cls(ground_size, table=table)

    @property
    def is_rule_based(self):
        return self.weight is not None

    def value(self, subset):
        subset = frozenset(subset)
        if self.weight is not None:
            return self.weight.alpha(len(subset))
        return self.table[subset]


@dataclass(frozen=True)
class NonNegVector:
    entries: tuple = ()

    def __post_init__(self):
        entries = tuple(float(x) for x in self.entries)
        _check_non_negative(entries, 'vector entries', ParseError)
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_csv(cls, text):
        try:
            values = [float(part) for part in text.split(',') if part.strip()]
        except ValueError as e:
            raise ParseError(f'could not parse vector {text!r}: {e}')
        return cls(tuple(values))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def as_array(self):
        return np.asarray(self.entries, dtype=float)


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise ParseError(f'matrix must be two-dimensional, got shape {arr.shape}')
        if not np.all(np.isfinite(arr)):
            raise ParseError('matrix entries must be finite')
        object.__setattr__(self, 'data', _frozen_array(arr, complex))

    @classmethod
    def of(cls, value):
        if isinstance(value, (ComplexMatrix, HermitianMatrix)):
            return cls(value.data)
        return cls(value)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def is_square(self):
        return self.rows == self.cols

    def adjoint(self):
        return ComplexMatrix(self.data.conj().T)


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Complex square matrix equal to its adjoint

    The Hermitian check uses an absolute tolerance scaled by the largest
    entry; the stored data is the exactly symmetrized input.
    """
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ParseError(f'Hermitian matrix must be square and non-empty, got shape {arr.shape}')
        if not np.all(np.isfinite(arr)):
            raise ParseError('matrix entries must be finite')
        scale = 1.0 + float(np.max(np.abs(arr)))
        deviation = float(np.max(np.abs(arr - arr.conj().T)))
        if deviation > HERMITIAN_ATOL * scale:
            raise NotHermitian(f'matrix is not Hermitian (max |a - a*| = {deviation:.3e})',
                               deviation=deviation)
        object.__setattr__(self, 'data', _frozen_array((arr + arr.conj().T) / 2, complex))

    @classmethod
    def of(cls, value):
        if isinstance(value, HermitianMatrix):
            return value
        if isinstance(value, ComplexMatrix):
            return cls(value.data)
        return cls(value)

    @classmethod
    def diag(cls, values):
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self):
        return self.data.shape[0]


@dataclass(frozen=True, eq=False)
class EigenSequence:
    """Eigenvalues in non-increasing order with aligned orthonormal eigenvectors

    vectors[:, i] belongs to values[i]. Indices beyond dim are conceptually
    zero.
    """
    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'values', _frozen_array(self.values, float))
        object.__setattr__(self, 'vectors', _frozen_array(self.vectors, complex))

    @property
    def dim(self):
        return len(self.values)

    def value(self, i):
        """lambda_i with the zero-padding convention, 1-based"""
        return float(self.values[i - 1]) if 1 <= i <= self.dim else 0.0

    def projector(self, i):
        """Rank-one spectral projector of the i-th eigenvector, 0-based"""
        v = self.vectors[:, i:i + 1]
        return v @ v.conj().T

    def top_projection(self, m):
        """Sum of the top-m rank-one projectors"""
        v = self.vectors[:, :m]
        return v @ v.conj().T

    def reconstruct(self, values=None):
        vals = self.values if values is None else np.asarray(values, dtype=float)
        return (self.vectors * vals) @ self.vectors.conj().T


@dataclass(frozen=True)
class SpectrumFunction:
    """Finite point-value map on a spectrum, sending 0 to 0"""
    points: tuple
    values: tuple

    def __post_init__(self):
        points = tuple(float(x) for x in self.points)
        values = tuple(float(y) for y in self.values)
        if len(points) != len(values):
            raise BadSpectrum('spectrum function needs one value per point')
        _check_non_negative(points, 'spectrum points', BadSpectrum)
        _check_non_negative(values, 'spectrum function values', BadSpectrum)
        if len(set(points)) != len(points):
            raise BadSpectrum('spectrum points must be distinct')
        if 0.0 not in points:
            raise BadSpectrum('spectrum points must include 0')
        if values[points.index(0.0)] != 0.0:
            raise BadSpectrum('spectrum function must vanish at 0')
        object.__setattr__(self, 'points', points)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_mapping(cls, mapping):
        items = sorted((float(k), float(v)) for k, v in mapping.items())
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    @classmethod
    def identity(cls, points):
        pts = sorted(set(float(x) for x in points) | {0.0})
        return cls(tuple(pts), tuple(pts))

    @classmethod
    def zero(cls, points):
        pts = sorted(set(float(x) for x in points) | {0.0})
        return cls(tuple(pts), (0.0,) * len(pts))

    def evaluate(self, x, atol=SPECTRUM_ATOL):
        pts = np.asarray(self.points)
        k = int(np.argmin(np.abs(pts - x)))
        if abs(pts[k] - x) > atol:
            raise SpectrumMismatch(f'eigenvalue {x!r} has no point within {atol:g}', eigenvalue=float(x))
        return self.values[k]

    def _combine(self, other, op):
        if self.points != other.points:
            raise DimensionMismatch('spectrum functions are defined on different points')
        return SpectrumFunction(self.points, tuple(op(u, v) for u, v in zip(self.values, other.values)))

    def __add__(self, other):
        return self._combine(other, lambda u, v: u + v)

    def maximum(self, other):
        return self._combine(other, max)

    def minimum_with(self, k):
        """x -> min(k, f(x))"""
        return SpectrumFunction(self.points, tuple(min(k, v) for v in self.values))


@dataclass(frozen=True)
class NormSpec:
    weight: WeightFunction
    p: float = 1.0

    def __post_init__(self):
        p = float(self.p)
        if not math.isfinite(p) or p < 1:
            raise InvalidExponent(f'p must be a finite real >= 1, got {self.p!r}')
        if self.weight.alpha(1) <= 0:
            raise AlphaOneZero('norms need alpha(1) > 0')
        object.__setattr__(self, 'p', p)


@dataclass(frozen=True)
class MajorizationVerdict:
    relation_holds: bool
    failing_index: int | None
    partial_sums_x: tuple
    partial_sums_y: tuple

    def __bool__(self):
        return self.relation_holds

    def to_dict(self):
        return {
            'relation_holds': self.relation_holds,
            'failing_index': self.failing_index,
            'partial_sums_x': list(self.partial_sums_x),
            'partial_sums_y': list(self.partial_sums_y),
        }


@dataclass
class CheckReport:
    name: str
    verdict: str
    tolerance: float | None = None
    witness: dict | None = None
    seed: int | None = None
    trials: int | None = None
    detail: str = ''

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f'verdict must be one of {VERDICTS}, got {self.verdict!r}')

    @property
    def passed(self):
        return self.verdict == 'pass'

    @property
    def failed(self):
        return self.verdict == 'fail'


@dataclass(eq=False)
class Counterexample:
    """Pair violating |||a + b||| <= |||a||| + |||b|||"""
    a: np.ndarray
    b: np.ndarray
    weight: WeightFunction
    p: float
    lhs: float
    rhs: float
    parameters: dict = field(default_factory=dict)
    threshold: float = VIOLATION_THRESHOLD

    def __post_init__(self):
        if not self.margin > self.threshold:
            raise InternalInconsistency(
                f'counterexample margin {self.margin:.3e} does not exceed {self.threshold:g}')

    @property
    def margin(self):
        return self.lhs - self.rhs


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    checks: list = field(default_factory=list)
    seed: int | None = None
    elapsed_ms: int = 0

    @property
    def any_failed(self):
        return any(c.failed for c in self.checks)
