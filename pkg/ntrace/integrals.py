"""Discrete Choquet and Sugeno integrals of non-negative vectors"""
import numpy as np

from ntrace.errors import DimensionMismatch
from ntrace.models import MonotoneMeasure, NonNegVector


def _vector(x):
    return x if isinstance(x, NonNegVector) else NonNegVector(tuple(x))


def sorting_permutation(x) -> list:
    """0-based sigma with x[sigma[0]] >= x[sigma[1]] >= ...; ties by ascending index"""
    x = _vector(x)
    return sorted(range(len(x)), key=lambda i: (-x.entries[i], i))


def decreasing_rearrangement(x) -> NonNegVector:
    x = _vector(x)
    return NonNegVector(tuple(sorted(x.entries, reverse=True)))


def _chain(x, m):
    """Sorted values and mu(A_1), ..., mu(A_n) along the sorting permutation"""
    x = _vector(x)
    if len(x) != m.ground_size:
        raise DimensionMismatch(
            f'vector has {len(x)} entries but the measure lives on {m.ground_size} points')
    sigma = sorting_permutation(x)
    values = [x.entries[i] for i in sigma]
    measures = []
    chain = set()
    for i in sigma:
        chain.add(i + 1)
        measures.append(m.value(chain))
    return values, measures


def choquet_integral(x, m: MonotoneMeasure) -> float:
    """sum_i (x_sigma(i) - x_sigma(i+1)) mu(A_i), with x_sigma(n+1) = 0"""
    values, measures = _chain(x, m)
    if not values:
        return 0.0
    gaps = np.asarray(values) - np.append(values[1:], 0.0)
    return float(np.dot(gaps, measures))


def sugeno_integral(x, m: MonotoneMeasure) -> float:
    """max_i min(x_sigma(i), mu(A_i))"""
    values, measures = _chain(x, m)
    return max((min(v, mu) for v, mu in zip(values, measures)), default=0.0)


def are_comonotonic(f, g) -> bool:
    """(f_s - f_t)(g_s - g_t) >= 0 for every pair s, t"""
    f = _vector(f).as_array()
    g = _vector(g).as_array()
    if f.shape != g.shape:
        raise DimensionMismatch(f'comonotonicity needs equal lengths, got {len(f)} and {len(g)}')
    df = f[:, None] - f[None, :]
    dg = g[:, None] - g[None, :]
    return bool(np.all(df * dg >= 0))
