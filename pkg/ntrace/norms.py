"""Norms induced by the non-linear traces

Every norm here is a function of the singular values, so each entry point
reduces a matrix to s(a) once and hands it to a *_from_singular helper. The
helpers let property suites evaluate many weights against one decomposition.
|a|^p is never formed by repeated products: lambda_k(|a|^p) = s_k(a)^p.
"""
import logging

import numpy as np

from ntrace.errors import AlphaOneZero, DimensionMismatch, IndexOutOfRange, InvalidExponent, NotConcave
from ntrace.models import ComplexMatrix, NormSpec, WeightFunction
from ntrace.spectral import singular_values
from ntrace.traces import phi_from_eigenvalues, psi_from_eigenvalues
from ntrace.weights import is_concave

logger = logging.getLogger(__name__)


def _require_alpha_one(w):
    if w.alpha(1) <= 0:
        raise AlphaOneZero('norms need alpha(1) > 0')


def operator_norm(a) -> float:
    s = singular_values(a)
    return float(s[0]) if len(s) else 0.0


def schatten_from_singular(s, w: WeightFunction, p: float = 1.0) -> float:
    """(sum_k c_k s_k^p)^(1/p)"""
    s = np.asarray(s, dtype=float)
    total = phi_from_eigenvalues(s ** p, w)
    return float(total ** (1.0 / p)) if p != 1.0 else total


def choquet_norm(a, w: WeightFunction) -> float:
    """|||a|||_alpha = phi_alpha(|a|)"""
    _require_alpha_one(w)
    return schatten_from_singular(singular_values(a), w, 1.0)


def schatten_choquet_norm(a, spec: NormSpec) -> float:
    """|||a|||_{alpha,p} = phi_alpha(|a|^p)^(1/p)"""
    return schatten_from_singular(singular_values(a), spec.weight, spec.p)


def _check_k(k, dim):
    if not 1 <= k <= dim:
        raise IndexOutOfRange(f'k must lie in 1..{dim}, got {k}')


def kyfan_from_singular(s, p: float, k: int) -> float:
    s = np.asarray(s, dtype=float)
    _check_k(k, len(s))
    head = float(np.sum(s[:k] ** p))
    return head ** (1.0 / p) if p != 1.0 else head


def kyfan_norm(a, k: int) -> float:
    """s_1(a) + ... + s_k(a)"""
    return kyfan_from_singular(singular_values(a), 1.0, k)


def kyfan_pk_norm(a, p: float, k: int) -> float:
    """(lambda_1(|a|^p) + ... + lambda_k(|a|^p))^(1/p)"""
    if p < 1:
        raise InvalidExponent(f'p must be >= 1, got {p}')
    return kyfan_from_singular(singular_values(a), p, k)


def kyfan_decomposition_from_singular(s, w: WeightFunction, p: float) -> dict:
    """Terms of (sum_{k<n} (c_k - c_{k+1}) ||a||_{p,(k)}^p + c_n ||a||_{p,(n)}^p)^(1/p)

    The identity holds for every weight (summation by parts); the d_k are all
    non-negative exactly when the weight is concave.
    """
    s = np.asarray(s, dtype=float)
    n = len(s)
    c = w.increments_upto(n)
    d = c - np.append(c[1:], 0.0)
    kyfan_p = np.cumsum(s ** p)
    total = float(np.dot(d, kyfan_p))
    value = max(total, 0.0) ** (1.0 / p)
    return {
        'd': d.tolist(),
        'kyfan_pk_to_p': kyfan_p.tolist(),
        'value': value,
    }


def kyfan_decomposition(a, spec: NormSpec) -> dict:
    return kyfan_decomposition_from_singular(singular_values(a), spec.weight, spec.p)


def norm_of_norms_from_singular(s, w: WeightFunction, p: float) -> float:
    """beta(nu_1, ..., nu_n) with nu_k = d_k^(1/p) ||a||_{p,(k)} and beta the l^p norm"""
    if not is_concave(w):
        raise NotConcave('the norm-of-norms composition needs non-increasing increments')
    s = np.asarray(s, dtype=float)
    terms = kyfan_decomposition_from_singular(s, w, p)
    d = np.clip(np.asarray(terms['d']), 0.0, None)
    kyfan = np.asarray(terms['kyfan_pk_to_p']) ** (1.0 / p)
    nu = d ** (1.0 / p) * kyfan
    return float(np.linalg.norm(nu, ord=p))


def norm_of_norms(a, spec: NormSpec) -> float:
    return norm_of_norms_from_singular(singular_values(a), spec.weight, spec.p)


def sugeno_norm(a, w: WeightFunction) -> float:
    """||a||_alpha = psi_alpha(|a|)"""
    _require_alpha_one(w)
    return psi_from_eigenvalues(singular_values(a), w)


def sugeno_distance(a, b, w: WeightFunction) -> float:
    """d(a, b) = ||a - b||_alpha; a metric only for concave alpha"""
    if not is_concave(w):
        raise NotConcave('the Sugeno distance is a metric only for concave alpha')
    a = ComplexMatrix.of(a)
    b = ComplexMatrix.of(b)
    if a.data.shape != b.data.shape:
        raise DimensionMismatch(f'shapes differ: {a.data.shape} vs {b.data.shape}')
    return sugeno_norm(a.data - b.data, w)


def sugeno_homogeneity_gap(a, w: WeightFunction, k: complex) -> dict:
    """||k a||_alpha next to |k| ||a||_alpha; they differ in general"""
    a = ComplexMatrix.of(a)
    scaled = sugeno_norm(k * a.data, w)
    expected = abs(k) * sugeno_norm(a, w)
    return {'scaled_norm': scaled, 'scaled_by_k': expected, 'gap': scaled - expected}
