"""
특수 함수 유틸리티

스케일된 I₀, log I₀, 가중 log-sum-exp
"""

import logging
import math

import numpy as np
from scipy import special

from ammac.core.exceptions import DomainError, EmptyMixture

logger = logging.getLogger(__name__)

SERIES_LIMIT = 15.0


def _as_domain(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("bessel argument must be finite", value=x)
    if np.any(arr < 0.0):
        raise DomainError("bessel argument must be >= 0", value=float(arr.min()))
    return arr


def _unwrap(arr: np.ndarray, x):
    return float(arr) if np.ndim(x) == 0 else arr


def i0_scaled(x):
    """
    e^{-x}·I₀(x)

    Args:
        x: 0 이상의 실수 또는 배열

    Returns:
        (0, 1] 범위의 값 (x와 같은 형태)

    Raises:
        DomainError: 음수 또는 유한하지 않은 인자
    """
    arr = _as_domain(x)
    return _unwrap(special.i0e(arr), x)


def log_i0(x):
    """ln I₀(x) = x + ln(e^{-x} I₀(x)), 큰 x에서도 overflow 없음"""
    arr = _as_domain(x)
    return _unwrap(arr + np.log(special.i0e(arr)), x)


def i0_scaled_series(x: float) -> float:
    """
    멱급수 Σ (x/2)^{2k}/(k!)² 에 e^{-x}를 곱한 값

    작은 인자(x < 15)용 기준 구현입니다.
    """
    arr = float(_as_domain(x))
    quarter = 0.25 * arr * arr
    term, total, k = 1.0, 1.0, 0
    while term > 1e-17 * total:
        k += 1
        term *= quarter / (k * k)
        total += term
    return total * math.exp(-arr)


def i0_scaled_asymptotic(x: float, n_terms: int = 12) -> float:
    """
    큰 인자 점근 전개 1/√(2πx)·Σ ((2k-1)!!)²/(k!·(8x)^k)

    x ≥ 15 용 기준 구현입니다.
    """
    arr = float(_as_domain(x))
    if arr < SERIES_LIMIT:
        raise DomainError("asymptotic form needs x >= 15", value=arr)
    term, total = 1.0, 1.0
    for k in range(1, n_terms):
        term *= (2 * k - 1) ** 2 / (k * 8.0 * arr)
        total += term
    return total / math.sqrt(2.0 * math.pi * arr)


def log_sum_exp(terms) -> float:
    """
    ln(Σ weight·e^{log_value})

    Args:
        terms: (log_value, weight) 쌍의 목록 (weight ≥ 0)

    Returns:
        최대값을 빼는 방식으로 계산한 로그 합

    Raises:
        EmptyMixture: 양의 가중치가 하나도 없음
        DomainError: 음의 가중치
    """
    pairs = [(float(v), float(w)) for v, w in terms]
    if any(w < 0.0 for _, w in pairs):
        raise DomainError("mixture weights must be >= 0")
    active = [(v, w) for v, w in pairs if w > 0.0]
    if not active:
        raise EmptyMixture("log_sum_exp needs at least one positive weight")
    values = np.array([v for v, _ in active])
    weights = np.array([w for _, w in active])
    return float(special.logsumexp(values, b=weights))


def log_mixture(log_values: np.ndarray, log_weights: np.ndarray, axis: int = -1) -> np.ndarray:
    """배열용 혼합 로그 밀도: logsumexp(log_values + log_weights) (가중치는 로그 형태)"""
    return special.logsumexp(log_values + log_weights, axis=axis)
