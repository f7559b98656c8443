"""
구적 규칙 유틸리티

- 방사 규칙: 등간격 패널의 복합 Gauss–Legendre
- 각 규칙: [−π, π) 등간격 사다리꼴
- 가우시안 기댓값 규칙: Z ~ CN(0, σ²)에 대한 E[f(Z)] (u=|Z|²/σ² Gauss–Laguerre × 각 사다리꼴)
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import laguerre, legendre

from ammac.core.exceptions import ConfigError
from ammac.models.config_model import QuadConfig

logger = logging.getLogger(__name__)

PANEL_ORDER = 8


@dataclass(frozen=True)
class RadialRule:
    """∫ g(ρ) dρ 를 [lower, upper]에서 근사하는 규칙"""

    nodes: np.ndarray
    weights: np.ndarray
    lower: float
    upper: float
    degree: int  # 패널별 정확한 다항식 차수

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


@dataclass(frozen=True)
class AngularRule:
    """[−π, π) 위의 사다리꼴 규칙 (가중치 합 2π)"""

    nodes: np.ndarray
    weights: np.ndarray
    order: int  # 정확한 삼각다항식 차수

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    def average(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values)) / (2.0 * math.pi)


@dataclass(frozen=True)
class GaussianRule:
    """CN(0, σ²) 잡음에 대한 기댓값 규칙 (가중치 합 1)"""

    offsets: np.ndarray  # 복소 잡음 표본점
    weights: np.ndarray

    @property
    def size(self) -> int:
        return int(self.offsets.size)


def gauss_legendre_panels(lower: float, upper: float, n_panels: int, order: int = PANEL_ORDER):
    """
    [lower, upper]를 n_panels개로 나눈 복합 Gauss–Legendre 노드/가중치

    Returns:
        (nodes, weights) 오름차순
    """
    if not upper > lower:
        raise ConfigError(f"empty integration interval [{lower}, {upper}]")
    if n_panels < 1 or order < 1:
        raise ConfigError("n_panels and order must be >= 1")
    x, w = legendre.leggauss(order)
    edges = np.linspace(lower, upper, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def build_radial_rule(cfg: QuadConfig, scale: float, sigma2: float = 1.0, lower: float = 0.0) -> RadialRule:
    """
    방사 적분 규칙 생성

    Args:
        cfg: 구적 설정
        scale: 특성 신호 반경 (> 0)
        sigma2: 잡음 분산 (절단 길이 radial_cutoff_sigmas·σ 계산용)
        lower: 적분 하한

    Returns:
        [lower, scale + cutoff·σ] 구간의 RadialRule

    Raises:
        ConfigError: scale 또는 sigma2가 양수가 아님
    """
    if not (math.isfinite(scale) and scale > 0.0):
        raise ConfigError(f"radial rule scale must be > 0, got {scale}")
    if not sigma2 > 0.0:
        raise ConfigError(f"sigma2 must be > 0, got {sigma2}")
    upper = scale + cfg.radial_cutoff_sigmas * math.sqrt(sigma2)
    n_panels = max(1, cfg.radial_nodes // PANEL_ORDER)
    nodes, weights = gauss_legendre_panels(lower, upper, n_panels)
    return RadialRule(nodes=nodes, weights=weights, lower=lower, upper=upper, degree=2 * PANEL_ORDER - 1)


def build_angular_rule(cfg: QuadConfig, n_nodes: int = None) -> AngularRule:
    """등간격 사다리꼴 각 규칙 (n_nodes 미지정 시 cfg.angular_nodes)"""
    n = cfg.angular_nodes if n_nodes is None else n_nodes
    if n < 1:
        raise ConfigError("angular rule needs >= 1 node")
    nodes = -math.pi + 2.0 * math.pi * np.arange(n) / n
    return AngularRule(nodes=nodes, weights=np.full(n, 2.0 * math.pi / n), order=n - 1)


def build_gaussian_rule(cfg: QuadConfig, sigma2: float) -> GaussianRule:
    """
    Z ~ CN(0, σ²)에 대한 2차원 기댓값 규칙

    |Z|²/σ² ~ Exp(1) 이므로 u 방향은 Gauss–Laguerre, 위상은 사다리꼴을 씁니다.
    """
    if not sigma2 > 0.0:
        raise ConfigError(f"sigma2 must be > 0, got {sigma2}")
    u, wu = laguerre.laggauss(cfg.gauss_nodes)
    angles = build_angular_rule(cfg)
    radii = np.sqrt(sigma2 * u)
    offsets = (radii[:, None] * np.exp(1j * angles.nodes)[None, :]).ravel()
    weights = (wu[:, None] * (angles.weights / (2.0 * math.pi))[None, :]).ravel()
    return GaussianRule(offsets=offsets, weights=weights / weights.sum())
