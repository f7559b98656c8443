"""
KKT 변분 조건 검증

- PT: L(r) = [μ₁ω₁(r) + (μ₂−μ₁)H(r) − λr²]/μ₁ ≤ J₁, 지지점에서 등호
- BD 질량점: ω₂(x₂) ≤ T₁, 지지점에서 등호
- BD 동심원(μ₁ = 0): Ψ(ρ) = −∫ ring(s; ρ√P) ln f(s) ds ≤ T, 지지점에서 등호
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import linprog

from ammac.core.exceptions import DomainError
from ammac.models.channel_model import ChannelParams, Weights
from ammac.models.config_model import OptimConfig, QuadConfig
from ammac.models.distribution_model import ConcentricCircles, PointMasses, RadialPmf
from ammac.models.report_model import BoundarySolution, KktReport
from ammac.utils.entropy_utils import (
    conditional_entropy,
    h_Y_given_r_marginalized,
    omega1,
    omega2,
    ring_cross_entropy,
)
from ammac.utils.quad_utils import build_radial_rule

logger = logging.getLogger(__name__)


def r_grid(params: ChannelParams, ocfg: OptimConfig) -> np.ndarray:
    """[0, span·√P] 위의 등간격 PT 진폭 격자"""
    return np.linspace(0.0, ocfg.grid_r_span * math.sqrt(params.P), ocfg.grid_r_points)


def x2_grid(ocfg: OptimConfig) -> np.ndarray:
    """닫힌 단위 원판의 극좌표 격자 (원점 한 번 + 반경 × 각도)"""
    radii = np.arange(1, ocfg.grid_x2_radii + 1) / ocfg.grid_x2_radii
    angles = 2.0 * math.pi * np.arange(ocfg.grid_x2_angles) / ocfg.grid_x2_angles
    ring = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    return np.concatenate([[0j], ring])


def rho_grid(ocfg: OptimConfig) -> np.ndarray:
    """[0, 1] 위의 동심원 반경 격자"""
    return np.linspace(0.0, 1.0, ocfg.grid_r_points)


def scale_hint_for(params: ChannelParams, ocfg: OptimConfig, r_max: float = 0.0) -> float:
    """검증 격자 전체를 덮는 방사 규칙 반경"""
    return (abs(params.a) + 1.0) * max(ocfg.grid_r_span * math.sqrt(params.P), r_max)


def lagrangian_r(
    r_values,
    f_r: RadialPmf,
    f_x2,
    weights: Weights,
    lam: float,
    params: ChannelParams,
    cfg: QuadConfig,
    scale_hint: Optional[float] = None,
    marginalized: bool = False,
) -> np.ndarray:
    """
    PT 라그랑지안 주변 범함수 L(r)

    Raises:
        DomainError: μ₁ = 0
    """
    if weights.mu1 <= 0.0:
        raise DomainError("L(r) is undefined for mu1 = 0; use the BD conditions")
    r_values = np.atleast_1d(np.asarray(r_values, dtype=float))
    value = weights.mu1 * omega1(r_values, f_r, f_x2, params, cfg, scale_hint)
    if weights.mu2 != weights.mu1:
        if marginalized:
            h = [h_Y_given_r_marginalized(r, f_x2, params, cfg, scale_hint) for r in r_values]
        else:
            h = [conditional_entropy(r, f_x2, params, cfg) for r in r_values]
        value = value + (weights.mu2 - weights.mu1) * np.array(h)
    return (value - lam * r_values**2) / weights.mu1


def ring_functional(rho_values, f_x2: ConcentricCircles, params: ChannelParams, cfg: QuadConfig) -> np.ndarray:
    """|X₁|² = P에서 반경 ρ 원의 교차 엔트로피 Ψ(ρ)"""
    amplitude = math.sqrt(params.P)
    evals = np.atleast_1d(np.asarray(rho_values, dtype=float)) * amplitude
    centers = f_x2.radii * amplitude
    scale = max(params.sigma, amplitude)
    rule = build_radial_rule(cfg, scale, params.sigma2)
    return ring_cross_entropy(evals, centers, f_x2.probs, params.sigma2, rule)


def summarize(
    kind: str,
    grid_values: np.ndarray,
    grid_locations: np.ndarray,
    support_values: np.ndarray,
    support_probs: np.ndarray,
    variant: str = "fixed_phase",
    cluster_hint: Optional[str] = None,
) -> KktReport:
    """격자 값과 지지점 값으로 KktReport 구성"""
    level = float(np.dot(support_probs, support_values))
    worst = int(np.argmax(grid_values))
    location = grid_locations[worst]
    if np.iscomplexobj(grid_locations):
        where = [float(location.real), float(location.imag)]
    else:
        where = [float(location)]
    return KktReport(
        kind=kind,
        level=level,
        max_violation=float(grid_values[worst] - level),
        violation_location=where,
        on_support_spread=float(np.max(np.abs(support_values - level))),
        variant=variant,
        cluster_hint=cluster_hint,
    )


def _cluster_hint(grid: np.ndarray, values: np.ndarray, level: float, params: ChannelParams, tol: float) -> str:
    # 수준선 근처 점들이 −a 중심 원과 원점 중심 원 중 어디에 더 잘 맞는지
    near = grid[values >= level - tol]
    if near.size < 2:
        return "about_origin"
    spread_minus_a = float(np.std(np.abs(near + params.a)))
    spread_origin = float(np.std(np.abs(near)))
    return "about_minus_a" if spread_minus_a < spread_origin else "about_origin"


def scan_r(
    f_r: RadialPmf,
    f_x2,
    weights: Weights,
    lam: float,
    params: ChannelParams,
    cfg: QuadConfig,
    ocfg: OptimConfig,
    scale_hint: Optional[float] = None,
    marginalized: bool = False,
) -> Tuple[KktReport, np.ndarray, np.ndarray]:
    """L(r) 격자 검사 (보고서, 격자, 격자 값)"""
    grid = r_grid(params, ocfg)
    hint = scale_hint if scale_hint is not None else scale_hint_for(params, ocfg, float(f_r.radii.max()))
    values = lagrangian_r(grid, f_r, f_x2, weights, lam, params, cfg, hint, marginalized)
    support = lagrangian_r(f_r.radii, f_r, f_x2, weights, lam, params, cfg, hint, marginalized)
    variant = "marginalized" if marginalized else "fixed_phase"
    return summarize("r", values, grid, support, f_r.probs, variant), grid, values


def gaussian_lagrangian_r(r_values, weights: Weights, lam: float, params: ChannelParams) -> np.ndarray:
    """
    μ₁ > μ₂ 붕괴 해의 L(r) (닫힌 형태)

    X₂ = sign(a)이면 Y|X₁ ~ CN(gX₁, σ²), g = |a|+1 이고 가우시안 X₁에서 f_Y = CN(0, v), v = σ² + g²P.
    ω₁(r) = ln(πv) + (g²r² + σ²)/v 이고 I(X₂;Y) = 0 이므로 L(r) = ω₁(r) − (λ/μ₁)r².
    """
    r_values = np.atleast_1d(np.asarray(r_values, dtype=float))
    gain2 = (abs(params.a) + 1.0) ** 2
    v = params.sigma2 + gain2 * params.P
    return math.log(math.pi * v) + (gain2 * r_values**2 + params.sigma2) / v - lam / weights.mu1 * r_values**2


def scan_r_collapsed(
    f_r: RadialPmf, weights: Weights, lam: float, params: ChannelParams, ocfg: OptimConfig
) -> Tuple[KktReport, np.ndarray, np.ndarray]:
    """
    붕괴 해의 L(r) 격자 검사 (보고서, 격자, 격자 값)

    L(r)이 r²에 대해 아핀이라 E[r²] = P인 어떤 f_r로도 가우시안의 수준과 같습니다.

    Raises:
        DomainError: μ₁ ≤ μ₂
    """
    if weights.mu1 <= weights.mu2:
        raise DomainError("the closed-form radial condition only covers mu1 > mu2")
    grid = r_grid(params, ocfg)
    values = gaussian_lagrangian_r(grid, weights, lam, params)
    support = gaussian_lagrangian_r(f_r.radii, weights, lam, params)
    return summarize("r", values, grid, support, f_r.probs, variant="gaussian"), grid, values


def fit_power_multiplier(
    grid: np.ndarray,
    grid_values: np.ndarray,
    f_r: RadialPmf,
    support_values: np.ndarray,
    weights: Weights,
    fallback: float = 0.0,
) -> float:
    """
    격자 최대 위반을 최소화하는 λ ≥ 0 (선형 계획)

    값은 λ = 0에서의 L(r). λ를 바꾸면 L(r) − J₁ 은 −(λ/μ₁)(r² − E[r²]) 만큼 이동하므로
    min_{t ≥ 0} max_j [L_j − L̄ − t(r_j² − E[r²])] 는 (t, s) 에 대한 LP입니다.
    """
    moment = float(np.dot(f_r.probs, f_r.radii**2))
    excess = grid_values - float(np.dot(f_r.probs, support_values))
    shift = grid**2 - moment
    a_ub = np.column_stack([-shift, -np.ones_like(shift)])
    res = linprog(
        c=[0.0, 1.0], A_ub=a_ub, b_ub=-excess, bounds=[(0.0, None), (None, None)], method="highs"
    )
    if res.status != 0:
        logger.warning(f"lambda fit failed ({res.message}); keeping {fallback:.6g}")
        return fallback
    return float(res.x[0]) * weights.mu1


def fit_scan_r(
    f_r: RadialPmf,
    f_x2,
    weights: Weights,
    params: ChannelParams,
    cfg: QuadConfig,
    ocfg: OptimConfig,
    scale_hint: Optional[float] = None,
    fallback: float = 0.0,
) -> Tuple[KktReport, np.ndarray, np.ndarray, float]:
    """λ를 격자에 맞춘 L(r) 검사 (보고서, 격자, 격자 값, λ)"""
    grid = r_grid(params, ocfg)
    hint = scale_hint if scale_hint is not None else scale_hint_for(params, ocfg, float(f_r.radii.max()))
    values = lagrangian_r(grid, f_r, f_x2, weights, 0.0, params, cfg, hint)
    support = lagrangian_r(f_r.radii, f_r, f_x2, weights, 0.0, params, cfg, hint)
    lam = fit_power_multiplier(grid, values, f_r, support, weights, fallback)
    t = lam / weights.mu1
    values = values - t * grid**2
    report = summarize("r", values, grid, support - t * f_r.radii**2, f_r.probs)
    return report, grid, values, lam


def scan_x2(
    f_r: RadialPmf,
    f_x2: PointMasses,
    weights: Weights,
    params: ChannelParams,
    cfg: QuadConfig,
    ocfg: OptimConfig,
    scale_hint: Optional[float] = None,
) -> Tuple[KktReport, np.ndarray, np.ndarray]:
    """ω₂ 원판 격자 검사 (보고서, 격자, 격자 값)"""
    grid = x2_grid(ocfg)
    hint = scale_hint if scale_hint is not None else scale_hint_for(params, ocfg, float(f_r.radii.max()))
    values = omega2(grid, f_r, f_x2, weights, params, cfg, hint)
    support = omega2(f_x2.locations, f_r, f_x2, weights, params, cfg, hint)
    report = summarize("x2", values, grid, support, f_x2.probs)
    hint_label = _cluster_hint(grid, values, report.level, params, ocfg.kkt_tol)
    return report.model_copy(update={"cluster_hint": hint_label}), grid, values


def scan_rings(
    f_x2: ConcentricCircles, params: ChannelParams, cfg: QuadConfig, ocfg: OptimConfig
) -> Tuple[KktReport, np.ndarray, np.ndarray]:
    """Ψ(ρ) 반경 격자 검사 (보고서, 격자, 격자 값)"""
    grid = rho_grid(ocfg)
    values = ring_functional(grid, f_x2, params, cfg)
    support = ring_functional(f_x2.radii, f_x2, params, cfg)
    return summarize("rings", values, grid, support, f_x2.probs), grid, values


def kkt_check_r(
    solution: BoundarySolution, params: ChannelParams, cfg: QuadConfig, ocfg: OptimConfig, marginalized: bool = False
) -> KktReport:
    """
    PT 진폭 KKT 조건 검증

    Args:
        solution: 최적화 결과 (μ₁ > 0, μ₁ > μ₂면 가우시안 닫힌 형태 검사)
        params: 채널 파라미터
        cfg: 구적 설정
        ocfg: 검증 격자 설정
        marginalized: True면 위상 주변화 h(Y|r) 사용

    Returns:
        KktReport (kind="r")

    Raises:
        DomainError: μ₁ = 0
    """
    if solution.weights.mu1 <= 0.0:
        raise DomainError("kkt_check_r needs mu1 > 0")
    if solution.weights.mu1 > solution.weights.mu2:
        report, _, _ = scan_r_collapsed(solution.f_r, solution.weights, solution.lam, params, ocfg)
        return report
    report, _, _ = scan_r(
        solution.f_r, solution.f_x2, solution.weights, solution.lam, params, cfg, ocfg, marginalized=marginalized
    )
    return report


def kkt_check_x2(solution: BoundarySolution, params: ChannelParams, cfg: QuadConfig, ocfg: OptimConfig) -> KktReport:
    """
    BD 질량점 KKT 조건 검증

    Raises:
        DomainError: 동심원 분포 입력 (a ≠ 0에서는 지지 집합 형태가 다름)
    """
    if isinstance(solution.f_x2, ConcentricCircles):
        raise DomainError("kkt_check_x2 needs point masses; use kkt_check_rings for circles")
    report, _, _ = scan_x2(solution.f_r, solution.f_x2, solution.weights, params, cfg, ocfg)
    return report


def kkt_check_rings(solution: BoundarySolution, params: ChannelParams, cfg: QuadConfig, ocfg: OptimConfig) -> KktReport:
    """
    μ₁ = 0 동심원 해의 KKT 조건 검증

    Raises:
        DomainError: 질량점 분포 입력
    """
    if not isinstance(solution.f_x2, ConcentricCircles):
        raise DomainError("kkt_check_rings needs a concentric-circle distribution")
    report, _, _ = scan_rings(solution.f_x2, params, cfg, ocfg)
    return report
