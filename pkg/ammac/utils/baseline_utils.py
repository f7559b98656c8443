"""
베이스라인 전송률과 코너점

베이스라인 입력: X₁ ~ CN(0, P), X₂ = e^{jθ₂} (θ₂ 균일)
모든 내부 계산은 nats, 반환값은 bits 입니다.
"""

import logging
import math

import numpy as np
from numpy.polynomial import laguerre
from scipy import special

from ammac.core.exceptions import FormulaMismatch, OrderingViolation
from ammac.models.channel_model import LN2, ChannelParams
from ammac.models.config_model import QuadConfig
from ammac.models.report_model import BaselineReport
from ammac.utils.entropy_utils import LOG_2PI, check_refinement, log_ring_planar, radial_entropy
from ammac.utils.quad_utils import build_angular_rule, build_radial_rule, gauss_legendre_panels

logger = logging.getLogger(__name__)

RAYLEIGH_NODES = 64  # 외부 Rayleigh 기댓값 노드 수
LOG_RADIUS_FLOOR = 1e-6  # log-ρ 규칙 하한 (√v_min 단위)
ASYM_LOW, ASYM_HIGH = 0.5, 2.0  # r2_asym 혼합 구간 (|x₁|²/σ²)


def c_sum(params: ChannelParams) -> float:
    """최대 합 전송률 log₂(1 + P(1+|a|)²/σ²)"""
    return math.log2(1.0 + params.P * (1.0 + abs(params.a)) ** 2 / params.sigma2)


def c1(params: ChannelParams) -> float:
    """PT 최대 전송률 (C_sum과 같은 식)"""
    return c_sum(params)


def c_sum_signed(params: ChannelParams) -> float:
    """(1+a)² 형태 그대로의 합 전송률 (a > 0에서는 c_sum과 같음)"""
    return math.log2(1.0 + params.P * (1.0 + params.a) ** 2 / params.sigma2)


def r1_lower(params: ChannelParams) -> float:
    """X₁X₂를 간섭으로 취급한 하한 log₂(1 + Pa²/(P+σ²))"""
    return math.log2(1.0 + params.P * params.a**2 / (params.P + params.sigma2))


def _rayleigh_nodes(params: ChannelParams):
    # t = |x₁|²/P ~ Exp(1)
    t, w = laguerre.laggauss(RAYLEIGH_NODES)
    return np.sqrt(params.P * t), w


def _composite_variances(params: ChannelParams, cfg: QuadConfig) -> np.ndarray:
    angles = build_angular_rule(cfg)
    return params.P * np.abs(params.a + np.exp(1j * angles.nodes)) ** 2 + params.sigma2


def _log_radius_rule(params: ChannelParams, cfg: QuadConfig, variances: np.ndarray):
    """ρ = e^t 치환 복합 Gauss–Legendre (ρ 노드, dρ 가중치)"""
    lower = math.log(LOG_RADIUS_FLOOR * math.sqrt(float(variances.min())))
    upper = math.log(cfg.radial_cutoff_sigmas * math.sqrt(float(variances.max())))
    t, w = gauss_legendre_panels(lower, upper, max(1, cfg.radial_nodes // 8))
    rho = np.exp(t)
    return rho, w * rho


def _baseline_output_entropy(params: ChannelParams, cfg: QuadConfig) -> float:
    variances = _composite_variances(params, cfg)
    rho, w = _log_radius_rule(params, cfg, variances)
    # θ₂별 CN(0, v) 밀도의 평균
    log_terms = -np.log(math.pi * variances)[None, :] - rho[:, None] ** 2 / variances[None, :]
    g = special.logsumexp(log_terms, axis=1) - math.log(variances.size)
    density = np.exp(LOG_2PI + np.log(rho) + g)
    return float(-np.dot(w, density * g))


def ring_entropy(r: float, params: ChannelParams, cfg: QuadConfig) -> float:
    """|X₁| = r, X₂ 균일 위상일 때 h(Y|X₁) (반경 r 링 + 잡음의 엔트로피)"""
    sigma = params.sigma
    lower = max(0.0, r - cfg.radial_cutoff_sigmas * sigma)
    rule = build_radial_rule(cfg, max(r, sigma), params.sigma2, lower=lower)
    return radial_entropy(rule, log_ring_planar(rule.nodes, r, params.sigma2))


def _baseline_conditional_entropy(params: ChannelParams, cfg: QuadConfig) -> float:
    radii, w = _rayleigh_nodes(params)
    return float(sum(wi * ring_entropy(r, params, cfg) for r, wi in zip(radii, w)))


def baseline_mutual_infos(params: ChannelParams, cfg: QuadConfig):
    """(I(X₁;Y), I(X₂;Y|X₁)) [nats] 한 해상도 계산"""
    hy = _baseline_output_entropy(params, cfg)
    hyx1 = _baseline_conditional_entropy(params, cfg)
    return hy - hyx1, hyx1 - params.noise_entropy()


def r1_base(params: ChannelParams, cfg: QuadConfig) -> float:
    """
    베이스라인 PT 전송률 I(X₁;Y) [bits]

    엔트로피 차 h(Y) − h(Y|X₁) 를 기본 경로로, 인쇄된 κ/κ̄ 식을 교차 검증 경로로 계산합니다.

    Raises:
        QuadratureDivergence: 세분화 검사 실패
        FormulaMismatch: 두 경로 차이가 5·rel_tol 초과
    """
    primary, _ = baseline_mutual_infos(params, cfg)
    refined, _ = baseline_mutual_infos(params, cfg.refined())
    check_refinement("r1_base", primary, abs(refined - primary), cfg)
    literal = r1_base_literal(params, cfg) * LN2
    if abs(primary - literal) > 5.0 * cfg.rel_tol * max(1.0, abs(primary)):
        raise FormulaMismatch("r1_base", primary / LN2, literal / LN2)
    return max(primary, 0.0) / LN2


def r1_base_literal(params: ChannelParams, cfg: QuadConfig) -> float:
    """
    인쇄된 식 그대로의 R₁base [bits]

    E_{x₁}[∫ (2ρκ/σ²) log(2κ/σ²) dρ] − ∫ ρ κ̄ log κ̄ dρ
    κ(ρ, x₁) = exp(−(ρ²+|x₁|²)/σ²) I₀(2ρ|x₁|/σ²),
    κ̄(ρ) = ∫ exp(−ρ²/(σ²+P|a+e^{jθ₂}|²)) / (π(P|a+e^{jθ₂}|²+σ²)) dθ₂
    """
    sigma2 = params.sigma2
    radii, w = _rayleigh_nodes(params)
    first = 0.0
    for r, wi in zip(radii, w):
        lower = max(0.0, r - cfg.radial_cutoff_sigmas * params.sigma)
        rule = build_radial_rule(cfg, max(r, params.sigma), sigma2, lower=lower)
        rho = rule.nodes
        log_kappa = -((rho - r) ** 2) / sigma2 + np.log(special.i0e(2.0 * rho * r / sigma2))
        kappa = np.exp(log_kappa)
        first += wi * float(np.dot(rule.weights, 2.0 * rho * kappa / sigma2 * (log_kappa + math.log(2.0 / sigma2))))

    variances = _composite_variances(params, cfg)
    angles = build_angular_rule(cfg)
    rho, wr = _log_radius_rule(params, cfg, variances)
    kbar = (np.exp(-rho[:, None] ** 2 / variances[None, :]) / (math.pi * variances[None, :])) @ angles.weights
    with np.errstate(divide="ignore", invalid="ignore"):
        kbar_log_kbar = np.where(kbar > 0.0, kbar * np.log(kbar), 0.0)
    second = -float(np.dot(wr, rho * kbar_log_kbar))
    return (first + second) / LN2


def r2_base(params: ChannelParams, cfg: QuadConfig) -> float:
    """
    베이스라인 BD 전송률 I(X₂;Y|X₁) [bits]

    X₁을 알면 aX₁은 알려진 이동이므로 a와 무관합니다.
    """
    _, primary = baseline_mutual_infos(params, cfg)
    _, refined = baseline_mutual_infos(params, cfg.refined())
    check_refinement("r2_base", primary, abs(refined - primary), cfg)
    return max(primary, 0.0) / LN2


def _asym_branch(gamma):
    low = gamma
    with np.errstate(divide="ignore"):
        high = 0.5 * np.log(4.0 * math.pi * gamma / math.e)
    blend = np.clip((gamma - ASYM_LOW) / (ASYM_HIGH - ASYM_LOW), 0.0, 1.0)
    return (1.0 - blend) * low + blend * high


def r2_asym(params: ChannelParams, cfg: QuadConfig = None) -> float:
    """
    위상 변조 용량 점근식의 Rayleigh 평균 [bits]

    γ = |x₁|²/σ² ≪ 1: γ,  γ ≫ 1: ½ln(4πγ/e),  [0.5, 2] 구간은 선형 혼합
    """
    snr = params.snr()
    t_low, t_high = ASYM_LOW / snr, ASYM_HIGH / snr
    # ∫₀^{t_low} snr·t·e^{−t} dt
    low = snr * (1.0 - (1.0 + t_low) * math.exp(-t_low))
    # ∫_{t_high}^∞ ½ln(4π·snr·t/e)·e^{−t} dt
    high = 0.5 * (
        math.log(4.0 * math.pi * snr / math.e) * math.exp(-t_high)
        + math.log(t_high) * math.exp(-t_high)
        + float(special.exp1(t_high))
    )
    t, w = gauss_legendre_panels(t_low, t_high, 8)
    middle = float(np.dot(w, _asym_branch(snr * t) * np.exp(-t)))
    return (low + middle + high) / LN2


def bd_single_ring(params: ChannelParams, cfg: QuadConfig) -> float:
    """|X₁|² = P, X₂ 단위원 균일일 때 I(X₂;Y|X₁) [bits] (BD 최대 전송률의 하한)"""
    value = ring_entropy(math.sqrt(params.P), params, cfg) - params.noise_entropy()
    return max(value, 0.0) / LN2


def baseline_report(params: ChannelParams, cfg: QuadConfig) -> BaselineReport:
    """
    베이스라인 전송률 쌍과 코너점 집계

    Raises:
        OrderingViolation: r1_lower ≤ r1_base ≤ c1 위반
    """
    rate1 = r1_base(params, cfg)
    report = BaselineReport(
        snr_db=params.snr_db(),
        a=params.a,
        r1_base=rate1,
        r1_base_literal=r1_base_literal(params, cfg),
        r1_lower=r1_lower(params),
        r2_base=r2_base(params, cfg),
        r2_asym=r2_asym(params, cfg),
        c_sum=c_sum(params),
        c1=c1(params),
        c_sum_signed=c_sum_signed(params),
        bd_max_ref=bd_single_ring(params, cfg),
    )
    slack = 2.0 * cfg.rel_tol * max(1.0, report.c1)
    if report.r1_lower > report.r1_base + slack:
        raise OrderingViolation(f"r1_lower {report.r1_lower:.10g} > r1_base {report.r1_base:.10g}")
    if report.r1_base > report.c1 + slack:
        raise OrderingViolation(f"r1_base {report.r1_base:.10g} > c1 {report.c1:.10g}")
    logger.info(f"baseline at {report.snr_db:.2f} dB: r1={report.r1_base:.6f} r2={report.r2_base:.6f} bits")
    return report
