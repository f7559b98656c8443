"""
엔트로피 엔진

θ₁이 균일하므로 f_Y는 원점 대칭이고, 모든 주변 엔트로피는 방사 적분으로 줄어듭니다.
조건부 엔트로피 h(Y|X₁)은 위상을 고정한 유한 가우시안 혼합의 2차원 엔트로피입니다.

밀도 표기:
    lp(ρ; c) = −ln(πσ²) − (ρ−c)²/σ² + ln i0e(2ρc/σ²)   (반경 c 링의 평면 로그 밀도)
    ring_density(ρ; c) = 2πρ·e^{lp(ρ; c)}
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy import special

from ammac.core.exceptions import ConstraintViolation, DomainError, QuadratureDivergence
from ammac.models.channel_model import ChannelParams, Weights
from ammac.models.config_model import QuadConfig
from ammac.models.distribution_model import ConcentricCircles, PointMasses, RadialPmf
from ammac.models.report_model import EntropyReport, MutualInfos
from ammac.utils.quad_utils import RadialRule, build_angular_rule, build_gaussian_rule, build_radial_rule
from ammac.utils.special_utils import log_mixture

logger = logging.getLogger(__name__)

LOG_2PI = math.log(2.0 * math.pi)
BLOCK = 2_000_000  # 한 번에 만드는 행렬 원소 수 상한
PEAK_SLACK = 1e-12


@dataclass(frozen=True)
class EffectiveGainTable:
    """(r_k, x₂) 조합별 합성 중심 반경 c = |a+x₂|·r 과 결합 가중치"""

    centers: np.ndarray
    weights: np.ndarray
    gains: np.ndarray  # |a + x₂| (원 분포는 각 노드별)
    gain_weights: np.ndarray

    def __post_init__(self):
        if np.any(self.centers < 0.0):
            raise ConstraintViolation("gain table centers >= 0", amount=float(-self.centers.min()))
        gap = abs(float(self.weights.sum()) - 1.0)
        if gap > 1e-12:
            raise ConstraintViolation("gain table weights sum to 1", amount=gap)

    @property
    def log_weights(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.weights)


def _rows_per_block(width: int) -> int:
    return max(1, BLOCK // max(1, width))


def bd_complex_gains(f_x2, params: ChannelParams, cfg: QuadConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    BD 분포를 복소 이득 a + x₂ 와 가중치로 전개

    동심원 분포는 각 원을 cfg.angular_nodes개의 위상 노드로 나눕니다.
    """
    if isinstance(f_x2, PointMasses):
        return params.a + f_x2.locations, f_x2.probs
    angles = build_angular_rule(cfg)
    phasors = np.exp(1j * angles.nodes)
    gains = params.a + f_x2.radii[:, None] * phasors[None, :]
    weights = f_x2.probs[:, None] * (angles.weights / (2.0 * math.pi))[None, :]
    return gains.ravel(), weights.ravel()


def effective_gain_table(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig = None) -> EffectiveGainTable:
    """합성 이득 테이블 (모든 방사 밀도 계산의 공통 전처리)"""
    cfg = cfg or QuadConfig()
    gains_c, gain_weights = bd_complex_gains(f_x2, params, cfg)
    gains = np.abs(gains_c)
    centers = (f_r.radii[:, None] * gains[None, :]).ravel()
    weights = (f_r.probs[:, None] * gain_weights[None, :]).ravel()
    return EffectiveGainTable(centers=centers, weights=weights, gains=gains, gain_weights=gain_weights)


def log_ring_planar(rho, c, sigma2: float):
    """반경 c 링(위상 균일)의 평면 로그 밀도 lp(ρ; c)"""
    rho = np.asarray(rho, dtype=float)
    c = np.asarray(c, dtype=float)
    x = 2.0 * rho * c / sigma2
    return -math.log(math.pi * sigma2) - (rho - c) ** 2 / sigma2 + np.log(special.i0e(x))


def ring_density(rho, c, sigma2: float):
    """
    |μ + Z| 의 방사 밀도 (|μ| = c, Z ~ CN(0, σ²))

    (2ρ/σ²)·e^{−(ρ²+c²)/σ²}·I₀(2ρc/σ²) 를 스케일된 I₀로 계산합니다.

    Raises:
        DomainError: 음수 반경 또는 음수 중심
    """
    rho_arr = np.asarray(rho, dtype=float)
    c_arr = np.asarray(c, dtype=float)
    if np.any(rho_arr < 0.0) or np.any(c_arr < 0.0):
        raise DomainError("ring density needs rho >= 0 and c >= 0")
    if not sigma2 > 0.0:
        raise DomainError("ring density needs sigma2 > 0")
    x = 2.0 * rho_arr * c_arr / sigma2
    value = (2.0 * rho_arr / sigma2) * np.exp(-((rho_arr - c_arr) ** 2) / sigma2) * special.i0e(x)
    return float(value) if value.ndim == 0 else value


def log_planar_mixture(rho: np.ndarray, centers: np.ndarray, log_weights: np.ndarray, sigma2: float) -> np.ndarray:
    """링 혼합의 평면 로그 밀도 (ρ 배열에 대해 블록 단위로 계산)"""
    rho = np.asarray(rho, dtype=float).ravel()
    out = np.empty(rho.size)
    step = _rows_per_block(centers.size)
    for start in range(0, rho.size, step):
        block = rho[start : start + step]
        out[start : start + step] = log_mixture(
            log_ring_planar(block[:, None], centers[None, :], sigma2), log_weights[None, :]
        )
    return out


def radial_entropy(rule: RadialRule, log_planar: np.ndarray) -> float:
    """원점 대칭 밀도의 2차원 엔트로피 −∫ 2πρ·e^{g}·g dρ"""
    density = np.exp(LOG_2PI + np.log(rule.nodes) + log_planar)
    return float(-np.dot(rule.weights, density * log_planar))


def ring_cross_entropy(
    eval_centers: np.ndarray, centers: np.ndarray, weights: np.ndarray, sigma2: float, rule: RadialRule
) -> np.ndarray:
    """
    A(c) = −∫ ring_density(ρ; c)·g(ρ) dρ  (g: 링 혼합의 평면 로그 밀도)

    eval_centers 각각에 대한 교차 엔트로피 배열을 돌려줍니다.
    """
    eval_centers = np.asarray(eval_centers, dtype=float).ravel()
    with np.errstate(divide="ignore"):
        log_w = np.log(weights)
    g = log_planar_mixture(rule.nodes, centers, log_w, sigma2)
    wg = rule.weights * g
    out = np.empty(eval_centers.size)
    step = _rows_per_block(rule.size)
    for start in range(0, eval_centers.size, step):
        block = eval_centers[start : start + step]
        out[start : start + step] = -(ring_density(rule.nodes[:, None], block[None, :], sigma2).T @ wg)
    return out


def gaussian_cross_entropy(
    eval_centers: np.ndarray, centers: np.ndarray, weights: np.ndarray, sigma2: float, offsets, offset_weights
) -> np.ndarray:
    """
    −E_Z ln f(e + Z),  f = Σ w_n·CN(centers_n, σ²)

    가우시안 기댓값 규칙(offsets, offset_weights)으로 eval_centers 각각에 대해 계산합니다.
    """
    eval_centers = np.asarray(eval_centers, dtype=complex).ravel()
    centers = np.asarray(centers, dtype=complex).ravel()
    with np.errstate(divide="ignore"):
        log_w = np.log(weights)
    out = np.empty(eval_centers.size)
    step = _rows_per_block(offsets.size * centers.size)
    for start in range(0, eval_centers.size, step):
        block = eval_centers[start : start + step]
        y = block[:, None] + offsets[None, :]
        d2 = np.abs(y[:, :, None] - centers[None, None, :]) ** 2
        lpdf = log_mixture(-d2 / sigma2, log_w) - math.log(math.pi * sigma2)
        out[start : start + step] = -(lpdf @ offset_weights)
    return out


def _scale_for(params: ChannelParams, *radii, scale_hint: Optional[float] = None) -> float:
    scale = params.sigma
    for values in radii:
        values = np.asarray(values, dtype=float)
        if values.size:
            scale = max(scale, float(values.max()))
    if scale_hint is not None:
        scale = max(scale, scale_hint)
    return scale


def _entropy_report(name: str, compute: Callable[[QuadConfig], float], cfg: QuadConfig) -> EntropyReport:
    value = compute(cfg)
    refined = compute(cfg.refined())
    err = abs(refined - value)
    check_refinement(name, value, err, cfg)
    return EntropyReport(
        value_nats=value, est_abs_error=err, radial_nodes=cfg.radial_nodes, angular_nodes=cfg.angular_nodes
    )


def check_refinement(name: str, value: float, err: float, cfg: QuadConfig) -> None:
    tol = cfg.rel_tol * max(1.0, abs(value))
    if err <= tol:
        return
    if cfg.strict:
        raise QuadratureDivergence(f"{name}: refinement changed value by {err:.3e} (tol {tol:.1e})", value=value)
    logger.warning(f"{name}: refinement changed value by {err:.3e} (tol {tol:.1e})")


def output_radial_density(rho, f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig = None):
    """|Y|의 방사 밀도 Σ w·ring_density(ρ; c) (로그 영역 계산)"""
    table = effective_gain_table(f_r, f_x2, params, cfg)
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr < 0.0):
        raise DomainError("radius must be >= 0")
    g = log_planar_mixture(rho_arr, table.centers, table.log_weights, params.sigma2)
    with np.errstate(divide="ignore"):
        value = np.exp(LOG_2PI + np.log(rho_arr.ravel()) + g)
    return float(value[0]) if rho_arr.ndim == 0 else value.reshape(rho_arr.shape)


def kernel_K_radial(rho, r: float, f_x2, params: ChannelParams, cfg: QuadConfig = None):
    """PT 진폭 r에서의 위상 주변화 전이 밀도 Σ_m q_m·ring_density(ρ; |a+x_m|·r)"""
    if r < 0.0:
        raise DomainError("PT amplitude must be >= 0", value=r)
    gains, gain_weights = bd_complex_gains(f_x2, params, cfg or QuadConfig())
    rho_arr = np.asarray(rho, dtype=float)
    value = ring_density(rho_arr.ravel()[:, None], (np.abs(gains) * r)[None, :], params.sigma2) @ gain_weights
    return float(value[0]) if rho_arr.ndim == 0 else value.reshape(rho_arr.shape)


def h_Y_value(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig, scale_hint: float = None) -> float:
    """h(Y) [nats], 세분화 검사 없이 한 해상도에서 계산"""
    table = effective_gain_table(f_r, f_x2, params, cfg)
    rule = build_radial_rule(cfg, _scale_for(params, table.centers, scale_hint=scale_hint), params.sigma2)
    g = log_planar_mixture(rule.nodes, table.centers, table.log_weights, params.sigma2)
    return radial_entropy(rule, g)


def h_Y(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig, scale_hint: float = None) -> EntropyReport:
    """
    주변 엔트로피 h(Y)

    Args:
        f_r: PT 진폭 분포
        f_x2: BD 분포
        params: 채널 파라미터
        cfg: 구적 설정
        scale_hint: 방사 규칙 반경 하한 (최적화 중 규칙을 고정할 때 사용)

    Returns:
        EntropyReport (추정오차 = 세분화 규칙과의 차이)

    Raises:
        QuadratureDivergence: 세분화 차이가 rel_tol 초과 (cfg.strict일 때)
    """
    return _entropy_report("h(Y)", lambda c: h_Y_value(f_r, f_x2, params, c, scale_hint), cfg)


def conditional_entropy(r: float, f_x2, params: ChannelParams, cfg: QuadConfig, phase: float = 0.0) -> float:
    """
    H(r) = h(Y | X₁ = r·e^{j·phase}) [nats]

    질량점 분포는 성분 중심 가우시안 규칙으로, 동심원 분포는 a·r 중심의 방사 규칙으로 계산합니다.
    """
    if r < 0.0:
        raise DomainError("PT amplitude must be >= 0", value=r)
    sigma2 = params.sigma2
    if isinstance(f_x2, ConcentricCircles):
        centers = f_x2.radii * r
        rule = build_radial_rule(cfg, _scale_for(params, centers), sigma2)
        g = log_planar_mixture(rule.nodes, centers, np.log(f_x2.probs), sigma2)
        return radial_entropy(rule, g)
    centers = (params.a + f_x2.locations) * r * np.exp(1j * phase)
    grule = build_gaussian_rule(cfg, sigma2)
    cross = gaussian_cross_entropy(centers, centers, f_x2.probs, sigma2, grule.offsets, grule.weights)
    return float(np.dot(f_x2.probs, cross))


def conditional_cross_entropy(x2, r: float, f_x2, params: ChannelParams, cfg: QuadConfig) -> np.ndarray:
    """
    ψ(x) = −E_Z ln f_{Y|X₁=r}((a+x)·r + Z)

    Σ_m q_m·ψ(x_m) = H(r) 이 되도록 conditional_entropy와 같은 규칙을 씁니다.
    """
    x = np.atleast_1d(np.asarray(x2, dtype=complex))
    sigma2 = params.sigma2
    if isinstance(f_x2, ConcentricCircles):
        centers = f_x2.radii * r
        evals = np.abs(x) * r
        rule = build_radial_rule(cfg, _scale_for(params, centers, evals), sigma2)
        return ring_cross_entropy(evals, centers, f_x2.probs, sigma2, rule)
    centers = (params.a + f_x2.locations) * r
    grule = build_gaussian_rule(cfg, sigma2)
    return gaussian_cross_entropy((params.a + x) * r, centers, f_x2.probs, sigma2, grule.offsets, grule.weights)


def h_Y_given_X1_value(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig, phase: float = 0.0) -> float:
    return float(sum(p * conditional_entropy(r, f_x2, params, cfg, phase) for r, p in f_r.points))


def h_Y_given_X1(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig, phase: float = 0.0) -> EntropyReport:
    """
    h(Y|X₁) = Σ_k p_k·H(r_k)

    X₁ 전체(r, θ₁)에 대한 조건부이며 회전 불변성으로 θ₁ = phase 하나만 계산합니다.
    """
    return _entropy_report("h(Y|X1)", lambda c: h_Y_given_X1_value(f_r, f_x2, params, c, phase), cfg)


def h_Y_fixed_phase(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig) -> EntropyReport:
    """θ₁ = 0으로 고정한 h(Y) (유한 2차원 가우시안 혼합)"""

    def compute(c: QuadConfig) -> float:
        gains, gain_weights = bd_complex_gains(f_x2, params, c)
        centers = (f_r.radii[:, None] * gains[None, :]).ravel()
        weights = (f_r.probs[:, None] * gain_weights[None, :]).ravel()
        grule = build_gaussian_rule(c, params.sigma2)
        cross = gaussian_cross_entropy(centers, centers, weights, params.sigma2, grule.offsets, grule.weights)
        return float(np.dot(weights, cross))

    return _entropy_report("h(Y) fixed phase", compute, cfg)


def h_Y_given_r_marginalized(r: float, f_x2, params: ChannelParams, cfg: QuadConfig, scale_hint: float = None) -> float:
    """위상 주변화 커널의 엔트로피 −∫ K ln(K/(2πρ)) dρ (고정 위상 H(r) 이상)"""
    if r < 0.0:
        raise DomainError("PT amplitude must be >= 0", value=r)
    gains, gain_weights = bd_complex_gains(f_x2, params, cfg)
    centers = np.abs(gains) * r
    rule = build_radial_rule(cfg, _scale_for(params, centers, scale_hint=scale_hint), params.sigma2)
    g = log_planar_mixture(rule.nodes, centers, np.log(gain_weights), params.sigma2)
    return radial_entropy(rule, g)


def conditional_mi_at_power(p: float, f_x2, params: ChannelParams, cfg: QuadConfig) -> float:
    """I(X₂;Y | |X₁|² = p) [nats]"""
    if p < 0.0:
        raise DomainError("power must be >= 0", value=p)
    return conditional_entropy(math.sqrt(p), f_x2, params, cfg) - params.noise_entropy()


def omega1(r, f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig, scale_hint: float = None):
    """
    ω₁(r) = −∫ K(ρ, r)·[ln f_{|Y|}(ρ) − ln(2πρ)] dρ

    r는 스칼라 또는 배열이며, Σ_k p_k ω₁(r_k) = h(Y) 입니다.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr < 0.0):
        raise DomainError("PT amplitude must be >= 0")
    table = effective_gain_table(f_r, f_x2, params, cfg)
    evals = r_arr[:, None] * table.gains[None, :]
    rule = build_radial_rule(cfg, _scale_for(params, table.centers, evals, scale_hint=scale_hint), params.sigma2)
    cross = ring_cross_entropy(evals, table.centers, table.weights, params.sigma2, rule)
    value = cross.reshape(evals.shape) @ table.gain_weights
    return float(value[0]) if np.ndim(r) == 0 else value


def omega2(
    x2,
    f_r: RadialPmf,
    f_x2,
    weights: Weights,
    params: ChannelParams,
    cfg: QuadConfig,
    scale_hint: float = None,
    peak_check: bool = True,
):
    """
    ω₂(x₂) = −E_{X₁}∫ f_Z(y − (a+x₂)x₁)[μ₁ ln f_Y(y) + (μ₂−μ₁) ln f_{Y|X₁}(y|x₁)] dy

    θ₁ 평균은 회전 공변성으로 사라지므로 r_k마다 한 번의 2차원 적분만 남습니다.

    Raises:
        DomainError: |x₂| > 1 (peak_check일 때)
    """
    x = np.atleast_1d(np.asarray(x2, dtype=complex))
    if peak_check and np.any(np.abs(x) > 1.0 + PEAK_SLACK):
        raise DomainError("BD symbol must lie in the unit disk")
    table = effective_gain_table(f_r, f_x2, params, cfg)
    evals = np.abs(params.a + x)[:, None] * f_r.radii[None, :]
    rule = build_radial_rule(cfg, _scale_for(params, table.centers, evals, scale_hint=scale_hint), params.sigma2)
    marginal = ring_cross_entropy(evals, table.centers, table.weights, params.sigma2, rule).reshape(evals.shape)
    value = weights.mu1 * (marginal @ f_r.probs)
    if weights.mu2 != weights.mu1:
        conditional = np.zeros(x.size)
        for r, p in f_r.points:
            conditional += p * conditional_cross_entropy(x, r, f_x2, params, cfg)
        value = value + (weights.mu2 - weights.mu1) * conditional
    return float(value[0]) if np.ndim(x2) == 0 else value


def h_Y_given_X2_terms(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig) -> Tuple[np.ndarray, np.ndarray]:
    """x₂ 노드별 h(Y | X₂ = x₂)와 가중치 (θ₁ 균일이라 각각 방사 적분)"""
    gains, gain_weights = bd_complex_gains(f_x2, params, cfg)
    gains = np.abs(gains)
    scale = _scale_for(params, gains * f_r.radii.max())
    rule = build_radial_rule(cfg, scale, params.sigma2)
    log_p = np.log(f_r.probs)
    values = np.array(
        [radial_entropy(rule, log_planar_mixture(rule.nodes, g * f_r.radii, log_p, params.sigma2)) for g in gains]
    )
    return values, gain_weights


def evaluate_infos(
    f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig, scale_hint: float = None
) -> Dict[str, float]:
    """한 해상도에서의 엔트로피와 네 가지 상호정보량 [nats]"""
    noise = params.noise_entropy()
    hy = h_Y_value(f_r, f_x2, params, cfg, scale_hint)
    hyx1 = h_Y_given_X1_value(f_r, f_x2, params, cfg)
    given_x2, given_x2_weights = h_Y_given_X2_terms(f_r, f_x2, params, cfg)
    return {
        "h_Y": hy,
        "h_Y_given_X1": hyx1,
        "I_X1_Y": hy - hyx1,
        "I_X2_Y_given_X1": hyx1 - noise,
        "I_joint": hy - noise,
        "I_X1_Y_given_X2": float(np.dot(given_x2_weights, given_x2 - noise)),
    }


def mutual_infos(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig, scale_hint: float = None) -> MutualInfos:
    """
    I(X₁;Y), I(X₂;Y|X₁), I(X₁,X₂;Y), I(X₁;Y|X₂) [nats]

    Raises:
        QuadratureDivergence: 세분화 검사 실패 (cfg.strict일 때)
    """
    base = evaluate_infos(f_r, f_x2, params, cfg, scale_hint)
    refined = evaluate_infos(f_r, f_x2, params, cfg.refined(), scale_hint)
    keys = ("I_X1_Y", "I_X2_Y_given_X1", "I_joint", "I_X1_Y_given_X2")
    err = max(abs(refined[k] - base[k]) for k in keys)
    check_refinement("mutual informations", base["h_Y"], err, cfg)
    return MutualInfos(**{k: base[k] for k in keys}, est_abs_error=err)


def combine_objective(weights: Weights, infos: Dict[str, float]) -> float:
    """SIC 순서에 맞는 가중 합 전송률 [nats]"""
    if weights.mu1 < weights.mu2:
        return weights.mu1 * infos["I_X1_Y"] + weights.mu2 * infos["I_X2_Y_given_X1"]
    if weights.mu1 > weights.mu2:
        # I(X₂;Y) = I(X₁,X₂;Y) − I(X₁;Y|X₂)
        i_x2_y = infos["I_joint"] - infos["I_X1_Y_given_X2"]
        return weights.mu1 * infos["I_X1_Y_given_X2"] + weights.mu2 * i_x2_y
    return 0.5 * infos["I_joint"]


def objective(weights: Weights, f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig) -> float:
    """
    가중 합 전송률 목적함수 [nats]

    μ₁<μ₂: μ₁I(X₁;Y) + μ₂I(X₂;Y|X₁), μ₁>μ₂: μ₁I(X₁;Y|X₂) + μ₂I(X₂;Y), μ₁=μ₂: ½·I(X₁,X₂;Y)
    """
    return combine_objective(weights, mutual_infos(f_r, f_x2, params, cfg).as_dict())
