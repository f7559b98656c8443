"""
몬테카를로 오라클

모든 혼합 밀도를 해석적으로 평가할 수 있으므로 E[−ln f(Y)] 표본 평균은 불편 추정량입니다.
표본은 (seed, 청크 번호)로 키를 정한 카운터 기반 생성기(Philox)에서 뽑으므로
청크를 어떤 순서로 계산해도 결과가 같습니다.
"""

import logging
import math
from typing import Dict, Tuple

import numpy as np
from scipy import special

from ammac.core.exceptions import ConfigError, SeedError
from ammac.models.channel_model import ChannelParams
from ammac.models.config_model import QuadConfig
from ammac.models.distribution_model import ConcentricCircles, PointMasses, RadialPmf, merge_atoms
from ammac.models.report_model import McCheckEntry, McEstimate
from ammac.utils.entropy_utils import effective_gain_table, log_planar_mixture, log_ring_planar
from ammac.utils.quad_utils import build_angular_rule
from ammac.utils.special_utils import log_mixture

logger = logging.getLogger(__name__)

CHUNK = 10_000
MIN_SAMPLES = 10_000
MAX_SEED = 2**64 - 1
Z_FLAG = 3.0
SE_FLOOR = 1e-6  # 구적 기본 rel_tol 수준
MODEL_STREAM = 2**31  # random_model 전용 스트림 (표본 청크와 겹치지 않음)


def stream_generator(seed: int, stream: int) -> np.random.Generator:
    """
    (seed, stream) 키의 Philox 생성기

    Raises:
        SeedError: 정수가 아니거나 [0, 2⁶⁴) 범위 밖의 시드
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise SeedError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) <= MAX_SEED:
        raise SeedError(f"seed out of range: {seed}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(stream,))))


def _chunks(cfg: QuadConfig):
    if cfg.mc_samples < MIN_SAMPLES:
        raise ConfigError(f"monte carlo needs mc_samples >= {MIN_SAMPLES}, got {cfg.mc_samples}")
    for stream, start in enumerate(range(0, cfg.mc_samples, CHUNK)):
        yield stream_generator(cfg.mc_seed, stream), min(CHUNK, cfg.mc_samples - start)


def _complex_normal(rng: np.random.Generator, size: int, variance: float) -> np.ndarray:
    return rng.normal(scale=math.sqrt(0.5 * variance), size=(size, 2)) @ np.array([1.0, 1j])


def _estimate(samples: np.ndarray, seed: int) -> McEstimate:
    n = samples.size
    return McEstimate(
        mean=float(samples.mean()), std_error=float(samples.std(ddof=1) / math.sqrt(n)), n_samples=n, seed=seed
    )


def _log_conditional(y, x1, f_x2, params: ChannelParams) -> np.ndarray:
    """ln f_{Y|X₁}(y|x₁), 표본별 유한 혼합"""
    sigma2 = params.sigma2
    if isinstance(f_x2, ConcentricCircles):
        shifted = np.abs(y - params.a * x1)
        centers = np.abs(x1)[:, None] * f_x2.radii[None, :]
        return log_mixture(log_ring_planar(shifted[:, None], centers, sigma2), np.log(f_x2.probs)[None, :])
    means = (params.a + f_x2.locations)[None, :] * x1[:, None]
    d2 = np.abs(y[:, None] - means) ** 2
    return log_mixture(-d2 / sigma2, np.log(f_x2.probs)[None, :]) - math.log(math.pi * sigma2)


def _log_given_x2(y, gain_abs, f_r: RadialPmf, params: ChannelParams) -> np.ndarray:
    """ln f_{Y|X₂}(y|x₂): θ₁ 균일이므로 중심 |a+x₂|·r_k 의 링 혼합"""
    centers = gain_abs[:, None] * f_r.radii[None, :]
    return log_mixture(log_ring_planar(np.abs(y)[:, None], centers, params.sigma2), np.log(f_r.probs)[None, :])


def _sample_model(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig) -> Dict[str, np.ndarray]:
    """표본별 로그 밀도 값 (청크 순서대로 이어 붙임)"""
    table = effective_gain_table(f_r, f_x2, params, cfg)
    sigma2 = params.sigma2
    parts = {"log_f_Y": [], "log_f_Y_X1": [], "log_f_Y_X2": [], "log_noise": []}
    for rng, size in _chunks(cfg):
        k = rng.choice(f_r.radii.size, size=size, p=f_r.probs)
        m = rng.choice(f_x2.probs.size, size=size, p=f_x2.probs)
        theta1 = rng.uniform(-math.pi, math.pi, size=size)
        x1 = f_r.radii[k] * np.exp(1j * theta1)
        if isinstance(f_x2, ConcentricCircles):
            theta2 = rng.uniform(-math.pi, math.pi, size=size)
            x2 = f_x2.radii[m] * np.exp(1j * theta2)
        else:
            x2 = f_x2.locations[m]
        z = _complex_normal(rng, size, sigma2)
        y = (params.a + x2) * x1 + z

        parts["log_f_Y"].append(log_planar_mixture(np.abs(y), table.centers, table.log_weights, sigma2))
        parts["log_f_Y_X1"].append(_log_conditional(y, x1, f_x2, params))
        parts["log_f_Y_X2"].append(_log_given_x2(y, np.abs(params.a + x2), f_r, params))
        parts["log_noise"].append(-math.log(math.pi * sigma2) - np.abs(z) ** 2 / sigma2)
    return {name: np.concatenate(values) for name, values in parts.items()}


def mc_mutual_infos(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig) -> Dict[str, McEstimate]:
    """
    엔트로피와 네 가지 상호정보량의 몬테카를로 추정 [nats]

    각 상호정보량은 같은 표본의 로그 밀도 차이로 추정하므로 체인 룰이 표본 단위로 성립합니다.

    Returns:
        h_Y, h_Y_given_X1, I_X1_Y, I_X2_Y_given_X1, I_joint, I_X1_Y_given_X2 → McEstimate

    Raises:
        SeedError: 잘못된 시드
        ConfigError: mc_samples < 10⁴
    """
    s = _sample_model(f_r, f_x2, params, cfg)
    seed = cfg.mc_seed
    estimates = {
        "h_Y": _estimate(-s["log_f_Y"], seed),
        "h_Y_given_X1": _estimate(-s["log_f_Y_X1"], seed),
        "I_X1_Y": _estimate(s["log_f_Y_X1"] - s["log_f_Y"], seed),
        "I_X2_Y_given_X1": _estimate(s["log_noise"] - s["log_f_Y_X1"], seed),
        "I_joint": _estimate(s["log_noise"] - s["log_f_Y"], seed),
        "I_X1_Y_given_X2": _estimate(s["log_noise"] - s["log_f_Y_X2"], seed),
    }
    logger.debug(f"monte carlo with {cfg.mc_samples} samples, seed {seed}")
    return estimates


def mc_h_Y(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig) -> McEstimate:
    """h(Y)의 몬테카를로 추정"""
    return mc_mutual_infos(f_r, f_x2, params, cfg)["h_Y"]


def mc_h_Y_given_X1(f_r: RadialPmf, f_x2, params: ChannelParams, cfg: QuadConfig) -> McEstimate:
    """h(Y|X₁)의 몬테카를로 추정"""
    return mc_mutual_infos(f_r, f_x2, params, cfg)["h_Y_given_X1"]


def mc_baseline(params: ChannelParams, cfg: QuadConfig) -> Dict[str, McEstimate]:
    """
    베이스라인 입력(X₁ ~ CN(0,P), X₂ 단위원 균일)의 I(X₁;Y), I(X₂;Y|X₁) 추정 [nats]

    f_Y는 θ₂에 대한 가우시안 평균이며 각 사다리꼴 규칙으로 평가합니다.
    """
    sigma2 = params.sigma2
    angles = build_angular_rule(cfg)
    variances = params.P * np.abs(params.a + np.exp(1j * angles.nodes)) ** 2 + sigma2
    log_norm = -np.log(math.pi * variances) - math.log(variances.size)
    i1, i2 = [], []
    for rng, size in _chunks(cfg):
        x1 = _complex_normal(rng, size, params.P)
        x2 = np.exp(1j * rng.uniform(-math.pi, math.pi, size=size))
        z = _complex_normal(rng, size, sigma2)
        y = (params.a + x2) * x1 + z

        log_f_y = special.logsumexp(log_norm[None, :] - np.abs(y)[:, None] ** 2 / variances[None, :], axis=1)
        log_f_y_x1 = log_ring_planar(np.abs(y - params.a * x1), np.abs(x1), sigma2)
        log_noise = -math.log(math.pi * sigma2) - np.abs(z) ** 2 / sigma2
        i1.append(log_f_y_x1 - log_f_y)
        i2.append(log_noise - log_f_y_x1)
    seed = cfg.mc_seed
    return {"I_X1_Y": _estimate(np.concatenate(i1), seed), "I_X2_Y_given_X1": _estimate(np.concatenate(i2), seed)}


def random_model(params: ChannelParams, n_points: int, seed: int) -> Tuple[RadialPmf, PointMasses]:
    """
    교차 검증용 무작위 모델 (n_points × n_points)

    진폭은 E[r²] = P로 스케일하고, BD 점은 단위 원판에서 면적 균일로 뽑습니다.
    """
    rng = stream_generator(seed, MODEL_STREAM)
    radii = rng.uniform(0.2, 2.0, n_points) * math.sqrt(params.P)
    probs = rng.dirichlet(np.ones(n_points))
    radii *= math.sqrt(params.P / float(np.dot(probs, radii**2)))
    locations = np.sqrt(rng.uniform(0.0, 1.0, n_points)) * np.exp(1j * rng.uniform(-math.pi, math.pi, n_points))
    bd_probs = rng.dirichlet(np.ones(n_points))
    r_loc, r_prob = merge_atoms(radii, probs)
    x_loc, x_prob = merge_atoms(locations, bd_probs)
    return RadialPmf.from_arrays(r_loc, r_prob), PointMasses.from_arrays(x_loc, x_prob)


def noise_model() -> Tuple[RadialPmf, PointMasses]:
    """X₁ = 0: Y = Z 인 순수 잡음 모델"""
    return RadialPmf(points=((0.0, 1.0),)), PointMasses(points=((1.0, 0.0, 1.0),))


def compare(quad: float, estimate: McEstimate, abs_floor: float = SE_FLOOR) -> McCheckEntry:
    """
    z = (quad − mc_mean)/mc_se, |z| > 3 이면 플래그

    표본이 모두 같은 값이면(예: 순수 잡음 모델의 상호정보량) 표준오차가 0이 되므로
    분모는 abs_floor 이상으로 둡니다.
    """
    z = (quad - estimate.mean) / max(estimate.std_error, abs_floor)
    return McCheckEntry(
        quad=quad, mc_mean=estimate.mean, mc_se=estimate.std_error, z_score=z, flagged=abs(z) > Z_FLAG
    )
