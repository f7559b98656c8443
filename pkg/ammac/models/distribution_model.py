"""
입력 분포 pydantic 모델

PT 진폭 분포(RadialPmf)와 BD 분포(PointMasses / ConcentricCircles),
그리고 검증·정규화 연산을 제공합니다.
"""

import math
from typing import Annotated, Literal, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator

from ammac.core.exceptions import ConfigError, ConstraintViolation, DegenerateDistribution
from ammac.models.channel_model import ChannelParams

MERGE_TOL = 1e-4  # 진폭 단위 병합 허용오차
PRUNE_TOL = 1e-10  # 확률 제거 임계값
SUM_TOL = 1e-12
POWER_SLACK = 1e-9
PEAK_SLACK = 1e-12


def _check_finite(points):
    for point in points:
        if not all(math.isfinite(v) for v in point):
            raise ValueError(f"non-finite entry {point}")
    return points


class RadialPmf(BaseModel):
    """PT 진폭 분포 X₁ = r·e^{jθ₁} (θ₁ 균일, r과 독립)"""

    model_config = ConfigDict(frozen=True)

    points: Tuple[Tuple[float, float], ...]  # (r_k, p_k)

    @field_validator("points")
    @classmethod
    def check_points_finite(cls, points):
        return _check_finite(points)

    @classmethod
    def from_arrays(cls, radii, probs) -> "RadialPmf":
        return cls(points=tuple((float(r), float(p)) for r, p in zip(radii, probs)))

    @property
    def radii(self) -> np.ndarray:
        return np.array([r for r, _ in self.points], dtype=float)

    @property
    def probs(self) -> np.ndarray:
        return np.array([p for _, p in self.points], dtype=float)

    def second_moment(self) -> float:
        return float(np.dot(self.probs, self.radii**2))


class PointMasses(BaseModel):
    """단위 원판 내부의 유한 복소 질량점"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["points"] = "points"
    points: Tuple[Tuple[float, float, float], ...]  # (re, im, q_m)

    @field_validator("points")
    @classmethod
    def check_points_finite(cls, points):
        return _check_finite(points)

    @classmethod
    def from_arrays(cls, locations, probs) -> "PointMasses":
        return cls(
            points=tuple(
                (float(np.real(x)), float(np.imag(x)), float(q)) for x, q in zip(locations, probs)
            )
        )

    @property
    def locations(self) -> np.ndarray:
        return np.array([complex(re, im) for re, im, _ in self.points], dtype=complex)

    @property
    def probs(self) -> np.ndarray:
        return np.array([q for _, _, q in self.points], dtype=float)


class ConcentricCircles(BaseModel):
    """균일 위상의 동심원 분포 X₂ = ρ_m·e^{jθ₂}"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["circles"] = "circles"
    points: Tuple[Tuple[float, float], ...]  # (ρ_m, q_m)

    @field_validator("points")
    @classmethod
    def check_points_finite(cls, points):
        return _check_finite(points)

    @classmethod
    def from_arrays(cls, radii, probs) -> "ConcentricCircles":
        return cls(points=tuple((float(r), float(q)) for r, q in zip(radii, probs)))

    @property
    def radii(self) -> np.ndarray:
        return np.array([r for r, _ in self.points], dtype=float)

    @property
    def probs(self) -> np.ndarray:
        return np.array([q for _, q in self.points], dtype=float)


BdDistribution = Annotated[Union[PointMasses, ConcentricCircles], Field(discriminator="kind")]

_BD_ADAPTER = TypeAdapter(BdDistribution)


def parse_bd_distribution(data) -> Union[PointMasses, ConcentricCircles]:
    """JSON dict → BdDistribution"""
    return _BD_ADAPTER.validate_python(data)


def _check_probabilities(probs: np.ndarray, name: str) -> None:
    if probs.size == 0:
        raise DegenerateDistribution(f"{name}: empty point list")
    if np.any(probs <= 0.0):
        raise ConstraintViolation(f"{name}: probabilities > 0", amount=float(-probs.min()))
    gap = abs(float(probs.sum()) - 1.0)
    if gap > SUM_TOL:
        raise ConstraintViolation(f"{name}: probabilities sum to 1", amount=gap)


def _check_distinct(locations: np.ndarray, merge_tol: float, name: str) -> None:
    if locations.size < 2:
        return
    gaps = np.abs(locations[:, None] - locations[None, :])
    gaps[np.diag_indices_from(gaps)] = np.inf
    closest = float(gaps.min())
    if closest <= merge_tol:
        raise ConstraintViolation(f"{name}: points pairwise distinct", amount=merge_tol - closest)


def validate(params: ChannelParams, f_r: RadialPmf, f_x2, merge_tol: float = MERGE_TOL):
    """
    모델 전체 불변식 검증

    Args:
        params: 채널 파라미터
        f_r: PT 진폭 분포
        f_x2: BD 분포
        merge_tol: 서로 다른 질량점으로 인정하는 최소 간격

    Returns:
        (params, f_r, f_x2) 튜플

    Raises:
        ConstraintViolation: 불변식 위반 (위반 항목과 크기 포함)
        DegenerateDistribution: 빈 분포
    """
    radii, probs = f_r.radii, f_r.probs
    _check_probabilities(probs, "f_r")
    if np.any(radii < 0.0):
        raise ConstraintViolation("f_r: amplitudes >= 0", amount=float(-radii.min()))
    _check_distinct(radii, merge_tol, "f_r")
    excess = f_r.second_moment() - params.P * (1.0 + POWER_SLACK)
    if excess > 0.0:
        raise ConstraintViolation("f_r: average power <= P", amount=excess)

    _check_probabilities(f_x2.probs, "f_x2")
    if isinstance(f_x2, PointMasses):
        peak = float(np.abs(f_x2.locations).max())
        if peak > 1.0 + PEAK_SLACK:
            raise ConstraintViolation("f_x2: peak amplitude |x2| <= 1", amount=peak - 1.0)
        _check_distinct(f_x2.locations, merge_tol, "f_x2")
    else:
        rings = f_x2.radii
        if np.any(rings < 0.0) or np.any(rings > 1.0 + PEAK_SLACK):
            raise ConstraintViolation(
                "f_x2: ring radius in [0, 1]", amount=float(max(-rings.min(), rings.max() - 1.0))
            )
        _check_distinct(rings, merge_tol, "f_x2")
    return params, f_r, f_x2


def merge_atoms(locations, probs, merge_tol: float = MERGE_TOL, prune_tol: float = PRUNE_TOL):
    """
    배열 단위 병합/제거

    merge_tol보다 가까운 질량점을 확률 가중 위치로 병합하고,
    prune_tol 미만의 확률을 제거한 뒤 합이 1이 되도록 정규화합니다.
    변화가 없을 때까지 반복하므로 멱등입니다.
    """
    if not merge_tol > 0.0:
        raise ConfigError(f"merge_tol must be > 0, got {merge_tol}")
    loc = np.asarray(locations).copy()
    prob = np.asarray(probs, dtype=float).copy()

    while True:
        total = float(prob.sum()) if prob.size else 0.0
        if total <= 0.0:
            raise DegenerateDistribution("all probability mass pruned")
        keep = prob / total >= prune_tol
        if not keep.any():
            raise DegenerateDistribution("all probability mass pruned")
        changed = not bool(keep.all())
        loc, prob = loc[keep], prob[keep]

        centers, masses, moments = [], [], []
        for i in np.argsort(-prob, kind="stable"):
            for c, center in enumerate(centers):
                if abs(loc[i] - center) < merge_tol:
                    masses[c] += prob[i]
                    moments[c] += prob[i] * loc[i]
                    centers[c] = moments[c] / masses[c]
                    break
            else:
                centers.append(loc[i])
                masses.append(prob[i])
                moments.append(prob[i] * loc[i])
        if len(centers) < loc.size:
            changed = True
        loc = np.array(centers, dtype=loc.dtype)
        prob = np.array(masses, dtype=float)
        if not changed:
            break

    total = float(prob.sum())
    if abs(total - 1.0) > 1e-14:
        prob = prob / total
    if np.iscomplexobj(loc):
        order = np.lexsort((loc.imag, loc.real))
    else:
        order = np.argsort(loc, kind="stable")
    return loc[order], prob[order]


def normalize_and_merge(pmf, merge_tol: float = MERGE_TOL):
    """
    분포 정규화 및 근접 질량점 병합

    Args:
        pmf: RadialPmf, PointMasses 또는 ConcentricCircles
        merge_tol: 병합 허용오차 (> 0)

    Returns:
        같은 타입의 정규화된 분포

    Raises:
        DegenerateDistribution: 모든 질량이 제거됨
    """
    if isinstance(pmf, PointMasses):
        loc, prob = merge_atoms(pmf.locations, pmf.probs, merge_tol)
        return PointMasses.from_arrays(loc, prob)
    if isinstance(pmf, ConcentricCircles):
        loc, prob = merge_atoms(pmf.radii, pmf.probs, merge_tol)
        return ConcentricCircles.from_arrays(loc, prob)
    loc, prob = merge_atoms(pmf.radii, pmf.probs, merge_tol)
    return RadialPmf.from_arrays(loc, prob)


def rayleigh_quantization(P: float, n: int) -> RadialPmf:
    """
    평균제곱 P인 Rayleigh 진폭의 n-점 양자화

    등확률 구간마다 조건부 RMS 진폭을 대표값으로 하므로 Σ p r² = P 입니다.
    """
    if n < 1:
        raise ConfigError("quantization needs n >= 1")
    # t = r²/P ~ Exp(1)
    edges = -np.log1p(-np.arange(n) / n)
    lower = (edges + 1.0) * np.exp(-edges)
    upper = np.append(lower[1:], 0.0)
    mean_t = n * (lower - upper)
    radii = np.sqrt(P * mean_t)
    radii *= math.sqrt(P / float(np.mean(radii**2)))
    return RadialPmf.from_arrays(radii, np.full(n, 1.0 / n))


def rings_to_points(f_x2: ConcentricCircles, n_angles: int = 8) -> PointMasses:
    """동심원 분포를 원마다 n_angles개의 점으로 이산화"""
    locations, probs = [], []
    for rho, q in f_x2.points:
        if rho == 0.0:
            locations.append(0j)
            probs.append(q)
            continue
        for i in range(n_angles):
            locations.append(rho * complex(math.cos(2 * math.pi * i / n_angles), math.sin(2 * math.pi * i / n_angles)))
            probs.append(q / n_angles)
    loc, prob = merge_atoms(np.array(locations), np.array(probs))
    return PointMasses.from_arrays(loc, prob)
