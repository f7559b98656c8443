"""
결과 보고 pydantic 모델

엔트로피/상호정보량, 경계점 해, KKT 진단, 베이스라인, 합 전송률 스윕, 몬테카를로 추정
"""

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ammac.core.exceptions import ConstraintViolation
from ammac.models.channel_model import RatePair, Weights
from ammac.models.distribution_model import BdDistribution, RadialPmf


class EntropyReport(BaseModel):
    """구적으로 계산한 엔트로피 [nats]"""

    model_config = ConfigDict(frozen=True)

    value_nats: float
    est_abs_error: float
    radial_nodes: int
    angular_nodes: int

    @model_validator(mode="after")
    def _check_error(self) -> "EntropyReport":
        if not self.est_abs_error >= 0.0:
            raise ConstraintViolation("est_abs_error >= 0", amount=self.est_abs_error)
        return self


class MutualInfos(BaseModel):
    """영역 제약에 쓰이는 네 가지 상호정보량 [nats]"""

    model_config = ConfigDict(frozen=True)

    I_X1_Y: float
    I_X2_Y_given_X1: float
    I_joint: float
    I_X1_Y_given_X2: float
    est_abs_error: float = 0.0

    def as_dict(self) -> Dict[str, float]:
        return {
            "I_X1_Y": self.I_X1_Y,
            "I_X2_Y_given_X1": self.I_X2_Y_given_X1,
            "I_joint": self.I_joint,
            "I_X1_Y_given_X2": self.I_X1_Y_given_X2,
        }


class BoundarySolution(BaseModel):
    """한 가중치 벡터에 대한 최적화 결과"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    weights: Weights
    f_r: RadialPmf
    f_x2: BdDistribution
    rates: RatePair
    objective_nats: float
    lam: float = Field(alias="lambda", ge=0.0)
    kkt_residual_r: Optional[float] = None  # μ₁ = 0 이면 L(r) 조건이 없어 평가하지 않음
    kkt_residual_x2: float
    converged: bool
    diagnostics: Dict[str, Union[int, float, str]] = {}


class KktReport(BaseModel):
    """변분 조건 검증 결과"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["r", "x2", "rings"]
    level: float  # 지지점 위 함수값의 확률 가중 평균
    max_violation: float
    violation_location: List[float]  # r / [re, im] / ρ
    on_support_spread: float
    variant: Literal["fixed_phase", "marginalized", "gaussian"] = "fixed_phase"
    cluster_hint: Optional[Literal["about_minus_a", "about_origin"]] = None


class BaselineReport(BaseModel):
    """베이스라인 전송률 쌍과 코너점 [bits/use]"""

    model_config = ConfigDict(frozen=True)

    snr_db: float
    a: float
    r1_base: float
    r1_base_literal: float
    r1_lower: float
    r2_base: float
    r2_asym: float
    c_sum: float
    c1: float
    c_sum_signed: float  # (1+a)² 형태 (a<0에서 |a|+1 형태와 다름)
    bd_max_ref: float


class SweepPoint(BaseModel):
    """합 전송률 스윕의 한 행 [bits/use]"""

    model_config = ConfigDict(frozen=True)

    value: float  # 스윕 축 값 (SNR [dB] 또는 a)
    mu1: float
    R1_bits: float
    R2_bits: float
    sum_bits: float
    r1_base: float
    r2_base: float
    c_sum: float
    converged: bool


class McEstimate(BaseModel):
    """몬테카를로 추정값 [nats]"""

    model_config = ConfigDict(frozen=True)

    mean: float
    std_error: float
    n_samples: int
    seed: int


class McCheckEntry(BaseModel):
    """구적 대 몬테카를로 비교 한 항목"""

    model_config = ConfigDict(frozen=True)

    quad: float
    mc_mean: float
    mc_se: float
    z_score: float
    flagged: bool
