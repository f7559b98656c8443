"""
채널 관련 pydantic 모델

ChannelParams, Weights, RatePair
"""

import math

from pydantic import BaseModel, ConfigDict, model_validator

from ammac.core.exceptions import ConstraintViolation

LN2 = math.log(2.0)


class ChannelParams(BaseModel):
    """AM-MAC 채널 파라미터 Y = aX₁ + X₁X₂ + Z"""

    model_config = ConfigDict(frozen=True)

    a: float  # 직접 경로 이득 (0 제외)
    sigma2: float  # 잡음 분산
    P: float  # PT 평균 전력 예산

    @model_validator(mode="after")
    def _check_invariants(self) -> "ChannelParams":
        for name in ("a", "sigma2", "P"):
            if not math.isfinite(getattr(self, name)):
                raise ConstraintViolation(f"{name} finite")
        if self.a == 0.0:
            raise ConstraintViolation("a != 0")
        if self.sigma2 <= 0.0:
            raise ConstraintViolation("sigma2 > 0", amount=-self.sigma2)
        if self.P <= 0.0:
            raise ConstraintViolation("P > 0", amount=-self.P)
        return self

    @classmethod
    def from_snr_db(cls, a: float, snr_db: float, sigma2: float = 1.0) -> "ChannelParams":
        """SNR(dB)로부터 P = σ²·10^(snr/10) 설정"""
        return cls(a=a, sigma2=sigma2, P=sigma2 * 10.0 ** (snr_db / 10.0))

    def snr(self) -> float:
        return self.P / self.sigma2

    def snr_db(self) -> float:
        return 10.0 * math.log10(self.snr())

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    @property
    def bd_sign(self) -> float:
        """|a + x₂|를 최대화하는 x₂ = sign(a)"""
        return 1.0 if self.a > 0 else -1.0

    def noise_entropy(self) -> float:
        """h(Z) = ln(πeσ²) [nats]"""
        return math.log(math.pi * math.e * self.sigma2)


class Weights(BaseModel):
    """가중 합 전송률의 가중치 (μ₁, μ₂)"""

    model_config = ConfigDict(frozen=True)

    mu1: float
    mu2: float

    @model_validator(mode="after")
    def _check_invariants(self) -> "Weights":
        if self.mu1 < 0.0 or self.mu2 < 0.0:
            raise ConstraintViolation("weights nonnegative", amount=-min(self.mu1, self.mu2))
        gap = abs(self.mu1 + self.mu2 - 1.0)
        if gap > 1e-12:
            raise ConstraintViolation("mu1 + mu2 = 1", amount=gap)
        return self

    @classmethod
    def from_mu1(cls, mu1: float) -> "Weights":
        return cls(mu1=mu1, mu2=1.0 - mu1)


class RatePair(BaseModel):
    """달성 전송률 쌍 [bits/use]"""

    model_config = ConfigDict(frozen=True)

    R1: float
    R2: float

    @model_validator(mode="after")
    def _check_invariants(self) -> "RatePair":
        for name in ("R1", "R2"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ConstraintViolation(f"{name} finite and >= 0", amount=value)
        return self

    @classmethod
    def from_nats(cls, i1: float, i2: float) -> "RatePair":
        """nats → bits 변환 (구적 잡음으로 인한 미세한 음수는 0으로)"""
        return cls(R1=max(i1, 0.0) / LN2, R2=max(i2, 0.0) / LN2)
