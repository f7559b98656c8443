"""
설정 pydantic 모델

QuadConfig(구적/몬테카를로), OptimConfig(최적화/KKT 격자), RunConfig(명령 실행)
"""

from pathlib import Path
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, model_validator

from ammac.core.exceptions import ConfigError
from ammac.models.channel_model import ChannelParams


class QuadConfig(BaseModel):
    """모든 적분의 해상도와 허용오차"""

    model_config = ConfigDict(frozen=True)

    radial_nodes: int = 1024
    angular_nodes: int = 64
    radial_cutoff_sigmas: float = 10.0
    mc_samples: int = 200_000
    mc_seed: int = 42
    rel_tol: float = 1e-6
    strict: bool = True  # False면 세분화 불일치를 오류 대신 추정오차로만 보고

    @model_validator(mode="after")
    def _check_invariants(self) -> "QuadConfig":
        for name in ("radial_nodes", "angular_nodes", "mc_samples"):
            if getattr(self, name) < 8:
                raise ConfigError(f"{name} must be >= 8, got {getattr(self, name)}")
        if not 0.0 < self.rel_tol <= 1e-2:
            raise ConfigError(f"rel_tol must be in (0, 1e-2], got {self.rel_tol}")
        if not self.radial_cutoff_sigmas > 0.0:
            raise ConfigError("radial_cutoff_sigmas must be > 0")
        if self.mc_seed < 0:
            raise ConfigError("mc_seed must be >= 0")
        return self

    @property
    def gauss_nodes(self) -> int:
        """2-D 가우시안 기댓값 규칙의 방사 노드 수"""
        return max(16, self.radial_nodes // 32)

    def refined(self) -> "QuadConfig":
        """방사/각 노드 수를 두 배로 늘린 설정"""
        return self.model_copy(
            update={"radial_nodes": 2 * self.radial_nodes, "angular_nodes": 2 * self.angular_nodes}
        )


class OptimConfig(BaseModel):
    """P3 최적화와 KKT 검증 격자 설정"""

    model_config = ConfigDict(frozen=True)

    max_points_r: int = 16
    max_points_x2: int = 12
    init_points_r: int = 6
    init_points_x2: int = 5
    restarts: int = 2
    step_init: float = 0.1
    kkt_tol: float = 1e-3
    grid_r_points: int = 400
    grid_r_span: float = 3.0  # grid_r = [0, span·√P]
    grid_x2_radii: int = 24
    grid_x2_angles: int = 48
    max_iters: int = 200
    scan_every: int = 20  # 정체와 무관하게 KKT 검사/삽입을 하는 반복 간격
    convergence_tol: float = 1e-7
    merge_tol: float = 1e-4
    insert_prob: float = 1e-3
    fd_step: float = 1e-4
    jitter: float = 0.1
    bisection_iters: int = 20
    seed: int = 0

    @model_validator(mode="after")
    def _check_invariants(self) -> "OptimConfig":
        if self.max_points_r < 1 or self.max_points_x2 < 1:
            raise ConfigError("point caps must be >= 1")
        if self.restarts < 1 or self.max_iters < 1:
            raise ConfigError("restarts and max_iters must be >= 1")
        if self.scan_every < 1:
            raise ConfigError("scan_every must be >= 1")
        if not 0.0 < self.kkt_tol <= 1e-1:
            raise ConfigError(f"kkt_tol must be in (0, 1e-1], got {self.kkt_tol}")
        if self.grid_r_points < 200:
            raise ConfigError("grid_r needs >= 200 nodes")
        if self.grid_x2_radii * self.grid_x2_angles < 500:
            raise ConfigError("grid_x2 needs >= 500 nodes")
        if not (self.step_init > 0.0 and self.merge_tol > 0.0 and self.fd_step > 0.0):
            raise ConfigError("step_init, merge_tol and fd_step must be > 0")
        if not 0.0 < self.insert_prob < 0.5:
            raise ConfigError("insert_prob must be in (0, 0.5)")
        return self


def _default_snr_grid() -> List[float]:
    return [-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0]


def _default_schedule() -> List[float]:
    return [round(0.025 * i, 10) for i in range(21)]


def _default_a_grid() -> List[float]:
    return [round(0.2 * i, 10) for i in range(1, 11)]


class RunConfig(BaseModel):
    """명령 실행 설정"""

    model_config = ConfigDict(frozen=True)

    params: ChannelParams
    quad: QuadConfig = QuadConfig()
    optim: OptimConfig = OptimConfig()
    out_dir: Path = Path("results")
    snr_grid_db: List[float] = _default_snr_grid()
    weight_schedule: List[float] = _default_schedule()
    a_grid: List[float] = _default_a_grid()
    sweep_mu1: List[float] = [0.0, 0.5]  # 합 전송률 스윕에서 풀 μ₁ 값
    mc_model: Literal["random", "noise"] = "random"
    mc_points: int = 3

    @model_validator(mode="after")
    def _check_invariants(self) -> "RunConfig":
        schedule = self.weight_schedule
        if any(not 0.0 <= mu <= 0.5 for mu in schedule) or schedule != sorted(schedule):
            raise ConfigError("weight schedule must be sorted values in [0, 0.5]")
        if self.out_dir.exists() and not self.out_dir.is_dir():
            raise ConfigError(f"output path is not a directory: {self.out_dir}")
        if any(a == 0.0 for a in self.a_grid):
            raise ConfigError("a_grid must not contain 0")
        if not self.sweep_mu1 or any(not 0.0 <= mu <= 1.0 for mu in self.sweep_mu1):
            raise ConfigError("sweep mu1 values must lie in [0, 1]")
        if self.mc_points < 1:
            raise ConfigError("mc_points must be >= 1")
        return self
