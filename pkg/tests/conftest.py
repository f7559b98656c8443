import pytest

from ammac.models.channel_model import ChannelParams
from ammac.models.config_model import OptimConfig, QuadConfig


@pytest.fixture
def light_quad() -> QuadConfig:
    """테스트용 저해상도 구적 설정 (세분화 불일치는 경고만)"""
    return QuadConfig(radial_nodes=256, angular_nodes=32, rel_tol=1e-4, mc_samples=20_000, strict=False)


@pytest.fixture
def light_optim() -> OptimConfig:
    return OptimConfig(
        grid_r_points=200,
        grid_x2_radii=10,
        grid_x2_angles=50,
        restarts=1,
        max_iters=25,
        kkt_tol=1e-2,
        init_points_r=4,
        init_points_x2=3,
    )


@pytest.fixture
def params_10db() -> ChannelParams:
    return ChannelParams.from_snr_db(2.0, 10.0)


@pytest.fixture
def params_0db() -> ChannelParams:
    return ChannelParams.from_snr_db(2.0, 0.0)


@pytest.fixture
def params_low() -> ChannelParams:
    return ChannelParams.from_snr_db(2.0, -10.0)
