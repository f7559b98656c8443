"""
실행 설정 로딩

TOML 매니페스트([channel], [quad], [optim], [baseline], [boundary], [sweep], [mc])를 읽고
명령행 플래그로 덮어쓴 뒤 RunConfig를 만듭니다. 플래그가 항상 우선합니다.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from ammac.core.exceptions import ConfigError
from ammac.models.channel_model import ChannelParams
from ammac.models.config_model import OptimConfig, QuadConfig, RunConfig

logger = logging.getLogger(__name__)

DEFAULT_SNR_DB = 10.0

SECTIONS = {
    "channel": {"a", "sigma2", "P", "snr_db"},
    "quad": set(QuadConfig.model_fields) - {"mc_samples", "mc_seed"},
    "optim": set(OptimConfig.model_fields),
    "baseline": {"snr_grid_db"},
    "boundary": {"weight_schedule"},
    "sweep": {"a_grid", "mu1"},
    "mc": {"mc_samples", "mc_seed", "mc_model", "mc_points"},
}
TOP_LEVEL = {"out_dir"}


def read_manifest(path: Optional[Path]) -> Dict[str, Any]:
    """
    TOML 매니페스트 읽기 (알 수 없는 섹션/키는 거부)

    Raises:
        ConfigError: 파싱 실패 또는 알 수 없는 키
    """
    if path is None:
        return {}
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e

    for key, value in data.items():
        if key in TOP_LEVEL:
            continue
        if key not in SECTIONS or not isinstance(value, dict):
            raise ConfigError(f"unknown section [{key}] in {path}")
        unknown = set(value) - SECTIONS[key]
        if unknown:
            raise ConfigError(f"unknown keys in [{key}]: {', '.join(sorted(unknown))}")
    logger.debug(f"loaded manifest {path}")
    return data


def _channel(section: Dict[str, Any], overrides: Dict[str, Any]) -> ChannelParams:
    channel = dict(section)
    if overrides.get("p") is not None and overrides.get("snr_db") is not None:
        raise ConfigError("--p and --snr-db are mutually exclusive")
    if overrides.get("p") is not None:
        channel.pop("snr_db", None)
        channel["P"] = overrides["p"]
    if overrides.get("snr_db") is not None:
        channel.pop("P", None)
        channel["snr_db"] = overrides["snr_db"]
    for key in ("a", "sigma2"):
        if overrides.get(key) is not None:
            channel[key] = overrides[key]

    if "a" not in channel:
        raise ConfigError("channel gain a is required (--a or [channel].a)")
    if "P" in channel and "snr_db" in channel:
        raise ConfigError("[channel] sets both P and snr_db")
    sigma2 = float(channel.get("sigma2", 1.0))
    if "P" in channel:
        return ChannelParams(a=channel["a"], sigma2=sigma2, P=channel["P"])
    snr_db = channel.get("snr_db", DEFAULT_SNR_DB)
    return ChannelParams.from_snr_db(channel["a"], snr_db, sigma2)


def load_run_config(path: Optional[Path] = None, **overrides: Any) -> RunConfig:
    """
    매니페스트 + 플래그 → RunConfig

    Args:
        path: TOML 매니페스트 경로 (없으면 기본값)
        overrides: a, snr_db, sigma2, p, out, seed, radial_nodes, angular_nodes, mc_samples (None은 무시)

    Returns:
        검증된 RunConfig

    Raises:
        ConfigError: 설정 불변식 위반
        ConstraintViolation: 채널 파라미터 불변식 위반
    """
    data = read_manifest(path)
    params = _channel(data.get("channel", {}), overrides)

    quad = dict(data.get("quad", {}))
    optim = dict(data.get("optim", {}))
    mc = dict(data.get("mc", {}))
    for key in ("mc_samples", "mc_seed"):
        if key in mc:
            quad[key] = mc.pop(key)
    for key in ("radial_nodes", "angular_nodes", "mc_samples"):
        if overrides.get(key) is not None:
            quad[key] = overrides[key]
    if overrides.get("seed") is not None:
        quad["mc_seed"] = overrides["seed"]
        optim["seed"] = overrides["seed"]

    fields: Dict[str, Any] = {"params": params, "quad": QuadConfig(**quad), "optim": OptimConfig(**optim), **mc}
    if "snr_grid_db" in data.get("baseline", {}):
        fields["snr_grid_db"] = data["baseline"]["snr_grid_db"]
    if "weight_schedule" in data.get("boundary", {}):
        fields["weight_schedule"] = data["boundary"]["weight_schedule"]
    sweep = data.get("sweep", {})
    if "a_grid" in sweep:
        fields["a_grid"] = sweep["a_grid"]
    if "mu1" in sweep:
        fields["sweep_mu1"] = sweep["mu1"]
    out = overrides.get("out") or data.get("out_dir")
    if out is not None:
        fields["out_dir"] = Path(out)
    return RunConfig(**fields)
