"""
CLI 공통 유틸리티

모든 명령이 공유하는 플래그, 설정 해석, 종료 코드 매핑
"""

import functools
import json
import logging
from pathlib import Path
from typing import Any, Callable

import click
from pydantic import ValidationError

from ammac.core.config import load_run_config
from ammac.core.exceptions import InputError, NumericalError
from ammac.models.config_model import RunConfig
from ammac.models.exit_model import ExitCode
from ammac.repositories.result_repo import round_nested

logger = logging.getLogger(__name__)

OVERRIDE_KEYS = ("a", "snr_db", "sigma2", "p", "out", "seed", "radial_nodes", "angular_nodes", "mc_samples")


def common_options(func: Callable) -> Callable:
    """채널/설정/출력 공통 플래그"""
    options = [
        click.option("--a", "a", type=float, default=None, help="직접 경로 이득 a (0 제외)"),
        click.option("--snr-db", "snr_db", type=float, default=None, help="P/σ² [dB] (σ² 기본 1)"),
        click.option("--sigma2", type=float, default=None, help="잡음 분산 σ²"),
        click.option("--p", "p", type=float, default=None, help="PT 평균 전력 P"),
        click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="TOML 매니페스트"),
        click.option("--out", type=click.Path(path_type=Path), default=None, help="출력 디렉터리"),
        click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="난수 시드 (MC/재시작)"),
        click.option("--radial-nodes", type=int, default=None),
        click.option("--angular-nodes", type=int, default=None),
        click.option("--mc-samples", type=int, default=None),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def run_config_from(kwargs: dict) -> RunConfig:
    """플래그 dict → RunConfig (사용한 키는 kwargs에서 제거)"""
    config_path = kwargs.pop("config_path", None)
    overrides = {key: kwargs.pop(key, None) for key in OVERRIDE_KEYS}
    return load_run_config(config_path, **overrides)


def echo_json(data: Any) -> None:
    """반올림한 JSON을 stdout으로 출력"""
    click.echo(json.dumps(round_nested(data), indent=2, ensure_ascii=False))


def exit_code_for(error: BaseException) -> ExitCode:
    """예외 → 종료 코드"""
    if isinstance(error, (InputError, ValidationError)):
        return ExitCode.INVALID_INPUT
    if isinstance(error, NumericalError):
        return ExitCode.NUMERICAL_FAILURE
    raise error


def handle_errors(func: Callable) -> Callable:
    """
    명령 예외를 종료 코드로 변환

    입력 오류는 2, 수치 오류는 3으로 종료하고 메시지는 stderr 로그로 남깁니다.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (InputError, ValidationError, NumericalError) as e:
            code = exit_code_for(e)
            logger.error(f"{type(e).__name__}: {e}")
            raise click.exceptions.Exit(code.value) from e

    return wrapper
