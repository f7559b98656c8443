"""
스윕 명령

SNR 또는 직접 경로 이득 a 격자를 따라 최적 합 전송률과 베이스라인 전송률을 비교합니다.
"""

import logging

import click

from ammac.models.channel_model import ChannelParams
from ammac.repositories.result_repo import ResultRepository, ensure_out_dir
from ammac.utils.boundary_utils import sweep_sum_rates
from ammac.utils.cli_utils import common_options, handle_errors, run_config_from

logger = logging.getLogger(__name__)


@click.command("sweep")
@click.option("--over", type=click.Choice(["snr", "a"]), default="snr", show_default=True,
              help="스윕 축 ([baseline].snr_grid_db 또는 [sweep].a_grid)")
@common_options
@handle_errors
def sweep(over: str, **kwargs) -> None:
    """
    합 전송률 스윕을 sweep_<축>.csv로 저장

    SNR 축은 매니페스트의 a를, a 축은 매니페스트의 P와 σ²를 고정합니다.
    미수렴 점은 converged=false 행으로 남깁니다.
    """
    run = run_config_from(kwargs)
    params = run.params
    if over == "snr":
        points = [(s, ChannelParams.from_snr_db(params.a, s, params.sigma2)) for s in run.snr_grid_db]
    else:
        points = [(a, ChannelParams(a=a, sigma2=params.sigma2, P=params.P)) for a in run.a_grid]
    rows = sweep_sum_rates(points, run.sweep_mu1, run.quad, run.optim)
    failed = [(r.value, r.mu1) for r in rows if not r.converged]
    if failed:
        logger.warning(f"{len(failed)} sweep points did not converge: {failed}")
    path = ResultRepository.save_sweep(ensure_out_dir(run.out_dir), over, rows)
    click.echo(str(path))
