"""
베이스라인 명령

SNR 격자마다 베이스라인 전송률 쌍과 하한/점근식/합 전송률
"""

import logging

import click

from ammac.models.channel_model import ChannelParams
from ammac.repositories.result_repo import ResultRepository, ensure_out_dir
from ammac.utils.baseline_utils import baseline_report
from ammac.utils.cli_utils import common_options, handle_errors, run_config_from

logger = logging.getLogger(__name__)


@click.command("baseline")
@common_options
@handle_errors
def baseline(**kwargs) -> None:
    """SNR 격자 전체의 베이스라인 전송률을 baseline.csv로 저장"""
    run = run_config_from(kwargs)
    params = run.params
    reports = []
    for snr_db in run.snr_grid_db:
        point = ChannelParams.from_snr_db(params.a, snr_db, params.sigma2)
        reports.append(baseline_report(point, run.quad))
    path = ResultRepository.save_baseline(ensure_out_dir(run.out_dir), reports)
    click.echo(str(path))
