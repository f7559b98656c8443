"""
코너점 명령

C_sum, C₁ (해석식)과 BD 최대 전송률 (solve_bd_max)
"""

import logging

import click

from ammac.repositories.result_repo import ResultRepository, ensure_out_dir
from ammac.utils.baseline_utils import c1, c_sum
from ammac.utils.boundary_utils import require_converged
from ammac.utils.cli_utils import common_options, echo_json, handle_errors, run_config_from
from ammac.utils.optim_utils import solve_bd_max

logger = logging.getLogger(__name__)


@click.command("corners")
@common_options
@handle_errors
def corners(**kwargs) -> None:
    """
    용량 영역 코너점 계산

    corners.json {c_sum_bits, c1_bits, bd_max_bits} 를 쓰고 stdout으로도 출력합니다.
    """
    run = run_config_from(kwargs)
    params = run.params
    bd = solve_bd_max(params, run.quad, run.optim)
    require_converged([bd])
    result = {"c_sum_bits": c_sum(params), "c1_bits": c1(params), "bd_max_bits": bd.rates.R2}
    ResultRepository.write_json(ensure_out_dir(run.out_dir) / "corners.json", result)
    logger.info(f"corners at a={params.a}, {params.snr_db():.2f} dB: {result}")
    echo_json(result)
