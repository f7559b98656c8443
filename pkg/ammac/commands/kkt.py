"""
KKT 명령

저장된 해 파일을 읽어 변분 조건을 다시 검증하고 격자 값을 CSV로 저장합니다.
"""

import logging
from pathlib import Path

import click
import numpy as np

from ammac.models.distribution_model import ConcentricCircles
from ammac.repositories.result_repo import ResultRepository, ensure_out_dir
from ammac.utils.cli_utils import common_options, echo_json, handle_errors, run_config_from
from ammac.utils.kkt_utils import scan_r, scan_r_collapsed, scan_rings, scan_x2

logger = logging.getLogger(__name__)


@click.command("kkt")
@click.argument("solution_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--marginalized", is_flag=True, help="L(r)에 위상 주변화 h(Y|r) 사용")
@common_options
@handle_errors
def kkt(solution_file: Path, marginalized: bool, **kwargs) -> None:
    """
    해 파일의 KKT 검증

    μ₁ = 0 (동심원) 해는 r 보고서 없이 rings 보고서만 만듭니다.
    μ₁ > μ₂ 해는 r 조건을 가우시안 닫힌 형태로 검사합니다.
    채널 파라미터는 해 파일의 값을 씁니다 (--a 등은 무시).
    """
    params, solution = ResultRepository.load_solution(solution_file)
    kwargs.update(a=params.a, p=params.P, sigma2=params.sigma2, snr_db=None)
    run = run_config_from(kwargs)
    cfg, ocfg = run.quad, run.optim

    reports, grids = {}, {}
    if isinstance(solution.f_x2, ConcentricCircles):
        report, grid, values = scan_rings(solution.f_x2, params, cfg, ocfg)
        reports["rings"] = report
        grids["rings"] = (("rho", "psi"), list(zip(grid, values)))
    else:
        weights = solution.weights
        if weights.mu1 > weights.mu2:
            report, grid, values = scan_r_collapsed(solution.f_r, weights, solution.lam, params, ocfg)
        elif weights.mu1 > 0.0:
            report, grid, values = scan_r(
                solution.f_r, solution.f_x2, weights, solution.lam, params, cfg, ocfg, marginalized=marginalized
            )
        if weights.mu1 > 0.0:
            reports["r"] = report
            grids["r"] = (("r", "L"), list(zip(grid, values)))
        report, grid, values = scan_x2(solution.f_r, solution.f_x2, solution.weights, params, cfg, ocfg)
        reports["x2"] = report
        grids["x2"] = (("re", "im", "omega2"), list(zip(np.real(grid), np.imag(grid), values)))

    ResultRepository.save_kkt(ensure_out_dir(run.out_dir), reports, grids)
    echo_json({kind: r.model_dump() for kind, r in reports.items()})
