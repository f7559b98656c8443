"""
경계 명령

boundary: 가중치 스케줄 전체를 풀고 경계점/볼록 껍질/해 분포 저장
bdmax: μ₁ = 0 동심원 해 저장
"""

import logging

import click

from ammac.repositories.result_repo import ResultRepository, ensure_out_dir
from ammac.utils.boundary_utils import boundary_hull, require_converged, trace_boundary
from ammac.utils.cli_utils import common_options, echo_json, handle_errors, run_config_from
from ammac.utils.optim_utils import solve_bd_max

logger = logging.getLogger(__name__)


@click.command("boundary")
@common_options
@handle_errors
def boundary(**kwargs) -> None:
    """
    용량 영역 경계 추적

    미수렴 점은 converged=false 행으로 남기고 계속 진행합니다.
    """
    run = run_config_from(kwargs)
    solutions = trace_boundary(run.params, run.weight_schedule, run.quad, run.optim)
    hull = boundary_hull(solutions, run.params)
    out_dir = ensure_out_dir(run.out_dir)
    ResultRepository.save_boundary(out_dir, run.params, solutions, hull)
    failed = [s.weights.mu1 for s in solutions if not s.converged]
    if failed:
        logger.warning(f"{len(failed)} boundary points did not converge: mu1={failed}")
    click.echo(str(out_dir / "boundary.csv"))


@click.command("bdmax")
@common_options
@handle_errors
def bdmax(**kwargs) -> None:
    """BD 최대 전송률 해를 bdmax.json으로 저장 (미수렴이면 저장 후 종료 코드 3)"""
    run = run_config_from(kwargs)
    solution = solve_bd_max(run.params, run.quad, run.optim)
    ResultRepository.save_solution(ensure_out_dir(run.out_dir) / "bdmax.json", run.params, solution)
    echo_json({"bd_max_bits": solution.rates.R2, "rings": [list(p) for p in solution.f_x2.points]})
    require_converged([solution])
