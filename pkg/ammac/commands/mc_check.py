"""
몬테카를로 교차 검증 명령

구적 값과 MC 추정값의 z-점수를 mc_check.json으로 저장합니다 (플래그만, 실패 종료 없음).
"""

import logging

import click

from ammac.repositories.result_repo import ResultRepository, ensure_out_dir
from ammac.utils.baseline_utils import baseline_mutual_infos
from ammac.utils.cli_utils import common_options, echo_json, handle_errors, run_config_from
from ammac.utils.entropy_utils import evaluate_infos
from ammac.utils.mc_utils import compare, mc_baseline, mc_mutual_infos, noise_model, random_model

logger = logging.getLogger(__name__)


@click.command("mc-check")
@click.option("--model", "mc_model", type=click.Choice(["random", "noise"]), default=None,
              help="검증 모델 (기본: 설정의 mc_model)")
@common_options
@handle_errors
def mc_check(mc_model: str, **kwargs) -> None:
    """구적 대 몬테카를로 비교"""
    run = run_config_from(kwargs)
    params, cfg = run.params, run.quad
    model = mc_model or run.mc_model
    if model == "noise":
        f_r, f_x2 = noise_model()
    else:
        f_r, f_x2 = random_model(params, run.mc_points, cfg.mc_seed)

    quad = evaluate_infos(f_r, f_x2, params, cfg)
    estimates = mc_mutual_infos(f_r, f_x2, params, cfg)
    entries = {name: compare(quad[name], estimate) for name, estimate in estimates.items()}
    if model == "random":
        base_quad = dict(zip(("I_X1_Y", "I_X2_Y_given_X1"), baseline_mutual_infos(params, cfg)))
        for name, estimate in mc_baseline(params, cfg).items():
            entries[f"baseline_{name}"] = compare(base_quad[name], estimate)

    flagged = [name for name, entry in entries.items() if entry.flagged]
    if flagged:
        logger.warning(f"quadrature and monte carlo disagree (|z| > 3): {', '.join(flagged)}")
    result = {name: entry.model_dump() for name, entry in entries.items()}
    ResultRepository.write_json(ensure_out_dir(run.out_dir) / "mc_check.json", result)
    logger.info(f"mc check ({model}) with {cfg.mc_samples} samples, seed {cfg.mc_seed}")
    echo_json(result)
