"""
결과 저장소 (Repository)

CSV/JSON 파일 입출력 추상화. 모든 실수는 유효숫자 10자리로 반올림하고,
임시 파일에 쓴 뒤 rename 하므로 실패 시 부분 파일이 남지 않습니다.
"""

import csv
import io
import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from ammac.core.exceptions import ConfigError, InputError
from ammac.models.channel_model import ChannelParams
from ammac.models.distribution_model import ConcentricCircles, PointMasses, RadialPmf, validate
from ammac.models.report_model import BaselineReport, BoundarySolution, KktReport, SweepPoint

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 10
LOAD_SLACK = 1e-8  # 반올림으로 생긴 확률 합, 전력, 첨두 오차의 허용치

BOUNDARY_HEADER = (
    "mu1", "R1_bits", "R2_bits", "n_points_r", "n_points_x2", "kkt_res_r", "kkt_res_x2", "lambda", "converged",
)
HULL_HEADER = ("R1_bits", "R2_bits")
BASELINE_HEADER = ("snr_db", "r1_base", "r1_lower", "r2_base", "r2_asym", "c_sum")
SWEEP_COLUMNS = ("mu1", "R1_bits", "R2_bits", "sum_bits", "r1_base", "r2_base", "c_sum", "converged")
SWEEP_AXES = {"snr": "snr_db", "a": "a"}


def round_sig(value: float) -> float:
    """유효숫자 10자리 반올림 (inf/nan은 그대로)"""
    if not math.isfinite(value) or value == 0.0:
        return value
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def round_nested(data: Any) -> Any:
    """dict/list 안의 모든 float 반올림"""
    if isinstance(data, bool):
        return data
    if isinstance(data, float):
        return round_sig(data)
    if isinstance(data, dict):
        return {k: round_nested(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [round_nested(v) for v in data]
    return data


def _undo_rounding(solution: BoundarySolution, params: ChannelParams) -> BoundarySolution:
    """반올림 오차 범위 안의 합, 전력, 첨두 이탈만 복원 (그 밖의 위반은 validate가 잡음)"""
    f_r, f_x2 = solution.f_r, solution.f_x2
    radii, probs = f_r.radii, f_r.probs
    if abs(probs.sum() - 1.0) <= LOAD_SLACK:
        probs = probs / probs.sum()
    power = float(np.dot(probs, radii**2))
    if params.P < power <= params.P * (1.0 + LOAD_SLACK):
        radii = radii * math.sqrt(params.P / power)
    f_r = RadialPmf.from_arrays(radii, probs)

    bd_probs = f_x2.probs
    if abs(bd_probs.sum() - 1.0) <= LOAD_SLACK:
        bd_probs = bd_probs / bd_probs.sum()
    if isinstance(f_x2, PointMasses):
        loc = f_x2.locations
        mag = np.abs(loc)
        loc = np.where((mag > 1.0) & (mag <= 1.0 + LOAD_SLACK), loc / np.maximum(mag, 1.0), loc)
        f_x2 = PointMasses.from_arrays(loc, bd_probs)
    else:
        rings = f_x2.radii
        rings = np.where((rings > 1.0) & (rings <= 1.0 + LOAD_SLACK), 1.0, rings)
        f_x2 = ConcentricCircles.from_arrays(rings, bd_probs)
    return solution.model_copy(update={"f_r": f_r, "f_x2": f_x2})


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    return str(value)


class ResultRepository:
    """결과 파일 저장소"""

    @staticmethod
    def write_text(path: Path, text: str) -> Path:
        """
        원자적 텍스트 쓰기

        Args:
            path: 대상 경로 (상위 디렉터리는 자동 생성)
            text: 내용

        Returns:
            쓴 경로
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.debug(f"wrote {path}")
        return path

    @staticmethod
    def write_json(path: Path, data: Any) -> Path:
        return ResultRepository.write_text(path, json.dumps(round_nested(data), indent=2, ensure_ascii=False) + "\n")

    @staticmethod
    def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        return ResultRepository.write_text(path, buffer.getvalue())

    @staticmethod
    def solution_payload(params: ChannelParams, solution: BoundarySolution) -> Dict[str, Any]:
        """{"params", "solution"} 형태의 자기완결 해 파일 내용"""
        return {"params": params.model_dump(), "solution": solution.model_dump(mode="json", by_alias=True)}

    @staticmethod
    def save_solution(path: Path, params: ChannelParams, solution: BoundarySolution) -> Path:
        return ResultRepository.write_json(path, ResultRepository.solution_payload(params, solution))

    @staticmethod
    def load_solution(path: Path) -> Tuple[ChannelParams, BoundarySolution]:
        """
        해 파일 읽기 및 검증

        Returns:
            (채널 파라미터, 해)

        Raises:
            InputError: JSON 형식 오류 또는 구조 누락
            ConstraintViolation: 분포 불변식 위반 (확률 합, 전력, 첨두)
        """
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"cannot read solution file {path}: {e}") from e
        if not isinstance(data, dict) or "params" not in data or "solution" not in data:
            raise InputError(f"{path} is not a solution file (needs 'params' and 'solution')")
        try:
            params = ChannelParams(**data["params"])
            solution = BoundarySolution.model_validate(data["solution"])
        except ValidationError as e:
            raise InputError(f"malformed solution file {path}: {e}") from e
        solution = _undo_rounding(solution, params)
        validate(params, solution.f_r, solution.f_x2)
        return params, solution

    @staticmethod
    def save_boundary(
        out_dir: Path, params: ChannelParams, solutions: List[BoundarySolution], hull
    ) -> List[Path]:
        """
        boundary.csv, boundary_hull.csv, solutions/mu1_*.json 저장

        Returns:
            쓴 파일 경로 목록
        """
        out_dir = Path(out_dir)
        rows = [
            (
                s.weights.mu1,
                s.rates.R1,
                s.rates.R2,
                len(s.f_r.points),
                len(s.f_x2.points),
                s.kkt_residual_r,
                s.kkt_residual_x2,
                s.lam,
                s.converged,
            )
            for s in solutions
        ]
        paths = [
            ResultRepository.write_csv(out_dir / "boundary.csv", BOUNDARY_HEADER, rows),
            ResultRepository.write_csv(out_dir / "boundary_hull.csv", HULL_HEADER, [tuple(p) for p in hull]),
        ]
        for s in solutions:
            name = f"mu1_{s.weights.mu1:.4f}.json"
            paths.append(ResultRepository.save_solution(out_dir / "solutions" / name, params, s))
        return paths

    @staticmethod
    def save_baseline(out_dir: Path, reports: List[BaselineReport]) -> Path:
        rows = [(r.snr_db, r.r1_base, r.r1_lower, r.r2_base, r.r2_asym, r.c_sum) for r in reports]
        return ResultRepository.write_csv(Path(out_dir) / "baseline.csv", BASELINE_HEADER, rows)

    @staticmethod
    def save_sweep(out_dir: Path, axis: str, rows: List[SweepPoint]) -> Path:
        """sweep_<axis>.csv 저장 (첫 열은 스윕 축: snr_db 또는 a)"""
        header = (SWEEP_AXES[axis], *SWEEP_COLUMNS)
        table = [(r.value, *(getattr(r, name) for name in SWEEP_COLUMNS)) for r in rows]
        return ResultRepository.write_csv(Path(out_dir) / f"sweep_{axis}.csv", header, table)

    @staticmethod
    def save_kkt(out_dir: Path, reports: Dict[str, KktReport], grids: Dict[str, Tuple[Sequence[str], list]]) -> List[Path]:
        """
        kkt_report.json과 격자 CSV 저장

        Args:
            out_dir: 출력 디렉터리
            reports: 종류("r", "x2", "rings") → KktReport
            grids: 종류 → (헤더, 행 목록)
        """
        out_dir = Path(out_dir)
        paths = [ResultRepository.write_json(out_dir / "kkt_report.json", {k: v.model_dump() for k, v in reports.items()})]
        for kind, (header, rows) in grids.items():
            paths.append(ResultRepository.write_csv(out_dir / f"kkt_{kind}_grid.csv", header, rows))
        return paths


def ensure_out_dir(path: Path) -> Path:
    """
    출력 디렉터리 생성

    Raises:
        ConfigError: 같은 이름의 파일이 존재
    """
    path = Path(path)
    if path.exists() and not path.is_dir():
        raise ConfigError(f"output path is not a directory: {path}")
    path.mkdir(parents=True, exist_ok=True)
    return path
