"""
결과 그림 생성

boundary_hull.csv, boundary.csv, baseline.csv, sweep_*.csv 를 읽어 정적 그림(PNG)을 만듭니다.

    python -m ammac.scripts.plot_results results figures
"""

import csv
import logging
from pathlib import Path
from typing import Dict, List

import click
import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

logger = logging.getLogger(__name__)


def read_columns(path: Path) -> Dict[str, List[float]]:
    """CSV → 열 이름별 실수 목록 (true/false는 1/0)"""
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    columns: Dict[str, List[float]] = {}
    for row in rows:
        for key, value in row.items():
            if value in ("true", "false"):
                number = 1.0 if value == "true" else 0.0
            else:
                number = float(value)
            columns.setdefault(key, []).append(number)
    return columns


def plot_region(csv_dir: Path, out_dir: Path) -> Path:
    """용량 영역 (볼록 껍질 + 원시 경계점 + 베이스라인 별표)"""
    hull = read_columns(csv_dir / "boundary_hull.csv")
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(hull["R1_bits"], hull["R2_bits"], "-", color="tab:blue", label="capacity region")

    raw_path = csv_dir / "boundary.csv"
    if raw_path.exists():
        raw = read_columns(raw_path)
        ax.plot(raw["R1_bits"], raw["R2_bits"], "o", color="tab:blue", markersize=3, label="boundary points")

    baseline_path = csv_dir / "baseline.csv"
    if baseline_path.exists():
        base = read_columns(baseline_path)
        ax.plot(base["r1_base"], base["r2_base"], "*", color="tab:red", markersize=8, label="baseline")

    ax.set_xlabel("R1 [bits/use]")
    ax.set_ylabel("R2 [bits/use]")
    ax.set_xlim(left=0.0)
    ax.set_ylim(bottom=0.0)
    ax.grid(True, alpha=0.3)
    ax.legend()
    path = out_dir / "region.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_rates_vs_snr(csv_dir: Path, out_dir: Path) -> Path:
    """SNR에 따른 베이스라인 전송률, 하한, 점근식, 합 전송률"""
    base = read_columns(csv_dir / "baseline.csv")
    snr = base["snr_db"]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(snr, base["c_sum"], "k-", label="C_sum")
    ax.plot(snr, base["r1_base"], "o-", label="R1 baseline")
    ax.plot(snr, base["r1_lower"], "--", label="R1 lower bound")
    ax.plot(snr, base["r2_base"], "s-", label="R2 baseline")
    ax.plot(snr, base["r2_asym"], ":", label="R2 asymptotic")
    ax.set_xlabel("SNR [dB]")
    ax.set_ylabel("rate [bits/use]")
    ax.grid(True, alpha=0.3)
    ax.legend()
    path = out_dir / "rates_vs_snr.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


SWEEP_LABELS = {"snr": ("snr_db", "SNR [dB]"), "a": ("a", "direct-link gain a")}


def plot_sweep(csv_dir: Path, out_dir: Path, axis: str) -> Path:
    """스윕 축에 따른 μ₁별 최적 합 전송률과 베이스라인 전송률"""
    column, label = SWEEP_LABELS[axis]
    data = read_columns(csv_dir / f"sweep_{axis}.csv")
    x = np.asarray(data[column])
    mu1 = np.asarray(data["mu1"])
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for value in np.unique(mu1):
        rows = mu1 == value
        ax.plot(x[rows], np.asarray(data["sum_bits"])[rows], "o-", label=f"optimized sum, mu1={value:g}")
    first = mu1 == mu1[0]
    r1 = np.asarray(data["r1_base"])[first]
    r2 = np.asarray(data["r2_base"])[first]
    ax.plot(x[first], r1 + r2, "k--", label="baseline sum")
    ax.plot(x[first], r1, "^:", label="R1 baseline")
    ax.plot(x[first], r2, "s:", label="R2 baseline")
    ax.set_xlabel(label)
    ax.set_ylabel("rate [bits/use]")
    ax.grid(True, alpha=0.3)
    ax.legend()
    path = out_dir / f"sum_rate_vs_{axis}.png"
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_results(csv_dir: Path, out_dir: Path) -> List[Path]:
    """
    있는 CSV에 대해서만 그림 생성

    Returns:
        생성한 그림 경로 목록
    """
    csv_dir, out_dir = Path(csv_dir), Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    made = []
    if (csv_dir / "boundary_hull.csv").exists():
        made.append(plot_region(csv_dir, out_dir))
    if (csv_dir / "baseline.csv").exists():
        made.append(plot_rates_vs_snr(csv_dir, out_dir))
    for axis in SWEEP_LABELS:
        if (csv_dir / f"sweep_{axis}.csv").exists():
            made.append(plot_sweep(csv_dir, out_dir, axis))
    if not made:
        logger.warning(f"no result CSVs found in {csv_dir}")
    return made


@click.command()
@click.argument("csv_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.argument("out_dir", type=click.Path(file_okay=False, path_type=Path))
def main(csv_dir: Path, out_dir: Path) -> None:
    for path in plot_results(csv_dir, out_dir):
        click.echo(str(path))


if __name__ == "__main__":
    main()
