"""
용량 영역 경계 추적

가중치 스케줄을 μ₁ = 0 (BD 최대)부터 순서대로 풀고, 이전 해를 다음 가중치의 초기값으로 씁니다.
μ₁ > μ₂ 구간은 해석적으로 (C₁, 0)으로 붕괴하므로 코너점 하나만 덧붙입니다.
"""

import logging
from typing import Iterable, List, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ammac.core.exceptions import NotConverged
from ammac.models.channel_model import ChannelParams, Weights
from ammac.models.config_model import OptimConfig, QuadConfig
from ammac.models.report_model import BoundarySolution, SweepPoint
from ammac.utils.baseline_utils import c1, c_sum, r1_base, r2_base
from ammac.utils.optim_utils import collapsed_solution, solve_weighted

logger = logging.getLogger(__name__)


def trace_boundary(
    params: ChannelParams, schedule: List[float], cfg: QuadConfig, ocfg: OptimConfig
) -> List[BoundarySolution]:
    """
    가중치 스케줄 전체의 경계점 계산

    Args:
        params: 채널 파라미터
        schedule: 정렬된 μ₁ 값 (0 ≤ μ₁ ≤ 0.5)
        cfg: 구적 설정
        ocfg: 최적화 설정

    Returns:
        스케줄 순서의 BoundarySolution 목록 + 마지막에 (C₁, 0) 코너 해
    """
    solutions = []
    warm = None
    for mu1 in schedule:
        weights = Weights.from_mu1(mu1)
        solution = solve_weighted(params, weights, cfg, ocfg, warm_start=warm)
        solutions.append(solution)
        warm = (solution.f_r, solution.f_x2)
        logger.info(
            f"mu1={mu1:.4f}: R1={solution.rates.R1:.6f} R2={solution.rates.R2:.6f} bits "
            f"(converged={solution.converged})"
        )
    solutions.append(collapsed_solution(params, Weights.from_mu1(1.0), cfg, ocfg))
    return solutions


def upper_right_hull(points: np.ndarray, r2_max: float, corner_r1: float) -> np.ndarray:
    """
    달성점들의 볼록 껍질 중 오른쪽 위 경계

    원점, (0, R2max), (C₁, 0)을 더한 뒤 껍질의 반시계 꼭짓점을 원점에서 시작하도록 돌리고
    원점을 뺀 나머지를 뒤집어 R1 비감소 순서로 반환합니다.
    """
    anchors = np.array([[0.0, 0.0], [0.0, r2_max], [corner_r1, 0.0]])
    cloud = np.vstack([anchors, np.asarray(points, dtype=float).reshape(-1, 2)])
    try:
        hull = ConvexHull(cloud)
    except QhullError:
        logger.warning("degenerate rate cloud; returning anchors only")
        return anchors[[1, 2]]
    vertices = cloud[hull.vertices]  # 2-D에서는 반시계 순서
    start = int(np.argmin(np.hypot(vertices[:, 0], vertices[:, 1])))
    ordered = np.roll(vertices, -start, axis=0)[1:]
    return ordered[::-1]


def boundary_hull(solutions: List[BoundarySolution], params: ChannelParams) -> np.ndarray:
    """경계 해 목록의 오른쪽 위 볼록 껍질 [bits]"""
    rates = np.array([[s.rates.R1, s.rates.R2] for s in solutions])
    r2_max = float(rates[:, 1].max()) if rates.size else 0.0
    return upper_right_hull(rates, r2_max, c1(params))


def require_converged(solutions: List[BoundarySolution]) -> None:
    """
    미수렴 해가 있으면 NotConverged

    Raises:
        NotConverged: 첫 번째 미수렴 해를 solution으로 전달
    """
    for solution in solutions:
        if not solution.converged:
            res_r = "n/a" if solution.kkt_residual_r is None else f"{solution.kkt_residual_r:.2e}"
            raise NotConverged(
                f"mu1={solution.weights.mu1:.4f} did not converge "
                f"(kkt residuals r={res_r}, x2={solution.kkt_residual_x2:.2e})",
                solution=solution,
            )


def corner_points(params: ChannelParams, bd_max_bits: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """(C₁, 0)과 (0, BD 최대 전송률) [bits]"""
    return (c1(params), 0.0), (0.0, bd_max_bits)


def inside_hull(points, hull: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """
    각 전송률 쌍이 오른쪽 위 껍질 안(경계 포함)에 있는지

    Args:
        points: (R1, R2) 쌍들 [bits]
        hull: upper_right_hull 결과 (R1 비감소)
        tol: 허용 오차 [bits]

    Returns:
        점별 bool 배열
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    hull = np.asarray(hull, dtype=float)
    ceiling = np.interp(points[:, 0], hull[:, 0], hull[:, 1], left=hull[0, 1], right=hull[-1, 1])
    within_r1 = points[:, 0] <= hull[-1, 0] + tol
    return within_r1 & (points[:, 1] <= ceiling + tol) & np.all(points >= -tol, axis=1)


def sweep_sum_rates(
    points: Iterable[Tuple[float, ChannelParams]], mu1_values: List[float], cfg: QuadConfig, ocfg: OptimConfig
) -> List[SweepPoint]:
    """
    채널 파라미터 격자를 따라 최적 가중 합 전송률과 베이스라인 비교

    μ₁별로 이전 격자점의 해를 초기값으로 씁니다.

    Args:
        points: (축 값, 채널 파라미터) 쌍
        mu1_values: 풀 μ₁ 값들
        cfg: 구적 설정
        ocfg: 최적화 설정

    Returns:
        격자점 × μ₁ 순서의 SweepPoint 목록
    """
    rows = []
    warm = {mu1: None for mu1 in mu1_values}
    for value, params in points:
        base1, base2 = r1_base(params, cfg), r2_base(params, cfg)
        for mu1 in mu1_values:
            solution = solve_weighted(params, Weights.from_mu1(mu1), cfg, ocfg, warm_start=warm[mu1])
            warm[mu1] = (solution.f_r, solution.f_x2)
            rows.append(
                SweepPoint(
                    value=value,
                    mu1=mu1,
                    R1_bits=solution.rates.R1,
                    R2_bits=solution.rates.R2,
                    sum_bits=solution.rates.R1 + solution.rates.R2,
                    r1_base=base1,
                    r2_base=base2,
                    c_sum=c_sum(params),
                    converged=solution.converged,
                )
            )
            logger.info(f"sweep {value:g}, mu1={mu1:.3f}: sum {rows[-1].sum_bits:.6f} bits (base {base1 + base2:.6f})")
    return rows
