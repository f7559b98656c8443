"""
가중 합 전송률 최적화

μ₁ < μ₂ (μ₁ = μ₂ 포함) 구간에서 PT 진폭 분포와 BD 질량점 분포를 번갈아 갱신합니다.
블록마다 자체 스텝 크기를 두고 목적함수가 줄지 않을 때만 갱신을 받아들입니다.

- 확률: 심플렉스 유클리드 사영 (확률이 0이 된 점은 병합/제거 단계에서 사라짐)
- 전력: 이분법으로 구한 λ로 E[r²] ≤ P를 맞춘 뒤 E[r²] = P가 되도록 진폭을 스케일
- 첨두: |x₂| > 1인 점을 단위원으로 방사 사영
- 정체 시와 scan_every 반복마다 KKT 격자 검사, 위반 최대점에 새 질량점 삽입
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from ammac.models.channel_model import LN2, ChannelParams, RatePair, Weights
from ammac.models.config_model import OptimConfig, QuadConfig
from ammac.models.distribution_model import (
    ConcentricCircles,
    PointMasses,
    RadialPmf,
    merge_atoms,
    rayleigh_quantization,
    rings_to_points,
)
from ammac.models.report_model import BoundarySolution
from ammac.utils.baseline_utils import c1
from ammac.utils.entropy_utils import (
    conditional_entropy,
    evaluate_infos,
    h_Y_given_X1_value,
    h_Y_value,
    omega1,
    omega2,
)
from ammac.utils.kkt_utils import (
    fit_scan_r,
    ring_functional,
    scale_hint_for,
    scan_r_collapsed,
    scan_rings,
    scan_x2,
)

logger = logging.getLogger(__name__)

LINE_SEARCH_TRIES = 8
STEP_GROW = 1.5
STEP_SHRINK = 0.5
MAX_STEP = 50.0
INSERT_GAP = 10.0  # 기존 지지점과 merge_tol의 이 배수 이내면 삽입하지 않음


def project_simplex(v: np.ndarray) -> np.ndarray:
    """확률 심플렉스로의 유클리드 사영 (정렬 기반)"""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, v.size + 1)
    rho = ind[u - css / ind > 0][-1]
    theta = css[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def project_disk(x: np.ndarray) -> np.ndarray:
    """닫힌 단위 원판으로의 방사 사영"""
    x = np.asarray(x, dtype=complex)
    mag = np.abs(x)
    return np.where(mag > 1.0, x / np.maximum(mag, 1.0), x)


def rescale_power(radii: np.ndarray, probs: np.ndarray, P: float) -> np.ndarray:
    """E[r²] = P가 되도록 진폭 스케일"""
    power = float(np.dot(probs, radii**2))
    if power <= 0.0:
        return np.full_like(radii, math.sqrt(P))
    return radii * math.sqrt(P / power)


@dataclass(frozen=True)
class PointState:
    """최적화 변수 (PT 진폭 분포 + BD 질량점 분포)"""

    radii: np.ndarray
    probs: np.ndarray
    locations: np.ndarray
    bd_probs: np.ndarray

    @classmethod
    def from_models(cls, f_r: RadialPmf, f_x2: PointMasses) -> "PointState":
        return cls(radii=f_r.radii, probs=f_r.probs, locations=f_x2.locations, bd_probs=f_x2.probs)

    @property
    def f_r(self) -> RadialPmf:
        keep = self.probs > 0.0
        return RadialPmf.from_arrays(self.radii[keep], self.probs[keep])

    @property
    def f_x2(self) -> PointMasses:
        keep = self.bd_probs > 0.0
        return PointMasses.from_arrays(self.locations[keep], self.bd_probs[keep])

    def merged(self, merge_tol: float, P: float) -> "PointState":
        radii, probs = merge_atoms(self.radii, self.probs, merge_tol)
        locations, bd_probs = merge_atoms(self.locations, self.bd_probs, merge_tol)
        return PointState(rescale_power(radii, probs, P), probs, project_disk(locations), bd_probs)


def initial_points(params: ChannelParams, ocfg: OptimConfig) -> PointState:
    """Rayleigh 양자화 진폭 + 단위원 등간격 점과 sign(a)"""
    f_r = rayleigh_quantization(params.P, ocfg.init_points_r)
    n = ocfg.init_points_x2
    circle = np.exp(2j * math.pi * (np.arange(n) + 0.5) / n)
    locations, bd_probs = merge_atoms(np.append(circle, params.bd_sign + 0j), np.full(n + 1, 1.0 / (n + 1)))
    return PointState(f_r.radii, f_r.probs, locations, bd_probs)


def jitter_points(state: PointState, rng: np.random.Generator, amount: float, params: ChannelParams) -> PointState:
    """재시작용 위치 섭동 (상대 크기 amount)"""
    radii = state.radii * (1.0 + amount * rng.uniform(-1.0, 1.0, state.radii.size))
    radii = np.maximum(radii, 0.0)
    twist = np.exp(1j * math.pi * amount * rng.uniform(-1.0, 1.0, state.locations.size))
    scale = 1.0 + amount * rng.uniform(-1.0, 1.0, state.locations.size)
    locations = project_disk(state.locations * scale * twist)
    return PointState(rescale_power(radii, state.probs, params.P), state.probs, locations, state.bd_probs)


class _LineSearch:
    """블록별 스텝 크기를 기억하는 증가 전용 선탐색"""

    def __init__(self, step_init: float, blocks):
        self.steps = {name: step_init for name in blocks}
        self.failures = 0

    def run(self, block: str, make: Callable[[float], object], value: Callable[[object], float], current, f_old: float):
        for _ in range(LINE_SEARCH_TRIES):
            eta = self.steps[block]
            candidate = make(eta)
            f_new = value(candidate)
            if f_new >= f_old:
                self.steps[block] = min(eta * STEP_GROW, MAX_STEP)
                return candidate, f_new
            self.steps[block] = eta * STEP_SHRINK
        self.failures += 1
        logger.debug(f"line search on block {block} found no ascent")
        return current, f_old


class PointSolver:
    """질량점 BD 분포에 대한 블록 상승법"""

    def __init__(self, params: ChannelParams, weights: Weights, cfg: QuadConfig, ocfg: OptimConfig):
        self.params = params
        self.weights = weights
        self.cfg = cfg
        self.ocfg = ocfg
        self.hint = scale_hint_for(params, ocfg)
        self.noise = params.noise_entropy()
        self.evaluations = 0

    def value(self, state: PointState) -> float:
        """μ₁h(Y) + (μ₂−μ₁)h(Y|X₁) − μ₂ln(πeσ²) [nats]"""
        self.evaluations += 1
        mu1, mu2 = self.weights.mu1, self.weights.mu2
        f_r, f_x2 = state.f_r, state.f_x2
        total = mu1 * h_Y_value(f_r, f_x2, self.params, self.cfg, self.hint) - mu2 * self.noise
        if mu2 != mu1:
            total += (mu2 - mu1) * h_Y_given_X1_value(f_r, f_x2, self.params, self.cfg)
        return total

    def radial_marginals(self, state: PointState) -> Tuple[np.ndarray, np.ndarray]:
        """지지점에서의 G(r) = μ₁ω₁(r) + (μ₂−μ₁)H(r) 과 그 기울기 (주변 밀도 고정)"""
        mu1, mu2 = self.weights.mu1, self.weights.mu2
        r = state.radii
        delta = self.ocfg.fd_step
        lower = np.maximum(r - delta, 0.0)
        stencil = np.concatenate([r, r + delta, lower])
        f_r, f_x2 = state.f_r, state.f_x2
        g = mu1 * omega1(stencil, f_r, f_x2, self.params, self.cfg, self.hint)
        if mu2 != mu1:
            g = g + (mu2 - mu1) * np.array([conditional_entropy(v, f_x2, self.params, self.cfg) for v in stencil])
        g0, g_up, g_down = np.split(g, 3)
        return g0, (g_up - g_down) / (r + delta - lower)

    def power_multiplier(self, state: PointState, slope: np.ndarray) -> float:
        """정류 조건 G'(r_k) = 2λr_k 의 확률 가중 최소제곱 λ (0 이상)"""
        moment = float(np.dot(state.probs, state.radii**2))
        if moment <= 0.0:
            return 0.0
        return max(0.0, float(np.dot(state.probs, state.radii * slope)) / (2.0 * moment))

    def _p_candidate(self, state: PointState, g0: np.ndarray, eta: float) -> PointState:
        r2 = state.radii**2
        P = self.params.P

        def probs_at(lam: float) -> np.ndarray:
            return project_simplex(state.probs + eta * (g0 - lam * r2))

        probs = probs_at(0.0)
        if np.dot(probs, r2) > P:
            lo, hi = 0.0, 1.0
            while np.dot(probs_at(hi), r2) > P and hi < 1e12:
                hi *= 2.0
            for _ in range(self.ocfg.bisection_iters):
                mid = 0.5 * (lo + hi)
                if np.dot(probs_at(mid), r2) > P:
                    lo = mid
                else:
                    hi = mid
            probs = probs_at(hi)
        return replace(state, probs=probs, radii=rescale_power(state.radii, probs, P))

    def _r_candidate(self, state: PointState, slope: np.ndarray, lam: float, eta: float) -> PointState:
        radii = np.maximum(state.radii + eta * (slope - 2.0 * lam * state.radii), 0.0)
        return replace(state, radii=rescale_power(radii, state.probs, self.params.P))

    def _bd_gradient(self, state: PointState) -> np.ndarray:
        x = state.locations
        delta = self.ocfg.fd_step
        stencil = np.concatenate([x + delta, x - delta, x + 1j * delta, x - 1j * delta])
        values = omega2(stencil, state.f_r, state.f_x2, self.weights, self.params, self.cfg, self.hint, peak_check=False)
        re_up, re_down, im_up, im_down = np.split(values, 4)
        return (re_up - re_down) / (2.0 * delta) + 1j * (im_up - im_down) / (2.0 * delta)

    def iterate(self, state: PointState, f_old: float, search: _LineSearch) -> Tuple[PointState, float, float]:
        """p → r → q → x 블록을 한 번씩 갱신"""
        g0, _ = self.radial_marginals(state)
        state, value = search.run("p", lambda eta: self._p_candidate(state, g0, eta), self.value, state, f_old)

        _, slope = self.radial_marginals(state)
        lam = self.power_multiplier(state, slope)
        current = state
        state, value = search.run(
            "r", lambda eta: self._r_candidate(current, slope, lam, eta), self.value, state, value
        )

        g_q = omega2(state.locations, state.f_r, state.f_x2, self.weights, self.params, self.cfg, self.hint)
        current = state
        state, value = search.run(
            "q", lambda eta: replace(current, bd_probs=project_simplex(current.bd_probs + eta * g_q)),
            self.value, state, value,
        )

        grad = self._bd_gradient(state)
        current = state
        state, value = search.run(
            "x", lambda eta: replace(current, locations=project_disk(current.locations + eta * grad)),
            self.value, state, value,
        )
        return state, value, lam

    def scan(self, state: PointState, lam: float):
        """KKT 격자 검사 (λ는 격자 최대 위반이 최소가 되도록 다시 맞춤)"""
        report_r, grid_r, values_r, lam = fit_scan_r(
            state.f_r, state.f_x2, self.weights, self.params, self.cfg, self.ocfg, self.hint, fallback=lam
        )
        report_x, grid_x, values_x = scan_x2(
            state.f_r, state.f_x2, self.weights, self.params, self.cfg, self.ocfg, self.hint
        )
        return (report_r, grid_r, values_r), (report_x, grid_x, values_x), lam

    def insert(self, state: PointState, scan_r_result, scan_x_result) -> Optional[PointState]:
        """위반 최대점에 확률 insert_prob의 새 질량점 삽입 (불가능하면 None)"""
        ocfg = self.ocfg
        eps = ocfg.insert_prob
        gap = INSERT_GAP * ocfg.merge_tol
        inserted = False
        report_r, grid_r, values_r = scan_r_result
        if report_r.max_violation > ocfg.kkt_tol and state.radii.size < ocfg.max_points_r:
            where = float(grid_r[int(np.argmax(values_r))])
            if np.min(np.abs(state.radii - where)) > gap:
                probs = np.append(state.probs * (1.0 - eps), eps)
                radii = rescale_power(np.append(state.radii, where), probs, self.params.P)
                state = replace(state, radii=radii, probs=probs)
                inserted = True
        report_x, grid_x, values_x = scan_x_result
        if report_x.max_violation > ocfg.kkt_tol and state.locations.size < ocfg.max_points_x2:
            where = complex(grid_x[int(np.argmax(values_x))])
            if np.min(np.abs(state.locations - where)) > gap:
                state = replace(
                    state,
                    locations=np.append(state.locations, where),
                    bd_probs=np.append(state.bd_probs * (1.0 - eps), eps),
                )
                inserted = True
        return state if inserted else None

    def run(self, start: PointState) -> Tuple[PointState, float, float, Dict, object, object]:
        """
        블록 상승 + 지지점 성장

        정체(|ΔF| < convergence_tol) 시점과 scan_every 반복마다 KKT 격자를 검사하고,
        잔차가 kkt_tol을 넘으면 위반 최대점에 질량점을 삽입합니다.
        정체 상태에서 더 삽입할 수 없으면 종료합니다.
        """
        ocfg = self.ocfg
        search = _LineSearch(ocfg.step_init, ("p", "r", "q", "x"))
        state = start.merged(ocfg.merge_tol, self.params.P)
        value = self.value(state)
        lam = 0.0
        scanned = None
        insertions = 0
        iteration = 0
        for iteration in range(1, ocfg.max_iters + 1):
            previous = value
            state, value, lam = self.iterate(state, value, search)
            merged = state.merged(ocfg.merge_tol, self.params.P)
            if merged.radii.size != state.radii.size or merged.locations.size != state.locations.size:
                state, value = merged, self.value(merged)
            else:
                state = merged
            logger.debug(f"iter {iteration}: objective {value:.10f} nats, K={state.radii.size}, M={state.locations.size}")
            scanned = None
            stalled = abs(value - previous) < ocfg.convergence_tol
            if not stalled and iteration % ocfg.scan_every:
                continue
            report_r_result, report_x_result, lam = self.scan(state, lam)
            scanned = (report_r_result, report_x_result)
            res_r, res_x = report_r_result[0].max_violation, report_x_result[0].max_violation
            logger.info(f"iter {iteration}: objective {value:.8f} nats, kkt residuals r={res_r:.2e} x2={res_x:.2e}")
            if res_r <= ocfg.kkt_tol and res_x <= ocfg.kkt_tol:
                break
            grown = self.insert(state, report_r_result, report_x_result)
            if grown is None:
                if stalled:
                    break
                continue
            state = grown.merged(ocfg.merge_tol, self.params.P)
            value = self.value(state)
            insertions += 1
            scanned = None
        if scanned is None:
            _, slope = self.radial_marginals(state)
            report_r_result, report_x_result, lam = self.scan(state, self.power_multiplier(state, slope))
            scanned = (report_r_result, report_x_result)
        diagnostics = {
            "iterations": iteration,
            "insertions": insertions,
            "evaluations": self.evaluations,
            "line_search_failures": search.failures,
        }
        return state, value, lam, diagnostics, scanned[0][0], scanned[1][0]


def collapsed_solution(params: ChannelParams, weights: Weights, cfg: QuadConfig, ocfg: OptimConfig) -> BoundarySolution:
    """
    μ₁ > μ₂: 합 전송률 최적 신호로의 붕괴 (C₁, 0)

    BD는 x₂ = sign(a) 반사기, PT 진폭은 Rayleigh 양자화로 표현합니다.
    r 잔차는 가우시안 X₁의 닫힌 형태 L(r), x₂ 잔차는 ω₂ 원판 격자 검사로 구합니다.
    """
    gain = (abs(params.a) + 1.0) ** 2
    capacity = c1(params) * LN2
    f_r = rayleigh_quantization(params.P, ocfg.init_points_r)
    f_x2 = PointMasses(points=((params.bd_sign, 0.0, 1.0),))
    lam = weights.mu1 * gain / (params.sigma2 + gain * params.P)
    report_r, _, _ = scan_r_collapsed(f_r, weights, lam, params, ocfg)
    report_x, _, _ = scan_x2(f_r, f_x2, weights, params, cfg, ocfg)
    converged = report_r.max_violation <= ocfg.kkt_tol and report_x.max_violation <= ocfg.kkt_tol
    if not converged:
        logger.warning(
            f"mu1={weights.mu1:.4f} collapsed solution fails its conditions: "
            f"r={report_r.max_violation:.2e} x2={report_x.max_violation:.2e}"
        )
    return BoundarySolution(
        weights=weights,
        f_r=f_r,
        f_x2=f_x2,
        rates=RatePair(R1=c1(params), R2=0.0),
        objective_nats=weights.mu1 * capacity,
        lam=lam,
        kkt_residual_r=report_r.max_violation,
        kkt_residual_x2=report_x.max_violation,
        converged=converged,
        diagnostics={"iterations": 0, "restarts": 0, "mode": "collapsed", "r_condition": "gaussian"},
    )


def _as_points(f_x2) -> PointMasses:
    return rings_to_points(f_x2) if isinstance(f_x2, ConcentricCircles) else f_x2


def solve_weighted(
    params: ChannelParams,
    weights: Weights,
    cfg: QuadConfig,
    ocfg: OptimConfig,
    warm_start: Optional[Tuple[RadialPmf, object]] = None,
) -> BoundarySolution:
    """
    가중 합 전송률 최대화 (P3)

    Args:
        params: 채널 파라미터
        weights: 가중치 (μ₁ > μ₂면 해석적 붕괴 해, μ₁ = 0이면 solve_bd_max)
        cfg: 구적 설정
        ocfg: 최적화 설정
        warm_start: 이웃 가중치의 (f_r, f_x2) (동심원은 점으로 이산화)

    Returns:
        restarts번 실행 중 목적함수가 가장 큰 BoundarySolution
        (KKT 잔차가 kkt_tol을 넘으면 converged=False)
    """
    if weights.mu1 > weights.mu2:
        return collapsed_solution(params, weights, cfg, ocfg)
    if weights.mu1 == 0.0:
        return solve_bd_max(params, cfg, ocfg)

    if warm_start is None:
        initial = initial_points(params, ocfg)
    else:
        initial = PointState.from_models(warm_start[0], _as_points(warm_start[1]))
    rng = np.random.default_rng(ocfg.seed)
    best = None
    for restart in range(ocfg.restarts):
        start = initial if restart == 0 else jitter_points(initial, rng, ocfg.jitter, params)
        solver = PointSolver(params, weights, cfg, ocfg)
        state, value, lam, diagnostics, report_r, report_x = solver.run(start)
        logger.info(f"mu1={weights.mu1:.4f} restart {restart}: objective {value:.8f} nats")
        if best is None or value > best[1]:
            best = (state, value, lam, dict(diagnostics, restart=restart), report_r, report_x)

    state, value, lam, diagnostics, report_r, report_x = best
    infos = evaluate_infos(state.f_r, state.f_x2, params, cfg, scale_hint_for(params, ocfg))
    converged = report_r.max_violation <= ocfg.kkt_tol and report_x.max_violation <= ocfg.kkt_tol
    if not converged:
        logger.warning(
            f"mu1={weights.mu1:.4f} not converged: kkt residuals r={report_r.max_violation:.2e} "
            f"x2={report_x.max_violation:.2e}"
        )
    diagnostics["restarts"] = ocfg.restarts
    return BoundarySolution(
        weights=weights,
        f_r=state.f_r,
        f_x2=state.f_x2,
        rates=RatePair.from_nats(infos["I_X1_Y"], infos["I_X2_Y_given_X1"]),
        objective_nats=value,
        lam=lam,
        kkt_residual_r=report_r.max_violation,
        kkt_residual_x2=report_x.max_violation,
        converged=converged,
        diagnostics=diagnostics,
    )


class RingSolver:
    """|X₁|² = P에서 동심원 BD 분포에 대한 블록 상승법"""

    def __init__(self, params: ChannelParams, cfg: QuadConfig, ocfg: OptimConfig):
        self.params = params
        self.cfg = cfg
        self.ocfg = ocfg
        self.amplitude = math.sqrt(params.P)
        self.noise = params.noise_entropy()

    def value(self, f_x2: ConcentricCircles) -> float:
        keep = f_x2.probs > 0.0
        if not keep.all():
            f_x2 = ConcentricCircles.from_arrays(f_x2.radii[keep], f_x2.probs[keep])
        return conditional_entropy(self.amplitude, f_x2, self.params, self.cfg) - self.noise

    def _slope(self, f_x2: ConcentricCircles) -> np.ndarray:
        rho = f_x2.radii
        delta = self.ocfg.fd_step
        up, down = np.minimum(rho + delta, 1.0), np.maximum(rho - delta, 0.0)
        values = ring_functional(np.concatenate([up, down]), f_x2, self.params, self.cfg)
        v_up, v_down = np.split(values, 2)
        return (v_up - v_down) / (up - down)

    def _merged(self, f_x2: ConcentricCircles) -> ConcentricCircles:
        radii, probs = merge_atoms(f_x2.radii, f_x2.probs, self.ocfg.merge_tol)
        return ConcentricCircles.from_arrays(np.clip(radii, 0.0, 1.0), probs)

    def run(self, start: ConcentricCircles):
        ocfg = self.ocfg
        search = _LineSearch(ocfg.step_init, ("q", "rho"))
        f_x2 = self._merged(start)
        value = self.value(f_x2)
        insertions = 0
        iteration = 0
        report = None
        for iteration in range(1, ocfg.max_iters + 1):
            previous = value
            gains = ring_functional(f_x2.radii, f_x2, self.params, self.cfg)
            current = f_x2
            f_x2, value = search.run(
                "q",
                lambda eta: ConcentricCircles.from_arrays(current.radii, project_simplex(current.probs + eta * gains)),
                self.value, f_x2, value,
            )
            pruned = self._merged(f_x2)
            if pruned.radii.size != f_x2.radii.size:
                f_x2, value = pruned, self.value(pruned)
            slope = self._slope(f_x2)
            current = f_x2
            f_x2, value = search.run(
                "rho",
                lambda eta: ConcentricCircles.from_arrays(np.clip(current.radii + eta * slope, 0.0, 1.0), current.probs),
                self.value, f_x2, value,
            )
            merged = self._merged(f_x2)
            if merged.radii.size != f_x2.radii.size:
                value = self.value(merged)
            f_x2 = merged
            report = None
            if abs(value - previous) >= ocfg.convergence_tol:
                continue
            report, grid, values = scan_rings(f_x2, self.params, self.cfg, ocfg)
            logger.info(f"bd-max iter {iteration}: rate {value:.8f} nats, ring residual {report.max_violation:.2e}")
            if report.max_violation <= ocfg.kkt_tol or f_x2.radii.size >= ocfg.max_points_x2:
                break
            where = float(grid[int(np.argmax(values))])
            if np.min(np.abs(f_x2.radii - where)) <= INSERT_GAP * ocfg.merge_tol:
                break
            eps = ocfg.insert_prob
            f_x2 = self._merged(
                ConcentricCircles.from_arrays(
                    np.append(f_x2.radii, where), np.append(f_x2.probs * (1.0 - eps), eps)
                )
            )
            value = self.value(f_x2)
            insertions += 1
            report = None
        if report is None:
            report, _, _ = scan_rings(f_x2, self.params, self.cfg, ocfg)
        diagnostics = {"iterations": iteration, "insertions": insertions, "line_search_failures": search.failures}
        return f_x2, value, report, diagnostics


def solve_bd_max(params: ChannelParams, cfg: QuadConfig, ocfg: OptimConfig) -> BoundarySolution:
    """
    BD 최대 전송률 (μ₁ = 0)

    PT는 |X₁|² = P의 상수 포락선으로 고정하고, 알려진 X₁을 제거한 첨두 제약
    복소 채널 Ỹ = √P·X₂ + Z의 동심원 분포를 최적화합니다. 결과는 a와 무관합니다.

    Returns:
        BoundarySolution (f_x2는 ConcentricCircles, L(r) 조건이 없어 kkt_residual_r는 None)
    """
    solver = RingSolver(params, cfg, ocfg)
    start = ConcentricCircles(points=((1.0, 1.0),))
    f_x2, value, report, diagnostics = solver.run(start)
    f_r = RadialPmf(points=((math.sqrt(params.P), 1.0),))
    infos = evaluate_infos(f_r, f_x2, params, cfg)
    converged = report.max_violation <= ocfg.kkt_tol
    if not converged:
        logger.warning(f"bd-max not converged: ring residual {report.max_violation:.2e}")
    return BoundarySolution(
        weights=Weights(mu1=0.0, mu2=1.0),
        f_r=f_r,
        f_x2=f_x2,
        rates=RatePair.from_nats(infos["I_X1_Y"], value),
        objective_nats=value,
        lam=0.0,
        kkt_residual_r=None,
        kkt_residual_x2=report.max_violation,
        converged=converged,
        diagnostics=dict(diagnostics, restarts=1),
    )
