import math

import numpy as np
import pytest

from ammac.core.exceptions import DomainError, NotConverged
from ammac.models.channel_model import LN2, ChannelParams, Weights
from ammac.models.config_model import OptimConfig, QuadConfig
from ammac.models.distribution_model import ConcentricCircles, PointMasses, RadialPmf, validate
from ammac.utils.baseline_utils import c1, c_sum, r1_base, r2_base
from ammac.utils.boundary_utils import (
    boundary_hull,
    corner_points,
    inside_hull,
    require_converged,
    trace_boundary,
    upper_right_hull,
)
from ammac.utils.entropy_utils import objective
from ammac.utils.kkt_utils import (
    fit_power_multiplier,
    kkt_check_r,
    kkt_check_rings,
    kkt_check_x2,
    r_grid,
    scan_r_collapsed,
    scan_x2,
    x2_grid,
)
from ammac.utils.mc_utils import mc_mutual_infos
from ammac.utils.optim_utils import (
    PointSolver,
    _LineSearch,
    collapsed_solution,
    initial_points,
    project_disk,
    project_simplex,
    solve_bd_max,
    solve_weighted,
)


class TestProjections:
    def test_simplex(self):
        projected = project_simplex(np.array([0.8, 0.6, -0.3]))
        assert projected.sum() == pytest.approx(1.0)
        assert np.all(projected >= 0.0)
        np.testing.assert_allclose(projected, [0.6, 0.4, 0.0])

    def test_simplex_keeps_feasible_point(self):
        point = np.array([0.2, 0.3, 0.5])
        np.testing.assert_allclose(project_simplex(point), point)

    def test_disk(self):
        projected = project_disk(np.array([2.0 + 0j, 0.3j, -0.6 - 0.8j]))
        np.testing.assert_allclose(projected, [1.0, 0.3j, -0.6 - 0.8j])


class TestCollapsedRegion:
    @pytest.mark.parametrize("mu1", [0.55, 0.7, 0.9, 1.0])
    def test_collapses_to_sum_capacity_corner(self, params_10db, light_quad, light_optim, mu1):
        solution = solve_weighted(params_10db, Weights.from_mu1(mu1), light_quad, light_optim)
        assert solution.rates.R1 == c1(params_10db)
        assert solution.rates.R2 == 0.0
        assert solution.f_x2.points == ((1.0, 0.0, 1.0),)
        assert solution.converged

    def test_negative_gain_uses_opposite_reflector(self, light_quad, light_optim):
        params = ChannelParams(a=-0.5, sigma2=1.0, P=2.0)
        solution = collapsed_solution(params, Weights.from_mu1(0.8), light_quad, light_optim)
        assert solution.f_x2.points == ((-1.0, 0.0, 1.0),)
        validate(params, solution.f_r, solution.f_x2)


class TestBdMax:
    def test_low_snr_single_unit_ring(self, params_low, light_quad, light_optim):
        solution = solve_bd_max(params_low, light_quad, light_optim)
        assert isinstance(solution.f_x2, ConcentricCircles)
        assert len(solution.f_x2.points) == 1
        assert solution.f_x2.points[0][0] == pytest.approx(1.0, abs=1e-3)
        assert solution.converged
        assert solution.lam == 0.0
        assert solution.f_r.points == ((math.sqrt(params_low.P), 1.0),)
        assert 0.0 < solution.rates.R2 <= math.log2(1.0 + params_low.snr())

    def test_independent_of_direct_gain(self, light_quad, light_optim):
        near = solve_bd_max(ChannelParams.from_snr_db(0.2, -10.0), light_quad, light_optim)
        far = solve_bd_max(ChannelParams.from_snr_db(2.0, -10.0), light_quad, light_optim)
        assert near.rates.R2 == pytest.approx(far.rates.R2, abs=1e-12)

    def test_zero_weight_delegates(self, params_low, light_quad, light_optim):
        solution = solve_weighted(params_low, Weights(mu1=0.0, mu2=1.0), light_quad, light_optim)
        assert isinstance(solution.f_x2, ConcentricCircles)
        assert solution.kkt_residual_r is None

    def test_ring_solution_matches_monte_carlo(self, params_low, light_quad, light_optim):
        solution = solve_bd_max(params_low, light_quad, light_optim)
        estimate = mc_mutual_infos(solution.f_r, solution.f_x2, params_low, light_quad)["I_X2_Y_given_X1"]
        assert abs(solution.rates.R2 * LN2 - estimate.mean) <= 4.0 * estimate.std_error

    def test_ring_conditions_hold(self, params_low, light_quad, light_optim):
        solution = solve_bd_max(params_low, light_quad, light_optim)
        report = kkt_check_rings(solution, params_low, light_quad, light_optim)
        assert report.max_violation <= light_optim.kkt_tol
        with pytest.raises(DomainError):
            kkt_check_x2(solution, params_low, light_quad, light_optim)
        with pytest.raises(DomainError):
            kkt_check_r(solution, params_low, light_quad, light_optim)


class TestPointSolver:
    def test_block_update_never_decreases_objective(self, params_0db, light_quad, light_optim):
        solver = PointSolver(params_0db, Weights(mu1=0.3, mu2=0.7), light_quad, light_optim)
        state = initial_points(params_0db, light_optim).merged(light_optim.merge_tol, params_0db.P)
        f_old = solver.value(state)
        search = _LineSearch(light_optim.step_init, ("p", "r", "q", "x"))
        new_state, f_new, lam = solver.iterate(state, f_old, search)
        assert f_new >= f_old
        assert lam >= 0.0
        assert float(np.dot(new_state.probs, new_state.radii**2)) == pytest.approx(params_0db.P, rel=1e-12)
        assert np.abs(new_state.locations).max() <= 1.0 + 1e-12

    def test_interior_weight_solution(self, params_0db, light_quad, light_optim):
        weights = Weights(mu1=0.3, mu2=0.7)
        solution = solve_weighted(params_0db, weights, light_quad, light_optim)
        validate(params_0db, solution.f_r, solution.f_x2)
        weighted_bits = weights.mu1 * solution.rates.R1 + weights.mu2 * solution.rates.R2
        assert weighted_bits * LN2 == pytest.approx(solution.objective_nats, abs=1e-8)
        assert solution.rates.R1 + solution.rates.R2 <= c_sum(params_0db) + 1e-6
        assert solution.lam >= 0.0
        assert solution.diagnostics["restarts"] == light_optim.restarts

    def test_warm_start_from_rings(self, params_low, light_quad, light_optim):
        bd = solve_bd_max(params_low, light_quad, light_optim)
        solution = solve_weighted(
            params_low, Weights(mu1=0.2, mu2=0.8), light_quad, light_optim, warm_start=(bd.f_r, bd.f_x2)
        )
        assert isinstance(solution.f_x2, PointMasses)
        validate(params_low, solution.f_r, solution.f_x2)

    def test_support_grows_without_stalling(self, params_0db, light_quad, light_optim):
        ocfg = light_optim.model_copy(
            update={"convergence_tol": 0.0, "scan_every": 5, "max_iters": 10, "init_points_r": 1, "kkt_tol": 1e-3}
        )
        solver = PointSolver(params_0db, Weights(mu1=0.3, mu2=0.7), light_quad, ocfg)
        state, value, lam, diagnostics, report_r, report_x = solver.run(initial_points(params_0db, ocfg))
        assert diagnostics["insertions"] >= 1
        assert lam >= 0.0

    def test_interior_weight_conditions_hold(self, params_low, light_quad, light_optim):
        ocfg = light_optim.model_copy(update={"max_iters": 150, "scan_every": 10, "kkt_tol": 2e-2})
        weights = Weights(mu1=0.2, mu2=0.8)
        solution = solve_weighted(params_low, weights, light_quad, ocfg)
        assert solution.converged
        assert solution.kkt_residual_r <= ocfg.kkt_tol
        assert solution.kkt_residual_x2 <= ocfg.kkt_tol
        report = kkt_check_r(solution, params_low, light_quad, ocfg)
        assert report.variant == "fixed_phase"
        assert report.max_violation <= 2.0 * ocfg.kkt_tol

    def test_objective_matches_solver_value(self, params_0db, light_quad, light_optim):
        weights = Weights(mu1=0.3, mu2=0.7)
        solution = solve_weighted(params_0db, weights, light_quad, light_optim)
        value = objective(weights, solution.f_r, solution.f_x2, params_0db, light_quad)
        assert value == pytest.approx(solution.objective_nats, abs=1e-4)


class TestBoundary:
    def test_upper_right_hull_order(self):
        hull = upper_right_hull(np.array([[1.0, 2.0], [2.0, 1.5], [0.5, 0.5]]), r2_max=2.0, corner_r1=3.0)
        np.testing.assert_allclose(hull, [[0.0, 2.0], [1.0, 2.0], [2.0, 1.5], [3.0, 0.0]])

    def test_trace_includes_both_corners(self, params_low, light_quad, light_optim):
        solutions = trace_boundary(params_low, [0.0], light_quad, light_optim)
        assert len(solutions) == 2
        hull = boundary_hull(solutions, params_low)
        assert hull[0][0] == pytest.approx(0.0, abs=1e-9)
        assert hull[0][1] == pytest.approx(solutions[0].rates.R2)
        assert hull[-1][0] == pytest.approx(c1(params_low))
        assert np.all(np.diff(hull[:, 0]) >= 0.0)
        assert np.all(np.diff(hull[:, 1]) <= 0.0)

    def test_inside_hull(self):
        hull = upper_right_hull(np.array([[1.0, 2.0], [2.0, 1.5]]), r2_max=2.0, corner_r1=3.0)
        points = [[0.5, 1.9], [1.5, 1.8], [2.5, 0.7], [3.0, 0.0], [2.5, 1.0], [3.2, 0.0], [-0.1, 1.0]]
        np.testing.assert_array_equal(inside_hull(points, hull), [True, False, True, True, False, False, False])

    def test_corner_points(self, params_10db):
        (r1, zero), (origin, bd) = corner_points(params_10db, 2.5)
        assert r1 == c1(params_10db) and zero == 0.0 and origin == 0.0 and bd == 2.5

    def test_require_converged(self, params_10db, light_quad, light_optim):
        solution = collapsed_solution(params_10db, Weights.from_mu1(0.8), light_quad, light_optim)
        require_converged([solution])
        stalled = solution.model_copy(update={"converged": False})
        with pytest.raises(NotConverged) as exc:
            require_converged([solution, stalled])
        assert exc.value.solution is stalled


class TestKktScans:
    def test_single_reflector_has_no_spread(self, params_10db, light_quad, light_optim):
        solution = collapsed_solution(params_10db, Weights.from_mu1(0.7), light_quad, light_optim)
        report = kkt_check_x2(solution, params_10db, light_quad, light_optim)
        assert report.kind == "x2"
        assert report.on_support_spread == 0.0
        assert abs(complex(*report.violation_location)) <= 1.0 + 1e-12

    def test_flat_functional_without_pt_signal(self, params_10db, light_quad, light_optim):
        f_r = RadialPmf(points=((0.0, 1.0),))
        f_x2 = PointMasses(points=((1.0, 0.0, 0.5), (-1.0, 0.0, 0.5)))
        report, grid, values = scan_x2(f_r, f_x2, Weights(mu1=0.4, mu2=0.6), params_10db, light_quad, light_optim)
        assert grid.size == x2_grid(light_optim).size == 501
        assert report.max_violation <= 2.0 * light_quad.rel_tol

    def test_radial_check_needs_pt_weight(self, params_10db, light_quad, light_optim):
        solution = collapsed_solution(params_10db, Weights.from_mu1(0.7), light_quad, light_optim)
        stripped = solution.model_copy(update={"weights": Weights(mu1=0.0, mu2=1.0)})
        with pytest.raises(DomainError):
            kkt_check_r(stripped, params_10db, light_quad, light_optim)

    def test_collapsed_solution_reports_computed_residuals(self, params_10db, light_quad, light_optim):
        solution = collapsed_solution(params_10db, Weights.from_mu1(0.8), light_quad, light_optim)
        assert solution.kkt_residual_r == pytest.approx(0.0, abs=1e-9)
        assert solution.kkt_residual_x2 <= light_optim.kkt_tol
        assert solution.diagnostics["r_condition"] == "gaussian"
        report = kkt_check_r(solution, params_10db, light_quad, light_optim)
        assert report.variant == "gaussian"
        assert report.max_violation == pytest.approx(solution.kkt_residual_r, abs=1e-12)

    def test_collapsed_radial_condition_needs_matching_multiplier(self, params_10db, light_quad, light_optim):
        solution = collapsed_solution(params_10db, Weights.from_mu1(0.8), light_quad, light_optim)
        report, grid, values = scan_r_collapsed(
            solution.f_r, solution.weights, 0.5 * solution.lam, params_10db, light_optim
        )
        assert report.max_violation > light_optim.kkt_tol
        assert float(grid[int(np.argmax(values))]) == pytest.approx(float(r_grid(params_10db, light_optim)[-1]))

    def test_collapsed_radial_condition_needs_pt_priority(self, params_10db, light_optim):
        f_r = RadialPmf(points=((math.sqrt(params_10db.P), 1.0),))
        with pytest.raises(DomainError):
            scan_r_collapsed(f_r, Weights(mu1=0.4, mu2=0.6), 0.1, params_10db, light_optim)

    def test_power_multiplier_fit_recovers_slope(self, params_10db, light_optim):
        f_r = RadialPmf(points=((1.0, 0.5), (math.sqrt(params_10db.P * 2.0 - 1.0), 0.5)))
        weights = Weights(mu1=0.4, mu2=0.6)
        grid = r_grid(params_10db, light_optim)
        lam = fit_power_multiplier(grid, 0.3 * grid**2, f_r, 0.3 * f_r.radii**2, weights)
        assert lam == pytest.approx(0.3 * weights.mu1, abs=1e-7)

    def test_power_multiplier_fit_is_nonnegative(self, params_10db, light_optim):
        f_r = RadialPmf(points=((math.sqrt(params_10db.P), 1.0),))
        grid = r_grid(params_10db, light_optim)
        lam = fit_power_multiplier(grid, -(grid**2), f_r, -(f_r.radii**2), Weights(mu1=0.4, mu2=0.6))
        assert lam == pytest.approx(0.0, abs=1e-12)


@pytest.mark.slow
def test_equal_weights_reach_sum_capacity():
    params = ChannelParams.from_snr_db(2.0, 10.0)
    ocfg = OptimConfig(init_points_r=10)
    solution = solve_weighted(params, Weights(mu1=0.5, mu2=0.5), QuadConfig(), ocfg)
    total = solution.rates.R1 + solution.rates.R2
    assert 0.95 * c_sum(params) <= total <= c_sum(params) + 0.02
    near_reflector = np.abs(solution.f_x2.locations - 1.0) <= 0.05
    assert solution.f_x2.probs[near_reflector].sum() >= 0.99


@pytest.mark.slow
def test_moving_a_support_amplitude_breaks_conditions():
    params = ChannelParams.from_snr_db(2.0, 10.0)
    cfg, ocfg = QuadConfig(), OptimConfig()
    solution = solve_weighted(params, Weights(mu1=0.3, mu2=0.7), cfg, ocfg)
    assert solution.converged
    radii = solution.f_r.radii
    radii[int(np.argmax(solution.f_r.probs))] *= 1.1
    moved = solution.model_copy(update={"f_r": RadialPmf.from_arrays(radii, solution.f_r.probs)})
    assert kkt_check_r(moved, params, cfg, ocfg).max_violation > ocfg.kkt_tol


@pytest.mark.slow
def test_regions_nest_and_contain_baseline():
    cfg, ocfg = QuadConfig(), OptimConfig()
    schedule = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]
    hulls = {}
    for snr_db in (0.0, 10.0):
        params = ChannelParams.from_snr_db(2.0, snr_db)
        solutions = trace_boundary(params, schedule, cfg, ocfg)
        require_converged(solutions)
        hulls[snr_db] = boundary_hull(solutions, params)
    assert np.all(inside_hull(hulls[0.0], hulls[10.0], tol=1e-3))
    params = ChannelParams.from_snr_db(2.0, 10.0)
    base = (r1_base(params, cfg), r2_base(params, cfg))
    assert inside_hull([base], hulls[10.0], tol=1e-3).all()
    assert base[0] + base[1] < hulls[10.0].sum(axis=1).max()
