import math

import numpy as np
import pytest

from ammac.core.exceptions import DomainError
from ammac.models.channel_model import ChannelParams, Weights
from ammac.models.config_model import QuadConfig
from ammac.models.distribution_model import ConcentricCircles, PointMasses, RadialPmf
from ammac.utils.entropy_utils import (
    combine_objective,
    conditional_cross_entropy,
    conditional_entropy,
    conditional_mi_at_power,
    evaluate_infos,
    h_Y,
    h_Y_fixed_phase,
    h_Y_given_X1,
    h_Y_given_X1_value,
    h_Y_given_r_marginalized,
    h_Y_value,
    kernel_K_radial,
    mutual_infos,
    omega1,
    omega2,
    output_radial_density,
    ring_density,
)
from ammac.utils.mc_utils import random_model
from ammac.utils.quad_utils import build_radial_rule

PI_E = math.log(math.pi * math.e)

TWO_POINTS = PointMasses(points=((1.0, 0.0, 0.5), (-1.0, 0.0, 0.5)))

class TestRingDensity:
    def test_zero_center_is_rayleigh(self):
        rho = np.linspace(0.0, 4.0, 9)
        assert ring_density(rho, 0.0, 1.0) == pytest.approx(2.0 * rho * np.exp(-(rho**2)))

    def test_normalized_with_second_moment(self):
        rule = build_radial_rule(QuadConfig(), scale=3.0)
        density = ring_density(rule.nodes, 3.0, 1.0)
        assert rule.integrate(density) == pytest.approx(1.0, abs=1e-10)
        c = 2.0
        moment = rule.integrate(rule.nodes**2 * ring_density(rule.nodes, c, 1.0))
        assert moment == pytest.approx(c**2 + 1.0, abs=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            ring_density(-1.0, 1.0, 1.0)

class TestOutputDensity:
    def test_integrates_to_one(self, params_10db):
        f_r = RadialPmf(points=((1.0, 0.5), (3.0, 0.5)))
        rule = build_radial_rule(QuadConfig(), scale=9.0)
        density = output_radial_density(rule.nodes, f_r, TWO_POINTS, params_10db)
        assert rule.integrate(density) == pytest.approx(1.0, abs=1e-8)

    def test_kernel_integrates_to_one(self, params_10db):
        rule = build_radial_rule(QuadConfig(), scale=9.0)
        kernel = kernel_K_radial(rule.nodes, 3.0, TWO_POINTS, params_10db)
        assert rule.integrate(kernel) == pytest.approx(1.0, abs=1e-8)

class TestOutputEntropy:
    def test_pure_noise(self, params_10db, light_quad):
        f_r = RadialPmf(points=((0.0, 1.0),))
        report = h_Y(f_r, PointMasses(points=((1.0, 0.0, 1.0),)), params_10db, light_quad)
        assert report.value_nats == pytest.approx(PI_E, abs=1e-6)
        assert report.est_abs_error >= 0.0

    def test_single_ring_below_gaussian_bound(self, params_10db, light_quad):
        f_r = RadialPmf(points=((math.sqrt(10.0), 1.0),))
        value = h_Y_value(f_r, PointMasses(points=((1.0, 0.0, 1.0),)), params_10db, light_quad)
        assert PI_E < value <= math.log(math.pi * math.e * 91.0)

    def test_noise_scaling(self, light_quad):
        params = ChannelParams(a=1.0, sigma2=3.0, P=1.0)
        f_r = RadialPmf(points=((0.0, 1.0),))
        value = h_Y_value(f_r, PointMasses(points=((0.0, 0.0, 1.0),)), params, light_quad)
        assert value == pytest.approx(math.log(math.pi * math.e * 3.0), abs=1e-6)

    def test_phase_uniformity_adds_entropy(self, params_10db, light_quad):
        f_r = RadialPmf(points=((1.0, 0.4), (4.0, 0.6)))
        uniform = h_Y_value(f_r, TWO_POINTS, params_10db, light_quad)
        fixed = h_Y_fixed_phase(f_r, TWO_POINTS, params_10db, light_quad).value_nats
        assert uniform >= fixed - 1e-6

    @pytest.mark.parametrize("eps", [0.25, 0.5, 0.75])
    def test_mixture_concavity(self, params_10db, light_quad, eps):
        f_a = RadialPmf(points=((1.0, 1.0),))
        f_b = RadialPmf(points=((4.0, 1.0),))
        mixed = RadialPmf(points=((1.0, 1.0 - eps), (4.0, eps)))
        x2 = PointMasses(points=((1.0, 0.0, 1.0),))
        h_mix = h_Y_value(mixed, x2, params_10db, light_quad)
        h_a = h_Y_value(f_a, x2, params_10db, light_quad)
        h_b = h_Y_value(f_b, x2, params_10db, light_quad)
        h_avg = (1.0 - eps) * h_a + eps * h_b
        assert h_mix >= h_avg - 1e-8

class TestConditionalEntropy:
    def test_single_point_is_noise(self, params_10db, light_quad):
        f_r = RadialPmf(points=((math.sqrt(10.0), 1.0),))
        report = h_Y_given_X1(f_r, PointMasses(points=((1.0, 0.0, 1.0),)), params_10db, light_quad)
        assert report.value_nats == pytest.approx(PI_E, abs=1e-9)

    def test_well_separated_points_add_one_bit_in_nats(self, params_10db, light_quad):
        value = conditional_entropy(10.0, TWO_POINTS, params_10db, light_quad)
        assert value == pytest.approx(PI_E + math.log(2.0), abs=0.01)

    def test_independent_of_phase(self, params_10db, light_quad):
        f_r = RadialPmf(points=((0.5, 0.5), (1.0, 0.5)))
        at_zero = h_Y_given_X1_value(f_r, TWO_POINTS, params_10db, light_quad, phase=0.0)
        rotated = h_Y_given_X1_value(f_r, TWO_POINTS, params_10db, light_quad, phase=0.7)
        assert rotated == pytest.approx(at_zero, abs=1e-6)

    def test_independent_of_direct_gain(self, light_quad):
        f_x2 = PointMasses(points=((0.5, 0.2, 0.3), (-0.4, 0.6, 0.7)))
        near = conditional_entropy(1.5, f_x2, ChannelParams(a=0.3, sigma2=1.0, P=1.0), light_quad)
        far = conditional_entropy(1.5, f_x2, ChannelParams(a=-3.0, sigma2=1.0, P=1.0), light_quad)
        assert near == pytest.approx(far, abs=1e-9)

    def test_cross_entropy_averages_to_entropy(self, params_10db, light_quad):
        f_x2 = PointMasses(points=((0.5, 0.2, 0.3), (-0.4, 0.6, 0.7)))
        cross = conditional_cross_entropy(f_x2.locations, 2.0, f_x2, params_10db, light_quad)
        assert float(np.dot(f_x2.probs, cross)) == pytest.approx(
            conditional_entropy(2.0, f_x2, params_10db, light_quad), abs=1e-12
        )

    def test_circles_bounded_by_rate_ceiling(self, params_10db, light_quad):
        value = conditional_entropy(math.sqrt(10.0), ConcentricCircles(points=((1.0, 1.0),)), params_10db, light_quad)
        assert PI_E < value < PI_E + math.log1p(10.0)

    def test_power_concavity(self, params_10db):
        cfg = QuadConfig()
        powers = np.geomspace(0.01, 4.0, 8)
        values = np.array([conditional_mi_at_power(p, TWO_POINTS, params_10db, cfg) for p in powers])
        slopes = np.diff(values) / np.diff(powers)
        assert np.all(np.diff(slopes) <= 1e-4)
        assert np.all(np.diff(values) > 0.0)

    def test_negative_amplitude(self, params_10db, light_quad):
        with pytest.raises(DomainError):
            conditional_entropy(-1.0, TWO_POINTS, params_10db, light_quad)

    @pytest.mark.parametrize("r", [0.5, 1.5, 4.0])
    def test_marginalized_phase_adds_entropy(self, params_10db, light_quad, r):
        fixed = conditional_entropy(r, TWO_POINTS, params_10db, light_quad)
        marginalized = h_Y_given_r_marginalized(r, TWO_POINTS, params_10db, light_quad)
        assert marginalized >= fixed - 1e-4

    def test_marginalized_at_zero_amplitude_is_noise(self, params_10db, light_quad):
        value = h_Y_given_r_marginalized(0.0, TWO_POINTS, params_10db, light_quad)
        assert value == pytest.approx(params_10db.noise_entropy(), abs=1e-6)
        with pytest.raises(DomainError):
            h_Y_given_r_marginalized(-0.1, TWO_POINTS, params_10db, light_quad)


class TestMarginalFunctionals:
    def test_omega1_averages_to_output_entropy(self, params_10db, light_quad):
        f_r = RadialPmf(points=((1.0, 0.3), (3.5, 0.7)))
        values = omega1(f_r.radii, f_r, TWO_POINTS, params_10db, light_quad)
        assert float(np.dot(f_r.probs, values)) == pytest.approx(
            h_Y_value(f_r, TWO_POINTS, params_10db, light_quad), abs=1e-9
        )

    def test_omega2_averages_to_objective_part(self, params_10db, light_quad):
        f_r = RadialPmf(points=((1.0, 0.3), (3.5, 0.7)))
        weights = Weights(mu1=0.3, mu2=0.7)
        values = omega2(TWO_POINTS.locations, f_r, TWO_POINTS, weights, params_10db, light_quad)
        expected = weights.mu1 * h_Y_value(f_r, TWO_POINTS, params_10db, light_quad) + (
            weights.mu2 - weights.mu1
        ) * h_Y_given_X1_value(f_r, TWO_POINTS, params_10db, light_quad)
        assert float(np.dot(TWO_POINTS.probs, values)) == pytest.approx(expected, abs=1e-9)

    def test_omega2_flat_without_pt_signal(self, params_10db, light_quad):
        f_r = RadialPmf(points=((0.0, 1.0),))
        grid = np.array([0.0, 0.5j, -1.0, 0.3 + 0.3j])
        values = omega2(grid, f_r, TWO_POINTS, Weights(mu1=0.4, mu2=0.6), params_10db, light_quad)
        assert np.ptp(values) < 1e-10

    def test_omega2_peak_check(self, params_10db, light_quad):
        f_r = RadialPmf(points=((1.0, 1.0),))
        with pytest.raises(DomainError):
            omega2(1.5 + 0j, f_r, TWO_POINTS, Weights(mu1=0.4, mu2=0.6), params_10db, light_quad)

class TestMutualInfos:
    def test_chain_rule(self, params_0db, light_quad):
        f_r = RadialPmf(points=((0.5, 0.5), (1.3, 0.5)))
        infos = mutual_infos(f_r, TWO_POINTS, params_0db, light_quad)
        assert infos.I_joint == pytest.approx(infos.I_X1_Y + infos.I_X2_Y_given_X1, abs=1e-12)
        assert infos.I_X1_Y_given_X2 <= infos.I_joint + 1e-9
        assert infos.est_abs_error >= 0.0

    @pytest.mark.parametrize("seed", range(10))
    def test_chain_rule_on_random_models(self, params_0db, light_quad, seed):
        f_r, f_x2 = random_model(params_0db, 3, seed)
        infos = evaluate_infos(f_r, f_x2, params_0db, light_quad)
        assert infos["I_joint"] == pytest.approx(infos["I_X1_Y"] + infos["I_X2_Y_given_X1"], abs=1e-12)
        # X₁ ⊥ X₂ 이므로 I(X₁;Y) ≤ I(X₁;Y|X₂) ≤ I(X₁,X₂;Y)
        assert infos["I_X1_Y"] <= infos["I_X1_Y_given_X2"] + 1e-3
        assert infos["I_X1_Y_given_X2"] <= infos["I_joint"] + 1e-3
        assert min(infos["I_X1_Y"], infos["I_X2_Y_given_X1"]) >= -1e-3

    def test_single_bd_point_carries_nothing(self, params_0db, light_quad):
        f_r = RadialPmf(points=((1.0, 1.0),))
        infos = evaluate_infos(f_r, PointMasses(points=((1.0, 0.0, 1.0),)), params_0db, light_quad)
        assert abs(infos["I_X2_Y_given_X1"]) < 1e-9

    def test_objective_branches(self):
        infos = {"I_X1_Y": 1.0, "I_X2_Y_given_X1": 2.0, "I_joint": 3.0, "I_X1_Y_given_X2": 2.5}
        assert combine_objective(Weights(mu1=0.25, mu2=0.75), infos) == pytest.approx(1.75)
        assert combine_objective(Weights(mu1=0.75, mu2=0.25), infos) == pytest.approx(0.75 * 2.5 + 0.25 * 0.5)
        assert combine_objective(Weights(mu1=0.5, mu2=0.5), infos) == pytest.approx(1.5)
