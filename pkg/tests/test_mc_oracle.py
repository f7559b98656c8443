import math

import numpy as np
import pytest

from ammac.core.exceptions import ConfigError, SeedError
from ammac.models.config_model import QuadConfig
from ammac.models.distribution_model import PointMasses
from ammac.models.report_model import McEstimate
from ammac.utils.baseline_utils import baseline_mutual_infos
from ammac.utils.entropy_utils import evaluate_infos
from ammac.utils.mc_utils import (
    compare,
    mc_baseline,
    mc_h_Y,
    mc_h_Y_given_X1,
    mc_mutual_infos,
    noise_model,
    random_model,
    stream_generator,
)

Z_LIMIT = 4.0


class TestStreams:
    @pytest.mark.parametrize("seed", [-1, 2**64, True, 1.5])
    def test_rejects_bad_seed(self, seed):
        with pytest.raises(SeedError):
            stream_generator(seed, 0)

    def test_streams_are_independent_of_order(self):
        first = stream_generator(42, 3).normal(size=4)
        stream_generator(42, 1).normal(size=100)
        again = stream_generator(42, 3).normal(size=4)
        np.testing.assert_array_equal(first, again)

    def test_needs_enough_samples(self, params_0db):
        f_r, f_x2 = noise_model()
        with pytest.raises(ConfigError):
            mc_h_Y(f_r, f_x2, params_0db, QuadConfig(mc_samples=5_000))


class TestEstimates:
    def test_deterministic_replay(self, params_0db, light_quad):
        f_r, f_x2 = random_model(params_0db, 3, 11)
        first = mc_mutual_infos(f_r, f_x2, params_0db, light_quad)
        second = mc_mutual_infos(f_r, f_x2, params_0db, light_quad)
        assert first == second

    def test_pure_noise_entropy(self, params_0db, light_quad):
        f_r, f_x2 = noise_model()
        estimate = mc_h_Y(f_r, f_x2, params_0db, light_quad)
        assert abs(estimate.mean - params_0db.noise_entropy()) <= Z_LIMIT * estimate.std_error

    def test_chain_rule_holds_per_sample(self, params_0db, light_quad):
        f_r, f_x2 = random_model(params_0db, 3, 5)
        estimates = mc_mutual_infos(f_r, f_x2, params_0db, light_quad)
        total = estimates["I_X1_Y"].mean + estimates["I_X2_Y_given_X1"].mean
        assert estimates["I_joint"].mean == pytest.approx(total, abs=1e-12)

    def test_standard_error_scaling(self, params_0db):
        f_r, f_x2 = random_model(params_0db, 3, 9)
        small = mc_h_Y(f_r, f_x2, params_0db, QuadConfig(mc_samples=20_000))
        large = mc_h_Y(f_r, f_x2, params_0db, QuadConfig(mc_samples=80_000))
        assert large.std_error / small.std_error == pytest.approx(0.5, rel=0.2)

    def test_random_model_is_feasible(self, params_10db):
        f_r, f_x2 = random_model(params_10db, 4, 3)
        assert f_r.second_moment() == pytest.approx(params_10db.P, rel=1e-12)
        assert np.abs(f_x2.locations).max() <= 1.0


class TestQuadratureAgreement:
    def test_random_model_agrees(self, params_0db, light_quad):
        f_r, f_x2 = random_model(params_0db, 3, light_quad.mc_seed)
        quad = evaluate_infos(f_r, f_x2, params_0db, light_quad)
        estimates = mc_mutual_infos(f_r, f_x2, params_0db, light_quad)
        for name in ("h_Y", "h_Y_given_X1", "I_joint", "I_X1_Y", "I_X2_Y_given_X1", "I_X1_Y_given_X2"):
            assert abs(compare(quad[name], estimates[name]).z_score) <= Z_LIMIT, name

    def test_conditional_entropy_estimate(self, params_0db, light_quad):
        f_r, f_x2 = random_model(params_0db, 3, 7)
        estimate = mc_h_Y_given_X1(f_r, f_x2, params_0db, light_quad)
        assert estimate == mc_mutual_infos(f_r, f_x2, params_0db, light_quad)["h_Y_given_X1"]
        quad = evaluate_infos(f_r, f_x2, params_0db, light_quad)["h_Y_given_X1"]
        assert abs(compare(quad, estimate).z_score) <= Z_LIMIT

    def test_single_bd_point_leaves_only_noise(self, params_0db, light_quad):
        f_r, _ = random_model(params_0db, 3, 2)
        estimate = mc_h_Y_given_X1(f_r, PointMasses(points=((1.0, 0.0, 1.0),)), params_0db, light_quad)
        assert abs(estimate.mean - params_0db.noise_entropy()) <= Z_LIMIT * estimate.std_error

    def test_baseline_agrees(self, params_0db, light_quad):
        i1, i2 = baseline_mutual_infos(params_0db, light_quad)
        estimates = mc_baseline(params_0db, light_quad)
        assert abs(compare(i1, estimates["I_X1_Y"]).z_score) <= Z_LIMIT
        assert abs(compare(i2, estimates["I_X2_Y_given_X1"]).z_score) <= Z_LIMIT

    def test_coarse_quadrature_is_caught(self, params_10db, light_quad):
        f_r, f_x2 = random_model(params_10db, 3, 1)
        coarse = QuadConfig(radial_nodes=8, angular_nodes=8, strict=False)
        quad = evaluate_infos(f_r, f_x2, params_10db, coarse)
        estimates = mc_mutual_infos(f_r, f_x2, params_10db, light_quad)
        assert any(compare(quad[name], estimates[name]).flagged for name in ("h_Y", "I_joint"))


def test_compare_floors_zero_standard_error():
    entry = compare(1e-9, McEstimate(mean=0.0, std_error=0.0, n_samples=10_000, seed=0))
    assert entry.z_score == pytest.approx(1e-3)
    assert not entry.flagged
    flagged = compare(1.0, McEstimate(mean=0.0, std_error=0.1, n_samples=10_000, seed=0))
    assert flagged.flagged and math.isclose(flagged.z_score, 10.0)
