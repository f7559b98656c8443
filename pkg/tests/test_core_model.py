import math

import numpy as np
import pytest

from ammac.core.exceptions import ConfigError, ConstraintViolation, DegenerateDistribution
from ammac.models.channel_model import ChannelParams, RatePair, Weights
from ammac.models.config_model import OptimConfig, QuadConfig
from ammac.models.distribution_model import (
    ConcentricCircles,
    PointMasses,
    RadialPmf,
    normalize_and_merge,
    parse_bd_distribution,
    rayleigh_quantization,
    rings_to_points,
    validate,
)


class TestChannelParams:
    def test_snr_conversion(self):
        params = ChannelParams.from_snr_db(2.0, 10.0, sigma2=2.0)
        assert params.P == pytest.approx(20.0)
        assert params.snr_db() == pytest.approx(10.0)
        assert params.noise_entropy() == pytest.approx(math.log(math.pi * math.e * 2.0))

    @pytest.mark.parametrize("fields", [dict(a=0.0, sigma2=1.0, P=1.0), dict(a=1.0, sigma2=0.0, P=1.0),
                                        dict(a=1.0, sigma2=1.0, P=0.0), dict(a=math.inf, sigma2=1.0, P=1.0)])
    def test_rejects_invalid(self, fields):
        with pytest.raises(ConstraintViolation):
            ChannelParams(**fields)

    def test_bd_sign_follows_a(self):
        assert ChannelParams(a=-0.5, sigma2=1.0, P=1.0).bd_sign == -1.0
        assert ChannelParams(a=0.5, sigma2=1.0, P=1.0).bd_sign == 1.0


class TestWeightsAndRates:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ConstraintViolation):
            Weights(mu1=0.3, mu2=0.6)
        assert Weights.from_mu1(0.25).mu2 == pytest.approx(0.75)

    def test_negative_weight(self):
        with pytest.raises(ConstraintViolation):
            Weights(mu1=-0.1, mu2=1.1)

    def test_rates_from_nats_clip_noise(self):
        rates = RatePair.from_nats(math.log(2.0), -1e-14)
        assert rates.R1 == pytest.approx(1.0)
        assert rates.R2 == 0.0

    def test_negative_rate_rejected(self):
        with pytest.raises(ConstraintViolation):
            RatePair(R1=-0.1, R2=0.0)


class TestValidate:
    def test_accepts_feasible_model(self, params_10db):
        f_r = RadialPmf(points=((4.0, 0.5), (0.0, 0.5)))
        f_x2 = PointMasses(points=((1.0, 0.0, 0.5), (-1.0, 0.0, 0.5)))
        validate(params_10db, f_r, f_x2)

    def test_peak_violation_reports_amount(self, params_10db):
        f_r = RadialPmf(points=((math.sqrt(10.0), 1.0),))
        with pytest.raises(ConstraintViolation) as exc:
            validate(params_10db, f_r, PointMasses(points=((1.2, 0.0, 1.0),)))
        assert exc.value.amount == pytest.approx(0.2)

    def test_power_violation(self, params_10db):
        f_r = RadialPmf(points=((4.0, 1.0),))
        with pytest.raises(ConstraintViolation):
            validate(params_10db, f_r, PointMasses(points=((1.0, 0.0, 1.0),)))

    def test_probability_sum(self, params_10db):
        f_r = RadialPmf(points=((1.0, 0.5), (2.0, 0.3)))
        with pytest.raises(ConstraintViolation):
            validate(params_10db, f_r, PointMasses(points=((1.0, 0.0, 1.0),)))

    def test_close_points_rejected(self, params_10db):
        f_r = RadialPmf(points=((1.0, 0.5), (1.0 + 1e-6, 0.5)))
        with pytest.raises(ConstraintViolation):
            validate(params_10db, f_r, PointMasses(points=((1.0, 0.0, 1.0),)))

    def test_empty_distribution(self, params_10db):
        with pytest.raises(DegenerateDistribution):
            validate(params_10db, RadialPmf(points=()), PointMasses(points=((1.0, 0.0, 1.0),)))

    def test_ring_radius_bound(self, params_10db):
        f_r = RadialPmf(points=((1.0, 1.0),))
        with pytest.raises(ConstraintViolation):
            validate(params_10db, f_r, ConcentricCircles(points=((1.5, 1.0),)))


class TestNormalizeAndMerge:
    def test_merges_close_points(self):
        merged = normalize_and_merge(RadialPmf(points=((1.0, 0.5), (1.0 + 1e-9, 0.5))), merge_tol=1e-6)
        assert len(merged.points) == 1
        assert merged.points[0][1] == pytest.approx(1.0)

    def test_prunes_and_renormalizes(self):
        merged = normalize_and_merge(RadialPmf(points=((1.0, 0.6), (2.0, 1e-12), (3.0, 0.4 - 1e-12))))
        assert merged.radii.tolist() == [1.0, 3.0]
        assert merged.probs.sum() == pytest.approx(1.0, abs=1e-14)

    def test_distinct_points_unchanged(self):
        pmf = RadialPmf(points=((0.5, 0.25), (1.5, 0.75)))
        assert normalize_and_merge(pmf) == pmf

    def test_idempotent(self):
        pmf = PointMasses(points=((1.0, 0.0, 0.3), (1.0, 5e-5, 0.3), (0.0, 1.0, 0.4)))
        once = normalize_and_merge(pmf)
        assert normalize_and_merge(once) == once

    def test_all_mass_pruned(self):
        with pytest.raises(DegenerateDistribution):
            normalize_and_merge(RadialPmf(points=((1.0, 0.0),)))


def test_rayleigh_quantization_meets_power():
    pmf = rayleigh_quantization(10.0, 6)
    assert pmf.second_moment() == pytest.approx(10.0, rel=1e-12)
    assert np.all(np.diff(pmf.radii) > 0.0)


def test_rings_to_points_keeps_mass():
    points = rings_to_points(ConcentricCircles(points=((0.0, 0.2), (1.0, 0.8))), n_angles=4)
    assert points.probs.sum() == pytest.approx(1.0)
    assert points.locations.size == 5
    assert np.abs(points.locations).max() == pytest.approx(1.0)


def test_bd_distribution_discriminator():
    rings = parse_bd_distribution({"kind": "circles", "points": [[1.0, 1.0]]})
    points = parse_bd_distribution({"kind": "points", "points": [[1.0, 0.0, 1.0]]})
    assert isinstance(rings, ConcentricCircles)
    assert isinstance(points, PointMasses)


class TestConfigModels:
    def test_quad_defaults(self):
        cfg = QuadConfig()
        assert cfg.radial_nodes == 1024 and cfg.angular_nodes == 64
        refined = cfg.refined()
        assert refined.radial_nodes == 2048 and refined.angular_nodes == 128

    def test_quad_rejects_coarse_grid(self):
        with pytest.raises(ConfigError):
            QuadConfig(radial_nodes=4)

    def test_optim_grid_minimums(self):
        with pytest.raises(ConfigError):
            OptimConfig(grid_r_points=100)
        with pytest.raises(ConfigError):
            OptimConfig(grid_x2_radii=5, grid_x2_angles=50)
