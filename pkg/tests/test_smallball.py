"""Unit tests for small-ball estimation and analytic bounds."""

import math

import numpy as np
import pytest

from rmtlab import smallball
from rmtlab.ensembles import BadSpec, EntryDistribution
from rmtlab.smallball import BoundParams


def test_sample_weighted_sums_deterministic():
    b = np.array([1.0, 2.0, 3.0], dtype=complex)
    dist = EntryDistribution("complex-gaussian")
    s1 = smallball.sample_weighted_sums(b, dist, None, 500, seed=5)
    s2 = smallball.sample_weighted_sums(b, dist, None, 500, seed=5)
    np.testing.assert_array_equal(s1, s2)
    assert s1.shape == (500,)
    shift = np.array([1.0, 0.0, 0.0])
    s3 = smallball.sample_weighted_sums(b, dist, shift, 500, seed=5)
    np.testing.assert_allclose(s3, s1 - b[0], atol=1e-12)
    with pytest.raises(BadSpec):
        smallball.sample_weighted_sums(np.array([]), dist, None, 100, seed=0)


def test_empirical_smallball_rademacher_atom():
    # single +-1 coefficient: sup_v P(|eta - v| <= 0.5) = 1/2 exactly
    est = smallball.empirical_smallball(np.array([1.0]),
                                        EntryDistribution("rademacher"),
                                        epsilon=0.5, trials=20_000, seed=3)
    assert est.p_hat == pytest.approx(0.5, abs=0.02)
    assert abs(abs(est.mode_center) - 1.0) < 0.3
    assert est.half_width < 0.05


def test_empirical_smallball_gaussian_matches_normal_mass():
    # S is standard normal; mode at 0, mass = 2 Phi(eps) - 1
    eps = 0.4
    est = smallball.empirical_smallball(np.array([1.0]),
                                        EntryDistribution("real-gaussian"),
                                        epsilon=eps, trials=40_000, seed=4)
    target = math.erf(eps / math.sqrt(2.0))
    assert est.p_hat == pytest.approx(target, abs=est.half_width + 0.01)


def test_empirical_smallball_validation():
    dist = EntryDistribution("rademacher")
    with pytest.raises(BadSpec):
        smallball.empirical_smallball(np.ones(4), dist, 0.5, trials=100, seed=0)
    with pytest.raises(BadSpec):
        smallball.empirical_smallball(np.ones(4), dist, -1.0, trials=2000,
                                      seed=0)


def test_fixed_pitch_estimates_are_monotone_in_epsilon():
    dist = EntryDistribution("complex-sign")
    b = np.ones(32)
    ps = [smallball.empirical_smallball(b, dist, eps, trials=4000, seed=9,
                                        pitch=0.25).p_hat
          for eps in (0.5, 1.0, 2.0, 4.0)]
    assert all(a <= b_ for a, b_ in zip(ps, ps[1:]))


def test_berry_esseen_bound_formula():
    val = smallball.berry_esseen_bound(n=100, epsilon=0.5, k1=1.0, k2=2.0,
                                       C=1.0)
    assert val == pytest.approx((0.5 + 8.0) / 10.0)
    assert smallball.berry_esseen_bound(4, 10.0, 1.0, 1.0, C=5.0) == 1.0
    with pytest.raises(ValueError):
        smallball.berry_esseen_bound(0, 0.5, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        smallball.berry_esseen_bound(10, 0.5, 2.0, 1.0, 1.0)


def test_lcd_bound_formula():
    v = smallball.lcd_bound(epsilon=0.1, n=100, d=10.0, alpha=0.2, beta=0.25,
                            C=1.0, c=1.0)
    expected = 2.0 * (0.1 + 1.0 / (10.0 * 10.0)) \
        + math.exp(-0.04 * 0.25 * 100)
    assert v == pytest.approx(expected)
    # infinite LCD drops the 1/D term
    vi = smallball.lcd_bound(0.1, 100, math.inf, 0.2, 0.25, 1.0, 1.0)
    assert vi == pytest.approx(2.0 * 0.1 + math.exp(-1.0))
    with pytest.raises(ValueError):
        smallball.lcd_bound(0.1, 100, -1.0, 0.2, 0.25, 1.0, 1.0)


def test_characteristic_factors():
    f = smallball.characteristic_factor(EntryDistribution("rademacher"), 2.0)
    assert f(0.3) == pytest.approx(abs(math.cos(0.6)))
    g = smallball.characteristic_factor(EntryDistribution("real-gaussian"), 0.5)
    assert g(2.0) == pytest.approx(math.exp(-0.5))
    with pytest.raises(BadSpec):
        smallball.characteristic_factor(EntryDistribution("uniform-disk"), 1.0)


def test_esseen_integral_bound_gaussian_closed_form():
    # single unit gaussian coefficient at eps = 1:
    # integral of exp(-t^2/2) over [-pi/2, pi/2] = sqrt(2 pi) erf(pi / (2 sqrt 2))
    val = smallball.esseen_integral_bound(np.array([1.0]), 1.0,
                                          EntryDistribution("real-gaussian"),
                                          C=1.0)
    closed = math.sqrt(2.0 * math.pi) * math.erf(math.pi / (2.0 * math.sqrt(2.0)))
    assert val == pytest.approx(closed, abs=1e-8)
    assert smallball.esseen_integral_bound(np.array([1.0]), 1.0,
                                           EntryDistribution("real-gaussian"),
                                           C=2.0) == pytest.approx(2.0 * closed)


def test_esseen_bound_dominates_rademacher_smallball():
    b = np.ones(16)
    dist = EntryDistribution("rademacher")
    eps = 1.0
    est = smallball.empirical_smallball(b, dist, eps, trials=20_000, seed=6)
    bound = smallball.esseen_integral_bound(b, eps, dist, C=1.0)
    assert est.p_hat <= bound + est.half_width


def test_paley_zygmund_mu():
    # at (0.5, 1) the t -> 0 boundary attains the minimum
    assert smallball.paley_zygmund_mu(0.5, 1.0) == \
        pytest.approx(0.10546875, abs=1e-9)
    # always a probability lower bound in (0, 1]
    for lam, B in ((0.1, 0.5), (0.9, 10.0), (0.5, 100.0)):
        mu = smallball.paley_zygmund_mu(lam, B)
        assert 0.0 < mu <= 1.0
        f0 = (1.0 - lam * lam) ** 3 / (1.0 + B) ** 2
        assert mu <= f0 + 1e-12
    with pytest.raises(ValueError):
        smallball.paley_zygmund_mu(1.5, 1.0)
    with pytest.raises(ValueError):
        smallball.paley_zygmund_mu(0.5, -1.0)


def test_bound_params_validation():
    BoundParams(alpha=0.1, k1=1.0, k2=1.0)
    with pytest.raises(ValueError):
        BoundParams(alpha=0.2, k1=1.0, k2=1.0)  # alpha >= K1 / (6 K2)
    with pytest.raises(ValueError):
        BoundParams(alpha=0.1, beta=0.7)
    with pytest.raises(ValueError):
        BoundParams(alpha=0.1, sigma1_sq=1.0, sigma2_sq=0.0, sigma12=0.5)
