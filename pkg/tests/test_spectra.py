"""Unit tests for spectral distributions and closed-form limit objects."""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from rmtlab import linalg, spectra
from rmtlab.linalg import NEG_INFINITY


def test_ring_integral_against_quadrature():
    for z, r in ((0.3 + 0.1j, 1.0), (2.0, 1.0), (0.5j, 0.7), (3.0, 2.0)):
        val, _ = integrate.quad(
            lambda th: math.log(abs(z - r * complex(math.cos(th),
                                                    math.sin(th)))),
            -math.pi, math.pi, limit=400, epsabs=1e-10)
        assert spectra.ring_integral(z, r) == pytest.approx(val, abs=1e-8)
    with pytest.raises(ValueError):
        spectra.ring_integral(1.0, -1.0)


def test_circular_potential_values_and_continuity():
    assert spectra.circular_potential(0.0) == pytest.approx(0.5)
    assert spectra.circular_potential(2.0) == pytest.approx(-math.log(2.0))
    inside = spectra.circular_potential(1.0 - 1e-9)
    outside = spectra.circular_potential(1.0 + 1e-9)
    assert abs(inside - outside) < 1e-8
    # radial symmetry
    assert spectra.circular_potential(0.3 + 0.4j) == \
        pytest.approx(spectra.circular_potential(0.5))


def test_potential_equals_half_negative_log_moment():
    rng = np.random.default_rng(7)
    for _ in range(200):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        assert spectra.circular_potential(z) == \
            pytest.approx(-0.5 * spectra.log_moment_v(z), abs=1e-14)


def test_g_derivative_matches_finite_differences():
    h = 1e-6
    for s, t in ((0.2, 0.3), (1.5, 0.4), (-0.7, 0.1), (0.9, 1.2)):
        fd = (spectra.log_moment_v(complex(s + h, t))
              - spectra.log_moment_v(complex(s - h, t))) / (2 * h)
        assert spectra.g_derivative(s, t) == pytest.approx(fd, abs=1e-6)


def test_empirical_potential_routes_and_singularity():
    rng = np.random.default_rng(8)
    n, z = 24, 2.5 + 0.5j
    x = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    u = spectra.empirical_potential(x, z)
    lam = linalg.eigenvalues(x / math.sqrt(n)).eigenvalues
    assert u == pytest.approx(-float(np.mean(np.log(np.abs(lam - z)))),
                              abs=1e-10)
    # n = 4, so n^{-1/2} X = X / 2 has z as an exact eigenvalue
    d = np.diag([2.0 * z, 1.0, 2.0, 3.0])
    assert spectra.empirical_potential(d, z) is NEG_INFINITY


def test_potential_grid_flags_singular_points():
    x = np.diag([2.0, 4.0, 6.0])  # n^{-1/2} X has eigenvalues near sqrt(3)
    pts = [0.0 + 0.0j, complex(2.0 / math.sqrt(3.0), 0.0)]
    grid = spectra.potential_grid(x, pts)
    assert grid.n == 3
    assert not grid.singular[0] and grid.singular[1]
    assert math.isnan(grid.values[1]) and math.isfinite(grid.values[0])


def test_esd2d_and_radial_angular_stats():
    x = math.sqrt(4.0) * np.diag([1.0 + 0j, -1.0, 1j, -1j])
    esd = spectra.esd2d(x)
    assert esd.n == 4
    radii, angles = spectra.radial_angular_stats(esd)
    np.testing.assert_allclose(radii, np.ones(4), atol=1e-12)
    np.testing.assert_allclose(angles,
                               [-math.pi / 2, 0.0, math.pi / 2, math.pi],
                               atol=1e-12)
    assert esd.cdf(0.0, 0.0) == pytest.approx(0.5)  # -1 and -i qualify
    assert esd.cdf(-2.0, -2.0) == pytest.approx(0.0)
    assert esd.cdf(2.0, 2.0) == pytest.approx(1.0)


def test_esd1d_rejects_negative_spectra():
    v = spectra.Esd1D(np.array([3.0, 1.0, 2.0]))
    np.testing.assert_array_equal(v.values, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        spectra.Esd1D(np.array([-0.5, 1.0]))


def test_stieltjes_transform():
    esd = spectra.Esd1D(np.array([1.0, 2.0, 3.0]))
    z = 0.5 + 1.0j
    expected = np.mean(1.0 / (np.array([1.0, 2.0, 3.0]) - z))
    assert spectra.stieltjes(esd, z) == pytest.approx(expected)
    with pytest.raises(spectra.DomainError):
        spectra.stieltjes(esd, 1.0 - 0.5j)


def test_ks_statistics_against_scipy():
    rng = np.random.default_rng(9)
    a = rng.random(300)
    assert spectra.ks_statistic(a, spectra.uniform01_cdf) == \
        pytest.approx(stats.kstest(a, "uniform").statistic, abs=1e-12)
    b = rng.random(200)
    assert spectra.ks_two_sample(a, b) == \
        pytest.approx(stats.ks_2samp(a, b).statistic, abs=1e-12)


def test_reference_cdfs():
    assert spectra.uniform01_cdf(-1.0) == 0.0
    assert spectra.uniform01_cdf(0.25) == 0.25
    assert spectra.uniform01_cdf(2.0) == 1.0
    assert spectra.uniform_angle_cdf(-math.pi) == pytest.approx(0.0)
    assert spectra.uniform_angle_cdf(0.0) == pytest.approx(0.5)
    assert spectra.uniform_angle_cdf(math.pi) == pytest.approx(1.0)
