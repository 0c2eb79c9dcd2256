"""Unit tests for entry distributions and reproducible sampling."""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from rmtlab import ensembles
from rmtlab.ensembles import (BadSpec, EnsembleSpec, EntryDistribution,
                              sample_matrix, sample_realized, scaled_shifted,
                              shifted_matrix, truncate_entries, truncated_mean)


def all_dists():
    out = []
    for kind in ensembles.KINDS:
        if kind == "sparse-bernoulli":
            out.append(EntryDistribution(kind, p=0.2))
        elif kind == "student-t":
            out.append(EntryDistribution(kind, nu=5.0))
        else:
            out.append(EntryDistribution(kind))
    return out


@pytest.mark.parametrize("dist", all_dists(), ids=lambda d: d.kind)
def test_moments_match_metadata(dist):
    rng = np.random.default_rng(10)
    x = dist.sample(rng, 200_000)
    assert abs(np.mean(x)) < 0.02
    assert np.mean(np.abs(x) ** 2) == pytest.approx(dist.second_abs_moment,
                                                    abs=0.05)
    if math.isfinite(dist.third_abs_moment):
        # heavy-tailed empirical third moments converge slowly, be generous
        tol = 0.3 if dist.kind == "student-t" else 0.05
        assert np.mean(np.abs(x) ** 3) == pytest.approx(dist.third_abs_moment,
                                                        rel=tol)
    if dist.is_bounded:
        assert np.max(np.abs(x)) <= dist.entry_bound + 1e-12
    if not dist.is_complex:
        assert np.all(x.imag == 0.0)


def test_third_moment_closed_forms_against_quadrature():
    # complex-gaussian: |X| is Rayleigh with sigma = 1/sqrt(2)
    val, _ = integrate.quad(
        lambda r: r ** 3 * (2.0 * r) * math.exp(-r * r), 0, np.inf)
    assert EntryDistribution("complex-gaussian").third_abs_moment == \
        pytest.approx(val, abs=1e-10)
    nu = 5.0
    scale = math.sqrt((nu - 2.0) / nu)
    val, _ = integrate.quad(
        lambda x: abs(x) ** 3 * stats.t(df=nu, scale=scale).pdf(x),
        -np.inf, np.inf)
    assert EntryDistribution("student-t", nu=nu).third_abs_moment == \
        pytest.approx(val, rel=1e-8)


def test_bad_parameters_rejected():
    with pytest.raises(BadSpec):
        EntryDistribution("no-such-law")
    with pytest.raises(BadSpec):
        EntryDistribution("sparse-bernoulli")
    with pytest.raises(BadSpec):
        EntryDistribution("sparse-bernoulli", p=1.5)
    with pytest.raises(BadSpec):
        EntryDistribution("student-t", nu=-1.0)
    with pytest.raises(BadSpec):
        EnsembleSpec(n=1, dist=EntryDistribution("rademacher"))
    with pytest.raises(BadSpec):
        EnsembleSpec(n=8, dist=EntryDistribution("rademacher"),
                     epsilon_n_exponent=0.7)


def test_sampling_is_deterministic_per_trial():
    spec = EnsembleSpec(n=16, dist=EntryDistribution("complex-gaussian"),
                        master_seed=42)
    a = sample_matrix(spec, trial=3)
    b = sample_matrix(spec, trial=3)
    np.testing.assert_array_equal(a, b)
    c = sample_matrix(spec, trial=4)
    assert not np.array_equal(a, c)
    other = EnsembleSpec(n=16, dist=EntryDistribution("complex-gaussian"),
                         master_seed=43)
    assert not np.array_equal(a, sample_matrix(other, trial=3))
    with pytest.raises(BadSpec):
        sample_matrix(spec, trial=-1)


def test_truncation_threshold_and_idempotence():
    spec = EnsembleSpec(n=64, dist=EntryDistribution("student-t", nu=3.0),
                        truncate=True)
    assert spec.epsilon_n == pytest.approx(64 ** -0.05)
    assert spec.truncation_threshold == pytest.approx(8.0 * 64 ** -0.05)
    x = sample_matrix(spec, 0)
    t1, zeroed = truncate_entries(x, spec.epsilon_n)
    assert np.max(np.abs(t1)) <= spec.truncation_threshold
    assert zeroed == np.count_nonzero(np.abs(x) > spec.truncation_threshold)
    t2, zeroed2 = truncate_entries(t1, spec.epsilon_n)
    np.testing.assert_array_equal(t1, t2)
    assert zeroed2 == 0
    np.testing.assert_array_equal(sample_realized(spec, 0), t1)


def test_truncated_mean_zero_for_symmetric_laws():
    for dist in all_dists():
        assert truncated_mean(dist, 2.5) == 0.0 + 0.0j or \
            abs(truncated_mean(dist, 2.5)) < 1e-10


def test_shifted_and_scaled_matrices():
    n, z = 9, 1.0 + 2.0j
    x = np.arange(n * n, dtype=complex).reshape(n, n)
    w = shifted_matrix(x, z)
    np.testing.assert_allclose(w, x - z * math.sqrt(n) * np.eye(n))
    m = scaled_shifted(x, z)
    np.testing.assert_allclose(m, x / math.sqrt(n) - z * np.eye(n))
    # exact centering is a no-op for symmetric laws
    w2 = shifted_matrix(x, z, EntryDistribution("rademacher"),
                        truncation_threshold=1.0)
    np.testing.assert_allclose(w, w2)


def test_hermitian_product_is_hermitian_psd():
    rng = np.random.default_rng(11)
    m = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
    h = ensembles.hermitian_product(m)
    np.testing.assert_array_equal(h, h.conj().T)
    assert np.min(np.linalg.eigvalsh(h)) >= -1e-10
