"""Unit tests for vector geometry: sparsity, spread parts and the LCD."""

import math

import numpy as np
import pytest

from rmtlab import vectors
from rmtlab.vectors import (BadParams, Classification, LcdParams, UnitVector,
                            WitnessNotFound)


def test_unit_vector_normalizes():
    v = UnitVector(np.array([3.0, 4.0]))
    assert np.linalg.norm(v.coords) == pytest.approx(1.0)
    assert v.n == 2
    with pytest.raises(ValueError):
        UnitVector(np.zeros(3))


def test_distance_to_sparse_known_values():
    b = UnitVector(np.array([3.0, 4.0, 0.0, 0.0]))
    # gamma = 0.3 -> support budget floor(1.2) = 1, drop everything but 4
    assert vectors.distance_to_sparse(b, 0.3) == pytest.approx(0.6)
    assert vectors.distance_to_sparse(b, 0.5) == pytest.approx(0.0)
    # budget 0 means distance to the zero vector
    small = UnitVector(np.array([1.0, 1.0, 1.0]))
    assert vectors.distance_to_sparse(small, 0.2) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        vectors.distance_to_sparse(b, 1.5)


def test_distance_to_sparse_tie_break_is_stable():
    b = UnitVector(np.array([1.0, 1.0, 1.0, 1.0]))
    # keep one of four equal-modulus coordinates: lower index retained
    assert vectors.distance_to_sparse(b, 0.25) == \
        pytest.approx(math.sqrt(3.0) / 2.0)


def test_classification_trichotomy():
    e1 = UnitVector(np.eye(8)[0])
    assert vectors.classify(e1, 0.25, 0.3) is Classification.SPARSE
    near = np.eye(8)[0] * 10.0
    near[1:] = 0.1
    nv = UnitVector(near)
    assert vectors.classify(nv, 0.25, 0.3) is Classification.COMPRESSIBLE
    flat = UnitVector(np.ones(8))
    assert vectors.classify(flat, 0.25, 0.3) is Classification.INCOMPRESSIBLE
    with pytest.raises(ValueError):
        vectors.classify(flat, 0.25, 1.5)


def test_spread_part_membership():
    b = UnitVector(np.array([1.0, 1.0, 1.0, 0.01, 10.0], dtype=complex))
    part = vectors.spread_part(b, 0.2, 0.5)
    scaled = math.sqrt(b.n) * np.abs(b.coords)
    expected = np.nonzero((scaled >= 0.2) & (scaled <= 0.5))[0]
    np.testing.assert_array_equal(part.indices, expected)
    np.testing.assert_allclose(part.modulus,
                               scaled[expected], atol=1e-14)
    np.testing.assert_allclose(part.real_part + 1j * part.imag_part,
                               part.values, atol=1e-14)
    with pytest.raises(ValueError):
        vectors.spread_part(b, 0.5, 0.2)


def test_lcd_params_validation():
    with pytest.raises(BadParams):
        LcdParams(alpha=1.5)
    with pytest.raises(BadParams):
        LcdParams(alpha=0.1, tau=-1.0)
    with pytest.raises(BadParams):
        LcdParams(alpha=0.1, grid_step=0.5)  # > alpha / 4
    p = LcdParams(alpha=0.2)
    assert p.grid_step == pytest.approx(0.05)


def test_lcd_point_values():
    p = LcdParams(alpha=0.1, t_max=50.0)
    # 0.9 * (1,1,1) = (0.9, 0.9, 0.9), each 0.1-close to 1
    assert vectors.lcd(np.array([1.0, 1.0, 1.0]), p) == \
        pytest.approx(0.9, abs=1e-6)
    # at t = 1.9 the profile (0.95, 1.9) is admissible, below it is not
    assert vectors.lcd(np.array([0.5, 1.0]), p) == pytest.approx(1.9, abs=1e-6)
    # single integer coordinate: first admissible scaling is 1 - alpha
    assert vectors.lcd(np.array([1.0]), p) == pytest.approx(0.9, abs=1e-6)


def test_lcd_edge_cases():
    p = LcdParams(alpha=0.1, t_max=50.0)
    assert vectors.lcd(np.array([0.0, 0.0]), p) == math.inf
    assert vectors.lcd(np.array([1.0, 1.0]),
                       LcdParams(alpha=0.1, tau=2.0)) == 0.0
    # irrational gap with a tiny ceiling: no admissible scaling
    tight = LcdParams(alpha=0.01, t_max=0.5)
    assert vectors.lcd(np.array([1.0, math.sqrt(2.0)]), tight) == math.inf
    with pytest.raises(ValueError):
        vectors.lcd(np.array([]), p)
    with pytest.raises(ValueError):
        vectors.lcd(np.ones((2, 2)), p)


def test_lcd_monotone_in_alpha_and_tau():
    rng = np.random.default_rng(21)
    for _ in range(25):
        v = rng.uniform(0.5, 1.5, int(rng.integers(2, 6)))
        base = vectors.lcd(v, LcdParams(alpha=0.1, t_max=50.0))
        if math.isinf(base):
            continue
        # relaxed parameters can land one grid step above the strict value
        slack = 0.05 / max(1.0, float(np.max(np.abs(v))))
        assert vectors.lcd(v, LcdParams(alpha=0.2, t_max=50.0)) <= base + slack
        assert vectors.lcd(v, LcdParams(alpha=0.1, tau=1.0,
                                        t_max=50.0)) <= base + slack


def test_evenly_spread_witness_guarantee():
    rng = np.random.default_rng(22)
    n, gamma, rho = 64, 0.3, 0.3
    b = UnitVector(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    assert vectors.classify(b, gamma, rho) is Classification.INCOMPRESSIBLE
    j, sigma1 = vectors.evenly_spread_witness(b, gamma, rho)
    assert j in (1, 2)
    assert len(sigma1) >= rho * rho * gamma * n / 4.0
    part = b.coords.real if j == 1 else b.coords.imag
    lower = rho / (2.0 * math.sqrt(2.0 * n))
    upper = 1.0 / math.sqrt(gamma * n)
    assert np.all(np.abs(part[sigma1]) >= lower)
    assert np.all(np.abs(part[sigma1]) <= upper)
    assert np.all(np.abs(b.coords[sigma1]) <= upper)


def test_evenly_spread_witness_rejects_compressible():
    e1 = UnitVector(np.eye(16)[0])
    with pytest.raises(ValueError):
        vectors.evenly_spread_witness(e1, 0.25, 0.3)
