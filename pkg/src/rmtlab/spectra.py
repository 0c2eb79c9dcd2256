"""Empirical spectral distributions and their closed-form limit objects.

The 2-D empirical spectral distribution (ESD) of n**(-1/2) X, its
logarithmic potential, the Stieltjes transform of 1-D spectra, and the
exact limit-law quantities: the ring integral of log|z - r e^{i theta}|,
the logarithmic potential of the uniform unit-disk law, the log-moment
of the limiting singular-value-squared law at shift z, and the
derivative g(s,t) of that log-moment along the real direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .ensembles import scaled_shifted
from .linalg import NEG_INFINITY


class DomainError(ValueError):
    """Argument outside the mathematical domain of the transform."""


@dataclass(frozen=True)
class Esd2D:
    """Point cloud of eigenvalues in the complex plane, mass 1/n each."""

    eigenvalues: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def cdf(self, x: float, y: float) -> float:
        """mu_n(x, y) = fraction of eigenvalues with Re <= x and Im <= y."""
        lam = self.eigenvalues
        return float(np.mean((lam.real <= x) & (lam.imag <= y)))


@dataclass(frozen=True)
class Esd1D:
    """Sorted nonnegative spectrum of a Hermitian PSD matrix."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))
        if v.size and v[0] < -1e-12:
            raise ValueError(f"negative spectrum value {v[0]}")
        object.__setattr__(self, "values", np.clip(v, 0.0, None))

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PotentialGrid:
    """Logarithmic potential evaluated on a grid of complex points.

    ``singular`` flags grid points where the matrix n**(-1/2) X - z I was
    numerically singular; their ``values`` entries are NaN placeholders
    and must be excluded from aggregates.
    """

    points: np.ndarray
    values: np.ndarray
    singular: np.ndarray
    n: int


def esd2d(x: np.ndarray) -> Esd2D:
    """ESD of n**(-1/2) X."""
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    vals = linalg.eigenvalues(x / math.sqrt(n)).eigenvalues
    return Esd2D(eigenvalues=vals)


def radial_angular_stats(esd: Esd2D) -> tuple[np.ndarray, np.ndarray]:
    """Sorted moduli and sorted arguments of the eigenvalue cloud.

    Under the circular law the squared radii tend to Uniform[0,1] and
    the angles to Uniform(-pi, pi].
    """
    if esd.n < 2:
        raise ValueError("need at least 2 eigenvalues")
    radii = np.sort(np.abs(esd.eigenvalues))
    angles = np.sort(np.angle(esd.eigenvalues))
    return radii, angles


def stieltjes(esd: Esd1D, z: complex) -> complex:
    """m(z) = (1/n) sum 1/(lambda_k - z) for Im z > 0."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("Stieltjes transform requires Im z > 0")
    return complex(np.mean(1.0 / (esd.values - z)))


def empirical_potential(x: np.ndarray, z: complex):
    """Logarithmic potential of the ESD of n**(-1/2) X at the point z.

    Equals -(1/n) log|det(n**(-1/2) X - z I)|, evaluated through the
    singular values.  Returns the NEG_INFINITY sentinel when the shifted
    matrix is numerically singular (z hits an eigenvalue).
    """
    x = np.asarray(x, dtype=complex)
    n = x.shape[0]
    ld = linalg.log_abs_det(scaled_shifted(x, z))
    if ld is NEG_INFINITY:
        return NEG_INFINITY
    return -ld / n


def potential_grid(x: np.ndarray, points) -> PotentialGrid:
    """Evaluate the empirical potential on a grid of z points."""
    points = np.asarray(points, dtype=complex)
    values = np.empty(points.shape, dtype=float)
    singular = np.zeros(points.shape, dtype=bool)
    for i, z in enumerate(points):
        u = empirical_potential(x, z)
        if u is NEG_INFINITY:
            singular[i] = True
            values[i] = math.nan
        else:
            values[i] = u
    return PotentialGrid(points=points, values=values, singular=singular,
                         n=np.asarray(x).shape[0])


def ring_integral(z: complex, r: float) -> float:
    """Integral over theta in (-pi, pi] of log|z - r e^{i theta}|.

    Equals 2 pi log r inside the circle (|z| <= r) and 2 pi log|z|
    outside.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    az = abs(z)
    if az <= r:
        return 2.0 * math.pi * math.log(r)
    return 2.0 * math.pi * math.log(az)


def circular_potential(z: complex) -> float:
    """Logarithmic potential of the uniform unit-disk law at z."""
    az = abs(z)
    if az <= 1.0:
        return 0.5 * (1.0 - az * az)
    return -math.log(az)


def log_moment_v(z: complex) -> float:
    """Integral of log x against the limit law of the squared singular
    values of n**(-1/2) X - z I: |z|^2 - 1 inside the unit circle,
    log|z|^2 outside."""
    az = abs(z)
    if az <= 1.0:
        return az * az - 1.0
    return 2.0 * math.log(az)


def g_derivative(s: float, t: float) -> float:
    """d/ds of log_moment_v(s + i t): 2s/(s^2+t^2) outside the unit
    circle, 2s inside."""
    r2 = s * s + t * t
    if r2 > 1.0:
        return 2.0 * s / r2
    return 2.0 * s


def ks_statistic(sample: np.ndarray, cdf) -> float:
    """Two-sided one-sample Kolmogorov-Smirnov statistic.

    Standard sup-over-jumps evaluation on the sorted sample: the larger
    of max(i/n - F(x_i)) and max(F(x_i) - (i-1)/n).
    """
    x = np.sort(np.asarray(sample, dtype=float))
    n = len(x)
    f = np.asarray([cdf(v) for v in x], dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_two_sample(a: np.ndarray, b: np.ndarray) -> float:
    """Two-sample KS distance between empirical CDFs."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / len(a)
    fb = np.searchsorted(b, grid, side="right") / len(b)
    return float(np.max(np.abs(fa - fb)))


def uniform01_cdf(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def uniform_angle_cdf(theta: float) -> float:
    return min(max((theta + math.pi) / (2.0 * math.pi), 0.0), 1.0)
