"""Small-ball probability estimation and its analytic upper bounds.

``empirical_smallball`` estimates the anti-concentration level

    P_eps(b) = sup_v P(|sum_k b_k (eta_k - a_k) - v| <= eps)

by Monte Carlo over the weighted sum, with the sup over the continuum of
centers replaced by a search over a square grid of pitch eps/2 laid over
the sample cloud.  The analytic bounds (central-limit, LCD-based, and
the characteristic-function integral) are pure arithmetic; their
existential constants C, c are explicit inputs, and experiment code
reports the minimal C that makes a bound dominate the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.spatial import cKDTree

from .ensembles import BadSpec, EntryDistribution


@dataclass(frozen=True)
class SmallBallEstimate:
    """Empirical concentration level with its uncertainty budget.

    ``half_width`` is the 95% binomial radius plus a data-driven grid
    bias term: the extra mass picked up when the disk at the best center
    grows by half the grid diagonal (the distance by which the grid can
    miss the true optimizer).
    """

    p_hat: float
    epsilon: float
    trials: int
    half_width: float
    mode_center: complex


@dataclass(frozen=True)
class BoundParams:
    """Constants and entry-law moments feeding the analytic bounds."""

    C: float = 1.0
    c: float = 1.0
    alpha: float = 0.1
    beta: float = 0.25
    k1: float = 1.0
    k2: float = 1.0
    third_moment: float = 1.0
    sigma1_sq: float = 1.0
    sigma2_sq: float = 0.0
    sigma12: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.alpha < self.k1 / (6.0 * self.k2):
            raise ValueError("need 0 < alpha < K1 / (6 K2)")
        if not 0.0 < self.beta < 0.5:
            raise ValueError("need 0 < beta < 1/2")
        if self.sigma1_sq * self.sigma2_sq < self.sigma12 ** 2 - 1e-15:
            raise ValueError("covariance matrix must be PSD")


def sample_weighted_sums(b: np.ndarray, dist: EntryDistribution,
                         shift: np.ndarray | None, trials: int,
                         seed: int) -> np.ndarray:
    """Draw S = sum_k b_k (eta_k - a_k), ``trials`` times."""
    b = np.asarray(b, dtype=complex)
    if b.size == 0:
        raise BadSpec("coefficient vector must be nonempty")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    eta = dist.sample(rng, (trials, b.size))
    if shift is not None:
        eta = eta - np.asarray(shift, dtype=complex)[None, :]
    return eta @ b


def _grid_sup(samples: np.ndarray, epsilon: float,
              pitch: float) -> tuple[int, complex, int]:
    """Max disk count over occupied-cell centers of a pitch-sized grid.

    Returns (best count at radius eps, best center, count at the best
    center for radius eps + pitch * sqrt(2)/2) -- the inflated count
    feeds the grid-bias term.
    """
    pts = np.column_stack([samples.real, samples.imag])
    cells = np.unique(np.round(pts / pitch), axis=0)
    centers = cells * pitch
    tree = cKDTree(pts)
    counts = tree.query_ball_point(centers, r=epsilon, return_length=True)
    best = int(np.argmax(counts))
    center = complex(centers[best, 0], centers[best, 1])
    inflated = int(tree.query_ball_point(
        centers[best], r=epsilon + pitch * math.sqrt(2.0) / 2.0,
        return_length=True))
    return int(counts[best]), center, inflated


def empirical_smallball(b, dist: EntryDistribution, epsilon: float,
                        trials: int, seed: int,
                        shift=None, pitch: float | None = None) -> SmallBallEstimate:
    """Monte Carlo estimate of P_eps(b).

    ``pitch`` defaults to eps/2; passing a fixed pitch makes estimates
    at different eps exactly comparable (monotone in eps on a fixed
    sample cloud).
    """
    if trials < 1000:
        raise BadSpec("need at least 1000 trials")
    if epsilon <= 0:
        raise BadSpec("epsilon must be positive")
    s = sample_weighted_sums(b, dist, shift, trials, seed)
    if pitch is None:
        pitch = epsilon / 2.0
    count, center, inflated = _grid_sup(s, epsilon, pitch)
    p_hat = count / trials
    binom = 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
    bias = (inflated - count) / trials
    return SmallBallEstimate(p_hat=p_hat, epsilon=epsilon, trials=trials,
                             half_width=binom + bias, mode_center=center)


def _clamp01(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def berry_esseen_bound(n: int, epsilon: float, k1: float, k2: float,
                       C: float) -> float:
    """Central-limit small-ball bound for K1 <= |b_k| <= K2:
    (C / sqrt(n)) (eps / K1 + (K2 / K1)^3), clamped to [0, 1]."""
    if n < 1 or k1 <= 0 or k2 < k1:
        raise ValueError("need n >= 1 and 0 < K1 <= K2")
    return _clamp01(C / math.sqrt(n) * (epsilon / k1 + (k2 / k1) ** 3))


def lcd_bound(epsilon: float, n: int, d: float, alpha: float, beta: float,
              C: float, c: float) -> float:
    """LCD small-ball bound:
    (C / sqrt(beta)) (eps + 1 / (sqrt(n) D)) + C exp(-c alpha^2 beta n),
    with the 1/D term vanishing at D = inf.  Clamped to [0, 1]."""
    if d <= 0:
        raise ValueError("D must be positive (possibly inf)")
    inv_d = 0.0 if math.isinf(d) else 1.0 / (math.sqrt(n) * d)
    val = C / math.sqrt(beta) * (epsilon + inv_d) \
        + C * math.exp(-c * alpha * alpha * beta * n)
    return _clamp01(val)


def characteristic_factor(dist: EntryDistribution, bk: float):
    """|phi_k(t)| = |E exp(i bk eta t)| for laws with a closed form."""
    if dist.kind == "rademacher":
        return lambda t: np.abs(np.cos(bk * t))
    if dist.kind == "real-gaussian":
        return lambda t: np.exp(-bk * bk * t * t / 2.0)
    raise BadSpec(f"no closed-form characteristic factor for {dist.kind!r}")


def esseen_integral_bound(b, epsilon: float, dist: EntryDistribution,
                          C: float) -> float:
    """Characteristic-function small-ball bound:
    C * integral over |t| <= pi/2 of prod_k |phi_k(t / eps)| dt."""
    b = np.asarray(b, dtype=float)
    if b.size == 0:
        raise BadSpec("coefficient vector must be nonempty")
    factors = [characteristic_factor(dist, bk) for bk in b]

    def integrand(t):
        u = t / epsilon
        out = 1.0
        for f in factors:
            out *= f(u)
        return out

    val, _ = integrate.quad(integrand, -math.pi / 2.0, math.pi / 2.0,
                            epsabs=1e-8, limit=200)
    return C * val


def paley_zygmund_mu(lam: float, B: float) -> float:
    """min over t >= 0 of (t^2 + 1 - lam^2)^3 / (t^3 + 1 + B)^2.

    A lower bound on P(|S| > lam) for unit-variance sums with third
    moment at most B.  Grid search on [0, 100] at step 1e-3, then
    golden-section refinement; the t -> 0 boundary value
    (1 - lam^2)^3 / (1 + B)^2 and the t -> inf limit 1 are included
    analytically.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError("lambda must lie in (0, 1)")
    if B <= 0:
        raise ValueError("B must be positive")

    def f(t):
        return (t * t + 1.0 - lam * lam) ** 3 / (t ** 3 + 1.0 + B) ** 2

    ts = np.arange(0.0, 100.0 + 1e-3, 1e-3)
    vals = (ts * ts + 1.0 - lam * lam) ** 3 / (ts ** 3 + 1.0 + B) ** 2
    i = int(np.argmin(vals))
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, len(ts) - 1)]
    # golden-section refinement of the bracketing interval
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b_ = lo, hi
    c = b_ - invphi * (b_ - a)
    d = a + invphi * (b_ - a)
    while b_ - a > 1e-12:
        if f(c) < f(d):
            b_, d = d, c
            c = b_ - invphi * (b_ - a)
        else:
            a, c = c, d
            d = a + invphi * (b_ - a)
    interior = f((a + b_) / 2.0)
    return float(min(interior, f(0.0), 1.0))
