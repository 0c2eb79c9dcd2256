"""Geometry of unit vectors: sparsity, spread parts and the essential LCD.

A unit vector in C^n is classified as sparse (small support),
compressible (close to a sparse vector) or incompressible.  For
incompressible vectors many coordinates have modulus of order
n**(-1/2); ``evenly_spread_witness`` exhibits such a set of coordinates
explicitly.  The essential least common denominator measures how close
a real coordinate profile can be scaled to the nonzero integers; large
values certify arithmetic unstructure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Classification(enum.Enum):
    SPARSE = "sparse"
    COMPRESSIBLE = "compressible"
    INCOMPRESSIBLE = "incompressible"


class WitnessNotFound(RuntimeError):
    """No evenly-spread coordinate set of the guaranteed size exists."""


class BadParams(ValueError):
    """LCD search parameters violate the certification requirement."""


@dataclass(frozen=True)
class UnitVector:
    """A vector in C^n normalized to unit Euclidean norm on construction."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=complex)
        norm = np.linalg.norm(c)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        object.__setattr__(self, "coords", c / norm)

    @property
    def n(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class SpreadPart:
    """Coordinates k with K1 <= sqrt(n) |b_k| <= K2, rescaled by sqrt(n).

    ``real_part``/``imag_part`` are the rescaled real and imaginary
    coordinate profiles on the retained set, ``modulus`` the rescaled
    moduli.
    """

    indices: np.ndarray
    values: np.ndarray
    real_part: np.ndarray
    imag_part: np.ndarray
    modulus: np.ndarray
    k1: float
    k2: float


@dataclass(frozen=True)
class LcdParams:
    """Search parameters for the essential LCD.

    ``grid_step`` must not exceed ``alpha / 4`` so the scan cannot step
    over an admissible window; internally the step is further divided by
    the largest coordinate magnitude.
    """

    alpha: float
    tau: float = 0.0
    t_max: float = 1e4
    grid_step: float | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise BadParams("alpha must lie in (0, 1)")
        if self.tau < 0:
            raise BadParams("tau must be >= 0")
        step = self.grid_step if self.grid_step is not None else self.alpha / 4.0
        if step > self.alpha / 4.0:
            raise BadParams("grid_step must be <= alpha / 4")
        object.__setattr__(self, "grid_step", step)


def distance_to_sparse(b: UnitVector, gamma: float) -> float:
    """Euclidean distance from b to the vectors with support <= floor(gamma n).

    Equals the norm of b with its floor(gamma n) largest-modulus
    coordinates removed; modulus ties are broken toward the lower index.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    k = int(math.floor(gamma * b.n))
    if k <= 0:
        return 1.0
    moduli = np.abs(b.coords)
    # stable sort on -modulus keeps the lower index first among ties
    order = np.argsort(-moduli, kind="stable")
    removed = order[k:]
    return float(np.linalg.norm(b.coords[removed]))


def support_size(b: UnitVector) -> int:
    return int(np.count_nonzero(b.coords))


def classify(b: UnitVector, gamma: float, rho: float) -> Classification:
    """Sparse / compressible / incompressible trichotomy.

    The boundary case distance == rho counts as compressible (closed
    inequality).
    """
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must lie in (0, 1)")
    if support_size(b) <= gamma * b.n:
        return Classification.SPARSE
    if distance_to_sparse(b, gamma) <= rho:
        return Classification.COMPRESSIBLE
    return Classification.INCOMPRESSIBLE


def spread_part(b: UnitVector, k1: float, k2: float) -> SpreadPart:
    """Retain exactly the coordinates with K1 <= sqrt(n) |b_k| <= K2."""
    if not 0.0 < k1 <= k2:
        raise ValueError("need 0 < K1 <= K2")
    root_n = math.sqrt(b.n)
    scaled = root_n * b.coords
    mod = np.abs(scaled)
    mask = (mod >= k1) & (mod <= k2)
    idx = np.nonzero(mask)[0]
    vals = scaled[idx]
    return SpreadPart(indices=idx, values=vals, real_part=vals.real.copy(),
                      imag_part=vals.imag.copy(), modulus=np.abs(vals),
                      k1=k1, k2=k2)


def _dist_to_nonzero_integers(x: np.ndarray) -> np.ndarray:
    """Componentwise distance to the set Z \\ {0}."""
    r = np.abs(x)
    lo = np.maximum(1.0, np.floor(r))
    hi = np.maximum(1.0, np.ceil(r))
    return np.minimum(np.abs(r - lo), np.abs(r - hi))


def _lcd_admissible(t, v: np.ndarray, alpha: float, tau: float):
    """Whether all but tau coordinates of t*v are alpha-close to Z\\{0}.

    ``t`` may be a scalar or an array of candidate scalings.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    d = _dist_to_nonzero_integers(t[:, None] * v[None, :])
    bad = np.count_nonzero(d > alpha, axis=1)
    return bad <= tau


def lcd(v, params: LcdParams) -> float:
    """Essential least common denominator of a real coordinate profile.

    Scans a certified grid over (0, t_max] for the first admissible
    scaling, then refines the boundary by bisection to 1e-9.  Returns
    ``inf`` when no admissible t exists below the ceiling and 0 when the
    exception budget tau already covers every coordinate.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("v must be a nonempty 1-D real vector")
    if params.tau >= v.size:
        return 0.0
    vmax = float(np.max(np.abs(v)))
    if vmax == 0.0:
        return math.inf
    step = params.grid_step / max(1.0, vmax)
    grid = np.arange(step, params.t_max + step, step)
    # chunked scan keeps memory bounded for small steps
    chunk = max(1, int(2e6 // max(1, v.size)))
    hit = None
    for start in range(0, len(grid), chunk):
        ts = grid[start:start + chunk]
        ok = _lcd_admissible(ts, v, params.alpha, params.tau)
        w = np.nonzero(ok)[0]
        if w.size:
            hit = float(ts[w[0]])
            break
    if hit is None:
        return math.inf
    lo, hi = max(hit - step, 0.0), hit
    while hi - lo > 1e-9:
        mid = (lo + hi) / 2.0
        if _lcd_admissible(mid, v, params.alpha, params.tau)[0]:
            hi = mid
        else:
            lo = mid
    return hi


def evenly_spread_witness(b: UnitVector, gamma: float,
                          rho: float) -> tuple[int, np.ndarray]:
    """Exhibit a large set of coordinates of modulus ~ n**(-1/2).

    For incompressible b there is a coordinate part j in {1 (real),
    2 (imaginary)} and an index set sigma1 with |sigma1| >= rho^2 gamma
    n / 4 so that rho / (2 sqrt(2n)) <= |b_jk| <= 1 / sqrt(gamma n) on
    sigma1.  Raises WitnessNotFound if no such set exists, which would
    falsify the guarantee.
    """
    if classify(b, gamma, rho) is not Classification.INCOMPRESSIBLE:
        raise ValueError("witness is only guaranteed for incompressible vectors")
    n = b.n
    lower = rho / (2.0 * math.sqrt(2.0 * n))
    upper = 1.0 / math.sqrt(gamma * n)
    need = rho * rho * gamma * n / 4.0
    best_j, best_idx = 0, np.empty(0, dtype=int)
    for j, part in ((1, b.coords.real), (2, b.coords.imag)):
        mask = (np.abs(part) >= lower) & (np.abs(part) <= upper) \
            & (np.abs(b.coords) <= upper)
        idx = np.nonzero(mask)[0]
        if len(idx) > len(best_idx):
            best_j, best_idx = j, idx
    if len(best_idx) < need:
        raise WitnessNotFound(
            f"largest evenly-spread set has {len(best_idx)} coordinates, "
            f"needed {need:.1f}")
    return best_j, best_idx
