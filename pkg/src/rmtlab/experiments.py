"""Seed-reproducible Monte Carlo drivers for the limit-law experiments.

Each ``run_*`` function maps a pure per-trial task over a work queue of
trial indices (optionally on a thread pool; LAPACK releases the GIL) and
reduces the records into a :class:`Summary`.  Trial i always uses the
PRNG stream derived from (master_seed, i), and records are merged in
index order, so the output is bit-identical for any worker count.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg, spectra
from .ensembles import (BadSpec, EnsembleSpec, EntryDistribution,
                        hermitian_product, sample_realized, scaled_shifted,
                        shifted_matrix, truncated_mean)
from .linalg import NEG_INFINITY

EXPERIMENT_KINDS = ("circular-law", "smin-tail", "norm-bound",
                    "potential-convergence", "hermitian-esd-stability",
                    "singularity")

#: Annulus around the unit circle excluded from potential grids; the
#: finite-n fluctuation of log|det| peaks there.
ANNULUS_LO, ANNULUS_HI = 0.8, 1.2

#: s_n below this counts a trial as singular in potential experiments.
SINGULAR_FLOOR = 1e-300


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a matrix law plus kind-specific parameters."""

    kind: str
    spec: EnsembleSpec
    trials: int = 8
    z: complex = 0.0 + 0.0j
    epsilon_grid: tuple = ()
    K: float = 4.41
    z_grid: tuple = ()

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise BadSpec(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise BadSpec("trial count must be >= 1")
        eg = tuple(float(e) for e in self.epsilon_grid)
        if any(e <= 0 for e in eg) or list(eg) != sorted(set(eg)):
            if eg:
                raise BadSpec("epsilon grid must be strictly increasing and positive")
        object.__setattr__(self, "epsilon_grid", eg)
        object.__setattr__(self, "z_grid", tuple(complex(z) for z in self.z_grid))

    def canonical(self) -> dict:
        """Canonical plain-data form, the input of the config hash."""
        d = self.spec.dist
        return {
            "kind": self.kind,
            "n": self.spec.n,
            "dist": d.kind,
            "dist_p": d.p,
            "dist_nu": d.nu,
            "truncate": self.spec.truncate,
            "delta0": self.spec.epsilon_n_exponent,
            "shift_z": [self.spec.shift_z.real, self.spec.shift_z.imag],
            "master_seed": self.spec.master_seed,
            "trials": self.trials,
            "z": [self.z.real, self.z.imag],
            "epsilon_grid": list(self.epsilon_grid),
            "K": self.K,
            "z_grid": [[w.real, w.imag] for w in self.z_grid],
        }

    def config_hash(self) -> str:
        """Stable 64-bit hex digest of the canonical form."""
        blob = json.dumps(self.canonical(), sort_keys=True,
                          separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class TrialRecord:
    """One Monte Carlo observation, reproducible from (config, index)."""

    index: int
    values: dict


@dataclass
class Summary:
    """Aggregated experiment output."""

    kind: str
    config: dict
    config_hash: str
    trials: int
    records: list
    stats: dict
    wall_time: float = 0.0

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "config": self.config,
            "config_hash": self.config_hash,
            "trials": self.trials,
            "stats": self.stats,
        }
        return json.dumps(payload, sort_keys=True, indent=2,
                          allow_nan=True, default=float)


def worker_count() -> int:
    """Worker cap: RMT_LAB_THREADS, else the CPU count."""
    env = os.environ.get("RMT_LAB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _map_trials(task, trials: int) -> list:
    """Evaluate ``task(i)`` for every trial index, in index order."""
    workers = worker_count()
    if workers == 1:
        return [task(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, range(trials)))


def binomial_ci(successes: int, trials: int) -> tuple[float, float]:
    """Normal-approximation 95% interval for a binomial proportion."""
    p = successes / trials
    hw = 1.96 * math.sqrt(p * (1.0 - p) / trials)
    return max(0.0, p - hw), min(1.0, p + hw)


def _finish(config: ExperimentConfig, records: list, stats: dict,
            t0: float) -> Summary:
    return Summary(kind=config.kind, config=config.canonical(),
                   config_hash=config.config_hash(), trials=config.trials,
                   records=records, stats=stats, wall_time=time.time() - t0)


# ---------------------------------------------------------------------------


def run_circular_law(config: ExperimentConfig) -> Summary:
    """KS distances of the eigenvalue cloud against the unit-disk law."""
    t0 = time.time()

    def task(i: int) -> TrialRecord:
        x = sample_realized(config.spec, i)
        radii, angles = spectra.radial_angular_stats(spectra.esd2d(x))
        ks_r = spectra.ks_statistic(radii ** 2, spectra.uniform01_cdf)
        ks_a = spectra.ks_statistic(angles, spectra.uniform_angle_cdf)
        return TrialRecord(i, {"ks_radii_sq": ks_r, "ks_angles": ks_a})

    records = _map_trials(task, config.trials)
    ks_r = [r.values["ks_radii_sq"] for r in records]
    ks_a = [r.values["ks_angles"] for r in records]
    stats = {
        "median_ks_radii_sq": float(np.median(ks_r)),
        "median_ks_angles": float(np.median(ks_a)),
        "mean_ks_radii_sq": float(np.mean(ks_r)),
        "mean_ks_angles": float(np.mean(ks_a)),
    }
    return _finish(config, records, stats, t0)


def run_smin_tail(config: ExperimentConfig) -> Summary:
    """Empirical tail P(s_n(W) <= eps n**(-1/2)) over an epsilon grid.

    W = X^ - E[X^] - z sqrt(n) I per the truncation-and-shift scheme;
    the per-trial observable is sqrt(n) * s_n(W).
    """
    t0 = time.time()
    if not config.epsilon_grid:
        raise BadSpec("smin-tail needs an epsilon grid")
    spec = config.spec
    threshold = spec.truncation_threshold if spec.truncate else None

    def task(i: int) -> TrialRecord:
        x = sample_realized(spec, i)
        w = shifted_matrix(x, config.z, spec.dist, threshold)
        sn = linalg.smallest_singular_value(w)
        return TrialRecord(i, {"sqrt_n_smin": math.sqrt(spec.n) * sn})

    records = _map_trials(task, config.trials)
    obs = np.array([r.values["sqrt_n_smin"] for r in records])
    curve = []
    for eps in config.epsilon_grid:
        hits = int(np.count_nonzero(obs <= eps))
        lo, hi = binomial_ci(hits, config.trials)
        curve.append({"epsilon": eps, "p_hat": hits / config.trials,
                      "ci_lo": lo, "ci_hi": hi})
    stats = {"tail_curve": curve,
             "median_sqrt_n_smin": float(np.median(obs))}
    return _finish(config, records, stats, t0)


def run_norm_bound(config: ExperimentConfig) -> Summary:
    """Largest eigenvalue of XX*/n and the norm of n**(-1/2) X per trial.

    Both come from one Hermitian eigensolve of XX*/n; the spectral norm
    of n**(-1/2) X is the square root of lambda_max.
    """
    t0 = time.time()
    spec = config.spec

    def task(i: int) -> TrialRecord:
        x = sample_realized(spec, i)
        h = hermitian_product(x) / spec.n
        lam_max = float(np.linalg.eigvalsh(h)[-1])
        return TrialRecord(i, {"lambda_max": lam_max,
                               "spectral_norm": math.sqrt(lam_max)})

    records = _map_trials(task, config.trials)
    lam = np.array([r.values["lambda_max"] for r in records])
    norms = np.array([r.values["spectral_norm"] for r in records])
    exceed = int(np.count_nonzero(lam > config.K))
    stats = {
        "K": config.K,
        "exceedance_count": exceed,
        "exceedance_frequency": exceed / config.trials,
        "norm_min": float(norms.min()),
        "norm_max": float(norms.max()),
        "norm_mean": float(norms.mean()),
    }
    return _finish(config, records, stats, t0)


def run_potential_convergence(config: ExperimentConfig) -> Summary:
    """Deviation of the empirical log-potential from the disk-law potential.

    Grid points inside the excluded annulus are rejected up front;
    singular trials (s_n at the underflow floor) are flagged and left
    out of the deviation aggregate.
    """
    t0 = time.time()
    if not config.z_grid:
        raise BadSpec("potential-convergence needs a z grid")
    for z in config.z_grid:
        if ANNULUS_LO < abs(z) < ANNULUS_HI:
            raise BadSpec(f"grid point {z} lies in the excluded annulus "
                          f"{ANNULUS_LO} < |z| < {ANNULUS_HI}")
    spec = config.spec

    def task(i: int) -> TrialRecord:
        x = sample_realized(spec, i)
        devs, singular = [], 0
        for z in config.z_grid:
            u = spectra.empirical_potential(x, z)
            if u is NEG_INFINITY:
                singular += 1
                continue
            devs.append(abs(u - spectra.circular_potential(z)))
        return TrialRecord(i, {
            "max_abs_deviation": max(devs) if devs else math.nan,
            "singular_points": singular,
        })

    records = _map_trials(task, config.trials)
    devs = [r.values["max_abs_deviation"] for r in records
            if not math.isnan(r.values["max_abs_deviation"])]
    stats = {
        "max_deviation_per_trial": devs,
        "median_max_deviation": float(np.median(devs)) if devs else math.nan,
        "singular_trials": sum(r.values["singular_points"] > 0 for r in records),
    }
    return _finish(config, records, stats, t0)


def run_hermitian_esd_stability(config: ExperimentConfig) -> Summary:
    """Stability in n of the spectrum of (n**(-1/2) X - z I)(...)^*.

    Per trial, compares the empirical spectral distribution at n against
    an independent draw at 2n (two-sample KS) and the empirical
    log-moment of the spectrum against its closed-form limit.
    """
    t0 = time.time()
    spec = config.spec
    spec2 = dataclasses.replace(spec, n=2 * spec.n)
    limit = spectra.log_moment_v(config.z)

    def spectrum(sp: EnsembleSpec, trial: int) -> np.ndarray:
        x = sample_realized(sp, trial)
        h = hermitian_product(scaled_shifted(x, config.z))
        return np.linalg.eigvalsh(h)

    def task(i: int) -> TrialRecord:
        v_n = spectrum(spec, 2 * i)
        v_2n = spectrum(spec2, 2 * i + 1)
        ks = spectra.ks_two_sample(v_n, v_2n)
        pos = v_n[v_n > SINGULAR_FLOOR]
        singular = len(pos) < len(v_n)
        logm = float(np.mean(np.log(pos))) if len(pos) else math.nan
        return TrialRecord(i, {"ks_n_vs_2n": ks, "log_moment": logm,
                               "singular": singular})

    records = _map_trials(task, config.trials)
    logm = [r.values["log_moment"] for r in records if not r.values["singular"]]
    stats = {
        "log_moment_limit": limit,
        "median_ks_n_vs_2n": float(np.median([r.values["ks_n_vs_2n"]
                                              for r in records])),
        "median_log_moment": float(np.median(logm)) if logm else math.nan,
        "median_abs_log_moment_error":
            float(np.median([abs(v - limit) for v in logm])) if logm else math.nan,
    }
    return _finish(config, records, stats, t0)


def enumerate_sign_singularity(n: int) -> tuple[int, int]:
    """(singular count, total) over all 2**(n*n) sign matrices, n <= 4."""
    if n > 4:
        raise BadSpec("exact enumeration is limited to n <= 4")
    total = 1 << (n * n)
    codes = np.arange(total, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(n * n)) & 1
    mats = (2 * bits - 1).astype(float).reshape(total, n, n)
    dets = np.rint(np.linalg.det(mats))
    return int(np.count_nonzero(dets == 0)), total


def run_singularity(config: ExperimentConfig) -> Summary:
    """Probability that a Rademacher sign matrix is singular.

    Exact enumeration for n <= 4, Monte Carlo frequency of
    s_n < 1e-10 above that.
    """
    t0 = time.time()
    spec = config.spec
    if spec.n <= 4:
        singular, total = enumerate_sign_singularity(spec.n)
        stats = {"method": "exact", "singular": singular, "total": total,
                 "p_singular": singular / total}
        return _finish(config, [], stats, t0)

    def task(i: int) -> TrialRecord:
        x = sample_realized(spec, i)
        sn = linalg.smallest_singular_value(x)
        return TrialRecord(i, {"singular": sn < 1e-10})

    records = _map_trials(task, config.trials)
    hits = sum(r.values["singular"] for r in records)
    lo, hi = binomial_ci(hits, config.trials)
    stats = {"method": "monte-carlo", "singular": hits,
             "total": config.trials, "p_singular": hits / config.trials,
             "ci_lo": lo, "ci_hi": hi}
    return _finish(config, records, stats, t0)


RUNNERS = {
    "circular-law": run_circular_law,
    "smin-tail": run_smin_tail,
    "norm-bound": run_norm_bound,
    "potential-convergence": run_potential_convergence,
    "hermitian-esd-stability": run_hermitian_esd_stability,
    "singularity": run_singularity,
}


def run(config: ExperimentConfig) -> Summary:
    """Dispatch to the runner for ``config.kind``."""
    return RUNNERS[config.kind](config)
