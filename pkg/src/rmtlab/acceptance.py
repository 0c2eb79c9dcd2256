"""Acceptance battery: exact identities, oracle equivalences and
desk-scale Monte Carlo renderings of the limit laws.

Each criterion is one function returning a :class:`CriterionResult`;
``run_all`` executes the battery, prints one pass/fail line per
criterion and writes deterministic CSV artifacts.  The ``quick``
profile shrinks dimensions and trial counts for smoke runs and
byte-level reproducibility checks; its statistical criteria are not
calibrated to pass.
"""

from __future__ import annotations

import itertools
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import linalg, smallball, spectra, vectors
from .ensembles import EnsembleSpec, EntryDistribution
from .experiments import ExperimentConfig, run

PROFILES = ("full", "quick")


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def _result(number, name, passed, detail) -> CriterionResult:
    return CriterionResult(number=number, name=name, passed=bool(passed),
                           detail=detail)


def _write_csv(out_dir, filename, header, rows) -> None:
    """Deterministic CSV: repr() floats, '.' decimal, LF newlines."""
    if out_dir is None:
        return
    os.makedirs(out_dir, exist_ok=True)

    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return repr(v)
        return str(v)

    with open(os.path.join(out_dir, filename), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(cell(v) for v in row) + "\n")


# ---------------------------------------------------------------------------
# analytic identities and kernel oracles


def criterion_01(profile="full", out_dir=None) -> CriterionResult:
    """Disk potential vs -1/2 log-moment identity on random z, |z| <= 3."""
    rng = np.random.default_rng(101)
    z = 3.0 * np.sqrt(rng.random(10_000)) * np.exp(2j * math.pi * rng.random(10_000))
    worst = max(abs(spectra.circular_potential(w)
                    + 0.5 * spectra.log_moment_v(w)) for w in z)
    return _result(1, "potential / log-moment identity", worst <= 1e-12,
                   f"max |U + logm/2| = {worst:.3e} (tol 1e-12)")


def criterion_02(profile="full", out_dir=None) -> CriterionResult:
    """Closed-form ring integral vs adaptive quadrature."""
    worst = 0.0
    for z in (0.0, 0.5, 0.99, 1.01, 3.0):
        val, _ = integrate.quad(
            lambda th: math.log(abs(z - complex(math.cos(th), math.sin(th)))),
            -math.pi, math.pi, points=[0.0], limit=400, epsabs=1e-10)
        worst = max(worst, abs(val - spectra.ring_integral(z, 1.0)))
    return _result(2, "ring integral quadrature", worst <= 1e-8,
                   f"max quadrature gap = {worst:.3e} (tol 1e-8)")


def criterion_03(profile="full", out_dir=None) -> CriterionResult:
    """SVD reconstruction and eigenvalue trace/|det| cross-checks."""
    rng = np.random.default_rng(303)
    count = 500 if profile == "full" else 100
    worst_rec, worst_tr, worst_det = 0.0, 0.0, 0.0
    for _ in range(count):
        n = int(rng.integers(2, 65))
        a = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        a /= math.sqrt(2.0)
        res = linalg.svd(a, want_vectors=True)
        rec = res.left_vectors @ np.diag(res.singular_values) @ res.right_vectors
        norm = linalg.spectral_norm(a)
        worst_rec = max(worst_rec, np.linalg.norm(a - rec, 2) / norm)
        lam = linalg.eigenvalues(a).eigenvalues
        worst_tr = max(worst_tr, abs(lam.sum() - np.trace(a)) / norm)
        if res.singular_values[-1] > 1e-8:
            gap = abs(float(np.sum(np.log(np.abs(lam))))
                      - float(np.sum(np.log(res.singular_values))))
            worst_det = max(worst_det, gap)
    ok = worst_rec <= 1e-10 and worst_tr <= 1e-8 and worst_det <= 1e-8
    return _result(3, "kernel correctness", ok,
                   f"recon {worst_rec:.2e}/1e-10, trace {worst_tr:.2e}/1e-8, "
                   f"log|det| {worst_det:.2e}/1e-8 over {count} matrices")


def criterion_04(profile="full", out_dir=None) -> CriterionResult:
    """Potential via singular values equals potential via eigenvalues."""
    rng = np.random.default_rng(404)
    count = 100 if profile == "full" else 25
    n, z = 32, 3.0 + 0.0j
    worst = 0.0
    for _ in range(count):
        x = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        x /= math.sqrt(2.0)
        u_svd = spectra.empirical_potential(x, z)
        lam = linalg.eigenvalues(x / math.sqrt(n)).eigenvalues
        u_eig = -float(np.mean(np.log(np.abs(lam - z))))
        worst = max(worst, abs(u_svd - u_eig))
    return _result(4, "potential route equivalence", worst <= 1e-8,
                   f"max route gap = {worst:.3e} (tol 1e-8) over {count} matrices")


# ---------------------------------------------------------------------------
# Monte Carlo renderings


def _spec(n, dist, seed, **kw) -> EnsembleSpec:
    return EnsembleSpec(n=n, dist=EntryDistribution(dist), master_seed=seed, **kw)


def criterion_05(profile="full", out_dir=None) -> CriterionResult:
    """Circular law: KS of radii^2 and angles at n large vs n small."""
    n_big, n_small, trials = (1024, 64, 8) if profile == "full" else (128, 32, 3)
    rows, ok, details = [], True, []
    for dist in ("complex-gaussian", "complex-sign"):
        medians = {}
        for n in (n_small, n_big):
            cfg = ExperimentConfig(kind="circular-law",
                                   spec=_spec(n, dist, 505), trials=trials)
            s = run(cfg)
            medians[n] = (s.stats["median_ks_radii_sq"],
                          s.stats["median_ks_angles"])
            for r in s.records:
                rows.append((dist, n, r.index, r.values["ks_radii_sq"],
                             r.values["ks_angles"]))
        mr, ma = medians[n_big]
        ok &= mr <= 0.06 and ma <= 0.06
        ok &= mr < medians[n_small][0] and ma < medians[n_small][1]
        details.append(f"{dist}: n={n_big} KS(r2)={mr:.4f} KS(ang)={ma:.4f}, "
                       f"n={n_small} KS(r2)={medians[n_small][0]:.4f}")
    _write_csv(out_dir, "circular_law.csv",
               ("dist", "n", "trial", "ks_radii_sq", "ks_angles"), rows)
    return _result(5, "circular law KS", ok, "; ".join(details))


def criterion_06(profile="full", out_dir=None) -> CriterionResult:
    """Potential convergence on a z grid away from the unit circle."""
    n, trials = (1024, 8) if profile == "full" else (128, 3)
    grid = (0.0, 0.4, 0.4j, 1.5, 2.0, 1.5 + 1.5j)
    cfg = ExperimentConfig(kind="potential-convergence",
                           spec=_spec(n, "complex-gaussian", 606),
                           trials=trials, z_grid=grid)
    s = run(cfg)
    devs = s.stats["max_deviation_per_trial"]
    good = sum(d <= 0.05 for d in devs)
    need = trials - 1
    _write_csv(out_dir, "potential_convergence.csv",
               ("trial", "max_abs_deviation", "singular_points"),
               [(r.index, r.values["max_abs_deviation"],
                 r.values["singular_points"]) for r in s.records])
    return _result(6, "potential convergence", good >= need,
                   f"{good}/{trials} trials with max deviation <= 0.05 "
                   f"(need {need}); worst = {max(devs):.4f}")


def criterion_07(profile="full", out_dir=None) -> CriterionResult:
    """Gaussian smallest-singular-value tail at eps = 0.1."""
    trials = 5000 if profile == "full" else 1000
    cfg = ExperimentConfig(kind="smin-tail",
                           spec=_spec(100, "real-gaussian", 707),
                           trials=trials, z=0.0, epsilon_grid=(0.1,))
    s = run(cfg)
    point = s.stats["tail_curve"][0]
    p = point["p_hat"]
    _write_csv(out_dir, "edelman_tail.csv",
               ("epsilon", "p_hat", "ci_lo", "ci_hi", "trials", "n", "dist",
                "z_re", "z_im"),
               [(point["epsilon"], p, point["ci_lo"], point["ci_hi"],
                 trials, 100, "real-gaussian", 0.0, 0.0)])
    return _result(7, "Gaussian s_n tail", 0.07 <= p <= 0.13,
                   f"P(s_n <= 0.1 n^-1/2) = {p:.4f} (target [0.07, 0.13], "
                   f"limit 0.0997)")


def criterion_08(profile="full", out_dir=None) -> CriterionResult:
    """Shifted sign-matrix tail: monotone curve, linear envelope C <= 5."""
    trials = 5000 if profile == "full" else 500
    eps_grid = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5)
    cfg = ExperimentConfig(kind="smin-tail",
                           spec=_spec(128, "complex-sign", 808),
                           trials=trials, z=1.0 + 1.0j, epsilon_grid=eps_grid)
    s = run(cfg)
    curve = s.stats["tail_curve"]
    ps = [pt["p_hat"] for pt in curve]
    monotone = all(a <= b for a, b in zip(ps, ps[1:]))
    c_fit = max(pt["p_hat"] / pt["epsilon"] for pt in curve)
    _write_csv(out_dir, "smin_tail.csv",
               ("epsilon", "p_hat", "ci_lo", "ci_hi", "trials", "n", "dist",
                "z_re", "z_im"),
               [(pt["epsilon"], pt["p_hat"], pt["ci_lo"], pt["ci_hi"],
                 trials, 128, "complex-sign", 1.0, 1.0) for pt in curve])
    return _result(8, "tail-law shape", monotone and c_fit <= 5.0,
                   f"monotone={monotone}, fitted C = {c_fit:.3f} (<= 5)")


def criterion_09(profile="full", out_dir=None) -> CriterionResult:
    """Spectral norm of n^-1/2 X near 2; no lambda_max exceedance of 4.41."""
    n, trials = (2048, 8) if profile == "full" else (256, 3)
    cfg = ExperimentConfig(kind="norm-bound",
                           spec=_spec(n, "complex-sign", 909),
                           trials=trials, K=4.41)
    s = run(cfg)
    lo, hi = s.stats["norm_min"], s.stats["norm_max"]
    exceed = s.stats["exceedance_count"]
    _write_csv(out_dir, "norm_bound.csv",
               ("trial", "lambda_max", "spectral_norm"),
               [(r.index, r.values["lambda_max"], r.values["spectral_norm"])
                for r in s.records])
    ok = lo >= 1.9 and hi <= 2.1 and exceed == 0
    return _result(9, "spectral norm bound", ok,
                   f"norms in [{lo:.4f}, {hi:.4f}] (target [1.9, 2.1]), "
                   f"exceedances of 4.41: {exceed}")


def criterion_10(profile="full", out_dir=None) -> CriterionResult:
    """Small-ball decay ratio between n = 400 and n = 100."""
    reps, trials = (10, 20_000) if profile == "full" else (3, 5_000)
    dist = EntryDistribution("complex-sign")
    rows, ratios = [], []
    for rep in range(reps):
        ps = {}
        for n in (100, 400):
            est = smallball.empirical_smallball(
                np.ones(n), dist, epsilon=1.0, trials=trials,
                seed=1000 * rep + n)
            ps[n] = est.p_hat
            rows.append((rep, n, est.p_hat, est.half_width))
        ratios.append(ps[400] / ps[100])
    med = float(np.median(ratios))
    _write_csv(out_dir, "smallball_decay.csv",
               ("replicate", "n", "p_hat", "half_width"), rows)
    return _result(10, "small-ball decay ratio", 0.35 <= med <= 0.7,
                   f"median P(400)/P(100) = {med:.3f} over {reps} replicates "
                   f"(target [0.35, 0.7])")


def criterion_11(profile="full", out_dir=None) -> CriterionResult:
    """Shift invariance of the small-ball estimate on matched seeds."""
    configs, trials = (20, 4000) if profile == "full" else (5, 2000)
    rng = np.random.default_rng(1111)
    rows, ok = [], True
    kinds = ("rademacher", "complex-gaussian", "complex-sign")
    for i in range(configs):
        n = int(rng.integers(8, 65))
        dist = EntryDistribution(kinds[int(rng.integers(0, 3))])
        eps = float(rng.uniform(0.3, 1.5))
        b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        shift = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        seed = int(rng.integers(0, 2**31))
        plain = smallball.empirical_smallball(b, dist, eps, trials, seed)
        moved = smallball.empirical_smallball(b, dist, eps, trials, seed,
                                              shift=shift)
        gap = abs(plain.p_hat - moved.p_hat)
        budget = 2.0 * max(plain.half_width, moved.half_width)
        ok &= gap <= budget
        rows.append((i, n, dist.kind, eps, plain.p_hat, moved.p_hat, gap,
                     budget))
    _write_csv(out_dir, "smallball_invariance.csv",
               ("config", "n", "dist", "epsilon", "p_plain", "p_shifted",
                "gap", "budget"), rows)
    worst = max(r[6] - r[7] for r in rows)
    return _result(11, "small-ball shift invariance", ok,
                   f"{configs} configs, worst gap-budget = {worst:.4f}")


def criterion_12(profile="full", out_dir=None) -> CriterionResult:
    """LCD point oracles plus monotonicity in alpha and tau."""
    p = vectors.LcdParams(alpha=0.1, tau=0.0, t_max=50.0)
    d1 = vectors.lcd(np.array([1.0, 1.0, 1.0]), p)
    d2 = vectors.lcd(np.array([0.5, 1.0]), p)
    oracle2 = _dense_lcd_oracle(np.array([0.5, 1.0]), alpha=0.1, tau=0.0)
    count = 200 if profile == "full" else 50
    rng = np.random.default_rng(1212)
    mono = True
    for _ in range(count):
        n = int(rng.integers(2, 7))
        v = rng.uniform(0.5, 1.5, n)
        base = vectors.lcd(v, vectors.LcdParams(alpha=0.1, t_max=50.0))
        wide = vectors.lcd(v, vectors.LcdParams(alpha=0.2, t_max=50.0))
        lax = vectors.lcd(v, vectors.LcdParams(alpha=0.1, tau=1.0, t_max=50.0))
        step = 0.2 / 4.0 / max(1.0, float(np.max(np.abs(v))))
        mono &= wide <= base + step or math.isinf(base)
        mono &= lax <= base + 0.1 / 4.0 or math.isinf(base)
    ok = abs(d1 - 0.9) <= 1e-6 and abs(d2 - oracle2) <= 1e-3 and mono
    return _result(12, "LCD oracles", ok,
                   f"D(1,1,1)={d1:.9f} (0.9), D(0.5,1)={d2:.6f} vs dense "
                   f"oracle {oracle2:.6f}, monotone={mono}")


def _dense_lcd_oracle(v, alpha, tau, t_max=50.0, step=1e-4) -> float:
    """Brute-force LCD by dense scan, independent of the certified search."""
    ts = np.arange(step, t_max, step)
    x = ts[:, None] * v[None, :]
    r = np.abs(x)
    lo = np.maximum(1.0, np.floor(r))
    hi = np.maximum(1.0, np.ceil(r))
    d = np.minimum(np.abs(r - lo), np.abs(r - hi))
    ok = np.count_nonzero(d > alpha, axis=1) <= tau
    hits = np.nonzero(ok)[0]
    return float(ts[hits[0]]) if hits.size else math.inf


def criterion_13(profile="full", out_dir=None) -> CriterionResult:
    """Evenly-spread witness exists for random incompressible vectors."""
    count = 1000 if profile == "full" else 200
    n, gamma, rho = 64, 0.3, 0.3
    need = rho * rho * gamma * n / 4.0
    rng = np.random.default_rng(1313)
    found = skipped = 0
    for _ in range(count):
        b = vectors.UnitVector(rng.standard_normal(n)
                               + 1j * rng.standard_normal(n))
        if vectors.classify(b, gamma, rho) is not vectors.Classification.INCOMPRESSIBLE:
            skipped += 1
            continue
        j, sigma1 = vectors.evenly_spread_witness(b, gamma, rho)
        if len(sigma1) >= need:
            found += 1
    ok = found == count - skipped and skipped < count
    return _result(13, "evenly-spread witness", ok,
                   f"witness found for {found}/{count - skipped} "
                   f"incompressible vectors ({skipped} skipped)")


def criterion_14(profile="full", out_dir=None) -> CriterionResult:
    """distance_to_sparse vs exhaustive support minimization, n <= 12."""
    count = 500 if profile == "full" else 100
    rng = np.random.default_rng(1414)
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(2, 13))
        b = vectors.UnitVector(rng.standard_normal(n)
                               + 1j * rng.standard_normal(n))
        gamma = float(rng.uniform(0.1, 0.9))
        k = int(math.floor(gamma * n))
        got = vectors.distance_to_sparse(b, gamma)
        if k == 0:
            best = 1.0
        else:
            best = min(
                float(np.linalg.norm(np.delete(b.coords, list(keep))))
                for keep in itertools.combinations(range(n), k))
        worst = max(worst, abs(got - best))
    return _result(14, "compressibility oracle", worst <= 1e-12,
                   f"max gap to exhaustive minimum = {worst:.3e} "
                   f"over {count} vectors")


def criterion_15(profile="full", out_dir=None) -> CriterionResult:
    """Sign-matrix singularity: exact small-n values, MC decay at n = 10."""
    trials = 20_000 if profile == "full" else 2000
    rows, details = [], []
    s2 = run(ExperimentConfig(kind="singularity",
                              spec=_spec(2, "rademacher", 1515), trials=1))
    s3 = run(ExperimentConfig(kind="singularity",
                              spec=_spec(3, "rademacher", 1515), trials=1))
    # golden value from the enumeration oracle: 320 of 512 sign 3x3
    # matrices are singular (the rest all have |det| = 4)
    ok = s2.stats["p_singular"] == 0.5 and s3.stats["singular"] == 320
    details.append(f"P(n=2)={s2.stats['p_singular']} (exact 0.5), "
                   f"n=3 count={s3.stats['singular']}/512 (golden 320)")
    mc = run(ExperimentConfig(kind="singularity",
                              spec=_spec(10, "rademacher", 1515),
                              trials=trials))
    ok &= mc.stats["p_singular"] < 0.01
    details.append(f"MC P(n=10)={mc.stats['p_singular']:.5f} (< 0.01)")
    for s, n in ((s2, 2), (s3, 3), (mc, 10)):
        rows.append((n, s.stats["method"], s.stats["singular"],
                     s.stats["total"], s.stats["p_singular"]))
    _write_csv(out_dir, "singularity.csv",
               ("n", "method", "singular", "total", "p_singular"), rows)
    return _result(15, "sign-matrix singularity", ok, "; ".join(details))


def criterion_16(profile="full", out_dir=None) -> CriterionResult:
    """Paley-Zygmund level at (0.5, 1) vs the boundary closed form."""
    got = smallball.paley_zygmund_mu(0.5, 1.0)
    target = (1.0 - 0.25) ** 3 / 4.0  # 0.10546875, attained as t -> 0
    return _result(16, "Paley-Zygmund level", abs(got - target) <= 1e-4,
                   f"mu(0.5, 1) = {got:.6f} vs {target:.6f} (tol 1e-4)")


def criterion_17(profile="full", out_dir=None) -> CriterionResult:
    """Byte-identical CSV outputs under 1 and 8 worker threads."""

    def battery(workers: int, target: str) -> None:
        old = os.environ.get("RMT_LAB_THREADS")
        os.environ["RMT_LAB_THREADS"] = str(workers)
        try:
            for crit in (criterion_07, criterion_09, criterion_15):
                crit(profile="quick", out_dir=target)
        finally:
            if old is None:
                del os.environ["RMT_LAB_THREADS"]
            else:
                os.environ["RMT_LAB_THREADS"] = old

    with tempfile.TemporaryDirectory() as tmp:
        d1, d8 = os.path.join(tmp, "w1"), os.path.join(tmp, "w8")
        battery(1, d1)
        battery(8, d8)
        files = sorted(os.listdir(d1))
        same = files == sorted(os.listdir(d8)) and all(
            open(os.path.join(d1, f), "rb").read()
            == open(os.path.join(d8, f), "rb").read() for f in files)
    return _result(17, "thread-count reproducibility", same,
                   f"{len(files)} CSV files byte-identical under 1 vs 8 workers")


CRITERIA = (criterion_01, criterion_02, criterion_03, criterion_04,
            criterion_05, criterion_06, criterion_07, criterion_08,
            criterion_09, criterion_10, criterion_11, criterion_12,
            criterion_13, criterion_14, criterion_15, criterion_16,
            criterion_17)


def run_all(profile: str = "full", out_dir: str | None = None,
            numbers=None, echo=print) -> list[CriterionResult]:
    """Run the battery (or a subset) and print one line per criterion."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    results = []
    for i, crit in enumerate(CRITERIA, start=1):
        if numbers is not None and i not in numbers:
            continue
        res = crit(profile=profile, out_dir=out_dir)
        results.append(res)
        status = "PASS" if res.passed else "FAIL"
        echo(f"{status} criterion {res.number:2d} [{res.name}]: {res.detail}")
    return results
