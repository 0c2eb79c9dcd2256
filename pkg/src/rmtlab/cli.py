"""Command-line front end: experiments, small-ball studies, plots, verify.

Exit codes: 0 success, 1 a verify criterion failed, 2 usage error.
Experiment subcommands accept a flat key=value config file plus
``key=value`` overrides; outputs are deterministic CSV/JSON/SVG keyed by
a stable hash of the canonical config, with a byte-exact results cache.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import shutil
import sys

import numpy as np

from . import __version__, acceptance, smallball, spectra, svg, vectors
from .config import (ConfigError, SCHEMA, apply_overrides, build_experiment,
                     dump_config, parse_config)
from .ensembles import BadSpec, EnsembleSpec, EntryDistribution, sample_realized
from .experiments import Summary, run


def _dist_from_args(args) -> EntryDistribution:
    return EntryDistribution(kind=args.dist, p=getattr(args, "p", None),
                             nu=getattr(args, "nu", None))


def _write_text(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_csv(path: str, header, rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(_csv_cell(v) for v in row) for row in rows]
    _write_text(path, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# results cache


def _cache_run(out_dir: str, config, producer) -> tuple[str, bool]:
    """Run ``producer(target_dir)`` under the results cache.

    The cache key is (config hash, tool version); a hit replays the
    cached files byte for byte.  Returns (artifact dir, hit flag).
    """
    key = config.config_hash()
    cache_dir = os.path.join(out_dir, "cache", key)
    entry_path = os.path.join(cache_dir, "entry.json")
    if os.path.exists(entry_path):
        with open(entry_path, encoding="utf-8") as fh:
            entry = json.load(fh)
        if entry.get("version") == __version__:
            return cache_dir, True
        shutil.rmtree(cache_dir)
    os.makedirs(cache_dir, exist_ok=True)
    producer(cache_dir)
    files = sorted(f for f in os.listdir(cache_dir) if f != "entry.json")
    _write_text(entry_path, json.dumps(
        {"config_hash": key, "version": __version__, "files": files},
        sort_keys=True, indent=2) + "\n")
    return cache_dir, False


def _publish(cache_dir: str, out_dir: str) -> None:
    for name in os.listdir(cache_dir):
        if name != "entry.json":
            shutil.copyfile(os.path.join(cache_dir, name),
                            os.path.join(out_dir, name))


# ---------------------------------------------------------------------------
# experiment plumbing shared by smin-tail / norm-bound / potential / singularity


def _load_experiment(args, kind: str):
    values = {key: default for key, (_, default) in SCHEMA.items()}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            values = parse_config(fh.read())
    values["kind"] = kind
    overrides = list(args.set or [])
    for flag, key in (("n", "n"), ("dist", "dist"), ("trials", "trials"),
                      ("seed", "master_seed")):
        v = getattr(args, flag, None)
        if v is not None:
            values[key] = v
    if getattr(args, "z", None) is not None:
        z = complex(args.z.replace("i", "j"))
        values["z_re"], values["z_im"] = z.real, z.imag
    if getattr(args, "eps", None) is not None:
        values["epsilon_grid"] = tuple(float(t) for t in args.eps.split(","))
    if getattr(args, "K", None) is not None:
        values["K"] = args.K
    values = apply_overrides(values, overrides)
    if args.dump_config:
        sys.stdout.write(dump_config(values))
        return None, values
    return build_experiment(values), values


def _summary_rows(summary: Summary):
    if not summary.records:
        return ["trial"], []
    keys = sorted(summary.records[0].values)
    header = ["trial"] + keys
    rows = [[r.index] + [r.values[k] for k in keys] for r in summary.records]
    return header, rows


def _run_experiment_cmd(args, kind: str, csv_name: str) -> int:
    config, values = _load_experiment(args, kind)
    if config is None:
        return 0
    out = args.out

    def producer(target: str) -> None:
        summary = run(config)
        _write_text(os.path.join(target, "summary.json"),
                    summary.to_json() + "\n")
        if kind == "smin-tail":
            spec = config.spec
            rows = [(pt["epsilon"], pt["p_hat"], pt["ci_lo"], pt["ci_hi"],
                     config.trials, spec.n, spec.dist.kind,
                     config.z.real, config.z.imag)
                    for pt in summary.stats["tail_curve"]]
            _write_csv(os.path.join(target, csv_name),
                       ("epsilon", "p_hat", "ci_lo", "ci_hi", "trials", "n",
                        "dist", "z_re", "z_im"), rows)
            svg.emit_curve_svg(
                [(r[0], r[1], r[2], r[3]) for r in rows],
                os.path.join(target, "smin_tail.svg"),
                x_label="epsilon", y_label="P(s_n &lt;= eps/sqrt(n))")
        else:
            header, rows = _summary_rows(summary)
            _write_csv(os.path.join(target, csv_name), header, rows)
        _write_text(os.path.join(target, "config.txt"), dump_config(values))

    cache_dir, hit = _cache_run(out, config, producer)
    _publish(cache_dir, out)
    print(f"{'cache hit' if hit else 'computed'}: {config.config_hash()} "
          f"-> {out}")
    return 0


# ---------------------------------------------------------------------------
# subcommand implementations


def _cmd_sample(args) -> int:
    spec = EnsembleSpec(n=args.n, dist=_dist_from_args(args),
                        truncate=args.truncate, master_seed=args.seed)
    x = sample_realized(spec, args.trial)
    rows = [(i, j, float(x[i, j].real), float(x[i, j].imag))
            for i in range(args.n) for j in range(args.n)]
    _write_csv(args.out, ("row", "col", "re", "im"), rows)
    print(f"wrote {args.n}x{args.n} {args.dist} sample -> {args.out}")
    return 0


def _cmd_esd(args) -> int:
    spec = EnsembleSpec(n=args.n, dist=_dist_from_args(args),
                        master_seed=args.seed)
    esd = spectra.esd2d(sample_realized(spec, args.trial))
    os.makedirs(args.out, exist_ok=True)
    lam = np.sort_complex(esd.eigenvalues)
    _write_csv(os.path.join(args.out, "esd.csv"), ("re", "im"),
               [(float(z.real), float(z.imag)) for z in lam])
    svg.emit_scatter_svg(esd.eigenvalues, os.path.join(args.out, "esd.svg"),
                         unit_circle=not args.no_unit_circle)
    print(f"wrote esd.csv + esd.svg for n={args.n} -> {args.out}")
    return 0


def _default_z_grid():
    pts = []
    for r in (0.0, 0.2, 0.4, 0.6, 1.3, 1.5, 2.0, 3.0):
        pts.append(complex(r, 0.0))
        if r > 0:
            pts.append(complex(0.0, r))
    return tuple(pts)


def _cmd_potential(args) -> int:
    spec = EnsembleSpec(n=args.n, dist=_dist_from_args(args),
                        master_seed=args.seed)
    x = sample_realized(spec, args.trial)
    grid = spectra.potential_grid(x, _default_z_grid())
    os.makedirs(args.out, exist_ok=True)
    rows = []
    for z, u, sing in zip(grid.points, grid.values, grid.singular):
        limit = spectra.circular_potential(z)
        rows.append((float(z.real), float(z.imag),
                     float(u) if not sing else math.nan, limit, bool(sing)))
    _write_csv(os.path.join(args.out, "potential_grid.csv"),
               ("z_re", "z_im", "potential", "disk_potential", "singular"),
               rows)
    devs = [abs(r[2] - r[3]) for r in rows if not r[4]]
    _write_text(os.path.join(args.out, "summary.json"), json.dumps({
        "n": args.n, "dist": args.dist, "seed": args.seed,
        "max_abs_deviation": max(devs), "grid_points": len(rows),
    }, sort_keys=True, indent=2) + "\n")
    series = sorted((abs(complex(r[0], r[1])), r[2]) for r in rows if not r[4])
    svg.emit_curve_svg(series, os.path.join(args.out, "potential.svg"),
                       x_label="|z|", y_label="U(z)")
    print(f"wrote potential_grid.csv + summary.json + potential.svg -> "
          f"{args.out}")
    return 0


def _cmd_smallball(args) -> int:
    dist = _dist_from_args(args)
    b = np.ones(args.n, dtype=complex)
    if args.coeffs:
        b = _read_vector_csv(args.coeffs)
    rows = []
    for eps in (float(t) for t in args.eps.split(",")):
        est = smallball.empirical_smallball(b, dist, eps, args.trials,
                                            args.seed)
        be = smallball.berry_esseen_bound(len(b), eps, k1=1.0, k2=1.0, C=1.0)
        try:
            ess = smallball.esseen_integral_bound(np.abs(b), eps, dist, C=1.0)
        except BadSpec:
            ess = math.nan
        u = vectors.UnitVector(b)
        part = vectors.spread_part(u, k1=0.5, k2=2.0)
        if part.modulus.size:
            d = vectors.lcd(part.modulus,
                            vectors.LcdParams(alpha=0.1, tau=0.25 * len(b)))
        else:
            d = math.inf
        lb = smallball.lcd_bound(eps, len(b), d, alpha=0.1, beta=0.25,
                                 C=1.0, c=1.0)
        rows.append((eps, est.p_hat, est.half_width, be, ess, lb))
    os.makedirs(args.out, exist_ok=True)
    _write_csv(os.path.join(args.out, "smallball.csv"),
               ("epsilon", "p_hat", "half_width", "be_bound", "esseen_bound",
                "lcd_bound"), rows)
    for r in rows:
        print(f"eps={r[0]:g}: p_hat={r[1]:.5f} +- {r[2]:.5f}")
    return 0


def _read_vector_csv(path: str) -> np.ndarray:
    """One complex coordinate per row, 're,im' (header row optional)."""
    coords = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.lower().startswith("re"):
                continue
            re_s, _, im_s = line.partition(",")
            coords.append(complex(float(re_s), float(im_s or 0.0)))
    if not coords:
        raise ConfigError(f"no coordinates found in {path}")
    return np.asarray(coords)


def _cmd_lcd(args) -> int:
    v = _read_vector_csv(args.vector)
    params = vectors.LcdParams(alpha=args.alpha, tau=args.tau,
                               t_max=args.t_max)

    def show(label, profile):
        d = vectors.lcd(profile, params)
        print(f"{label} = {'inf' if math.isinf(d) else f'{d:.9g}'}")
        return d

    if np.allclose(v.imag, 0.0):
        show("D", v.real)
    else:
        results = {
            "D_real": show("D_real", v.real),
            "D_imag": show("D_imag", v.imag),
            "D_modulus": show("D_modulus", np.abs(v)),
        }
        best = max(results, key=results.get)
        print(f"best = {best}")
    return 0


def _cmd_verify(args) -> int:
    results = acceptance.run_all(profile=args.profile, out_dir=args.out)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


def _cmd_plot(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    rows = [tuple(float(t) for t in ln.split(",")[:4]) for ln in lines[1:]]
    if args.kind == "scatter":
        svg.emit_scatter_svg([complex(r[0], r[1]) for r in rows], args.out,
                             unit_circle=args.unit_circle)
    else:
        svg.emit_curve_svg(rows, args.out)
    print(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_dist_flags(p, default_n=256):
    p.add_argument("--n", type=int, default=default_n)
    p.add_argument("--dist", default="complex-gaussian")
    p.add_argument("--p", type=float, default=None,
                   help="occupation probability for sparse-bernoulli")
    p.add_argument("--nu", type=float, default=None,
                   help="degrees of freedom for student-t")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int, default=0)


def _add_experiment_flags(p):
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override one config key")
    p.add_argument("--dump-config", action="store_true",
                   help="print the canonical config and exit")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dist", default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="results")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmt-lab",
        description="random-matrix laboratory: circular law, extreme "
                    "singular values and small-ball experiments")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample one matrix to CSV")
    _add_dist_flags(p)
    p.add_argument("--truncate", action="store_true")
    p.add_argument("--out", default="sample.csv")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("esd", help="eigenvalue cloud CSV + SVG")
    _add_dist_flags(p)
    p.add_argument("--no-unit-circle", action="store_true")
    p.add_argument("--out", default="results")
    p.set_defaults(func=_cmd_esd)

    p = sub.add_parser("potential", help="logarithmic potential on a z grid")
    _add_dist_flags(p, default_n=1024)
    p.add_argument("--out", default="results")
    p.set_defaults(func=_cmd_potential)

    p = sub.add_parser("smin-tail", help="smallest singular value tail study")
    _add_experiment_flags(p)
    p.add_argument("--z", default=None, help="complex shift, e.g. 1+1i")
    p.add_argument("--eps", default=None, help="comma list of epsilon values")
    p.set_defaults(func=lambda a: _run_experiment_cmd(a, "smin-tail",
                                                      "smin_tail.csv"))

    p = sub.add_parser("norm-bound", help="largest eigenvalue / norm study")
    _add_experiment_flags(p)
    p.add_argument("--K", type=float, default=None)
    p.set_defaults(func=lambda a: _run_experiment_cmd(a, "norm-bound",
                                                      "norm_bound.csv"))

    p = sub.add_parser("singularity", help="sign-matrix singularity study")
    _add_experiment_flags(p)
    p.set_defaults(func=lambda a: _run_experiment_cmd(a, "singularity",
                                                      "singularity.csv"))

    p = sub.add_parser("smallball", help="empirical small-ball probability")
    _add_dist_flags(p, default_n=64)
    p.add_argument("--eps", default="1.0", help="comma list of epsilon values")
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--coeffs", default=None,
                   help="CSV of coefficients (re,im per row); default all-ones")
    p.add_argument("--out", default="results")
    p.set_defaults(func=_cmd_smallball)

    p = sub.add_parser("lcd", help="essential least common denominator")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=1e4)
    p.add_argument("--vector", required=True,
                   help="CSV of coordinates, 're,im' per row")
    p.set_defaults(func=_cmd_lcd)

    p = sub.add_parser("verify", help="run the acceptance battery")
    p.add_argument("--profile", choices=acceptance.PROFILES, default="full")
    p.add_argument("--out", default="results/verify")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("plot", help="re-plot a CSV as SVG")
    p.add_argument("--kind", choices=("scatter", "curve"), default="curve")
    p.add_argument("--unit-circle", action="store_true")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (BadSpec, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
