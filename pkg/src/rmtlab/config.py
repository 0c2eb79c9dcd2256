"""Flat key=value configuration files for experiments.

The format is one ``key = value`` assignment per line, ``#`` comments,
blank lines allowed.  Keys are typed against a fixed schema and unknown
keys are rejected by name, so a config file is a complete, auditable
record of an experiment.  ``dump_config`` writes the canonical form;
parsing it back yields an identical configuration.
"""

from __future__ import annotations

from .ensembles import EnsembleSpec, EntryDistribution
from .experiments import ExperimentConfig


class ConfigError(ValueError):
    """Malformed configuration text or value."""


def _parse_bool(s: str) -> bool:
    if s in ("true", "false"):
        return s == "true"
    raise ConfigError(f"expected true/false, got {s!r}")


def _parse_float_list(s: str) -> tuple[float, ...]:
    s = s.strip()
    if not s:
        return ()
    return tuple(float(tok) for tok in s.split(","))


# key -> (parser, default)
SCHEMA = {
    "kind": (str, "circular-law"),
    "n": (int, 256),
    "dist": (str, "complex-gaussian"),
    "dist_p": (float, None),
    "dist_nu": (float, None),
    "truncate": (_parse_bool, False),
    "delta0": (float, 0.05),
    "shift_z_re": (float, 0.0),
    "shift_z_im": (float, 0.0),
    "master_seed": (int, 0),
    "trials": (int, 8),
    "z_re": (float, 0.0),
    "z_im": (float, 0.0),
    "epsilon_grid": (_parse_float_list, ()),
    "K": (float, 4.41),
    "z_grid_re": (_parse_float_list, ()),
    "z_grid_im": (_parse_float_list, ()),
}


def parse_config(text: str) -> dict:
    """Parse config text to a fully-defaulted flat dict."""
    values = {key: default for key, (_, default) in SCHEMA.items()}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', "
                              f"got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        parser = SCHEMA[key][0]
        try:
            values[key] = parser(val)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}")
    return values


def apply_overrides(values: dict, overrides) -> dict:
    """Apply command-line ``key=value`` overrides on top of a config."""
    out = dict(values)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in SCHEMA:
            raise ConfigError(f"unknown key {key!r}")
        out[key] = SCHEMA[key][0](val.strip())
    return out


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        return ",".join(repr(float(x)) for x in v)
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def dump_config(values: dict) -> str:
    """Canonical config text; re-parsing it reproduces ``values``."""
    lines = []
    for key in SCHEMA:
        v = values[key]
        if v is None:
            continue
        lines.append(f"{key} = {_fmt_value(v)}")
    return "\n".join(lines) + "\n"


def build_experiment(values: dict) -> ExperimentConfig:
    """Construct a validated ExperimentConfig from a flat config dict."""
    dist = EntryDistribution(kind=values["dist"], p=values["dist_p"],
                             nu=values["dist_nu"])
    spec = EnsembleSpec(n=values["n"], dist=dist, truncate=values["truncate"],
                        epsilon_n_exponent=values["delta0"],
                        shift_z=complex(values["shift_z_re"],
                                        values["shift_z_im"]),
                        master_seed=values["master_seed"])
    re, im = values["z_grid_re"], values["z_grid_im"]
    if len(re) != len(im):
        raise ConfigError("z_grid_re and z_grid_im must have equal length")
    return ExperimentConfig(kind=values["kind"], spec=spec,
                            trials=values["trials"],
                            z=complex(values["z_re"], values["z_im"]),
                            epsilon_grid=values["epsilon_grid"],
                            K=values["K"],
                            z_grid=tuple(complex(a, b)
                                         for a, b in zip(re, im)))
