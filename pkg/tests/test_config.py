"""Unit tests for the flat key=value configuration format."""

import pytest

from rmtlab.config import (ConfigError, apply_overrides, build_experiment,
                           dump_config, parse_config)


def test_defaults_round_trip():
    values = parse_config("")
    assert values["kind"] == "circular-law"
    assert values["n"] == 256
    assert parse_config(dump_config(values)) == values


def test_parse_comments_and_values():
    text = """
    # an experiment
    kind = smin-tail
    n = 128            # inline comment
    dist = complex-sign
    truncate = true
    epsilon_grid = 0.1, 0.2, 0.5
    z_re = 1.0
    z_im = -1.0
    """
    values = parse_config(text)
    assert values["kind"] == "smin-tail"
    assert values["n"] == 128
    assert values["truncate"] is True
    assert values["epsilon_grid"] == (0.1, 0.2, 0.5)
    assert parse_config(dump_config(values)) == values


def test_unknown_key_named_with_line_number():
    with pytest.raises(ConfigError) as exc:
        parse_config("n = 32\nbogus_key = 1\n")
    assert "bogus_key" in str(exc.value)
    assert "line 2" in str(exc.value)


def test_malformed_lines_rejected():
    with pytest.raises(ConfigError):
        parse_config("just some words\n")
    with pytest.raises(ConfigError):
        parse_config("n = not-a-number\n")
    with pytest.raises(ConfigError):
        parse_config("truncate = yes\n")


def test_apply_overrides():
    values = parse_config("n = 64\n")
    out = apply_overrides(values, ["n=128", "dist=rademacher"])
    assert out["n"] == 128 and out["dist"] == "rademacher"
    assert values["n"] == 64  # original untouched
    with pytest.raises(ConfigError):
        apply_overrides(values, ["n:128"])
    with pytest.raises(ConfigError):
        apply_overrides(values, ["bogus=1"])


def test_build_experiment():
    values = parse_config("kind = smin-tail\nn = 32\nepsilon_grid = 0.1\n"
                          "z_re = 1.0\nz_im = 1.0\n")
    cfg = build_experiment(values)
    assert cfg.kind == "smin-tail"
    assert cfg.spec.n == 32
    assert cfg.z == 1.0 + 1.0j
    assert cfg.epsilon_grid == (0.1,)


def test_build_experiment_rejects_ragged_z_grid():
    values = parse_config("kind = potential-convergence\n"
                          "z_grid_re = 0.0, 2.0\nz_grid_im = 0.0\n")
    with pytest.raises(ConfigError):
        build_experiment(values)
