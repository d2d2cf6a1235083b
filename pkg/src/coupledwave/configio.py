"""JSON configuration for runs and sweeps.

A single document with sections {problem, grid, damping1, damping2,
data, kernels, sweep}; every field has a default, so one file fully
reproduces any run.  Example:

    {
      "problem": {"n": 3, "p": 2.0, "q": 2.0, "eps": 1.0, "R": 1.0},
      "grid": {"dr": 0.02, "t_max": 10.0, "cfl": 0.45,
               "blowup_threshold": 1e8},
      "damping1": {"family": "zero"},
      "damping2": {"family": "power-decay", "mu": 0.5, "beta": 2.0},
      "data": {"k": 3, "amplitudes": [4.0, 4.0, 4.0, 4.0]},
      "kernels": {"lambda0": 1.0, "quad_nodes": 64, "offset": 0.1},
      "sweep": {"eps_values": [1.6, 1.4, 1.2, 1.0], "repeats": 2}
    }
"""

from __future__ import annotations

import copy
import json

from .exponents import ExponentPair
from .lifespan import SweepConfig
from .solver import GridSpec, InitialDataFamily, ProblemSpec
from .special import DampingFamily, DampingSpec

__all__ = ["DEFAULT_CONFIG", "ConfigError", "load_config", "merge_config",
           "problem_spec_from_config", "sweep_config_from_config",
           "kernel_params_from_config"]

DEFAULT_CONFIG = {
    "problem": {"n": 3, "p": 2.0, "q": 2.0, "eps": 1.0, "R": 1.0},
    "grid": {
        "dr": 0.02,
        "t_max": 10.0,
        "r_max": None,
        "cfl": 0.45,
        "blowup_threshold": 1e8,
    },
    "damping1": {"family": "zero", "mu": 0.0, "beta": 2.0},
    "damping2": {"family": "zero", "mu": 0.0, "beta": 2.0},
    "data": {"k": 3, "amplitudes": [4.0, 4.0, 4.0, 4.0]},
    "kernels": {"lambda0": 1.0, "quad_nodes": 64, "r1": None, "r2": None,
                "offset": 0.1},
    "sweep": {"eps_values": [1.6, 1.4, 1.2, 1.0, 0.9, 0.8], "repeats": 2},
}


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


def load_config(path) -> dict:
    """Parse a JSON config file; errors carry line/column."""
    with open(path) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return doc


def merge_config(user: dict | None) -> dict:
    """Defaults overlaid with the user's sections/fields."""
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    if user is None:
        return cfg
    for section, values in user.items():
        if section not in cfg:
            raise ConfigError(f"unknown config section {section!r}")
        if not isinstance(values, dict):
            raise ConfigError(f"config section {section!r} must be an object")
        for key, val in values.items():
            if key not in cfg[section]:
                raise ConfigError(f"unknown field {section}.{key}")
            cfg[section][key] = val
    return cfg


def _damping_from(section: dict) -> DampingSpec:
    try:
        family = DampingFamily(section["family"])
    except ValueError as exc:
        raise ConfigError(f"unknown damping family {section['family']!r}") from exc
    try:
        return DampingSpec(family=family, mu=float(section["mu"]),
                           beta=float(section["beta"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def problem_spec_from_config(cfg: dict, enforce_hypotheses: bool = True) -> ProblemSpec:
    """Build a ProblemSpec from a merged config document."""
    prob = cfg["problem"]
    grid = cfg["grid"]
    data = cfg["data"]
    try:
        return ProblemSpec(
            n=int(prob["n"]),
            pq=ExponentPair(float(prob["p"]), float(prob["q"])),
            b1=_damping_from(cfg["damping1"]),
            b2=_damping_from(cfg["damping2"]),
            R=float(prob["R"]),
            eps=float(prob["eps"]),
            data=InitialDataFamily(
                k=int(data["k"]), amplitudes=tuple(float(a) for a in data["amplitudes"])
            ),
            grid=GridSpec(
                dr=float(grid["dr"]),
                t_max=float(grid["t_max"]),
                r_max=None if grid["r_max"] is None else float(grid["r_max"]),
                cfl=float(grid["cfl"]),
                blowup_threshold=float(grid["blowup_threshold"]),
            ),
            enforce_hypotheses=enforce_hypotheses,
        )
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"invalid problem configuration: {exc}") from exc


def sweep_config_from_config(cfg: dict) -> SweepConfig:
    base = problem_spec_from_config(cfg)
    sw = cfg["sweep"]
    try:
        return SweepConfig(
            base=base,
            eps_values=tuple(float(e) for e in sw["eps_values"]),
            repeats=int(sw["repeats"]),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid sweep configuration: {exc}") from exc


def kernel_params_from_config(cfg: dict) -> dict:
    k = cfg["kernels"]
    return {
        "lambda0": float(k["lambda0"]),
        "quad_nodes": int(k["quad_nodes"]),
        "r1": None if k["r1"] is None else float(k["r1"]),
        "r2": None if k["r2"] is None else float(k["r2"]),
        "offset": float(k["offset"]),
    }
