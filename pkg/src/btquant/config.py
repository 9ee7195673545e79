"""Experiment configuration: TOML files with strict key validation.

Unknown keys anywhere in the file are errors (they are almost always
typos), and every value is type-checked before use. Omitted sections fall
back to defaults that reproduce the shipped verification experiments.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - depends on interpreter
    import tomli as tomllib


class ConfigError(ValueError):
    """Malformed or inconsistent experiment configuration."""


_SCHEMA = {
    "model": {"name": str, "beta": (int, float), "epsilon": (int, float)},
    "sweep": {
        "alphas": list,
        "degree": int,
        "radial_order": int,
        "angular_order": int,
    },
    "points": {"samples": list},
    "fit": {"max_order": int},
    "tolerances": {"c1_rel": (int, float), "residual": (int, float), "symbol_rel": (int, float)},
    "random": {"seed": int, "count": int, "poly_degree": int},
}

_DEFAULTS = {
    "model": {"name": "disc-mu-sq"},
    "sweep": {"alphas": [8.0, 16.0, 32.0, 64.0], "degree": 48, "radial_order": 0, "angular_order": 0},
    "points": {"samples": [[0.15, 0.0], [0.25, 0.0], [0.3, 0.15], [0.35, 0.0], [0.45, 0.0]]},
    "fit": {"max_order": 2},
    "tolerances": {"c1_rel": 0.02, "residual": 1e-10, "symbol_rel": 1e-6},
    "random": {"seed": 20240801, "count": 20, "poly_degree": 3},
}


@dataclass
class ExperimentConfig:
    model_name: str
    model_params: dict
    alphas: list
    degree: int
    radial_order: int  # 0 = derive from degree
    angular_order: int  # 0 = derive from degree
    samples: list  # complex sample points
    fit_max_order: int
    c1_rel: float
    residual_tol: float
    symbol_rel: float
    seed: int
    random_count: int
    poly_degree: int
    raw: dict = field(default_factory=dict)

    def validate(self):
        if not self.alphas:
            raise ConfigError("sweep.alphas must be a nonempty list of positive reals")
        if any(a <= 0 for a in self.alphas):
            raise ConfigError("sweep.alphas must be positive")
        if len(set(self.alphas)) != len(self.alphas):
            raise ConfigError("sweep.alphas must be distinct")
        if self.degree < 1:
            raise ConfigError("sweep.degree must be >= 1")
        if not self.samples:
            raise ConfigError("points.samples must be nonempty")
        if self.c1_rel <= 0 or self.residual_tol <= 0 or self.symbol_rel <= 0:
            raise ConfigError("tolerances must be positive")
        if self.fit_max_order < 1:
            raise ConfigError("fit.max_order must be >= 1")
        if len(self.alphas) < self.fit_max_order + 2:
            raise ConfigError(
                f"need at least {self.fit_max_order + 2} alphas for a fit of order "
                f"{self.fit_max_order}"
            )
        beta = self.model_params.get("beta")
        if beta is not None and beta >= min(self.alphas):
            raise ConfigError("model.beta must be below every swept alpha")
        return self


def _check_unknown(data):
    for section, content in data.items():
        if section not in _SCHEMA:
            raise ConfigError(
                f"unknown section [{section}]; known: {', '.join(sorted(_SCHEMA))}"
            )
        if not isinstance(content, dict):
            raise ConfigError(f"[{section}] must be a table of key = value entries")
        for key, value in content.items():
            if key not in _SCHEMA[section]:
                raise ConfigError(
                    f"unknown key {key!r} in [{section}]; known: "
                    f"{', '.join(sorted(_SCHEMA[section]))}"
                )
            expected = _SCHEMA[section][key]
            if not isinstance(value, expected):
                raise ConfigError(
                    f"{section}.{key} must be of type "
                    f"{expected if isinstance(expected, type) else '/'.join(t.__name__ for t in expected)}"
                )


def _merged(data):
    out = {}
    for section, defaults in _DEFAULTS.items():
        out[section] = dict(defaults)
        out[section].update(data.get(section, {}))
    return out


def _parse_samples(raw):
    pts = []
    for entry in raw:
        if isinstance(entry, (int, float)):
            pts.append(complex(entry))
        elif isinstance(entry, list) and len(entry) == 2:
            pts.append(complex(float(entry[0]), float(entry[1])))
        else:
            raise ConfigError(
                "points.samples entries must be numbers or [re, im] pairs"
            )
    return pts


def load_config(path=None, overrides=None):
    """Read and validate a TOML experiment config; `path=None` gives the
    defaults. `overrides` may replace the seed (CLI flag)."""
    data = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"config {path} is not valid TOML: {exc}") from exc
    _check_unknown(data)
    m = _merged(data)
    params = {}
    if "beta" in m["model"]:
        params["beta"] = float(m["model"]["beta"])
    if "epsilon" in m["model"]:
        params["epsilon"] = float(m["model"]["epsilon"])
    cfg = ExperimentConfig(
        model_name=m["model"]["name"],
        model_params=params,
        alphas=[float(a) for a in m["sweep"]["alphas"]],
        degree=int(m["sweep"]["degree"]),
        radial_order=int(m["sweep"]["radial_order"]),
        angular_order=int(m["sweep"]["angular_order"]),
        samples=_parse_samples(m["points"]["samples"]),
        fit_max_order=int(m["fit"]["max_order"]),
        c1_rel=float(m["tolerances"]["c1_rel"]),
        residual_tol=float(m["tolerances"]["residual"]),
        symbol_rel=float(m["tolerances"]["symbol_rel"]),
        seed=int(m["random"]["seed"]),
        random_count=int(m["random"]["count"]),
        poly_degree=int(m["random"]["poly_degree"]),
        raw=m,
    )
    if overrides:
        for key, value in overrides.items():
            if value is not None:
                setattr(cfg, key, value)
    return cfg.validate()
