"""Built-in (phi, mu) model catalog with closed-form reference data.

Each model ships a hand-polarized potential and density so it doubles as an
oracle for the jet engine, plus -- where a closed form exists -- the exact
Bergman kernel and diagonal kernel symbol for its weight normalization
rho = e^{-alpha phi} mu g (no extra constants folded into rho; any constant
prefactor of the kernel follows from that convention by linearity).

Models:

    segal-bargmann   phi = x ybar             mu = 1            plane
    sb-mu-exp        phi = x ybar             mu = e^{beta x ybar}   plane
    disc-hyperbolic  phi = -log(1 - x ybar)   mu = 1            disc
    disc-mu-sq       phi = -log(1 - x ybar)   mu = (1 - x ybar)^2    disc
    plane-quartic    phi = x ybar + eps (x ybar)^2, mu = 1       plane

disc-hyperbolic carries no reference kernel here; it exists for geometry
oracles (R = 2, c = 1, predicted k_1 = -1). plane-quartic has non-constant
curvature and no closed-form kernel; its k_1 is checked against -R/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .geometry import PolarizedFunction, WeightSpec
from .jets import exp as jexp, log as jlog

MODEL_NAMES = (
    "segal-bargmann",
    "sb-mu-exp",
    "disc-hyperbolic",
    "disc-mu-sq",
    "plane-quartic",
)


@dataclass(frozen=True)
class ModelSpec:
    name: str
    dim: int
    phi: PolarizedFunction
    mu: PolarizedFunction
    domain: str  # "disc" | "plane"
    params: dict = field(default_factory=dict)
    # exact kernel K(alpha, x, ybar), when known in this normalization
    reference_kernel: Optional[Callable] = None
    # exact diagonal kernel symbol k(alpha, x), when known
    reference_symbol: Optional[Callable] = None
    # boundary exponent of the radial weight profile (disc) or decay rate
    # scale (plane), used to adapt quadrature
    quad_hint: Callable = lambda alpha: float(alpha)

    def weight(self, alpha):
        return WeightSpec(phi=self.phi, mu=self.mu, alpha=float(alpha))


def _one(dim=1):
    return PolarizedFunction.constant(1.0, dim)


def make_model(name, **params):
    """Build a catalog model by name; parameter names are part of the CLI
    vocabulary (sb-mu-exp: beta, plane-quartic: epsilon)."""
    if name == "segal-bargmann":
        _reject_params(name, params)
        phi = PolarizedFunction(1, lambda x, y: x[0] * y[0], name="x ybar")
        return ModelSpec(
            name=name,
            dim=1,
            phi=phi,
            mu=_one(),
            domain="plane",
            reference_kernel=lambda a, x, yb: (a / math.pi) * np.exp(a * x * yb),
            reference_symbol=lambda a, x: 1.0 + 0.0j,
            quad_hint=lambda a: float(a),
        )

    if name == "sb-mu-exp":
        beta = float(params.pop("beta", 0.25))
        _reject_params(name, params)
        phi = PolarizedFunction(1, lambda x, y: x[0] * y[0], name="x ybar")
        mu = PolarizedFunction(1, lambda x, y: jexp(beta * x[0] * y[0]), name="e^{b x ybar}")
        return ModelSpec(
            name=name,
            dim=1,
            phi=phi,
            mu=mu,
            domain="plane",
            params={"beta": beta},
            reference_kernel=lambda a, x, yb: ((a - beta) / math.pi)
            * np.exp((a - beta) * x * yb),
            reference_symbol=lambda a, x: (a - beta) / a + 0.0j,
            quad_hint=lambda a: float(a - beta),
        )

    if name == "disc-hyperbolic":
        _reject_params(name, params)
        phi = PolarizedFunction(1, lambda x, y: -jlog(1.0 - x[0] * y[0]), name="-log(1-x ybar)")
        return ModelSpec(
            name=name,
            dim=1,
            phi=phi,
            mu=_one(),
            domain="disc",
            quad_hint=lambda a: float(a - 2.0),
        )

    if name == "disc-mu-sq":
        _reject_params(name, params)
        phi = PolarizedFunction(1, lambda x, y: -jlog(1.0 - x[0] * y[0]), name="-log(1-x ybar)")
        mu = PolarizedFunction(1, lambda x, y: (1.0 - x[0] * y[0]) ** 2, name="(1-x ybar)^2")
        return ModelSpec(
            name=name,
            dim=1,
            phi=phi,
            mu=mu,
            domain="disc",
            reference_kernel=lambda a, x, yb: ((a + 1.0) / math.pi)
            * (1.0 - x * yb) ** (-a - 2.0),
            reference_symbol=lambda a, x: (a + 1.0) / a + 0.0j,
            quad_hint=lambda a: float(a),
        )

    if name == "plane-quartic":
        eps = float(params.pop("epsilon", 0.1))
        _reject_params(name, params)
        if eps < 0:
            raise ValueError(
                "plane-quartic requires epsilon >= 0 (metric 1 + 4 eps |x|^2 must stay positive)"
            )
        phi = PolarizedFunction(
            1,
            lambda x, y: x[0] * y[0] + eps * (x[0] * y[0]) ** 2,
            name="x ybar + eps (x ybar)^2",
        )
        return ModelSpec(
            name=name,
            dim=1,
            phi=phi,
            mu=_one(),
            domain="plane",
            params={"epsilon": eps},
            quad_hint=lambda a: float(a),
        )

    raise ValueError(f"unknown model {name!r}; known: {', '.join(MODEL_NAMES)}")


def _reject_params(name, params):
    if params:
        raise ValueError(f"model {name!r} does not accept parameters {sorted(params)}")
