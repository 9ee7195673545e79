"""Quadrature rules for weighted inner products over the disc and the plane.

Rules integrate functions of (z, conj z) against the area measure d^2 z.
Radially the substitution s = |z|^2 is used (d^2 z = (1/2) ds dtheta):

  * disc: Gauss-Jacobi nodes in s on (0, 1) adapted to a boundary factor
    (1-s)^hint; node weights divide the factor out again, so the rule is
    exact for integrands of the form (polynomial in s) * (1-s)^hint.
  * plane: Gauss-Legendre nodes in s on (0, cutoff^2) for integrands with
    Gaussian-type radial decay; the cutoff must be chosen so the discarded
    tail is negligible (see :func:`plane_cutoff`).

Angularly a uniform grid is used, exact for trigonometric polynomials of
frequency below the number of angular points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi, roots_legendre


@dataclass(frozen=True)
class QuadratureRule:
    domain: str  # "disc" | "plane"
    points: np.ndarray  # complex nodes z_k
    weights: np.ndarray  # positive area weights
    radial_order: int
    angular_order: int
    hint: float
    cutoff: float | None = None

    def integrate(self, values):
        """Sum weighted samples; `values` are f(z_k) over `points`."""
        return np.sum(self.weights * np.asarray(values))

    def integrate_fn(self, fn):
        return self.integrate(fn(self.points, np.conj(self.points)))


def build_quadrature(domain, radial_order, angular_order, weight_exponent_hint=0.0, cutoff=None):
    """Tensor rule over |z| and arg z; see the module docstring for the
    radial families. `weight_exponent_hint` is the boundary exponent the
    disc rule adapts to; the plane rule requires an explicit `cutoff`
    radius (in |z|, not s)."""
    if radial_order < 1 or angular_order < 1:
        raise ValueError("quadrature orders must be >= 1")
    if domain == "disc":
        if weight_exponent_hint <= -1:
            raise ValueError("disc boundary exponent must exceed -1")
        xs, ws = roots_jacobi(radial_order, weight_exponent_hint, 0.0)
        s = (xs + 1.0) / 2.0
        # transform to [0,1] and divide the adapted factor back out
        w_rad = ws / 2.0 ** (weight_exponent_hint + 1.0) / (1.0 - s) ** weight_exponent_hint
    elif domain == "plane":
        if cutoff is None:
            raise ValueError("plane domain requires a cutoff radius")
        xs, ws = roots_legendre(radial_order)
        smax = float(cutoff) ** 2
        s = (xs + 1.0) / 2.0 * smax
        w_rad = ws * smax / 2.0
    else:
        raise ValueError(f"unknown domain {domain!r}")

    theta = 2.0 * math.pi * np.arange(angular_order) / angular_order
    w_ang = 2.0 * math.pi / angular_order
    r = np.sqrt(s)
    z = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    w = (0.5 * w_rad[:, None] * w_ang * np.ones_like(theta)[None, :]).ravel()
    return QuadratureRule(
        domain=domain,
        points=z,
        weights=w,
        radial_order=radial_order,
        angular_order=angular_order,
        hint=float(weight_exponent_hint),
        cutoff=None if cutoff is None else float(cutoff),
    )


def plane_cutoff(alpha, max_s_degree, tol=1e-12):
    """Cutoff radius for plane rules: the radial integrand s^d e^{-alpha s}
    at the cutoff, times the exponential tail scale 1/alpha, must fall below
    `tol` of the full integral d!/alpha^(d+1)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    d = max(int(max_s_degree), 0)
    log_total = math.lgamma(d + 1) - (d + 1) * math.log(alpha)
    smax = (d + 1.0) / alpha  # start at the integrand peak
    for _ in range(200):
        log_tail = d * math.log(smax) - alpha * smax - math.log(alpha)
        if log_tail - log_total < math.log(tol):
            return math.sqrt(smax)
        smax *= 1.25
    raise RuntimeError("cutoff search did not converge")
