"""Numerical Bergman kernel via a monomial Gram matrix.

Independent of the formal expansion machinery: the weighted inner products
G_mn = <z^n, z^m> = integral z^n conj(z)^m rho d^2 z are evaluated by
quadrature over the weight rho = e^{-alpha phi} mu g, the kernel of the
degree-d polynomial subspace is

    K_d(x, ybar) = sum_{m,n<=d} x^m [G^{-1}]_mn ybar^n,

and the diagonal kernel symbol is recovered as
(pi/alpha) mu e^{-alpha phi} K_d. Fitting symbol samples over an alpha grid
against powers of 1/alpha exposes the expansion coefficients that the
formal layer predicts.

Inversion is done through a Cholesky factorization of the diagonally
rescaled Gram matrix G_mn / sqrt(G_mm G_nn): the raw monomial Gram has a
huge diagonal dynamic range even for exactly orthogonal bases, so the
conditioning that actually matters (and is reported) is that of the
rescaled matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .geometry import WeightSpec
from .jets import variable
from .quadrature import QuadratureRule

CONDITION_LIMIT = 1e12


class GramConditionError(ArithmeticError):
    """Gram matrix too ill-conditioned to invert reliably."""


def weight_density(w, z):
    """rho(z, conj z) = e^{-alpha phi} mu g over an array of points z.

    g is the metric determinant from the potential, obtained from one
    vectorized order-2 jet evaluation (dim 1 only)."""
    if w.dim != 1:
        raise ValueError("numerical kernels are implemented for dim 1")
    z = np.asarray(z, dtype=complex)
    zb = np.conj(z)
    xj = variable(z, 0, 2, 2)
    ybj = variable(zb, 1, 2, 2)
    phi_jet = w.phi(xj, ybj)
    g = phi_jet.partial((1, 1))
    phi0 = phi_jet.value
    mu0 = w.mu(z, zb)
    mu0 = mu0.value if hasattr(mu0, "value") else np.asarray(mu0)
    rho = np.exp(-w.alpha * phi0) * mu0 * g
    if np.max(np.abs(rho.imag)) > 1e-10 * max(np.max(np.abs(rho.real)), 1e-300):
        raise ValueError("weight density is not real on the diagonal")
    rho = rho.real
    if np.any(rho <= 0):
        raise ValueError("weight density must be positive on the sampled domain")
    return rho


@dataclass
class GramData:
    """Monomial Gram matrix of the weighted inner product plus its
    rescaled factorization."""

    degree: int
    gram: np.ndarray  # raw G_mn = <z^n, z^m>
    scale: np.ndarray  # sqrt of the diagonal
    cho: tuple = field(repr=False)  # cho_factor of the rescaled Gram
    condition_estimate: float
    rule: QuadratureRule = field(repr=False)
    weight: WeightSpec = field(repr=False)
    tail_estimate: float = 0.0


def _monomial_matrix(z, degree):
    V = np.empty((z.size, degree + 1), dtype=complex)
    V[:, 0] = 1.0
    for n in range(1, degree + 1):
        V[:, n] = V[:, n - 1] * z
    return V


def gram_matrix(w, degree, rule, tail_estimate=None):
    """Assemble and factor the Gram matrix of monomials 1, z, ..., z^degree."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    rho = weight_density(w, rule.points)
    d = rule.weights * rho
    V = _monomial_matrix(rule.points, degree)
    G = (V.conj().T * d) @ V
    G = 0.5 * (G + G.conj().T)
    diag = G.diagonal().real
    if np.any(diag <= 0):
        raise GramConditionError(
            "basis degree too high for this weight; reduce degree"
        )
    scale = np.sqrt(diag)
    Gs = G / np.outer(scale, scale)
    cond = float(np.linalg.cond(Gs))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise GramConditionError(
            f"basis degree too high for this weight; reduce degree "
            f"(rescaled Gram condition {cond:.3e} > {CONDITION_LIMIT:.0e})"
        )
    try:
        cho = cho_factor(Gs, lower=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - cond guard first
        raise GramConditionError(
            "basis degree too high for this weight; reduce degree"
        ) from exc
    if tail_estimate is None:
        tail_estimate = _tail_estimate(w, rule, degree)
    return GramData(
        degree=degree,
        gram=G,
        scale=scale,
        cho=cho,
        condition_estimate=cond,
        rule=rule,
        weight=w,
        tail_estimate=tail_estimate,
    )


def _tail_estimate(w, rule, degree):
    """Discarded radial mass beyond a plane rule's cutoff, relative to the
    integral it approximates (top monomial, radial profile at the cutoff
    times the exponential tail scale)."""
    if rule.domain != "plane" or rule.cutoff is None:
        return 0.0
    smax = rule.cutoff**2
    alpha = w.alpha
    log_tail = 2 * degree * math.log(max(smax, 1e-300)) - alpha * smax - math.log(alpha)
    log_total = math.lgamma(2 * degree + 1) - (2 * degree + 1) * math.log(alpha)
    return float(math.exp(min(log_tail - log_total, 50.0)))


def _inside(gd, x):
    if gd.rule.domain == "disc":
        return abs(x) < 1.0
    return abs(x) <= (gd.rule.cutoff or math.inf)


def bergman_kernel_numeric(gd, x, ybar):
    """K_d(x, ybar) through the stored rescaled Cholesky factors."""
    if not (_inside(gd, x) and _inside(gd, np.conj(ybar))):
        raise ValueError("evaluation point outside the quadrature domain")
    n = np.arange(gd.degree + 1)
    p = np.asarray(x, dtype=complex) ** n / gd.scale
    q = np.asarray(ybar, dtype=complex) ** n / gd.scale
    return complex(p @ cho_solve(gd.cho, q))


def kernel_diagonal(gd, x):
    return bergman_kernel_numeric(gd, x, np.conj(x))


def extract_symbol_numeric(w, gd, x, interior_limit=0.8):
    """Diagonal symbol of the kernel as a covariant-operator symbol:
    (pi/alpha) mu(x, conj x) e^{-alpha phi(x, conj x)} K_d(x, conj x).

    Disc extraction is restricted to |x| <= interior_limit: the expansion
    being probed is interior-asymptotic and near-boundary quadrature error
    would pollute downstream fits."""
    if gd.rule.domain == "disc" and abs(x) > interior_limit:
        raise ValueError(
            f"diagonal symbol extraction restricted to |x| <= {interior_limit} on the disc"
        )
    xb = np.conj(x)
    K = bergman_kernel_numeric(gd, x, xb)
    val = (math.pi / w.alpha) * complex(w.mu(x, xb)) * np.exp(-w.alpha * complex(w.phi(x, xb))) * K
    if abs(val.imag) > 1e-10 * max(abs(val.real), 1e-300):
        raise ValueError("diagonal symbol came out non-real; quadrature inadequate")
    return float(val.real)


def fit_alpha_expansion(samples, max_order=2):
    """Least-squares fit of symbol samples (alpha_i, k_i) against powers of
    1/alpha: k(alpha) ~ c_0 + c_1/alpha + ... + c_M/alpha^M.

    Returns (coefficients, max_residual)."""
    samples = list(samples)
    if len(samples) < max_order + 2:
        raise ValueError(
            f"need at least {max_order + 2} alpha samples for order {max_order}, "
            f"got {len(samples)}"
        )
    alphas = np.array([a for a, _ in samples], dtype=float)
    if len(set(alphas)) != len(alphas):
        raise ValueError("alpha samples must be distinct")
    vals = np.array([v for _, v in samples], dtype=float)
    A = np.vander(1.0 / alphas, max_order + 1, increasing=True)
    coeffs, _, rank, _ = np.linalg.lstsq(A, vals, rcond=None)
    if rank < max_order + 1:
        raise ValueError("alpha grid is rank deficient for the requested order")
    residual = float(np.max(np.abs(A @ coeffs - vals)))
    return coeffs, residual
