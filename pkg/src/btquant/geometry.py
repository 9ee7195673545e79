"""Kahler geometric data derived from a potential by jet differentiation.

The potential phi(x, ybar) is a polarized function: holomorphic in x,
anti-holomorphic in ybar, with the two slots treated as independent complex
arguments near the diagonal ybar = conj(x). Everything here is obtained by
evaluating phi on jets:

    metric        g_ij  = d_i d_jbar phi
    laplacian     Delta = g^{i jbar} d_i d_jbar       (inverse-metric contraction)
    curvature     R     = g^{jbar i} d_i d_jbar ln det g

R uses the convention above verbatim; it is the negative of the more common
differential-geometry sign (the unit-disc model below has R = +2).

All operations are pure and accept jet-valued base points, in which case the
returned quantities are jets in the ambient variables.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .jets import FreshFrame, Jet, log as jlog

DIAG_TOL = 1e-12  # |ybar - conj(x)| below this counts as on-diagonal


class GeometryError(ValueError):
    """Raised when the metric degenerates or a log branch is undefined."""


def _as_tuple(v, dim):
    if isinstance(v, (tuple, list)):
        if len(v) != dim:
            raise ValueError(f"expected {dim} components, got {len(v)}")
        return tuple(v)
    if dim != 1:
        raise ValueError(f"scalar argument for a {dim}-dimensional function")
    return (v,)


@dataclass(frozen=True)
class PolarizedFunction:
    """Two-slot map (x, ybar) -> C, holomorphic in each slot.

    ``fn`` receives tuples of length ``dim`` whose entries are complex
    numbers, numpy arrays, jets, or mpmath numbers; it must be written with
    arithmetic generic over those (use :func:`btquant.jets.exp` /
    :func:`btquant.jets.log` instead of numpy ufuncs).
    """

    dim: int
    fn: Callable
    name: str = ""

    def __call__(self, x, ybar):
        return self.fn(_as_tuple(x, self.dim), _as_tuple(ybar, self.dim))

    def __add__(self, other):
        other = _as_polarized(other, self.dim)
        return PolarizedFunction(self.dim, lambda x, y: self.fn(x, y) + other.fn(x, y))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_polarized(other, self.dim)
        return PolarizedFunction(self.dim, lambda x, y: self.fn(x, y) - other.fn(x, y))

    def __mul__(self, other):
        other = _as_polarized(other, self.dim)
        return PolarizedFunction(self.dim, lambda x, y: self.fn(x, y) * other.fn(x, y))

    __rmul__ = __mul__

    def __neg__(self):
        return PolarizedFunction(self.dim, lambda x, y: -self.fn(x, y))

    @staticmethod
    def constant(value, dim=1):
        return PolarizedFunction(dim, lambda x, y: value, name=str(value))


def _as_polarized(v, dim):
    if isinstance(v, PolarizedFunction):
        if v.dim != dim:
            raise ValueError("dimension mismatch between polarized functions")
        return v
    if isinstance(v, numbers.Number):
        return PolarizedFunction.constant(v, dim)
    raise TypeError(f"cannot treat {type(v).__name__} as a polarized function")


@dataclass(frozen=True)
class WeightSpec:
    """Weight data rho = e^{-alpha phi} mu g with alpha > 0, mu > 0."""

    phi: PolarizedFunction
    mu: PolarizedFunction
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.phi.dim != self.mu.dim:
            raise ValueError("phi and mu must share a dimension")

    @property
    def dim(self):
        return self.phi.dim

    def log_mu(self):
        return PolarizedFunction(self.dim, lambda x, y: jlog(self.mu.fn(x, y)), name="ln mu")


@dataclass(frozen=True)
class KahlerData:
    """Pointwise metric package at (x, ybar).

    Entries are complex scalars for plain base points and jets for jet-valued
    base points (nested differentiation). ``metric``/``inverse`` are nested
    lists indexed [i][j] for g_{i jbar} and its matrix inverse transposed so
    that contraction reads sum_ij inverse[j][i] * d_i d_jbar.
    """

    point: tuple
    metric: list
    inverse: list
    det: object
    scalar_curvature: object

    @property
    def metric_matrix(self):
        return np.array(self.metric, dtype=complex)

    @property
    def inverse_matrix(self):
        return np.array(self.inverse, dtype=complex)


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    raise ValueError("metric dimensions above 3 are not supported")


def _adjugate(m):
    n = len(m)
    if n == 1:
        return [[1.0 + 0.0j]]
    if n == 2:
        return [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
    if n == 3:
        c = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rows = [r for r in range(3) if r != i]
                cols = [s for s in range(3) if s != j]
                minor = (
                    m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                    - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
                )
                c[j][i] = minor * ((-1) ** (i + j))
        return c
    raise ValueError("metric dimensions above 3 are not supported")


def _slot_frame(dim, x, ybar, order):
    """Fresh-variable frame with the 2*dim slot coordinates seeded as
    variables: x_i -> fresh i, ybar_j -> fresh dim + j."""
    frame = FreshFrame(tuple(x) + tuple(ybar), 2 * dim, order)
    xj = [frame.variable(x[i], i) for i in range(dim)]
    ybj = [frame.variable(ybar[j], dim + j) for j in range(dim)]
    return frame, xj, ybj


def _pair_index(dim, i, j):
    gamma = [0] * (2 * dim)
    gamma[i] += 1
    gamma[dim + j] += 1
    return tuple(gamma)


def _is_plain(values):
    return all(not isinstance(v, Jet) for v in values)


def _on_diagonal(x, ybar):
    return all(
        abs(b - np.conj(a)) <= DIAG_TOL * max(1.0, abs(a)) for a, b in zip(x, ybar)
    )


def kahler_data(phi, x, ybar):
    """Metric, inverse, determinant and scalar curvature of phi at (x, ybar).

    Off-diagonal points are permitted (the expansion operators need them);
    positivity is enforced only on the diagonal. Off the diagonal the log
    branch for ln det g is restricted to Re(det g) > 0.
    """
    N = phi.dim
    x = _as_tuple(x, N)
    ybar = _as_tuple(ybar, N)
    frame, xj, ybj = _slot_frame(N, x, ybar, 4)
    J = phi(xj, ybj)
    if not isinstance(J, Jet):
        raise GeometryError("potential must be jet-evaluable at the base point")

    gjets = [
        [J.derive(frame.var_index(i)).derive(frame.var_index(N + j)) for j in range(N)]
        for i in range(N)
    ]
    det_jet = _det(gjets)
    det_val = frame.value(det_jet)

    plain = _is_plain(x + ybar)
    if plain:
        if abs(det_val) == 0.0:
            raise GeometryError("metric singular: not strictly plurisubharmonic here")
        if _on_diagonal(x, ybar):
            mat = np.array(
                [[frame.value(gjets[i][j]) for j in range(N)] for i in range(N)],
                dtype=complex,
            )
            eigs = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
            if eigs.min() <= 0:
                raise GeometryError(
                    "metric not positive definite: not strictly plurisubharmonic here"
                )
        elif complex(det_val).real <= 0:
            raise GeometryError(
                "det g left the right half-plane off the diagonal; ln g branch undefined"
            )

    metric = [[frame.value(gjets[i][j]) for j in range(N)] for i in range(N)]
    log_det = det_jet.log()
    ddbar_logg = [
        [frame.extract(log_det, _pair_index(N, i, j)) for j in range(N)] for i in range(N)
    ]
    adj = _adjugate(metric)
    inverse = [[adj[i][j] / det_val for j in range(N)] for i in range(N)]
    curvature = sum(
        inverse[j][i] * ddbar_logg[i][j] for i in range(N) for j in range(N)
    )
    return KahlerData(
        point=(x, ybar),
        metric=metric,
        inverse=inverse,
        det=det_val,
        scalar_curvature=curvature,
    )


def laplacian(f, phi, x, ybar, kd=None):
    """g^{i jbar} d_i d_jbar f at (x, ybar); derivatives act on f's own slots."""
    N = phi.dim
    x = _as_tuple(x, N)
    ybar = _as_tuple(ybar, N)
    if kd is None:
        kd = kahler_data(phi, x, ybar)
    frame, xj, ybj = _slot_frame(N, x, ybar, 2)
    J = f(xj, ybj)
    if not isinstance(J, Jet):
        # constant functions never produce a jet; their Laplacian vanishes
        return 0.0 if _is_plain(x + ybar) else J * 0.0
    return sum(
        kd.inverse[j][i] * frame.extract(J, _pair_index(N, i, j))
        for i in range(N)
        for j in range(N)
    )


def c_coefficient(w, x, ybar, kd=None):
    """First-order coefficient function c = Delta(ln mu) + R/2.

    This is the quantity the kernel symbol truncates with (k_1 = -c). The
    Delta acts on ln mu rather than mu itself: the four-point density ratio
    entering the expansion operators has vanishing first derivatives at the
    collapsed point, which turns its mixed second derivatives into those of
    ln mu. The unit-disc model with mu = (1 - x ybar)^2 (exact k_1 = 1)
    pins this reading down numerically.
    """
    if kd is None:
        kd = kahler_data(w.phi, x, ybar)
    mu_val = w.mu(x, ybar)
    probe = mu_val.value if isinstance(mu_val, Jet) else mu_val
    if np.any(np.asarray(probe) == 0):
        raise GeometryError("mu vanishes at the evaluation point")
    return laplacian(w.log_mu(), w.phi, x, ybar, kd=kd) + 0.5 * kd.scalar_curvature


def diastasis_phi(phi, x, zbar, y, ybar):
    """phi(x,zbar) + phi(y,ybar) - phi(x,ybar) - phi(y,zbar)."""
    return phi(x, zbar) + phi(y, ybar) - phi(x, ybar) - phi(y, zbar)


def diastasis_mu(mu, x, zbar, y, ybar):
    """mu(x,zbar) mu(y,ybar) / (mu(x,ybar) mu(y,zbar))."""
    den1 = mu(x, ybar)
    den2 = mu(y, zbar)
    for d in (den1, den2):
        probe = d.value if isinstance(d, Jet) else d
        if np.any(np.asarray(probe) == 0):
            raise GeometryError("mu vanishes in a diastasis denominator")
    return mu(x, zbar) * mu(y, ybar) / (den1 * den2)


@dataclass(frozen=True)
class DiastasisCheck:
    value_zero: bool
    gradient_zero: bool
    hessian_pd: bool
    value: complex
    gradient_norm: float
    smallest_eigenvalue: float

    def __bool__(self):
        return self.value_zero and self.gradient_zero and self.hessian_pd


def diastasis_hessian_check(phi, x, zbar, tol=1e-9):
    """Stationarity of the six-point phase behind the composed expansion.

    The phase
        F(y, ybar, w, wbar) = phi(x,zbar) + phi(y,ybar) + phi(w,wbar)
                              - phi(x,ybar) - phi(y,wbar) - phi(w,zbar)
    must vanish with zero gradient at (y,ybar,w,wbar) = (x,zbar,x,zbar), and
    its second-order term must be positive along the physical contour
    ybar = conj(y), wbar = conj(w). The unrestricted complexified quadratic
    form has split signature by holomorphy, so positive definiteness is
    checked for the real 4N-dimensional form obtained by that restriction:
    Q(a, c) = Re F''[(a, conj a, c, conj c)] with a = dy, c = dw.
    """
    N = phi.dim
    x = _as_tuple(x, N)
    zbar = _as_tuple(zbar, N)
    bases = x + zbar + x + zbar  # (y, ybar, w, wbar) collapse point
    frame = FreshFrame(bases, 4 * N, 2)
    y = [frame.variable(x[i], i) for i in range(N)]
    yb = [frame.variable(zbar[i], N + i) for i in range(N)]
    wv = [frame.variable(x[i], 2 * N + i) for i in range(N)]
    wb = [frame.variable(zbar[i], 3 * N + i) for i in range(N)]
    xc = [frame.constant(x[i]) for i in range(N)]
    zc = [frame.constant(zbar[i]) for i in range(N)]

    F = (
        phi.fn(tuple(xc), tuple(zc))
        + phi.fn(tuple(y), tuple(yb))
        + phi.fn(tuple(wv), tuple(wb))
        - phi.fn(tuple(xc), tuple(yb))
        - phi.fn(tuple(y), tuple(wb))
        - phi.fn(tuple(wv), tuple(zc))
    )

    nv = 4 * N
    value = frame.value(F)
    grad = np.array(
        [frame.extract(F, tuple(1 if k == i else 0 for k in range(nv))) for i in range(nv)]
    )
    hess = np.zeros((nv, nv), dtype=complex)
    for i in range(nv):
        for j in range(i, nv):
            gamma = [0] * nv
            gamma[i] += 1
            gamma[j] += 1
            hess[i, j] = hess[j, i] = frame.extract(F, tuple(gamma))

    # real quadratic form on the contour slice delta = (a, conj a, c, conj c)
    dim_real = 4 * N
    basis = np.eye(dim_real)

    def q(u):
        a = u[:N] + 1j * u[N : 2 * N]
        c = u[2 * N : 3 * N] + 1j * u[3 * N :]
        delta = np.concatenate([a, np.conj(a), c, np.conj(c)])
        return 0.5 * (delta @ hess @ delta).real

    form = np.zeros((dim_real, dim_real))
    for p in range(dim_real):
        for r in range(p, dim_real):
            val = 0.25 * (q(basis[p] + basis[r]) - q(basis[p] - basis[r]))
            form[p, r] = form[r, p] = val
    eigs = np.linalg.eigvalsh(form)

    scale = max(1.0, max(abs(complex(phi(a, b))) for a, b in [(x, zbar)]))
    return DiastasisCheck(
        value_zero=abs(value) <= tol * scale,
        gradient_zero=float(np.max(np.abs(grad))) <= tol * scale,
        hessian_pd=bool(eigs.min() > 0),
        value=complex(value),
        gradient_norm=float(np.max(np.abs(grad))),
        smallest_eigenvalue=float(eigs.min()),
    )
