"""Formal-symbol algebra: expansion operators, star products, transforms.

A :class:`FormalSymbol` is a truncated power series in the deformation
parameter hbar whose coefficients are polarized functions. The algebra is
numeric-first: composite symbols carry lazy coefficient closures and are
compared pointwise; no symbolic simplification happens.

The expansion operators R_n turn four-point integrands F(x, zbar, y, ybar)
into functions of (x, zbar) by differentiating the (y, ybar) slots and
collapsing them onto the base point:

    R_0(F)(x, zbar) = F(x, zbar, x, zbar)
    R_1(F)(x, zbar) = (Delta_y F + R F / 2)(x, zbar, x, zbar)

with Delta_y the inverse-metric contraction of d_{y_i} d_{ybar_j} and R the
scalar curvature at (x, zbar). Operators beyond n = 1 are not shipped but
can be registered, which raises the available truncation order of every
operation here.

The triple symbol composes three symbols through the operators and the
multiplicative density ratio mu_tilde; all star products, the kernel-symbol
recurrences and the averaging transform are thin layers over it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import (
    PolarizedFunction,
    WeightSpec,
    _as_tuple,
    _pair_index,
    _slot_frame,
    kahler_data,
)
from .jets import FreshFrame, Jet


class TruncationError(ValueError):
    """Requested hbar order exceeds the registered expansion operators."""


def _zero(dim):
    return PolarizedFunction.constant(0.0, dim)


class FormalSymbol:
    """Truncated series sum_m hbar^m f_m with polarized-function coefficients.

    Coefficients beyond the stored truncation read as zero. Instances are
    immutable; arithmetic returns new symbols truncated at the shorter
    operand."""

    def __init__(self, coeffs, dim):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a formal symbol needs at least the hbar^0 coefficient")
        for c in coeffs:
            if not isinstance(c, PolarizedFunction):
                raise TypeError("formal symbol coefficients must be polarized functions")
            if c.dim != dim:
                raise ValueError("coefficient dimension mismatch")
        self.coeffs = coeffs
        self.dim = dim

    @property
    def order(self):
        return len(self.coeffs) - 1

    def coefficient(self, m):
        if m < 0:
            raise IndexError("negative series index")
        return self.coeffs[m] if m <= self.order else _zero(self.dim)

    @staticmethod
    def constant(value, dim=1, order=0):
        coeffs = [PolarizedFunction.constant(value, dim)]
        coeffs += [_zero(dim)] * order
        return FormalSymbol(coeffs, dim)

    @staticmethod
    def one(dim=1, order=0):
        return FormalSymbol.constant(1.0, dim, order)

    @staticmethod
    def from_function(f, dim=1, order=0):
        if isinstance(f, FormalSymbol):
            return f
        if isinstance(f, PolarizedFunction):
            return FormalSymbol([f] + [_zero(f.dim)] * order, f.dim)
        return FormalSymbol.constant(complex(f), dim, order)

    def pad(self, order):
        if order <= self.order:
            return self
        return FormalSymbol(
            self.coeffs + tuple(_zero(self.dim) for _ in range(order - self.order)),
            self.dim,
        )

    def truncate(self, order):
        return FormalSymbol(self.coeffs[: order + 1], self.dim).pad(order)

    def __add__(self, other):
        other = FormalSymbol.from_function(other, self.dim)
        order = min(self.order, other.order)
        return FormalSymbol(
            [self.coefficient(m) + other.coefficient(m) for m in range(order + 1)],
            self.dim,
        )

    def __sub__(self, other):
        other = FormalSymbol.from_function(other, self.dim)
        order = min(self.order, other.order)
        return FormalSymbol(
            [self.coefficient(m) - other.coefficient(m) for m in range(order + 1)],
            self.dim,
        )

    def __mul__(self, other):
        """Cauchy product in hbar; the result carries the shorter truncation."""
        if isinstance(other, (int, float, complex)):
            return FormalSymbol([other * c for c in self.coeffs], self.dim)
        other = FormalSymbol.from_function(other, self.dim)
        order = min(self.order, other.order)
        out = []
        for n in range(order + 1):
            acc = self.coefficient(0) * other.coefficient(n)
            for m in range(1, n + 1):
                acc = acc + self.coefficient(m) * other.coefficient(n - m)
            out.append(acc)
        return FormalSymbol(out, self.dim)

    __rmul__ = __mul__

    def reciprocal(self, order=None):
        """Series inverse; requires a nonvanishing hbar^0 coefficient at
        every point where the result is evaluated."""
        order = self.order if order is None else order
        dim = self.dim
        f0 = self.coefficient(0)
        r = [PolarizedFunction(dim, lambda x, y: 1.0 / f0.fn(x, y))]
        for n in range(1, order + 1):
            terms = [self.coefficient(m) * r[n - m] for m in range(1, n + 1)]

            def fn(x, y, _terms=tuple(terms), _r0=r[0]):
                s = _terms[0].fn(x, y)
                for t in _terms[1:]:
                    s = s + t.fn(x, y)
                return -(_r0.fn(x, y) * s)

            r.append(PolarizedFunction(dim, fn))
        return FormalSymbol(r, dim)

    def coefficients_at(self, x, ybar):
        """Evaluate every coefficient at a point; returns a complex array."""
        return np.array([complex(c(x, ybar)) for c in self.coeffs])

    def eval_at(self, x, ybar, hbar):
        """Collapse the series at a numeric hbar (e.g. 1/alpha)."""
        vals = self.coefficients_at(x, ybar)
        return complex(sum(v * hbar**m for m, v in enumerate(vals)))


@dataclass(frozen=True)
class FourPointFunction:
    """Map (x, zbar, y, ybar) -> C, jet-evaluable in the (y, ybar) slots."""

    dim: int
    fn: Callable

    def __call__(self, x, zbar, y, ybar):
        return self.fn(
            _as_tuple(x, self.dim),
            _as_tuple(zbar, self.dim),
            _as_tuple(y, self.dim),
            _as_tuple(ybar, self.dim),
        )


@dataclass(frozen=True)
class RnOperator:
    """Expansion operator of one order: four-point function in, polarized
    function of the base point out."""

    index: int
    _apply: Callable  # (FourPointFunction, x_tuple, zbar_tuple) -> value

    def apply(self, F, x, zbar):
        return self._apply(F, _as_tuple(x, F.dim), _as_tuple(zbar, F.dim))

    def action(self, F):
        return PolarizedFunction(F.dim, lambda x, zbar: self._apply(F, x, zbar))


def r0_apply(F, x, zbar):
    """Collapse the integration slots onto the base point."""
    x = _as_tuple(x, F.dim)
    zbar = _as_tuple(zbar, F.dim)
    return F.fn(x, zbar, x, zbar)


def r1_apply(F, phi, x, zbar, kd=None):
    """Inverse-metric contraction of the mixed (y, ybar) Hessian of F at the
    collapsed point, plus the curvature half-term."""
    N = F.dim
    x = _as_tuple(x, N)
    zbar = _as_tuple(zbar, N)
    if kd is None:
        kd = kahler_data(phi, x, zbar)
    frame = FreshFrame(tuple(x) + tuple(zbar), 2 * N, 2)
    xc = tuple(frame.constant(v) for v in x)
    zc = tuple(frame.constant(v) for v in zbar)
    y = tuple(frame.variable(x[i], i) for i in range(N))
    yb = tuple(frame.variable(zbar[j], N + j) for j in range(N))
    J = F.fn(xc, zc, y, yb)
    if not isinstance(J, Jet):
        # integrand constant in the integration slots
        return 0.5 * kd.scalar_curvature * J
    lap = sum(
        kd.inverse[j][i] * frame.extract(J, _pair_index(N, i, j))
        for i in range(N)
        for j in range(N)
    )
    return lap + 0.5 * kd.scalar_curvature * frame.value(J)


def default_operators(w):
    """The shipped operator table: orders 0 and 1."""
    phi = w.phi if isinstance(w, WeightSpec) else w
    return {
        0: RnOperator(0, lambda F, x, zbar: F.fn(x, zbar, x, zbar)),
        1: RnOperator(1, lambda F, x, zbar: r1_apply(F, phi, x, zbar)),
    }


def _resolve_operators(w, operators, order):
    ops = default_operators(w)
    if operators:
        for n, op in operators.items():
            ops[n] = op if isinstance(op, RnOperator) else RnOperator(n, op)
    missing = [n for n in range(order + 1) if n not in ops]
    if missing:
        raise TruncationError(
            f"requested order {order} exceeds registered expansion operators "
            f"(missing R_{missing[0]}); register user operators to go higher"
        )
    return ops


def _mu_tilde_factory(mu):
    def mt(xt, zbt, yt, ybt):
        return (mu.fn(xt, zbt) * mu.fn(yt, ybt)) / (mu.fn(xt, ybt) * mu.fn(yt, zbt))

    return mt


def _triple_integrand(c1, c2, c3, mu, dim):
    mt = _mu_tilde_factory(mu)

    def fn(xt, zbt, yt, ybt):
        return c1.fn(xt, ybt) * c2.fn(yt, ybt) * c3.fn(yt, zbt) * mt(xt, zbt, yt, ybt)

    return FourPointFunction(dim, fn)


def _compositions3(total):
    for m in range(total + 1):
        for p in range(total - m + 1):
            yield m, p, total - m - p


def triple_symbol(f1, f2, f3, w, order=1, operators=None):
    """Symbol of the sandwiched operator product: hbar^n coefficient is the
    sum of R_l applied to coefficient combinations with l + m + p + q = n."""
    dim = w.dim
    f1 = FormalSymbol.from_function(f1, dim)
    f2 = FormalSymbol.from_function(f2, dim)
    f3 = FormalSymbol.from_function(f3, dim)
    ops = _resolve_operators(w, operators, order)
    coeffs = []
    for n in range(order + 1):
        pieces = []
        for l in range(n + 1):
            op = ops[l]
            for m, p, q in _compositions3(n - l):
                F = _triple_integrand(
                    f1.coefficient(m), f2.coefficient(p), f3.coefficient(q), w.mu, dim
                )
                pieces.append((op, F))

        def fn(x, zbar, _pieces=tuple(pieces)):
            total = _pieces[0][0]._apply(_pieces[0][1], x, zbar)
            for op, F in _pieces[1:]:
                total = total + op._apply(F, x, zbar)
            return total

        coeffs.append(PolarizedFunction(dim, fn))
    return FormalSymbol(coeffs, dim)


def bt_star(f, h, w, order=1, operators=None):
    """Composition product: unit element is the kernel symbol, first order
    f h + hbar (g^{i jbar} f_jbar h_i + f h c)."""
    return triple_symbol(f, FormalSymbol.one(w.dim), h, w, order, operators)


def _left_integrand(coeff, mu, dim):
    mt = _mu_tilde_factory(mu)

    def fn(xt, zbt, yt, ybt):
        return coeff.fn(xt, ybt) * mt(xt, zbt, yt, ybt)

    return FourPointFunction(dim, fn)


def kernel_symbol_linear(w, order=1, operators=None):
    """Kernel symbol from the linear recurrence
    k_0 = 1, k_n = -sum_{m=1..n} R_m(k_{n-m}(x, ybar) mu_tilde)."""
    dim = w.dim
    ops = _resolve_operators(w, operators, order)
    coeffs = [PolarizedFunction.constant(1.0, dim)]
    for n in range(1, order + 1):
        pieces = [
            (ops[m], _left_integrand(coeffs[n - m], w.mu, dim)) for m in range(1, n + 1)
        ]

        def fn(x, zbar, _pieces=tuple(pieces)):
            total = _pieces[0][0]._apply(_pieces[0][1], x, zbar)
            for op, F in _pieces[1:]:
                total = total + op._apply(F, x, zbar)
            return -total

        coeffs.append(PolarizedFunction(dim, fn))
    return FormalSymbol(coeffs, dim)


def _pair_integrand(pairs, mu, dim):
    mt = _mu_tilde_factory(mu)

    def fn(xt, zbt, yt, ybt):
        total = pairs[0][0].fn(xt, ybt) * pairs[0][1].fn(yt, zbt)
        for cp, cq in pairs[1:]:
            total = total + cp.fn(xt, ybt) * cq.fn(yt, zbt)
        return total * mt(xt, zbt, yt, ybt)

    return FourPointFunction(dim, fn)


def kernel_symbol_quadratic(w, order=1, operators=None):
    """Kernel symbol from the idempotency recurrence
    k_n = -sum_{p=1..n-1} k_p k_{n-p}
          -sum_{m=1..n} R_m((sum_{p+q=n-m} k_p(x,ybar) k_q(y,zbar)) mu_tilde).

    The source display for this recurrence carries inconsistent superscript
    indices; the index pattern implemented here is the one consistent with
    the linear recurrence order by order (they are compared in the tests).
    """
    dim = w.dim
    ops = _resolve_operators(w, operators, order)
    coeffs = [PolarizedFunction.constant(1.0, dim)]
    for n in range(1, order + 1):
        direct = [(coeffs[p], coeffs[n - p]) for p in range(1, n)]
        rpieces = []
        for m in range(1, n + 1):
            pairs = [(coeffs[p], coeffs[n - m - p]) for p in range(n - m + 1)]
            rpieces.append((ops[m], _pair_integrand(tuple(pairs), w.mu, dim)))

        def fn(x, zbar, _direct=tuple(direct), _rpieces=tuple(rpieces)):
            total = _rpieces[0][0]._apply(_rpieces[0][1], x, zbar)
            for op, F in _rpieces[1:]:
                total = total + op._apply(F, x, zbar)
            for cp, cq in _direct:
                total = total + cp.fn(x, zbar) * cq.fn(x, zbar)
            return -total

        coeffs.append(PolarizedFunction(dim, fn))
    return FormalSymbol(coeffs, dim)


def berezin_transform(f, w, order=1, operators=None):
    """Average of a symbol against the kernel symbol on both sides; maps a
    symbol to its contravariant counterpart, first order
    psi(f) = f + hbar (Delta f - f c)."""
    k = kernel_symbol_linear(w, order, operators)
    return triple_symbol(k, f, k, w, order, operators)


def berezin_inverse(f, w, order=1, operators=None):
    """Inverse of :func:`berezin_transform`, order by order:
    g_0 = f_0, g_n = f_n - sum' R_l(k_m(x,ybar) g_q(y,ybar) k_p(y,zbar) mu_tilde)
    over all l + m + q + p = n except the identity term (0,0,n,0)."""
    dim = w.dim
    f = FormalSymbol.from_function(f, dim).pad(order)
    ops = _resolve_operators(w, operators, order)
    k = kernel_symbol_linear(w, order, operators)
    g = [f.coefficient(0)]
    for n in range(1, order + 1):
        pieces = []
        for l in range(n + 1):
            for m, q, p in _compositions3(n - l):
                if l == 0 and m == 0 and p == 0 and q == n:
                    continue  # identity term, moved to the left-hand side
                F = _triple_integrand(
                    k.coefficient(m), g[q], k.coefficient(p), w.mu, dim
                )
                pieces.append((ops[l], F))

        def fn(x, zbar, _fn=f.coefficient(n), _pieces=tuple(pieces)):
            total = _fn.fn(x, zbar)
            for op, F in _pieces:
                total = total - op._apply(F, x, zbar)
            return total

        g.append(PolarizedFunction(dim, fn))
    return FormalSymbol(g, dim)


def contravariant_star(f, h, w, order=1, operators=None):
    """Transform-conjugated product with unit 1; first order
    f h - hbar g^{i jbar} f_i h_jbar (independent of mu)."""
    pf = berezin_transform(f, w, order, operators)
    ph = berezin_transform(h, w, order, operators)
    return berezin_inverse(bt_star(pf, ph, w, order, operators), w, order, operators)


def covariant_star(f, h, w, order=1, operators=None):
    """Kernel-rescaled product with unit 1; first order
    f h + hbar g^{i jbar} f_jbar h_i (independent of mu)."""
    dim = w.dim
    k = kernel_symbol_linear(w, order, operators)
    kf = k * FormalSymbol.from_function(f, dim).pad(order)
    kh = k * FormalSymbol.from_function(h, dim).pad(order)
    prod = bt_star(kf, kh, w, order, operators)
    return (k.reciprocal(order) * prod).truncate(order)


def random_polynomial(rng, degree=3, dim=1):
    """Seeded random polarized polynomial: coefficients uniform on the
    [-1,1]^2 complex square over all monomials x^a ybar^b, a + b <= degree."""
    if dim != 1:
        raise ValueError("random polynomial symbols are generated for dim 1")
    coeffs = {
        (a, b): complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        for a in range(degree + 1)
        for b in range(degree + 1 - a)
    }

    def fn(x, y):
        total = 0.0
        for (a, b), c in coeffs.items():
            total = total + c * x[0] ** a * y[0] ** b
        return total

    return PolarizedFunction(1, fn, name=f"poly<=deg{degree}")


def poisson_bracket(f, h, phi, x, ybar, kd=None):
    """g^{i jbar} (f_jbar h_i - f_i h_jbar) at (x, ybar); the first-order
    commutator of all three star products."""
    N = phi.dim
    x = _as_tuple(x, N)
    ybar = _as_tuple(ybar, N)
    if kd is None:
        kd = kahler_data(phi, x, ybar)
    frame, xj, ybj = _slot_frame(N, x, ybar, 1)
    Jf = f.fn(tuple(xj), tuple(ybj)) if isinstance(f, PolarizedFunction) else f(xj, ybj)
    Jh = h.fn(tuple(xj), tuple(ybj)) if isinstance(h, PolarizedFunction) else h(xj, ybj)
    if not isinstance(Jf, Jet) or not isinstance(Jh, Jet):
        return 0.0  # a constant argument has vanishing bracket

    def d(J, var):
        gamma = [0] * (2 * N)
        gamma[var] = 1
        return frame.extract(J, tuple(gamma))

    total = 0.0
    for i in range(N):
        for j in range(N):
            total = total + kd.inverse[j][i] * (
                d(Jf, N + j) * d(Jh, i) - d(Jf, i) * d(Jh, N + j)
            )
    return total
