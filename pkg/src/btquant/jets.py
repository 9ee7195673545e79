"""Truncated multivariate Taylor (jet) arithmetic over complex scalars.

A :class:`Jet` carries every Taylor coefficient of a function at a point up
to a fixed total degree, over a fixed set of complex variables. Arithmetic
propagates coefficients by the Leibniz / Faa di Bruno rules truncated at the
jet order, so any partial derivative below the cutoff comes out exactly for
polynomial inputs (no discretization error).

Polarized functions f(x, ybar) are differentiated by treating the x-slot and
ybar-slot coordinates as independent complex variables: there is no
conjugation coupling inside a jet.

Coefficients may be scalars or numpy arrays of identical shape (one jet per
grid point, vectorized); all operations broadcast over the trailing axes.
Jets are immutable values and safe to share across threads.
"""

from __future__ import annotations

import math

import numpy as np

from . import _accel
from ._tables import space


def _any_zero(v):
    if isinstance(v, np.ndarray):
        return bool(np.any(v == 0))
    return v == 0


class Jet:
    """Dense truncated Taylor expansion; construct via :func:`constant` /
    :func:`variable`, combine with ordinary arithmetic."""

    __slots__ = ("space", "coeffs")

    def __init__(self, spc, coeffs):
        self.space = spc
        self.coeffs = coeffs

    # -- basic introspection -------------------------------------------------

    @property
    def nvars(self):
        return self.space.nvars

    @property
    def order(self):
        return self.space.order

    @property
    def value(self):
        """Order-zero coefficient (the plain function value)."""
        v = self.coeffs[0]
        return complex(v) if self.coeffs.ndim == 1 else np.array(v)

    def partial(self, idx):
        """Raw partial derivative for multi-index `idx`: idx! times the
        Taylor coefficient."""
        idx = tuple(int(k) for k in idx)
        if len(idx) != self.nvars:
            raise ValueError(f"multi-index length {len(idx)} != nvars {self.nvars}")
        if sum(idx) > self.order:
            raise ValueError(f"multi-index degree {sum(idx)} exceeds jet order {self.order}")
        p = self.space.position[idx]
        v = self.coeffs[p] * self.space.factorials[p]
        return complex(v) if self.coeffs.ndim == 1 else np.array(v)

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Jet(nvars={self.nvars}, order={self.order}, value={self.value!r})"

    # -- ring operations -----------------------------------------------------

    def _check(self, other):
        if other.space is not self.space:
            raise ValueError("jets live in different (nvars, order) spaces")

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return Jet(self.space, self.coeffs + other.coeffs)
        out = self.coeffs.copy()
        out[0] = out[0] + other
        return Jet(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.space, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return Jet(self.space, self.coeffs - other.coeffs)
        out = self.coeffs.copy()
        out[0] = out[0] - other
        return Jet(self.space, out)

    def __rsub__(self, other):
        return (-self) + other

    def _mul_coeffs(self, a, b):
        ia, ib, ic = self.space.mul_table
        if a.ndim == 1:
            return _accel.mul_1d(a, b, ia, ib, ic, self.space.nterms)
        flat_a = np.ascontiguousarray(a.reshape(self.space.nterms, -1))
        flat_b = np.ascontiguousarray(b.reshape(self.space.nterms, -1))
        out = _accel.mul_2d(flat_a, flat_b, ia, ib, ic, self.space.nterms)
        return out.reshape(a.shape)

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return Jet(self.space, self._mul_coeffs(self.coeffs, other.coeffs))
        return Jet(self.space, self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return self * other.reciprocal()
        return Jet(self.space, self.coeffs / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)):
            raise TypeError("jet powers must be integers")
        n = int(n)
        if n < 0:
            return self.reciprocal() ** (-n)
        out = np.zeros_like(self.coeffs)
        out[0] = 1.0
        result = Jet(self.space, out)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- analytic functions ---------------------------------------------------

    def _nilpotent(self):
        n = np.array(self.coeffs, dtype=np.complex128, copy=True)
        n[0] = 0
        return Jet(self.space, n)

    def _horner(self, series, t):
        """sum_k series[k] * t**k for a nilpotent jet t, by Horner."""
        out = np.zeros_like(t.coeffs)
        out[0] = series[-1]
        acc = Jet(self.space, out)
        for c in reversed(series[:-1]):
            coeffs = (acc * t).coeffs
            coeffs[0] = coeffs[0] + c
            acc = Jet(self.space, coeffs)
        return acc

    def exp(self):
        v = self.coeffs[0]
        poly = self._horner(_inv_factorials(self.order), self._nilpotent())
        return Jet(self.space, poly.coeffs * np.exp(v))

    def log(self):
        """Principal-branch logarithm; requires a nonzero value slot."""
        v = self.coeffs[0]
        if _any_zero(v):
            raise ValueError("log of zero-value jet")
        t = self._nilpotent() * (1.0 / v)
        series = [0.0] + [(-1.0) ** (k + 1) / k for k in range(1, self.order + 1)]
        poly = self._horner(series, t)
        out = poly.coeffs.copy()
        out[0] = out[0] + np.log(v)
        return Jet(self.space, out)

    def reciprocal(self):
        v = self.coeffs[0]
        if _any_zero(v):
            raise ZeroDivisionError("division by zero-value jet")
        inv = 1.0 / v
        t = self._nilpotent() * inv
        series = [(-1.0) ** k for k in range(self.order + 1)]
        poly = self._horner(series, t)
        return Jet(self.space, poly.coeffs * inv)

    # -- structural operations -------------------------------------------------

    def derive(self, var):
        """Jet of the partial derivative d/d x_var, truncated at order-1."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        src, dst, mult = self.space.derive_table(var)
        target = space(self.nvars, self.order - 1)
        shape = (target.nterms,) + self.coeffs.shape[1:]
        out = np.zeros(shape, dtype=np.complex128)
        if self.coeffs.ndim == 1:
            out[dst] = self.coeffs[src] * mult
        else:
            out[dst] = self.coeffs[src] * mult[:, None]
        return Jet(target, out)


def _inv_factorials(order):
    vals = [1.0]
    for k in range(1, order + 1):
        vals.append(vals[-1] / k)
    return vals


def constant(value, nvars, order):
    """Lift a plain value into a jet: all derivative coefficients zero."""
    spc = space(nvars, order)
    if isinstance(value, np.ndarray):
        coeffs = np.zeros((spc.nterms,) + value.shape, dtype=np.complex128)
    else:
        coeffs = np.zeros(spc.nterms, dtype=np.complex128)
    coeffs[0] = value
    return Jet(spc, coeffs)


def variable(value, index, nvars, order):
    """Lift a coordinate value: unit first-order coefficient in its own slot."""
    if not 0 <= index < nvars:
        raise IndexError(f"variable index {index} out of range for {nvars} variables")
    j = constant(value, nvars, order)
    if order >= 1:
        unit = tuple(1 if k == index else 0 for k in range(nvars))
        j.coeffs[j.space.position[unit]] = 1.0
    return j


def extract_partial(jet, idx):
    """Raw partial derivative (idx! times the Taylor coefficient)."""
    return jet.partial(idx)


def exp(v):
    """Exponential that dispatches on jets, mpmath numbers, arrays, scalars."""
    if isinstance(v, Jet):
        return v.exp()
    if type(v).__module__.startswith("mpmath"):
        import mpmath

        return mpmath.exp(v)
    return np.exp(v)


def log(v):
    """Principal-branch logarithm with the same dispatch as :func:`exp`."""
    if isinstance(v, Jet):
        return v.log()
    if type(v).__module__.startswith("mpmath"):
        import mpmath

        return mpmath.log(v)
    return np.log(v)


class FreshFrame:
    """Differentiation workspace around base values that may be jets.

    Appends ``n_fresh`` new variables to the (possibly trivial) ambient jet
    space shared by the base values. :meth:`extract` maps a partial
    derivative with respect to the fresh variables back to an ambient value:
    a plain scalar/array when the bases were plain, an ambient jet when they
    were jets. This is what lets differential operators be applied at
    jet-valued points without special cases.
    """

    def __init__(self, bases, n_fresh, fresh_order):
        ambient = None
        for b in bases:
            if isinstance(b, Jet):
                if ambient is None:
                    ambient = b.space
                elif b.space is not ambient:
                    raise ValueError("base jets live in different spaces")
        self.ambient = ambient
        av = ambient.nvars if ambient is not None else 0
        ao = ambient.order if ambient is not None else 0
        self.n_fresh = n_fresh
        self.offset = av
        self.space = space(av + n_fresh, ao + fresh_order)
        if ambient is not None:
            # position of each embedded ambient index in the combined space
            self._embed = np.array(
                [self.space.position[mi + (0,) * n_fresh] for mi in ambient.indices],
                dtype=np.int64,
            )
        self._gather = {}

    def var_index(self, k):
        """Combined-space variable index of fresh variable k."""
        return self.offset + k

    def constant(self, v):
        if isinstance(v, Jet):
            if v.space is not self.ambient:
                raise ValueError("jet base not in the frame's ambient space")
            shape = (self.space.nterms,) + v.coeffs.shape[1:]
            out = np.zeros(shape, dtype=np.complex128)
            out[self._embed] = v.coeffs
            return Jet(self.space, out)
        return constant(v, self.space.nvars, self.space.order)

    def variable(self, v, k):
        j = self.constant(v)
        unit = tuple(
            1 if i == self.offset + k else 0 for i in range(self.space.nvars)
        )
        out = j.coeffs.copy()
        out[j.space.position[unit]] = out[j.space.position[unit]] + 1.0
        return Jet(self.space, out)

    def _gather_table(self, spc, gamma):
        key = (spc, gamma)
        if key not in self._gather:
            av = self.offset
            ao = self.ambient.order if self.ambient is not None else 0
            amb = space(av, ao)
            src = np.array(
                [spc.position[mi + gamma] for mi in amb.indices], dtype=np.int64
            )
            mult = float(math.prod(math.factorial(g) for g in gamma))
            self._gather[key] = (src, mult, amb)
        return self._gather[key]

    def extract(self, jet, gamma):
        """Raw partial with respect to the fresh multi-index `gamma`,
        returned as an ambient value (scalar/array or ambient jet).

        The jet may live at any order below the frame's (differentiation
        lowers it), as long as every ambient coefficient of the requested
        partial is still represented."""
        gamma = tuple(int(g) for g in gamma)
        if len(gamma) != self.n_fresh:
            raise ValueError("gamma must index the fresh variables")
        if jet.nvars != self.space.nvars:
            raise ValueError("jet does not belong to this frame")
        ao = self.ambient.order if self.ambient is not None else 0
        if jet.order - sum(gamma) < ao:
            raise ValueError(
                f"jet order {jet.order} too low to extract partial {gamma} "
                f"at ambient order {ao}"
            )
        src, mult, amb = self._gather_table(jet.space, gamma)
        if self.ambient is None:
            v = jet.coeffs[src[0]] * mult
            return complex(v) if jet.coeffs.ndim == 1 else np.array(v)
        out = np.array(jet.coeffs[src] * mult, dtype=np.complex128)
        return Jet(amb, out)

    def value(self, jet):
        return self.extract(jet, (0,) * self.n_fresh)
