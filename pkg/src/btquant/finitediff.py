"""Central-difference derivative oracles in extended precision.

These cross-check the jet engine. A fourth-order mixed partial divided by
h^4 = 1e-16 loses every float64 digit to roundoff, so the stencils run in
mpmath arithmetic (default 40 digits) at the conventional step h = 1e-4:
truncation stays O(h^2) while roundoff sits far below any comparison
tolerance used here. Functions must accept mpmath.mpc arguments (the model
catalog does, through the dispatching exp/log wrappers).
"""

from __future__ import annotations

import itertools
import math

import mpmath as mp

# offsets and coefficients of central stencils per derivative order (/h^k)
_STENCILS = {
    0: ((0, 1.0),),
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
    4: ((-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)),
}


def central_mixed_partial(fn, point, orders, h=1e-4, dps=40):
    """Mixed partial of fn(*args) at `point` with derivative `orders[i]` in
    argument i, each perturbed independently (complex slots included)."""
    for k in orders:
        if k not in _STENCILS:
            raise ValueError(f"stencil order {k} not available (max 4)")
    with mp.workdps(dps):
        hh = mp.mpf(h)
        base = [mp.mpc(p) for p in point]
        total = mp.mpc(0)
        for combo in itertools.product(*(_STENCILS[k] for k in orders)):
            coef = math.prod(c for _, c in combo)
            args = [b + o * hh for b, (o, _) in zip(base, combo)]
            total += coef * fn(*args)
        return complex(total / hh ** sum(orders))


def polarized_partial_fd(f, x, ybar, idx, h=1e-4, dps=40):
    """Finite-difference partial of a polarized function over its flattened
    slot variables (x_0..x_{N-1}, ybar_0..ybar_{N-1})."""
    N = f.dim
    x = x if isinstance(x, (tuple, list)) else (x,)
    ybar = ybar if isinstance(ybar, (tuple, list)) else (ybar,)

    def flat(*args):
        return f(tuple(args[:N]), tuple(args[N:]))

    return central_mixed_partial(flat, tuple(x) + tuple(ybar), idx, h=h, dps=dps)
