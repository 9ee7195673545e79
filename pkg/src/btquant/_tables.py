"""Index bookkeeping for dense truncated Taylor coefficient arrays.

A coefficient array holds one entry per multi-index of total degree <= order
over a fixed number of variables, laid out in graded lexicographic order
(degree first, then reverse-lex within a degree). The graded layout gives a
prefix property used when building multiplication tables: all indices of
degree <= k occupy a contiguous prefix.

Spaces are tiny at desk scale (a few variables, order <= 8 or so), so every
table is built once and cached per (nvars, order).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


def _degree_indices(deg, nvars):
    """Yield all multi-indices of `nvars` entries with total degree `deg`."""
    if nvars == 0:
        if deg == 0:
            yield ()
        return
    if nvars == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in _degree_indices(deg - first, nvars - 1):
            yield (first,) + rest


class Space:
    """Cached index tables for one (nvars, order) coefficient layout."""

    def __init__(self, nvars, order):
        if nvars < 0 or order < 0:
            raise ValueError("nvars and order must be nonnegative")
        self.nvars = nvars
        self.order = order
        idx = []
        offsets = [0]
        for deg in range(order + 1):
            idx.extend(_degree_indices(deg, nvars))
            offsets.append(len(idx))
        self.indices = tuple(idx)
        self.nterms = len(idx)
        # offsets[d+1] = number of indices with degree <= d
        self._deg_offsets = tuple(offsets)
        self.position = {mi: p for p, mi in enumerate(idx)}
        self.degrees = np.array([sum(mi) for mi in idx], dtype=np.int64)
        self.factorials = np.array(
            [math.prod(math.factorial(k) for k in mi) for mi in idx], dtype=np.float64
        )
        self._mul = None
        self._derive = {}

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Space(nvars={self.nvars}, order={self.order}, nterms={self.nterms})"

    @property
    def mul_table(self):
        """(ia, ib, ic) int32 arrays: out[ic] += a[ia] * b[ib] over all pairs
        of indices whose degrees sum to at most `order`."""
        if self._mul is None:
            ia, ib, ic = [], [], []
            pos = self.position
            idx = self.indices
            for pa, a in enumerate(idx):
                da = self.degrees[pa]
                # prefix property: degrees <= order - da live in [0, cut)
                cut = self._deg_offsets[self.order - da + 1]
                for pb in range(cut):
                    b = idx[pb]
                    c = tuple(x + y for x, y in zip(a, b))
                    ia.append(pa)
                    ib.append(pb)
                    ic.append(pos[c])
            self._mul = (
                np.array(ia, dtype=np.int32),
                np.array(ib, dtype=np.int32),
                np.array(ic, dtype=np.int32),
            )
        return self._mul

    def derive_table(self, var):
        """(src, dst, mult): d/d x_var maps coeff[src] to mult * coeff[src]
        at position dst in the (nvars, order-1) space."""
        if var not in self._derive:
            if not 0 <= var < self.nvars:
                raise IndexError(f"variable index {var} out of range for {self.nvars} variables")
            target = space(self.nvars, self.order - 1) if self.order > 0 else None
            src, dst, mult = [], [], []
            if target is not None:
                for p, mi in enumerate(self.indices):
                    if mi[var] == 0:
                        continue
                    lowered = mi[:var] + (mi[var] - 1,) + mi[var + 1 :]
                    if sum(lowered) > target.order:
                        continue
                    src.append(p)
                    dst.append(target.position[lowered])
                    mult.append(mi[var])
            self._derive[var] = (
                np.array(src, dtype=np.int32),
                np.array(dst, dtype=np.int32),
                np.array(mult, dtype=np.float64),
            )
        return self._derive[var]


@lru_cache(maxsize=None)
def space(nvars, order):
    return Space(nvars, order)
