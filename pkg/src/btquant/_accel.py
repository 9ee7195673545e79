"""Hot-loop kernels for jet coefficient arithmetic.

The truncated-product convolution (a sparse gather/scatter driven by the
precomputed index tables) dominates runtime when geometry is evaluated over
quadrature grids, so it is numba-jitted when numba is importable. Setting
``BTQUANT_DISABLE_NUMBA=1`` forces the pure-numpy fallback; the two paths
produce bitwise-comparable results (see benchmarks/bench_jets.py).
"""

from __future__ import annotations

import os

import numpy as np


def _numpy_mul_1d(a, b, ia, ib, ic, nterms):
    out = np.zeros(nterms, dtype=np.complex128)
    np.add.at(out, ic, a[ia] * b[ib])
    return out


def _numpy_mul_2d(a, b, ia, ib, ic, nterms):
    out = np.zeros((nterms, a.shape[1]), dtype=np.complex128)
    np.add.at(out, ic, a[ia] * b[ib])
    return out


_DISABLED = os.environ.get("BTQUANT_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

_BACKEND = "numpy"
mul_1d = _numpy_mul_1d
mul_2d = _numpy_mul_2d

if not _DISABLED:
    try:
        from numba import njit

        @njit(cache=True, nogil=True)
        def _numba_mul_1d(a, b, ia, ib, ic, nterms):
            out = np.zeros(nterms, dtype=np.complex128)
            for t in range(ia.shape[0]):
                out[ic[t]] += a[ia[t]] * b[ib[t]]
            return out

        @njit(cache=True, nogil=True)
        def _numba_mul_2d(a, b, ia, ib, ic, nterms):
            width = a.shape[1]
            out = np.zeros((nterms, width), dtype=np.complex128)
            for t in range(ia.shape[0]):
                pa = ia[t]
                pb = ib[t]
                pc = ic[t]
                for j in range(width):
                    out[pc, j] += a[pa, j] * b[pb, j]
            return out

        mul_1d = _numba_mul_1d
        mul_2d = _numba_mul_2d
        _BACKEND = "numba"
    except ImportError:  # pragma: no cover - exercised via env flag instead
        pass


def backend():
    """Active kernel backend, "numba" or "numpy"."""
    return _BACKEND
