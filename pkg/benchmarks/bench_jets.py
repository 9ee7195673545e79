#!/usr/bin/env python3
"""Benchmark the jet hot kernels: numba backend vs pure-numpy fallback.

The truncated-product convolution inside jet arithmetic dominates grid-scale
geometry evaluation (weight densities over quadrature nodes, pointwise
curvature). This script times three representative workloads under each
backend by re-launching itself with BTQUANT_DISABLE_NUMBA toggled.

Usage: python benchmarks/bench_jets.py [repeats]
"""

import os
import subprocess
import sys
import time

import numpy as np


def bench(repeats):
    from btquant._accel import backend
    from btquant.bergman import gram_matrix, weight_density
    from btquant.cli import rule_for
    from btquant.geometry import kahler_data
    from btquant.models import make_model

    model = make_model("disc-mu-sq")
    w = model.weight(8.0)
    rule = rule_for(model, 8.0, 48)

    # warm once so JIT compilation stays out of the timings
    weight_density(w, rule.points[:16])
    kahler_data(model.phi, 0.3, 0.3)

    t0 = time.perf_counter()
    for _ in range(repeats):
        rho = weight_density(w, rule.points)
    t_density = (time.perf_counter() - t0) / repeats

    pts = 0.6 * np.exp(2j * np.pi * np.linspace(0, 1, 400, endpoint=False))
    t0 = time.perf_counter()
    for x in pts:
        kahler_data(model.phi, x, np.conj(x))
    t_curv = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeats):
        gram_matrix(w, 48, rule)
    t_gram = (time.perf_counter() - t0) / repeats

    n = rule.points.size
    print(
        f"{backend():>6} | weight density ({n} nodes): {1e3 * t_density:8.2f} ms"
        f" | curvature (400 pts): {1e3 * t_curv:8.2f} ms"
        f" | gram d=48: {1e3 * t_gram:8.2f} ms"
    )
    return rho  # keep the result alive


if __name__ == "__main__":
    if os.environ.get("_BTQUANT_BENCH_WORKER"):
        bench(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
    else:
        repeats = sys.argv[1] if len(sys.argv) > 1 else "5"
        print("backend | workload timings (lower is better)", flush=True)
        for disable in ("0", "1"):
            env = dict(
                os.environ,
                BTQUANT_DISABLE_NUMBA=disable,
                _BTQUANT_BENCH_WORKER="1",
            )
            subprocess.run(
                [sys.executable, os.path.abspath(__file__), repeats],
                env=env,
                check=True,
            )
