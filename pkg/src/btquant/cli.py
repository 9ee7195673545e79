"""Batch experiment runner: kernel verification, star-product tables,
and the library-wide selftest.

Subcommands
-----------
verify-kernel   numeric Bergman kernel per alpha, diagonal symbol
                extraction, 1/alpha fit, comparison of the fitted first
                coefficient against the geometric prediction -(Delta ln mu + R/2)
star-table      the three star products on seeded random polynomial
                symbols: unit property, associativity, commutators vs the
                Poisson bracket, mu-independence
selftest        invariant suite over all shipped models (jets vs finite
                differences, geometry identities, symbol-algebra identities,
                numeric-kernel identities); group-selectable

Exit codes: 0 pass, 1 check failure (report still written), 2 config
error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from ._accel import backend
from .bergman import (
    GramConditionError,
    bergman_kernel_numeric,
    extract_symbol_numeric,
    fit_alpha_expansion,
    gram_matrix,
    kernel_diagonal,
    weight_density,
)
from .config import ConfigError, load_config
from .finitediff import polarized_partial_fd
from .geometry import (
    GeometryError,
    PolarizedFunction,
    WeightSpec,
    c_coefficient,
    diastasis_hessian_check,
    diastasis_mu,
    diastasis_phi,
    kahler_data,
)
from .jets import exp as jexp, extract_partial, log as jlog, variable as jet_variable
from .models import MODEL_NAMES, make_model
from .quadrature import build_quadrature, plane_cutoff
from .report import Report, check
from . import symbols as sym

_SELFTEST_GROUPS = ("jets", "geometry", "symbols", "kernel")


# ----------------------------------------------------------------------------
# shared pipeline pieces


def rule_for(model, alpha, degree, radial_order=0, angular_order=0):
    """Quadrature rule adequate for Gram matrices of `degree` under the
    model's weight at `alpha` (defaults scale with the degree)."""
    angular = angular_order or (4 * degree + 12)
    if model.domain == "disc":
        radial = radial_order or (degree + 8)
        return build_quadrature("disc", radial, angular, model.quad_hint(alpha))
    radial = radial_order or (3 * degree + 40)
    cutoff = plane_cutoff(model.quad_hint(alpha), 2 * degree)
    return build_quadrature("plane", radial, angular, cutoff=cutoff)


def gram_for(model, alpha, degree, radial_order=0, angular_order=0):
    rule = rule_for(model, alpha, degree, radial_order, angular_order)
    return gram_matrix(model.weight(alpha), degree, rule)


def _pool_map(fn, items, threads):
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ----------------------------------------------------------------------------
# verify-kernel


def cmd_verify_kernel(cfg, threads=1):
    model = make_model(cfg.model_name, **cfg.model_params)
    rep = Report("verify-kernel", seed=cfg.seed)
    t0 = time.time()

    grams = dict(
        _pool_map(
            lambda a: (a, gram_for(model, a, cfg.degree, cfg.radial_order, cfg.angular_order)),
            cfg.alphas,
            threads,
        )
    )
    rep.metadata = {
        "model": model.name,
        "model_params": dict(model.params),
        "alphas": list(cfg.alphas),
        "degree": cfg.degree,
        "backend": backend(),
        "threads": threads,
        "quadrature": {
            f"alpha={a:g}": {
                "radial_order": g.rule.radial_order,
                "angular_order": g.rule.angular_order,
                "cutoff": g.rule.cutoff,
                "tail_estimate": g.tail_estimate,
                "condition_estimate": g.condition_estimate,
            }
            for a, g in grams.items()
        },
    }

    symbol_table = {}
    for x in cfg.samples:
        samples = [(a, extract_symbol_numeric(model.weight(a), grams[a], x)) for a in cfg.alphas]
        coeffs, residual = fit_alpha_expansion(samples, cfg.fit_max_order)
        expected_c1 = -complex(
            c_coefficient(model.weight(cfg.alphas[0]), x, np.conj(x))
        ).real
        label = f"x={x:g}"
        symbol_table[label] = {
            "samples": {f"alpha={a:g}": v for a, v in samples},
            "fit_coefficients": [float(c) for c in coeffs],
            "fit_residual": residual,
        }
        bound1 = cfg.c1_rel * (abs(expected_c1) if abs(expected_c1) > 1e-6 else 1.0)
        rep.add(check(f"c0 at {label}", 1.0, float(coeffs[0]), cfg.c1_rel, group="fit"))
        rep.add(
            check(f"c1 at {label}", expected_c1, float(coeffs[1]), bound1, group="fit")
        )
        if model.reference_symbol is not None:
            for a, v in samples:
                exact = model.reference_symbol(a, x).real
                rep.add(
                    check(
                        f"symbol vs exact at {label}, alpha={a:g}",
                        exact,
                        v,
                        cfg.symbol_rel,
                        group="symbol",
                        relative=True,
                    )
                )
    rep.metadata["symbols"] = symbol_table
    rep.metadata["runtime_seconds"] = time.time() - t0
    return rep


# ----------------------------------------------------------------------------
# star-table


def _coeff_residual(a, b, x, xb):
    return float(np.max(np.abs(a.coefficients_at(x, xb) - b.coefficients_at(x, xb))))


def cmd_star_table(cfg, threads=1):
    model = make_model(cfg.model_name, **cfg.model_params)
    alpha = cfg.alphas[0]
    w = model.weight(alpha)
    w_unit_mu = WeightSpec(phi=model.phi, mu=PolarizedFunction.constant(1.0, model.dim), alpha=alpha)
    rng = np.random.default_rng(cfg.seed)
    f = sym.random_polynomial(rng, cfg.poly_degree)
    h = sym.random_polynomial(rng, cfg.poly_degree)
    l = sym.random_polynomial(rng, cfg.poly_degree)
    tol = cfg.residual_tol
    rep = Report("star-table", seed=cfg.seed)
    rep.metadata = {
        "model": model.name,
        "model_params": dict(model.params),
        "alpha": alpha,
        "poly_degree": cfg.poly_degree,
        "backend": backend(),
    }
    k = sym.kernel_symbol_linear(w)
    rows = []

    def run_point(x):
        xb = np.conj(x)
        out = []
        prods = {
            "bt": sym.bt_star(f, h, w),
            "con": sym.contravariant_star(f, h, w),
            "cov": sym.covariant_star(f, h, w),
        }
        prods_rev = {
            "bt": sym.bt_star(h, f, w),
            "con": sym.contravariant_star(h, f, w),
            "cov": sym.covariant_star(h, f, w),
        }
        pb = complex(sym.poisson_bracket(f, h, model.phi, x, xb))
        xbar_fn = PolarizedFunction(1, lambda u, v: v[0], name="xbar")
        x_fn = PolarizedFunction(1, lambda u, v: u[0], name="x")
        row = {
            "x": complex(x),
            "poisson": pb,
            "poisson_xbar_x": complex(
                sym.poisson_bracket(xbar_fn, x_fn, model.phi, x, xb)
            ),
        }
        for name in ("bt", "con", "cov"):
            c1 = prods[name].coefficients_at(x, xb)[1]
            c1r = prods_rev[name].coefficients_at(x, xb)[1]
            row[f"{name}_h1"] = complex(c1)
            out.append(
                check(
                    f"{name} commutator vs poisson at x={x:g}",
                    0.0,
                    abs(c1 - c1r - pb),
                    tol,
                    group="poisson",
                )
            )
        unit = sym.bt_star(k, f, w) - sym.FormalSymbol.from_function(f, order=1)
        out.append(
            check(
                f"unit property k*f-f at x={x:g}",
                0.0,
                float(np.max(np.abs(unit.coefficients_at(x, xb)))),
                tol,
                group="unit",
            )
        )
        assoc = _coeff_residual(
            sym.bt_star(sym.bt_star(f, h, w), l, w),
            sym.bt_star(f, sym.bt_star(h, l, w), w),
            x,
            xb,
        )
        out.append(check(f"associativity at x={x:g}", 0.0, assoc, tol, group="assoc"))
        for name, op in (("con", sym.contravariant_star), ("cov", sym.covariant_star)):
            res = _coeff_residual(op(f, h, w), op(f, h, w_unit_mu), x, xb)
            out.append(
                check(f"{name} mu-independence at x={x:g}", 0.0, res, max(tol, 1e-12), group="mu")
            )
        return row, out

    results = _pool_map(run_point, cfg.samples, threads)
    for row, checks in results:
        rows.append(row)
        for c in checks:
            rep.add(c)
    rep.metadata["rows"] = [
        {k2: v for k2, v in row.items()} for row in rows
    ]
    return rep


# ----------------------------------------------------------------------------
# selftest


def _fd_indices(max_total=4, nvars=2):
    out = []
    for i in range(max_total + 1):
        for j in range(max_total + 1 - i):
            if 1 <= i + j <= max_total:
                out.append((i, j))
    return out


def _selftest_jets(rep, rng):
    point = (0.31 + 0.07j, 0.12 - 0.2j)
    for name in MODEL_NAMES:
        model = make_model(name)
        for label, fn in (("phi", model.phi), ("mu", model.mu)):
            if fn.name == "1.0":
                continue
            frame_x = jet_variable(point[0], 0, 2, 4)
            frame_y = jet_variable(point[1], 1, 2, 4)
            jet = fn(frame_x, frame_y)
            for idx in _fd_indices():
                fd = polarized_partial_fd(fn, point[0], point[1], idx)
                jv = extract_partial(jet, idx)
                tol = 1e-6 * max(1.0, abs(fd))
                rep.add(
                    check(
                        f"jets fd {name}/{label} d{idx}",
                        fd,
                        jv,
                        tol,
                        group="jets",
                    )
                )
    # exp(log) identity on a generic jet
    j = 2.0 + jet_variable(0.4, 0, 2, 4) * jet_variable(0.3, 1, 2, 4) + jet_variable(0.4, 0, 2, 4)
    r = jexp(jlog(j))
    rep.add(
        check(
            "jets exp(log) identity",
            0.0,
            float(np.max(np.abs(r.coeffs - j.coeffs))),
            1e-13,
            group="jets",
        )
    )
    # product of random polynomials is exact
    deg = 2
    c1 = rng.uniform(-1, 1, (deg + 1, deg + 1))
    c2 = rng.uniform(-1, 1, (deg + 1, deg + 1))

    def poly(c):
        return lambda x, y: sum(
            c[a, b] * x ** a * y ** b for a in range(deg + 1) for b in range(deg + 1)
        )

    x0, y0 = 0.37, -0.21
    xj = jet_variable(x0, 0, 2, 4)
    yj = jet_variable(y0, 1, 2, 4)
    pq = poly(c1)(xj, yj) * poly(c2)(xj, yj)
    worst = 0.0
    for i in range(3):
        for j2 in range(3):
            jet_val = extract_partial(pq, (i, j2))
            exact = 0.0
            for a1 in range(deg + 1):
                for b1 in range(deg + 1):
                    for a2 in range(deg + 1):
                        for b2 in range(deg + 1):
                            a, b = a1 + a2, b1 + b2
                            if a < i or b < j2:
                                continue
                            import math

                            exact += (
                                c1[a1, b1]
                                * c2[a2, b2]
                                * math.perm(a, i)
                                * math.perm(b, j2)
                                * x0 ** (a - i)
                                * y0 ** (b - j2)
                            )
            worst = max(worst, abs(jet_val - exact))
    rep.add(check("jets polynomial product exactness", 0.0, worst, 1e-12, group="jets"))


def _selftest_geometry(rep, rng):
    for name in MODEL_NAMES:
        model = make_model(name)
        pts = 0.55 * (rng.uniform(-1, 1, 5) + 1j * rng.uniform(-1, 1, 5))
        herm = real_dev = 0.0
        for x in pts:
            kd = kahler_data(model.phi, x, np.conj(x))
            m = kd.metric_matrix
            herm = max(herm, float(np.max(np.abs(m - m.conj().T))))
            real_dev = max(
                real_dev,
                abs(complex(kd.det).imag),
                abs(complex(kd.scalar_curvature).imag),
            )
        rep.add(check(f"metric hermitian {name}", 0.0, herm, 1e-12, group="geometry"))
        rep.add(check(f"det/R real {name}", 0.0, real_dev, 1e-10, group="geometry"))
        ok = 0
        for x in pts[:5]:
            zb = np.conj(x) + 0.01 * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            res = diastasis_hessian_check(model.phi, x, zb)
            ok += int(bool(res))
        rep.add(
            check(f"diastasis phase checks {name}", 5.0, float(ok), 0.0, group="geometry")
        )
        # diastasis vanishes identically at y = x, ybar = zbar
        dev = max(
            abs(
                complex(
                    diastasis_phi(model.phi, x, np.conj(x) * 0.9, x, np.conj(x) * 0.9)
                )
            )
            for x in pts
        )
        rep.add(check(f"diastasis collapse {name}", 0.0, dev, 1e-13, group="geometry"))
        mdev = max(
            abs(
                complex(
                    diastasis_mu(model.mu, x, np.conj(x) * 0.9, x, np.conj(x) * 0.9)
                )
                - 1.0
            )
            for x in pts
        )
        rep.add(check(f"mu ratio collapse {name}", 0.0, mdev, 1e-13, group="geometry"))

    disc = make_model("disc-hyperbolic")
    rs = [
        complex(kahler_data(disc.phi, x, np.conj(x)).scalar_curvature).real
        for x in 0.9 * (rng.uniform(-1, 1, 20) + 1j * rng.uniform(-1, 1, 20)) / np.sqrt(2)
    ]
    rep.add(
        check(
            "disc scalar curvature constant 2",
            0.0,
            float(np.max(np.abs(np.array(rs) - 2.0))),
            1e-9,
            group="geometry",
        )
    )

    # Kahler gauge invariance: phi -> phi + q(x) + conj(q)(ybar)
    sb = make_model("segal-bargmann")
    gauge = PolarizedFunction(
        1,
        lambda x, y: x[0] * y[0] + (0.2 + 0.1j) * x[0] ** 2 + (0.2 - 0.1j) * y[0] ** 2,
    )
    w1 = WeightSpec(phi=sb.phi, mu=sb.mu, alpha=4.0)
    w2 = WeightSpec(phi=gauge, mu=sb.mu, alpha=4.0)
    dev = 0.0
    for x in 0.4 * (rng.uniform(-1, 1, 5) + 1j * rng.uniform(-1, 1, 5)):
        c1 = complex(c_coefficient(w1, x, np.conj(x)))
        c2 = complex(c_coefficient(w2, x, np.conj(x)))
        dev = max(dev, abs(c1 - c2))
    rep.add(check("kahler gauge invariance of c", 0.0, dev, 1e-10, group="geometry"))


def _selftest_symbols(rep, rng):
    for name in MODEL_NAMES:
        model = make_model(name)
        w = model.weight(8.0)
        pts = [complex(x) for x in 0.4 * (rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3))]
        kl = sym.kernel_symbol_linear(w)
        kq = sym.kernel_symbol_quadratic(w)
        dev = max(
            float(np.max(np.abs(kl.coefficients_at(x, np.conj(x)) - kq.coefficients_at(x, np.conj(x)))))
            for x in pts
        )
        rep.add(check(f"recurrence equivalence {name}", 0.0, dev, 1e-12, group="symbols"))

        f = sym.random_polynomial(rng)
        h = sym.random_polynomial(rng)
        l = sym.random_polynomial(rng)
        x = pts[0]
        xb = np.conj(x)

        unit = sym.bt_star(kl, f, w) - sym.FormalSymbol.from_function(f, order=1)
        unit2 = sym.bt_star(f, kl, w) - sym.FormalSymbol.from_function(f, order=1)
        udev = max(
            float(np.max(np.abs(unit.coefficients_at(x, xb)))),
            float(np.max(np.abs(unit2.coefficients_at(x, xb)))),
        )
        rep.add(check(f"unit property {name}", 0.0, udev, 1e-10, group="symbols"))

        rt = sym.berezin_inverse(sym.berezin_transform(f, w), w)
        rdev = float(
            np.max(np.abs(rt.coefficients_at(x, xb) - np.array([complex(f(x, xb)), 0.0])))
        )
        rep.add(check(f"transform roundtrip {name}", 0.0, rdev, 1e-10, group="symbols"))

        a1 = sym.triple_symbol(f, h, sym.triple_symbol(l, f, h, w), w)
        a2 = sym.triple_symbol(sym.triple_symbol(f, h, l, w), f, h, w)
        rep.add(
            check(
                f"generalized associativity {name}",
                0.0,
                _coeff_residual(a1, a2, x, xb),
                1e-10,
                group="symbols",
            )
        )

        pb = complex(sym.poisson_bracket(f, h, model.phi, x, xb))
        worst = 0.0
        for op in (sym.bt_star, sym.contravariant_star, sym.covariant_star):
            c1 = op(f, h, w).coefficients_at(x, xb)[1]
            c1r = op(h, f, w).coefficients_at(x, xb)[1]
            worst = max(worst, abs(c1 - c1r - pb))
        rep.add(check(f"commutators match poisson {name}", 0.0, worst, 1e-10, group="symbols"))

        te = _coeff_residual(
            sym.berezin_transform(sym.contravariant_star(f, h, w), w),
            sym.bt_star(sym.berezin_transform(f, w), sym.berezin_transform(h, w), w),
            x,
            xb,
        )
        rep.add(check(f"transform equivalence {name}", 0.0, te, 1e-10, group="symbols"))

    disc = make_model("disc-mu-sq")
    f = sym.random_polynomial(rng)
    h = sym.random_polynomial(rng)
    l = sym.random_polynomial(rng)

    def pb_fn(a, b):
        return PolarizedFunction(
            1, lambda x, y, _a=a, _b=b: sym.poisson_bracket(_a, _b, disc.phi, x, y)
        )

    x = 0.3 + 0.1j
    jac = (
        sym.poisson_bracket(f, pb_fn(h, l), disc.phi, x, np.conj(x))
        + sym.poisson_bracket(h, pb_fn(l, f), disc.phi, x, np.conj(x))
        + sym.poisson_bracket(l, pb_fn(f, h), disc.phi, x, np.conj(x))
    )
    rep.add(check("jacobi identity (disc)", 0.0, abs(jac), 1e-8, group="symbols"))
    leib = sym.poisson_bracket(f, h * l, disc.phi, x, np.conj(x)) - (
        complex(h(x, np.conj(x))) * sym.poisson_bracket(f, l, disc.phi, x, np.conj(x))
        + complex(l(x, np.conj(x))) * sym.poisson_bracket(f, h, disc.phi, x, np.conj(x))
    )
    rep.add(check("leibniz rule (disc)", 0.0, abs(leib), 1e-10, group="symbols"))


def _selftest_kernel(rep, rng):
    import math

    rule = build_quadrature("disc", 12, 24, 2.0)
    val = rule.integrate((1 - np.abs(rule.points) ** 2) ** 2)
    rep.add(check("disc quadrature beta integral", math.pi / 3, complex(val).real, 1e-12, group="kernel"))
    rulep = build_quadrature("plane", 64, 24, cutoff=8.0)
    valp = rulep.integrate(np.exp(-np.abs(rulep.points) ** 2))
    rep.add(check("plane quadrature gaussian", math.pi, complex(valp).real, 1e-10, group="kernel"))

    sb = make_model("segal-bargmann")
    gd = gram_for(sb, 2.0, 20)
    exact = sb.reference_kernel(2.0, 0.5, 0.3)
    rep.add(
        check(
            "segal-bargmann kernel alpha=2",
            complex(exact).real,
            complex(bergman_kernel_numeric(gd, 0.5, 0.3)).real,
            1e-8,
            group="kernel",
            relative=True,
        )
    )
    disc = make_model("disc-mu-sq")
    gdd = gram_for(disc, 3.0, 16)
    rep.add(
        check(
            "disc kernel at origin",
            4.0 / math.pi,
            complex(bergman_kernel_numeric(gdd, 0.0, 0.0)).real,
            1e-10,
            group="kernel",
            relative=True,
        )
    )
    # discrete reproducing property: project z^j through the kernel
    w = disc.weight(3.0)
    rho = weight_density(w, gdd.rule.points)
    x0 = 0.35 + 0.1j
    worst = 0.0
    Kvals = np.array(
        [bergman_kernel_numeric(gdd, x0, zb) for zb in np.conj(gdd.rule.points)]
    )
    for j in (0, 3, 7):
        approx = np.sum(gdd.rule.weights * rho * Kvals * gdd.rule.points ** j)
        worst = max(worst, abs(approx - x0 ** j))
    rep.add(check("discrete reproducing property", 0.0, worst, 1e-8, group="kernel"))

    # gram saturation under doubled radial order
    g1 = gram_for(disc, 8.0, 12)
    g2 = gram_matrix(
        disc.weight(8.0),
        12,
        build_quadrature(
            "disc", 2 * g1.rule.radial_order, g1.rule.angular_order, disc.quad_hint(8.0)
        ),
    )
    scale = np.outer(g1.scale, g1.scale)
    rep.add(
        check(
            "gram quadrature saturation",
            0.0,
            float(np.max(np.abs(g1.gram - g2.gram) / scale)),
            1e-10,
            group="kernel",
        )
    )

    # diagonal kernel nondecreasing in the basis degree
    last = -np.inf
    monotone = True
    for d in (4, 8, 12, 16):
        v = kernel_diagonal(gram_for(disc, 3.0, d), 0.5)
        if complex(v).real < last - 1e-12:
            monotone = False
        last = complex(v).real
    rep.add(check("kernel diagonal monotone in degree", 1.0, float(monotone), 0.0, group="kernel"))

    for name, alpha, x, expect in (
        ("segal-bargmann", 8.0, 0.4, 1.0),
        ("disc-mu-sq", 8.0, 0.3, 1.125),
        ("sb-mu-exp", 8.0, 0.3, 0.96875),
    ):
        model = make_model(name)
        gd2 = gram_for(model, alpha, 24)
        rep.add(
            check(
                f"diagonal symbol {name} alpha={alpha:g}",
                expect,
                extract_symbol_numeric(model.weight(alpha), gd2, x),
                1e-8,
                group="kernel",
                relative=True,
            )
        )


def cmd_selftest(cfg, groups=None, threads=1):
    groups = tuple(groups) if groups else _SELFTEST_GROUPS
    unknown = [g for g in groups if g not in _SELFTEST_GROUPS]
    if unknown:
        raise ConfigError(
            f"unknown selftest group(s) {unknown}; known: {', '.join(_SELFTEST_GROUPS)}"
        )
    rep = Report("selftest", seed=cfg.seed)
    rep.metadata = {"groups": list(groups), "backend": backend(), "threads": threads}
    rng = np.random.default_rng(cfg.seed)
    t0 = time.time()
    runners = {
        "jets": _selftest_jets,
        "geometry": _selftest_geometry,
        "symbols": _selftest_symbols,
        "kernel": _selftest_kernel,
    }
    for g in groups:
        runners[g](rep, rng)
    rep.metadata["runtime_seconds"] = time.time() - t0
    return rep


# ----------------------------------------------------------------------------
# entry point


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="btquant",
        description="Weighted Bergman kernels and first-order quantization data",
    )
    parser.add_argument("--version", action="version", version=f"btquant {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, default_fmt in (
        ("verify-kernel", "json"),
        ("star-table", "csv"),
        ("selftest", "json"),
    ):
        p = subs.add_parser(name)
        p.add_argument("--config", default=None, help="TOML experiment config")
        p.add_argument("--out", default=None, help="report output path")
        p.add_argument("--format", choices=("json", "csv"), default=default_fmt)
        p.add_argument("--seed", type=int, default=None, help="override random seed")
        p.add_argument("--threads", type=int, default=1)
        if name == "selftest":
            p.add_argument(
                "--group",
                action="append",
                default=None,
                help=f"restrict to a group ({', '.join(_SELFTEST_GROUPS)}); repeatable",
            )
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, overrides={"seed": args.seed})
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "verify-kernel":
            rep = cmd_verify_kernel(cfg, threads=args.threads)
        elif args.command == "star-table":
            rep = cmd_star_table(cfg, threads=args.threads)
        else:
            groups = None
            if args.group:
                groups = []
                for g in args.group:
                    groups.extend(part.strip() for part in g.split(",") if part.strip())
            rep = cmd_selftest(cfg, groups=groups, threads=args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (GramConditionError, GeometryError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3

    for line in rep.summary_lines():
        print(line)
    n_fail = sum(not c.passed for c in rep.checks)
    print(f"{len(rep.checks) - n_fail}/{len(rep.checks)} checks passed")
    if args.out:
        rep.write(args.out, fmt=args.format)
        print(f"report written to {args.out}")
    return 0 if rep.passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
