"""Numerical Bergman kernel: Gram matrices, kernel evaluation, symbol
extraction and the 1/alpha fit."""

import math

import numpy as np
import pytest

from scipy.special import beta as beta_fn

from btquant.bergman import (
    GramConditionError,
    bergman_kernel_numeric,
    extract_symbol_numeric,
    fit_alpha_expansion,
    gram_matrix,
    kernel_diagonal,
    weight_density,
)
from btquant.cli import gram_for
from btquant.geometry import PolarizedFunction, WeightSpec, c_coefficient
from btquant.quadrature import build_quadrature, plane_cutoff


class TestWeightDensity:
    def test_flat_density(self, catalog):
        w = catalog["segal-bargmann"].weight(2.0)
        z = np.array([0.3 + 0.1j, 0.7, 1.2 - 0.5j])
        rho = weight_density(w, z)
        assert np.allclose(rho, np.exp(-2.0 * np.abs(z) ** 2), rtol=1e-13)

    def test_disc_density_collapses_to_boundary_power(self, catalog):
        """mu g = 1 for the squared-density disc model, so rho = (1-|z|^2)^alpha."""
        w = catalog["disc-mu-sq"].weight(5.0)
        z = np.array([0.2, 0.5 + 0.3j, 0.8j])
        rho = weight_density(w, z)
        assert np.allclose(rho, (1 - np.abs(z) ** 2) ** 5.0, rtol=1e-12)


class TestGramMatrix:
    def test_flat_gram_is_diagonal_factorials(self, catalog):
        """G_nn = pi n! / alpha^{n+1}; spec case alpha = 1."""
        sb = catalog["segal-bargmann"]
        gd = gram_for(sb, 1.0, 8)
        for n in range(9):
            assert gd.gram[n, n].real == pytest.approx(
                math.pi * math.factorial(n), rel=1e-12
            )
        off = gd.gram - np.diag(gd.gram.diagonal())
        scale = np.sqrt(np.outer(gd.gram.diagonal().real, gd.gram.diagonal().real))
        assert np.max(np.abs(off) / scale) < 1e-10

    def test_disc_gram_beta_values(self, catalog):
        gd = gram_for(catalog["disc-mu-sq"], 2.0, 6)
        assert gd.gram[0, 0].real == pytest.approx(math.pi / 3, rel=1e-13)
        for n in range(7):
            assert gd.gram[n, n].real == pytest.approx(
                math.pi * beta_fn(n + 1, 3.0), rel=1e-12
            )

    def test_nonradial_weight_keeps_hermiticity(self):
        """mu = e^{beta Re z} breaks radial symmetry: G_01 is nonzero but G
        stays Hermitian."""
        phi = PolarizedFunction(1, lambda x, y: x[0] * y[0])
        from btquant.jets import exp as jexp

        mu = PolarizedFunction(1, lambda x, y: jexp(0.4 * (x[0] + y[0]) / 2.0))
        w = WeightSpec(phi=phi, mu=mu, alpha=2.0)
        rule = build_quadrature("plane", 96, 48, cutoff=plane_cutoff(2.0, 16))
        gd = gram_matrix(w, 8, rule)
        assert abs(gd.gram[0, 1]) > 1e-4
        assert np.max(np.abs(gd.gram - gd.gram.conj().T)) < 1e-12
        assert gd.condition_estimate < 10.0

    def test_condition_estimate_near_one_for_radial(self, catalog):
        gd = gram_for(catalog["disc-mu-sq"], 8.0, 16)
        assert gd.condition_estimate == pytest.approx(1.0, abs=1e-6)

    def test_undersampled_rule_raises_with_guidance(self, catalog):
        # 2 x 12 = 24 nodes cannot carry 31 basis functions: the Gram is
        # rank deficient and must be refused, with actionable wording
        disc = catalog["disc-mu-sq"]
        rule = build_quadrature("disc", 2, 12, disc.quad_hint(3.0))
        with pytest.raises(GramConditionError, match="reduce degree"):
            gram_matrix(disc.weight(3.0), 30, rule)


class TestKernel:
    def test_flat_kernel_closed_form(self, catalog):
        sb = catalog["segal-bargmann"]
        gd = gram_for(sb, 2.0, 20)
        for x, yb in [(0.5, 0.3), (0.9, -0.4), (0.2 + 0.6j, 0.1 - 0.7j)]:
            got = bergman_kernel_numeric(gd, x, yb)
            want = sb.reference_kernel(2.0, x, yb)
            assert abs(got - want) / abs(want) < 1e-8, (x, yb)

    def test_disc_kernel_closed_form(self, catalog):
        disc = catalog["disc-mu-sq"]
        gd = gram_for(disc, 3.0, 16)
        assert bergman_kernel_numeric(gd, 0.0, 0.0).real == pytest.approx(
            4.0 / math.pi, rel=1e-10
        )
        for x, yb in [(0.5, 0.5), (0.7, 0.2), (0.3 + 0.3j, 0.3 - 0.3j)]:
            got = bergman_kernel_numeric(gd, x, yb)
            want = disc.reference_kernel(3.0, x, yb)
            assert abs(got - want) / abs(want) < 1e-6, (x, yb)

    def test_origin_value_is_inverse_g00(self, catalog):
        gd = gram_for(catalog["disc-mu-sq"], 5.0, 10)
        assert bergman_kernel_numeric(gd, 0.0, 0.0).real == pytest.approx(
            1.0 / gd.gram[0, 0].real, rel=1e-12
        )

    def test_outside_domain_rejected(self, catalog):
        gd = gram_for(catalog["disc-mu-sq"], 3.0, 8)
        with pytest.raises(ValueError, match="outside"):
            bergman_kernel_numeric(gd, 1.5, 0.0)

    def test_discrete_reproducing_property(self, catalog):
        """Quadrature of K_d(x, .) z^j rho reproduces x^j for j <= d."""
        disc = catalog["disc-mu-sq"]
        w = disc.weight(3.0)
        gd = gram_for(disc, 3.0, 12)
        rho = weight_density(w, gd.rule.points)
        x0 = 0.35 + 0.1j
        K = np.array(
            [bergman_kernel_numeric(gd, x0, zb) for zb in np.conj(gd.rule.points)]
        )
        for j in (0, 1, 5, 12):
            val = np.sum(gd.rule.weights * rho * K * gd.rule.points**j)
            assert abs(val - x0**j) < 1e-8, j

    def test_diagonal_monotone_in_degree(self, catalog):
        disc = catalog["disc-mu-sq"]
        vals = [kernel_diagonal(gram_for(disc, 3.0, d), 0.6).real for d in (4, 8, 12, 16, 20)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_gram_saturation_under_doubling(self, catalog):
        disc = catalog["disc-mu-sq"]
        g1 = gram_for(disc, 8.0, 16)
        g2 = gram_matrix(
            disc.weight(8.0),
            16,
            build_quadrature(
                "disc", 2 * g1.rule.radial_order, g1.rule.angular_order, 8.0
            ),
        )
        scale = np.outer(g1.scale, g1.scale)
        assert np.max(np.abs(g1.gram - g2.gram) / scale) < 1e-10


class TestSymbolExtraction:
    def test_flat_symbol_is_one(self, catalog):
        sb = catalog["segal-bargmann"]
        gd = gram_for(sb, 8.0, 24)
        for x in (0.0, 0.3, 0.5 + 0.4j, 0.8):
            assert extract_symbol_numeric(sb.weight(8.0), gd, x) == pytest.approx(
                1.0, abs=1e-8
            )

    def test_disc_symbol_value(self, catalog):
        disc = catalog["disc-mu-sq"]
        gd = gram_for(disc, 8.0, 24)
        for x in (0.1, 0.3, 0.5):
            assert extract_symbol_numeric(disc.weight(8.0), gd, x) == pytest.approx(
                1.125, rel=1e-8
            )

    def test_gaussian_density_symbol(self, catalog):
        m = catalog["sb-mu-exp"]
        gd = gram_for(m, 8.0, 24)
        assert extract_symbol_numeric(m.weight(8.0), gd, 0.3) == pytest.approx(
            0.96875, rel=1e-9
        )

    def test_symbols_real_and_positive(self, catalog):
        disc = catalog["disc-mu-sq"]
        gd = gram_for(disc, 8.0, 20)
        for x in np.linspace(0, 0.75, 6):
            val = extract_symbol_numeric(disc.weight(8.0), gd, complex(x))
            assert val > 0

    def test_disc_extraction_interior_only(self, catalog):
        disc = catalog["disc-mu-sq"]
        gd = gram_for(disc, 8.0, 12)
        with pytest.raises(ValueError, match="interior|restricted"):
            extract_symbol_numeric(disc.weight(8.0), gd, 0.9)
        # overridable for callers that accept the boundary error
        extract_symbol_numeric(disc.weight(8.0), gd, 0.9, interior_limit=0.95)


class TestFit:
    def test_terminating_disc_series(self, catalog):
        disc = catalog["disc-mu-sq"]
        samples = []
        for a in (8.0, 16.0, 32.0, 64.0):
            gd = gram_for(disc, a, 48)
            samples.append((a, extract_symbol_numeric(disc.weight(a), gd, 0.3)))
        coeffs, residual = fit_alpha_expansion(samples, 2)
        assert coeffs[0] == pytest.approx(1.0, abs=1e-6)
        assert coeffs[1] == pytest.approx(1.0, abs=1e-6)
        assert residual < 1e-6

    def test_flat_fit_recovers_unity(self, catalog):
        sb = catalog["segal-bargmann"]
        samples = []
        for a in (8.0, 16.0, 32.0, 64.0):
            gd = gram_for(sb, a, 40)
            samples.append((a, extract_symbol_numeric(sb.weight(a), gd, 0.4)))
        coeffs, _ = fit_alpha_expansion(samples, 2)
        assert coeffs[0] == pytest.approx(1.0, abs=1e-8)
        assert coeffs[1] == pytest.approx(0.0, abs=1e-6)

    def test_quartic_fit_matches_curvature(self, catalog):
        """Fitted 1/alpha coefficient vs -R/2 from geometry, within 2%."""
        m = catalog["plane-quartic"]
        x = 0.2
        samples = []
        for a in (8.0, 16.0, 32.0, 64.0):
            gd = gram_for(m, a, 40)
            samples.append((a, extract_symbol_numeric(m.weight(a), gd, x)))
        coeffs, _ = fit_alpha_expansion(samples, 2)
        expected = -complex(c_coefficient(m.weight(8.0), x, x)).real
        assert abs(coeffs[1] - expected) <= 0.02 * abs(expected)

    def test_too_few_samples(self):
        with pytest.raises(ValueError, match="at least"):
            fit_alpha_expansion([(8.0, 1.0), (16.0, 1.0)], 2)

    def test_duplicate_alphas(self):
        with pytest.raises(ValueError, match="distinct"):
            fit_alpha_expansion([(8.0, 1.0), (8.0, 1.0), (16.0, 1.0), (32.0, 1.0)], 2)
