"""Quadrature rules: closed-form radial integrals, angular orthogonality,
weight positivity."""

import math

import numpy as np
import pytest

from scipy.special import beta as beta_fn

from btquant.quadrature import build_quadrature, plane_cutoff


class TestDiscRule:
    def test_boundary_weight_integral(self):
        rule = build_quadrature("disc", 8, 16, 2.0)
        val = rule.integrate((1 - np.abs(rule.points) ** 2) ** 2)
        assert complex(val).real == pytest.approx(math.pi / 3, rel=1e-14)

    def test_weights_positive(self):
        rule = build_quadrature("disc", 16, 32, 5.0)
        assert np.all(rule.weights > 0)

    def test_monomial_exactness_against_beta_integrals(self):
        """integral z^m conj(z)^n (1-|z|^2)^a d^2 z = delta_mn pi B(m+1, a+1),
        for m, n up to twice a degree-8 basis."""
        a = 3.0
        d = 8
        rule = build_quadrature("disc", 2 * d + 4, 4 * d + 8, a)
        z = rule.points
        w = rule.weights * (1 - np.abs(z) ** 2) ** a
        for m in range(0, 2 * d + 1, 3):
            for n in range(0, 2 * d + 1, 3):
                got = np.sum(w * z**n * np.conj(z) ** m)
                want = math.pi * beta_fn(m + 1, a + 1) if m == n else 0.0
                scale = math.pi * beta_fn(max(m, n) + 1, a + 1)
                assert abs(got - want) <= 1e-10 * scale, (m, n)

    def test_angular_orthogonality(self):
        rule = build_quadrature("disc", 8, 16, 0.0)
        val = rule.integrate(rule.points**2 * np.conj(rule.points))
        assert abs(val) < 1e-14

    def test_negative_fractional_hint_allowed(self):
        rule = build_quadrature("disc", 8, 16, -0.5)
        val = rule.integrate((1 - np.abs(rule.points) ** 2) ** -0.5)
        assert complex(val).real == pytest.approx(math.pi * beta_fn(1, 0.5), rel=1e-12)


class TestPlaneRule:
    def test_gaussian_mass(self):
        rule = build_quadrature("plane", 64, 16, cutoff=8.0)
        val = rule.integrate(np.exp(-np.abs(rule.points) ** 2))
        assert complex(val).real == pytest.approx(math.pi, rel=1e-10)

    def test_gaussian_moments(self):
        alpha = 2.0
        rule = build_quadrature("plane", 96, 40, cutoff=plane_cutoff(alpha, 16))
        z = rule.points
        w = rule.weights * np.exp(-alpha * np.abs(z) ** 2)
        for n in range(0, 9, 2):
            got = np.sum(w * z**n * np.conj(z) ** n)
            want = math.pi * math.factorial(n) / alpha ** (n + 1)
            assert got.real == pytest.approx(want, rel=1e-10), n

    def test_cutoff_required(self):
        with pytest.raises(ValueError, match="cutoff"):
            build_quadrature("plane", 16, 16)


class TestValidation:
    def test_orders_positive(self):
        with pytest.raises(ValueError):
            build_quadrature("disc", 0, 16, 1.0)
        with pytest.raises(ValueError):
            build_quadrature("disc", 16, 0, 1.0)

    def test_unknown_domain(self):
        with pytest.raises(ValueError, match="domain"):
            build_quadrature("annulus", 8, 8, 1.0)

    def test_plane_cutoff_scales(self):
        small = plane_cutoff(64.0, 40)
        large = plane_cutoff(2.0, 40)
        assert small < large
        assert plane_cutoff(1.0, 0) > 5.0  # pure Gaussian needs ~sqrt(27) radius
