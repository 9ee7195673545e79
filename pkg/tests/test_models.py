"""Model catalog: wiring, validity ranges, and the reference kernels as
reproducing-property oracles."""

import numpy as np
import pytest

from btquant.bergman import bergman_kernel_numeric, weight_density
from btquant.cli import gram_for
from btquant.geometry import c_coefficient, kahler_data
from btquant.models import MODEL_NAMES, make_model
from btquant.symbols import kernel_symbol_linear


class TestCatalog:
    def test_known_names(self):
        for name in MODEL_NAMES:
            kwargs = {}
            if name == "sb-mu-exp":
                kwargs = {"beta": 0.1}
            if name == "plane-quartic":
                kwargs = {"epsilon": 0.05}
            m = make_model(name, **kwargs)
            assert m.dim == 1
            assert m.domain in ("disc", "plane")

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown model"):
            make_model("poincare-upper-half")

    def test_unknown_params_rejected(self):
        with pytest.raises(ValueError, match="parameters"):
            make_model("segal-bargmann", beta=0.5)

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError, match="epsilon"):
            make_model("plane-quartic", epsilon=-0.1)

    def test_quartic_metric_at_origin(self):
        m = make_model("plane-quartic", epsilon=0.1)
        kd = kahler_data(m.phi, 0.0, 0.0)
        assert kd.metric[0][0] == pytest.approx(1.0)

    def test_metric_positive_on_domain(self, catalog, rng):
        for model in catalog.values():
            for _ in range(10):
                x = 0.7 * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                kd = kahler_data(model.phi, x, np.conj(x))
                assert complex(kd.det).real > 0


class TestReferenceKernels:
    @pytest.mark.parametrize("name,alpha", [("segal-bargmann", 3.0), ("sb-mu-exp", 5.0), ("disc-mu-sq", 4.0)])
    def test_reference_matches_numeric_kernel(self, catalog, name, alpha):
        """The closed-form kernel satisfies the discrete reproducing
        property realized by the degree-12 numerical kernel."""
        model = catalog[name]
        gd = gram_for(model, alpha, 12)
        for x, yb in [(0.3, 0.2), (0.1 + 0.2j, 0.1 - 0.2j)]:
            got = bergman_kernel_numeric(gd, x, yb)
            want = model.reference_kernel(alpha, x, yb)
            assert abs(got - want) <= 1e-7 * abs(want), (name, x, yb)

    def test_reference_reproduces_under_quadrature(self, catalog):
        """integral K(x, wbar) w^j rho(w) d^2w = x^j for the closed form."""
        model = catalog["disc-mu-sq"]
        alpha = 4.0
        gd = gram_for(model, alpha, 12)
        w = model.weight(alpha)
        rho = weight_density(w, gd.rule.points)
        x0 = 0.3 + 0.2j
        K = model.reference_kernel(alpha, x0, np.conj(gd.rule.points))
        for j in (0, 2, 5):
            val = np.sum(gd.rule.weights * rho * K * gd.rule.points**j)
            assert abs(val - x0**j) < 1e-7


class TestSymbolPredictions:
    def test_k1_matches_exact_series(self, catalog, rng):
        """Geometry-predicted k_1 = -(Delta ln mu + R/2) equals the exact
        1/alpha coefficient where the kernel is known in closed form."""
        exact_k1 = {"segal-bargmann": 0.0, "sb-mu-exp": -0.25, "disc-mu-sq": 1.0}
        for name, want in exact_k1.items():
            w = catalog[name].weight(8.0)
            for _ in range(3):
                x = 0.5 * complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                k1 = -complex(c_coefficient(w, x, np.conj(x)))
                assert k1.real == pytest.approx(want, abs=1e-9), name
                assert abs(k1.imag) < 1e-10

    def test_reference_symbol_consistent_with_recurrence(self, catalog):
        for name in ("segal-bargmann", "sb-mu-exp", "disc-mu-sq"):
            model = catalog[name]
            k = kernel_symbol_linear(model.weight(16.0))
            series = k.coefficients_at(0.25, 0.25)
            exact = model.reference_symbol(16.0, 0.25)
            assert sum(series * (1.0 / 16.0) ** np.arange(2)) == pytest.approx(
                complex(exact), abs=1e-10
            )
