"""Weighted Bergman kernels and first-order Berezin-Toeplitz quantization
data on complex domains.

The library has two independent routes to the same numbers:

  * a formal route -- jet differentiation of a Kahler potential gives the
    metric, curvature and expansion operators, from which the star
    products, kernel-symbol recurrences and the averaging transform are
    built (``jets``, ``geometry``, ``symbols``);
  * a numerical route -- quadrature Gram matrices of monomials under the
    weight e^{-alpha phi} mu g give the Bergman kernel of the truncated
    space directly, whose diagonal symbol is fitted against powers of
    1/alpha (``quadrature``, ``bergman``).

``models`` ships potential/density pairs with closed-form kernels that
serve as oracles for both routes; ``cli`` wires the cross-checks into
runnable experiments (``btquant verify-kernel | star-table | selftest``).
"""

__version__ = "0.1.0"

from ._accel import backend
from .jets import (
    FreshFrame,
    Jet,
    constant,
    exp,
    extract_partial,
    log,
    variable,
)
from .geometry import (
    DiastasisCheck,
    GeometryError,
    KahlerData,
    PolarizedFunction,
    WeightSpec,
    c_coefficient,
    diastasis_hessian_check,
    diastasis_mu,
    diastasis_phi,
    kahler_data,
    laplacian,
)
from .symbols import (
    FormalSymbol,
    FourPointFunction,
    RnOperator,
    TruncationError,
    berezin_inverse,
    berezin_transform,
    bt_star,
    contravariant_star,
    covariant_star,
    default_operators,
    kernel_symbol_linear,
    kernel_symbol_quadratic,
    poisson_bracket,
    r0_apply,
    r1_apply,
    random_polynomial,
    triple_symbol,
)
from .quadrature import QuadratureRule, build_quadrature, plane_cutoff
from .bergman import (
    GramConditionError,
    GramData,
    bergman_kernel_numeric,
    extract_symbol_numeric,
    fit_alpha_expansion,
    gram_matrix,
    kernel_diagonal,
    weight_density,
)
from .models import MODEL_NAMES, ModelSpec, make_model

__all__ = [
    "__version__",
    "backend",
    # jets
    "Jet",
    "FreshFrame",
    "constant",
    "variable",
    "exp",
    "log",
    "extract_partial",
    # geometry
    "PolarizedFunction",
    "WeightSpec",
    "KahlerData",
    "GeometryError",
    "DiastasisCheck",
    "kahler_data",
    "laplacian",
    "c_coefficient",
    "diastasis_phi",
    "diastasis_mu",
    "diastasis_hessian_check",
    # symbols
    "FormalSymbol",
    "FourPointFunction",
    "RnOperator",
    "TruncationError",
    "r0_apply",
    "r1_apply",
    "default_operators",
    "triple_symbol",
    "bt_star",
    "kernel_symbol_linear",
    "kernel_symbol_quadratic",
    "berezin_transform",
    "berezin_inverse",
    "contravariant_star",
    "covariant_star",
    "poisson_bracket",
    "random_polynomial",
    # numerics
    "QuadratureRule",
    "build_quadrature",
    "plane_cutoff",
    "GramData",
    "GramConditionError",
    "gram_matrix",
    "weight_density",
    "bergman_kernel_numeric",
    "kernel_diagonal",
    "extract_symbol_numeric",
    "fit_alpha_expansion",
    # models
    "ModelSpec",
    "MODEL_NAMES",
    "make_model",
]
