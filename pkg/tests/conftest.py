import numpy as np
import pytest

from btquant.models import make_model


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)


@pytest.fixture(scope="session")
def catalog():
    return {
        "segal-bargmann": make_model("segal-bargmann"),
        "sb-mu-exp": make_model("sb-mu-exp", beta=0.25),
        "disc-hyperbolic": make_model("disc-hyperbolic"),
        "disc-mu-sq": make_model("disc-mu-sq"),
        "plane-quartic": make_model("plane-quartic", epsilon=0.1),
    }


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger numba compilation (when active) outside any timed section."""
    from btquant.jets import variable, log

    x = variable(0.5, 0, 2, 4)
    y = variable(0.5, 1, 2, 4)
    (-(log(1 - x * y))).partial((1, 1))
    z = np.array([0.1 + 0.1j, 0.2])
    xa = variable(z, 0, 2, 2)
    ya = variable(np.conj(z), 1, 2, 2)
    (xa * ya).partial((1, 1))
