import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def random_mesh(rng, n, a=0.0, b=1.0, wobble=0.8):
    """Strictly increasing interfaces over [a, b] with a guaranteed
    minimum width of (1 - wobble) * uniform width."""
    uniform = np.linspace(a, b, n + 1)
    interior = np.sort(rng.uniform(a, b, size=n - 1))
    x = uniform.copy()
    x[1:-1] = (1.0 - wobble) * uniform[1:-1] + wobble * interior
    return x


def capped_perturbation(rng, x, frac=0.4):
    """Move interior interfaces by at most frac*min(adjacent widths)."""
    h = np.diff(x)
    cap = frac * np.minimum(h[:-1], h[1:])
    out = x.copy()
    out[1:-1] = x[1:-1] + rng.uniform(-1.0, 1.0, size=len(cap)) * cap
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
