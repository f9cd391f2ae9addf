import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ALPHAS = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)

# components are exactly 0 or of modulus in [1e-4, 1e4]; subnormals would make
# relative-error checks meaningless
component = st.one_of(
    st.just(0.0),
    st.builds(lambda m, sgn: sgn * m, st.floats(1e-4, 1e4), st.sampled_from([-1.0, 1.0])),
)
complex_entry = st.builds(complex, component, component)
alphas = st.floats(-5.0, 5.0, allow_nan=False)
lambdas = st.builds(
    lambda r, th: r * complex(np.cos(th), np.sin(th)), st.floats(1e-3, 1e3), st.floats(0.0, 2 * np.pi)
)


def vectors(min_size=1, max_size=12):
    return st.lists(complex_entry, min_size=min_size, max_size=max_size).map(
        lambda v: np.array(v, dtype=np.complex128)
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance")
        for line in mod.LINES:
            terminalreporter.write_line(line)
