import numpy as np
import pytest
from hypothesis import strategies as st

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)


def random_z(rng, n, scale=1.0):
    return scale * (rng.normal(size=n) + 1j * rng.normal(size=n))


finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False)


@st.composite
def complex_vectors(draw, n=None, min_n=1, max_n=3, bound=3.0):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    el = st.floats(min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False)
    re = draw(st.lists(el, min_size=n, max_size=n))
    im = draw(st.lists(el, min_size=n, max_size=n))
    return np.array(re) + 1j * np.array(im)


@st.composite
def generic_homogeneous(draw, min_n=1, max_n=3):
    """Homogeneous coordinates with every component of modulus >= 0.1."""
    n = draw(st.integers(min_n, max_n))
    mod = draw(st.lists(st.floats(0.1, 3.0), min_size=n + 1, max_size=n + 1))
    arg = draw(st.lists(st.floats(0.0, 2 * np.pi), min_size=n + 1, max_size=n + 1))
    return np.array(mod) * np.exp(1j * np.array(arg))


def wirtinger(f, z, h=1e-6):
    """Central-difference d/dz^i and d/dzbar^i of f at z (f may be array valued)."""
    dz, dzb = [], []
    for i in range(z.size):
        e = np.zeros(z.size, dtype=complex)
        e[i] = h
        fx = (f(z + e) - f(z - e)) / (2 * h)
        fy = (f(z + 1j * e) - f(z - 1j * e)) / (2 * h)
        dz.append(0.5 * (fx - 1j * fy))
        dzb.append(0.5 * (fx + 1j * fy))
    return np.array(dz), np.array(dzb)
