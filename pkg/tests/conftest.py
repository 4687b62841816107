import numpy as np
import pytest

from entroflux import kernels


def random_states(rng, n, dim=3, rho=(0.1, 10.0), p=(0.1, 10.0), umax=5.0):
    """Primitive states with rho, p log-uniform and velocity components uniform."""
    w = np.empty((n, dim))
    w[:, 0] = np.exp(rng.uniform(np.log(rho[0]), np.log(rho[1]), n))
    w[:, 1:-1] = rng.uniform(-umax, umax, (n, dim - 2))
    w[:, -1] = np.exp(rng.uniform(np.log(p[0]), np.log(p[1]), n))
    return w


def random_normals(rng, n):
    ang = rng.uniform(0.0, 2.0 * np.pi, n)
    return np.stack([np.cos(ang), np.sin(ang)], axis=-1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    if request.param == "numba" and not kernels.HAVE_NUMBA:
        pytest.skip("numba not installed")
    prev = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(prev)


@pytest.fixture
def numpy_backend():
    prev = kernels.set_backend("numpy")
    yield
    kernels.set_backend(prev)


SOD_L = np.array([1.0, 0.75, 1.0])
SOD_R = np.array([0.125, 0.0, 0.1])
CONTACT_L = np.array([1.4, 0.0, 1.0])
CONTACT_R = np.array([1.0, 0.0, 1.0])


# acceptance criteria report, one line per criterion, printed after the run
ACCEPTANCE = []


def report(criterion, ok, detail=""):
    line = f"CRITERION {criterion}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    ACCEPTANCE.append(line)
    print(line)
    return ok


def note(line):
    """Report-only line, listed with the verdicts."""
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
