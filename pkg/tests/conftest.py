import numpy as np
import pytest

from pcowave import build_basis

_CRITERION_LINES = []


@pytest.fixture(scope="session")
def haar():
    return build_basis(1, 12)


@pytest.fixture(scope="session")
def db2():
    return build_basis(2, 12)


@pytest.fixture(scope="session")
def db2_deep():
    # db2 has Hoelder exponent ~0.55; the 1e-5/1e-6 interpolation-limited
    # tolerances need a fine table (see decisions ledger)
    return build_basis(2, 18)


@pytest.fixture(scope="session")
def db4():
    return build_basis(4, 12)


@pytest.fixture(scope="session")
def db10():
    return build_basis(10, 12)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture
def record_criterion():
    def record(tag, ok, detail=""):
        _CRITERION_LINES.append((str(tag), bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERION_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for tag, ok, detail in _CRITERION_LINES:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{tag:<12}] {status}  {detail}")
