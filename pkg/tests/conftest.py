import numpy as np
import pytest

from decohere import NaturalParams


@pytest.fixture
def fig1_solid():
    """d = 20 sigma, lambda_th = d / 5."""
    return NaturalParams(20.0, 1 / 16)


@pytest.fixture
def fig1_gda():
    """d = 20 sigma, lambda_th = d."""
    return NaturalParams(20.0, 1 / 400)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the line reads FAIL unless the test body completes."""
    entry = {"name": request.node.name, "detail": "", "ok": False}
    _ACCEPTANCE_LINES.append(entry)

    def note(detail):
        entry["detail"] = detail

    yield note
    entry["ok"] = True


def pytest_runtest_makereport(item, call):
    if call.when == "call" and call.excinfo is not None:
        for entry in _ACCEPTANCE_LINES:
            if entry["name"] == item.name:
                entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for entry in _ACCEPTANCE_LINES:
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"[{status}] {entry['name']}: {entry['detail']}")
