import numpy as np
import pytest

from pwhankel.fourier import DEFAULT_PROFILE, RadialBump

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def profile():
    return DEFAULT_PROFILE


@pytest.fixture(scope="session")
def bump(profile):
    return RadialBump(profile)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def acceptance_report():
    """Collects one pass/fail line per acceptance criterion; the lines are
    echoed in the terminal summary after the run."""

    def report(criterion: str, ok: bool, detail: str) -> bool:
        line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
