from contextlib import contextmanager
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from corner.cli import load_workspace
from corner.generator import universal_signature

DATA = Path(__file__).resolve().parent.parent / "data"

settings.register_profile(
    "repo", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def clothes():
    return load_workspace(DATA / "clothes.sig", DATA / "clothes.terms")


@pytest.fixture(scope="session")
def coffee():
    return load_workspace(DATA / "coffee.sig", DATA / "coffee.terms")


@pytest.fixture(scope="session")
def usig():
    return universal_signature()


_VERDICTS = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """``with criterion(n, title):`` records a PASS or FAIL line for the summary."""
    verdicts = request.config.stash.setdefault(_VERDICTS, {})

    @contextmanager
    def record(n, title):
        verdicts[n] = (title, "FAIL")
        yield
        verdicts[n] = (title, "PASS")

    return record


def pytest_terminal_summary(terminalreporter, config):
    verdicts = config.stash.get(_VERDICTS, {})
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for n, (title, verdict) in sorted(verdicts.items()):
            terminalreporter.write_line(f"criterion {n} {title}: {verdict}")
