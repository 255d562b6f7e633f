from pathlib import Path

import numpy as np
import pytest

from corner_billiards import BallSpec, BallState, CollisionContext, load_table

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def square():
    return load_table(FIXTURES / "square.json")


@pytest.fixture(scope="session")
def lshape():
    return load_table(FIXTURES / "lshape.json")


@pytest.fixture(scope="session")
def corridor():
    return load_table(FIXTURES / "corridor.json")


@pytest.fixture(scope="session")
def notched():
    return load_table(FIXTURES / "notched.json")


@pytest.fixture(scope="session")
def sinai():
    return load_table(FIXTURES / "sinai.json")


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


def random_unit(rng, size=None):
    v = rng.normal(size=(3,) if size is None else (size, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_triple(rng, surface):
    """Random state, contact and ball; the approach condition is not imposed."""
    r = rng.uniform(0.05, 5.0)
    spec = BallSpec(r, rng.uniform(0.05, 2.0) * r * r, surface)
    n = random_unit(rng)
    ctx = CollisionContext(rng.uniform(-5, 5, 3), n, r)
    state = BallState(ctx.center, rng.uniform(-10, 10, 3), rng.uniform(-10, 10, 3))
    return state, ctx, spec


# ---------------------------------------------------------------------------
# one summary line per acceptance criterion

_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    by_criterion = {}
    for criterion, name, outcome in _ACCEPTANCE:
        by_criterion.setdefault(criterion, []).append((name, outcome))
    for criterion in sorted(by_criterion):
        results = by_criterion[criterion]
        status = "PASS" if all(o == "passed" for _, o in results) else "FAIL"
        names = ", ".join(n for n, _ in results)
        terminalreporter.write_line(f"[{status}] criterion {criterion}: {names}")
