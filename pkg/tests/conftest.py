import pytest

from skewmdp import HAVE_COMPILED
from skewmdp.construction import construct_code
from skewmdp.gf_tower import make_extension

BACKENDS = ["python"] + (["cython"] if HAVE_COMPILED else [])

_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def F9():
    return make_extension(3, 2)


@pytest.fixture(scope="session")
def F25():
    return make_extension(5, 2)


@pytest.fixture(scope="session")
def code31():
    return construct_code(3, 1, 3)


@pytest.fixture(scope="session")
def code52():
    return construct_code(5, 2, 5)


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""
    log = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        log.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, [])
    if log:
        terminalreporter.section("acceptance criteria")
        for line in log:
            terminalreporter.write_line(line)
