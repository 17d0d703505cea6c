import pytest

from apfree import _backend

SEED = 20070404

try:
    from apfree import _kernels  # noqa: F401
    BACKENDS = ["python", "cython"]
except ImportError:
    BACKENDS = ["python"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    previous = _backend.use(request.param)
    yield request.param
    _backend.use(previous)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; call with (passed, detail)."""
    def record(passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"{status}  {request.node.name}  {detail}".rstrip())
        assert passed, detail
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
