import pytest
from hypothesis import settings

# the first numba call compiles; per-example deadlines would make that flaky
settings.register_profile("sepmodels", deadline=None)
settings.load_profile("sepmodels")

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion; failures are recorded too."""
    state = {}

    def record(number: int, text: str):
        state["number"], state["text"] = number, text

    yield record
    if "number" in state:
        report = getattr(request.node, "rep_call", None)
        ok = report is not None and report.passed
        ACCEPTANCE_LINES[state["number"]] = f"{'PASS' if ok else 'FAIL'}  [{state['number']}] {state['text']}"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
