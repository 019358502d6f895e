import pytest

_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion and whether its test passed."""
    entry = {"name": None, "detail": ""}

    def declare(name, detail=""):
        entry["name"], entry["detail"] = name, detail

    yield declare
    rep = getattr(request.node, "rep_call", None)
    if entry["name"] is not None:
        _RESULTS.append((entry["name"], rep is not None and rep.passed, entry["detail"]))


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(_RESULTS):
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        terminalreporter.write_line(f"{line}  ({detail})" if detail else line)
