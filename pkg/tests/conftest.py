import pytest

from shuffleop import builtin, complete

_ACCEPTANCE = {}


def make_basis(name, max_arity, precedence=None, workers=1):
    pres = builtin(name)
    order = pres.order(precedence)
    rels = [r for r in pres.relations(order) if r.arity <= max_arity]
    return complete(rels, max_arity, order, pres.generators, workers=workers, ops=pres.ops)


@pytest.fixture(scope="session")
def basis():
    cache = {}

    def get(name, max_arity, precedence=None):
        key = (name, max_arity, tuple(precedence or ()))
        if key not in cache:
            cache[key] = make_basis(name, max_arity, precedence)
        return cache[key]
    return get


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num, title = marker
        prev = _ACCEPTANCE.get(num, (title, "PASS"))
        status = "PASS" if report.outcome == "passed" and prev[1] == "PASS" else "FAIL"
        _ACCEPTANCE[num] = (title, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, status = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {status}  {title}")
