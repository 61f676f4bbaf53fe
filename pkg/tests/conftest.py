import pytest

from merogerm.parser import parse_germ
from merogerm.resolution import log_resolution

G1 = "(y^3+x^5)/x"
G2 = "(y^3+x^5)/y"
F = "y^3+x^5"
XY = "x/y"
QUARTIC = "(y^2+x^4)/(x^2+y^4)"

_cache = {}


def resolved(text):
    if text not in _cache:
        germ = parse_germ(text)
        _cache[text] = (germ, log_resolution(germ))
    return _cache[text]


@pytest.fixture(scope="session")
def g1():
    return resolved(G1)


@pytest.fixture(scope="session")
def g2():
    return resolved(G2)


@pytest.fixture(scope="session")
def cusp():
    return resolved(F)


# -- acceptance summary ------------------------------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome != "passed":
        n = int(name.split("_")[2])
        ok = report.outcome == "passed" and _criteria.get(n, (True,))[0]
        _criteria[n] = (ok, name, getattr(report, "duration", 0.0))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, name, secs = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  ({name}, {secs:.2f}s)")
