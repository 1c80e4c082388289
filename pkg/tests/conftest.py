import pytest

from pointplane.pg3 import build_pg3

from brute import Brute


@pytest.fixture(scope="session")
def pg2():
    return build_pg3(2)


@pytest.fixture(scope="session")
def pg3():
    return build_pg3(3)


@pytest.fixture(scope="session")
def pg5():
    return build_pg3(5)


@pytest.fixture(scope="session")
def brute2():
    return Brute(2)


@pytest.fixture(scope="session")
def brute3():
    return Brute(3)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            name = nodeid.split("::", 1)[1].split("[", 1)[0]
            ok = outcome == "passed" and rep.when == "call"
            if outcome != "passed" or rep.when == "call":
                results[name] = results.get(name, True) and ok
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results):
        num = int(name.split("_")[2])
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if results[name] else 'FAIL'}  ({name})")
