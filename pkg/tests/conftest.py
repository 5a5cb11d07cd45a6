from __future__ import annotations

import pytest

# acceptance outcomes, keyed by criterion number, filled in as tests run
_CRITERIA: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n = marker.args[0]
    xfail = item.get_closest_marker("xfail")
    if call.excinfo is None:
        # a strict xfail that passes is reported as a failure by pytest
        outcome = "FAIL (unexpected pass)" if xfail else "PASS"
    elif xfail:
        outcome = "FAIL (known, ledgered)"
    else:
        outcome = "FAIL"
    _CRITERIA.setdefault(n, []).append((item.name, outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        parts = _CRITERIA[n]
        fails = [name for name, o in parts if o != "PASS"]
        status = "PASS" if not fails else ("FAIL (known, ledgered)" if all(
            o == "FAIL (known, ledgered)" for _, o in parts if o != "PASS") else "FAIL")
        detail = f" [{', '.join(fails)}]" if fails else ""
        terminalreporter.write_line(f"criterion {n:2d}: {status} ({len(parts)} tests){detail}")


@pytest.fixture(scope="session")
def white_q2():
    from albert_forge.orbits.census import all_white_vectors

    return all_white_vectors(2)
