from pathlib import Path

import pytest

from rlindex.grammar import parse_grammar
from rlindex.index import build_index
from rlindex.oracle import decompress

DATA = Path(__file__).parent / "data"

CRITERIA = {
    1: "worked example, structural tables",
    2: "worked example, count breakdown",
    3: "oracle equivalence on generated grammars",
    4: "unit-level property suites",
    5: "k-MEMs against brute force",
    6: "scale and timing sanity",
    7: "serialization round trip and corruption",
}
_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(marker, []).append(report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if results is None:
            continue
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(
            f"criterion {n}: {verdict} ({sum(results)}/{len(results)} checks) - {CRITERIA[n]}"
        )


@pytest.fixture(scope="session")
def example_grammar():
    return parse_grammar((DATA / "example.txt").read_text())


@pytest.fixture(scope="session")
def example_index(example_grammar):
    return build_index(example_grammar)


@pytest.fixture(scope="session")
def example_text(example_grammar):
    return decompress(example_grammar)
