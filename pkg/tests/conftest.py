import numpy as np
import pytest
from hypothesis import strategies as st

from tak.group_words import FreeWord, Generator


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


letters = st.tuples(st.sampled_from(list(Generator)), st.sampled_from([-2, -1, 1, 2]))
words = st.lists(letters, max_size=12).map(lambda ls: FreeWord(tuple(ls)))

finite = st.floats(min_value=-2.5, max_value=2.5, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def rel_close(a, b, rtol):
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


# acceptance bookkeeping: one PASS/FAIL line per criterion in the terminal summary
_criteria: dict[int, list[bool]] = {}
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    _titles[number] = title
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria.setdefault(number, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _criteria[number]
        verdict = "PASS" if all(results) else "FAIL"
        detail = "" if all(results) else f" ({results.count(False)} of {len(results)} checks failed)"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {_titles[number]}{detail}")
