import numpy as np
import pytest

from antihankel import HankelParams

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    num, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    _CRITERIA[num] = (title, report.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, outcome, detail = _CRITERIA[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{verdict}] criterion {num}: {title}"
        if detail:
            line += f" | {detail}"
        terminalreporter.write_line(line)


def random_instances(count, n_values, seed, low=-3.0, high=3.0):
    rng = np.random.default_rng(seed)
    out = []
    for n in n_values:
        for _ in range(count):
            a, b, c = rng.uniform(low, high, 3)
            out.append(HankelParams(n, a, b, c))
    return out
