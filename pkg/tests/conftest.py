import numpy as np
import pytest

from sparsedct import build_y, fft_radix2

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        entry = _CRITERIA.setdefault(marker.args[0], {"ok": True, "notes": [], "tests": 0, "passed": 0})
        entry["ok"] = entry["ok"] and rep.passed
        entry["tests"] += 1
        entry["passed"] += rep.passed
        notes = [v for k, v in item.user_properties if k == "summary"]
        if not rep.passed:
            notes.append(f"{item.name} FAILED")
        entry["notes"].extend(notes)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        status = "PASS" if entry["ok"] else "FAIL"
        detail = "; ".join([f"{entry['passed']}/{entry['tests']} tests"] + entry["notes"])
        terminalreporter.write_line(f"criterion {n}: {status}  ({detail})")


# block of length 2 away from both ends, J = 4
@pytest.fixture
def inner_block_x():
    return np.array([0, 1, 2, 0, 0, 0, 0, 0], dtype=float)


# block that wraps around the end of x, J = 4
@pytest.fixture
def wrapped_block_x():
    return np.array([5, 1, 0, 0, 0, 0, 0, 2], dtype=float)


@pytest.fixture
def spectrum_of():
    return lambda x: fft_radix2(build_y(x))
