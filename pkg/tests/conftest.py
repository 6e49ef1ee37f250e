from __future__ import annotations

import re
from typing import Dict

import pytest

from geonets import (
    Net,
    Point,
    Triangle,
    build_double_tripod,
    build_fermat_tripod,
    build_overlay_net,
    build_paper_net,
    find_proper_subnet,
)


@pytest.fixture(scope="session")
def paper_net() -> Net:
    return build_paper_net()


@pytest.fixture(scope="session")
def overlay_net() -> Net:
    return build_overlay_net()


@pytest.fixture(scope="session")
def tripod_net() -> Net:
    return build_fermat_tripod(Triangle(Point(0.0, 0.0), Point(4.0, 0.0), Point(1.0, 3.0)))


@pytest.fixture(scope="session")
def double_tripod_net() -> Net:
    return build_double_tripod(
        Point(0.0, 2.0), Point(0.0, -2.0), Point(6.0, 2.0), Point(6.0, -2.0)
    )


@pytest.fixture(scope="session")
def paper_cert(paper_net):
    return find_proper_subnet(paper_net)


@pytest.fixture(scope="session")
def overlay_cert(overlay_net):
    return find_proper_subnet(overlay_net)


# --- acceptance summary -------------------------------------------------
#
# Tests named test_criterion_<NN>* roll up into one PASS/FAIL line per
# criterion in the terminal summary.

_CRITERION_RE = re.compile(r"test_criterion_(\d+)")
_criterion_outcomes: Dict[int, bool] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION_RE.search(report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.failed):
        ok = _criterion_outcomes.get(num, True) and report.passed
        _criterion_outcomes[num] = ok


def pytest_terminal_summary(terminalreporter):
    if not _criterion_outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_criterion_outcomes):
        verdict = "PASS" if _criterion_outcomes[num] else "FAIL"
        terminalreporter.write_line(f"CRITERION {num:2d}: {verdict}")
