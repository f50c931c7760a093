import os
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from lietriple.catalog import fixture_pairs
from lietriple.fields import QQ

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

PAIRS = fixture_pairs(QQ)


@pytest.fixture(params=sorted(PAIRS))
def pair(request):
    return PAIRS[request.param]


@pytest.fixture
def rng():
    return random.Random(20241015)


def plain(arr):
    """Nested lists of Fractions from an exact numpy array."""
    if hasattr(arr, "array"):
        arr = arr.array
    return [plain(a) for a in arr] if getattr(arr, "ndim", 0) else Fraction(arr)


def rep_blocks(rep):
    return plain(rep.theta)


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion after the run

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  {name}")
