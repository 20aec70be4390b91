from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from torq.gb.ideal import Ambient
from torq.monoid import AffineMonoid

settings.register_profile("torq", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("torq")

PROPERTY_CASES = 500


def poly(*terms):
    """Build {exponent: Fraction} from (coeff, exponent) pairs."""
    out = {}
    for c, e in terms:
        out[tuple(e)] = out.get(tuple(e), 0) + Fraction(c)
    return {e: c for e, c in out.items() if c}


@pytest.fixture
def N():
    return AffineMonoid(1, [[1]])


@pytest.fixture
def N2():
    return AffineMonoid(2, [[1, 0], [0, 1]])


@pytest.fixture
def Z():
    return AffineMonoid(1, [[1], [-1]])


@pytest.fixture
def A_N(N):
    return Ambient(N, 2)


@pytest.fixture
def A_N2(N2):
    return Ambient(N2, 2)


# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {title} ({detail})")
