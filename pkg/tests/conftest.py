import itertools

import pytest

from monoidlab.catalog import enumerate_monoids, named


@pytest.fixture
def Z2():
    return named("zn:2")


@pytest.fixture
def Z3():
    return named("zn:3")


@pytest.fixture
def U1():
    return named("u1")


@pytest.fixture
def M3():
    return named("monogenic:2,1")


@pytest.fixture
def trivial():
    return named("trivial")


@pytest.fixture
def T2():
    return named("t2")


def small_monoids(max_order=3):
    """Every monoid of order <= max_order, one per isomorphism class."""
    return [M for n in range(1, max_order + 1) for M in enumerate_monoids(n)]


def small_pairs(max_order=3):
    ms = small_monoids(max_order)
    return list(itertools.product(ms, ms))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
