import functools

import pytest
from hypothesis import settings, strategies as st

from adhesivity_lab.categories import parse_category

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def arrows(tag: str, bound: int) -> tuple:
    cat = parse_category(tag)
    objs = cat.enumerate(bound)
    return tuple(f for A in objs for B in objs for f in cat.homs(A, B))


@functools.lru_cache(maxsize=None)
def composable(tag: str, bound: int) -> tuple:
    fs = arrows(tag, bound)
    return tuple((f, g) for f in fs for g in fs if f.cod == g.dom)


def arrow(tag: str, bound: int = 2):
    return st.sampled_from(arrows(tag, bound))


def composable_pair(tag: str, bound: int = 2):
    return st.sampled_from(composable(tag, bound))


@pytest.fixture
def fixtures_dir():
    from pathlib import Path

    return Path(__file__).parent / "fixtures"


@functools.lru_cache(maxsize=None)
def _cospans(tag: str, bound: int) -> tuple:
    fs = arrows(tag, bound)
    return tuple((f, g) for f in fs for g in fs if f.cod == g.cod)


@functools.lru_cache(maxsize=None)
def _spans(tag: str, bound: int) -> tuple:
    fs = arrows(tag, bound)
    return tuple((f, g) for f in fs for g in fs if f.dom == g.dom)


def cospan(tag: str, bound: int = 2):
    return st.sampled_from(_cospans(tag, bound))


def span(tag: str, bound: int = 2):
    return st.sampled_from(_spans(tag, bound))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
