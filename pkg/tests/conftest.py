from __future__ import annotations

import pytest
from hypothesis import strategies as st

from vosper.digraph import Digraph, cayley_digraph
from vosper.bits import mask_of
from vosper.groups import make_cyclic, parse_group_spec

# Filled by test_acceptance; printed after the run.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def cay(spec: str, elements) -> Digraph:
    g = parse_group_spec(spec)
    return cayley_digraph(g, mask_of(elements))


@pytest.fixture
def c5() -> Digraph:
    return cay("Z5", [1])


@pytest.fixture
def k5() -> Digraph:
    return cay("Z5", [1, 2, 3, 4])


@pytest.fixture
def z7() -> Digraph:
    return cay("Z7", [1, 2, 3])


@pytest.fixture
def z4() -> Digraph:
    return cay("Z4", [1, 3])


@pytest.fixture
def z7_group():
    return make_cyclic(7)


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 9) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    succ = []
    for u in range(n):
        mask = draw(st.integers(0, (1 << n) - 1)) & ~(1 << u)
        succ.append(mask)
    return Digraph.from_successors(succ)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
