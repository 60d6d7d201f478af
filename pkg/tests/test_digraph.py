from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cay, digraphs
from vosper.bits import mask_of, members
from vosper.digraph import (
    Digraph,
    DigraphError,
    boundary,
    cayley_digraph,
    degree_profile,
    exterior,
    from_edge_list,
    is_strongly_connected,
    parse_edge_list,
    read_edge_list,
    reachable,
    reverse,
    strongly_connected_components,
)
from vosper.errors import ParseError
from vosper.groups import make_cyclic, parse_group_spec


def test_cayley_arcs_are_right_multiplication():
    d3 = parse_group_spec("D3")
    s = mask_of([1, 3])
    d = cayley_digraph(d3, s)
    for x in d3.elements:
        assert members(d.succ[x]) == sorted(d3.mul[x][y] for y in (1, 3))
    assert d.label == "Cay(D3,{1,3})"


def test_cayley_rejects_identity():
    with pytest.raises(DigraphError):
        cayley_digraph(make_cyclic(5), mask_of([0, 1]))


def test_loops_rejected():
    with pytest.raises(DigraphError):
        from_edge_list(3, [(1, 1)])
    with pytest.raises(DigraphError):
        Digraph.from_successors([0b1, 0])


def test_parse_edge_list_roundtrip(c5):
    text = c5.to_edge_list()
    assert text.splitlines()[0] == "5 5"
    d = parse_edge_list(text)
    assert d.succ == c5.succ and d.pred == c5.pred


def test_parse_edge_list_comments_and_blank_lines():
    d = parse_edge_list("# cycle\n3 3\n\n0 1  # first\n1 2\n2 0\n")
    assert d.arcs() == [(0, 1), (1, 2), (2, 0)]


@pytest.mark.parametrize(
    "text",
    ["", "3\n0 1\n", "3 2\n0 1\n", "3 1\n0 5\n", "3 1\n1 1\n", "3 1\na b\n", "3 1\n0 1 2\n"],
)
def test_parse_edge_list_errors(text):
    with pytest.raises(ParseError):
        parse_edge_list(text)


def test_read_edge_list_uses_stem(tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("3 3\n0 1\n1 2\n2 0\n")
    assert read_edge_list(p).label == "tri"


def test_boundary_and_exterior_c5(c5):
    x = mask_of([0, 1])
    assert members(boundary(c5, x)) == [2]
    assert members(exterior(c5, x)) == [3, 4]


def test_reverse_is_involution(z7):
    r = reverse(z7)
    assert r.succ == z7.pred
    assert reverse(r) == z7


def test_strong_connectivity_conventions():
    d = from_edge_list(3, [(0, 1), (1, 2)])
    assert not is_strongly_connected(d)
    assert is_strongly_connected(d, mask_of([1]))
    assert is_strongly_connected(d, 0)
    assert is_strongly_connected(from_edge_list(1, []))
    assert is_strongly_connected(from_edge_list(0, []))


def test_components_of_path():
    d = from_edge_list(4, [(0, 1), (1, 2), (2, 1), (2, 3)])
    assert [members(c) for c in strongly_connected_components(d)] == [[0], [1, 2], [3]]


def test_degree_profile():
    assert degree_profile(cay("Z7", [1, 2, 3])) == (True, 3)
    assert degree_profile(from_edge_list(3, [(0, 1)])) == (False, None)


@settings(max_examples=200, deadline=None)
@given(digraphs(), st.data())
def test_set_calculus_partitions_vertices(d, data):
    x = data.draw(st.integers(0, d.full))
    b, e = boundary(d, x), exterior(d, x)
    assert x & b == 0 and x & e == 0 and b & e == 0
    assert x | b | e == d.full
    # No arc leaves X towards its exterior.
    assert d.out_neighbourhood(x) & e == 0


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_components_partition_and_are_strong(d):
    comps = strongly_connected_components(d)
    union = 0
    for c in comps:
        assert union & c == 0
        assert is_strongly_connected(d, c)
        union |= c
    assert union == d.full
    assert (len(comps) <= 1) == is_strongly_connected(d)


@settings(max_examples=100, deadline=None)
@given(digraphs())
def test_reachability_matches_reverse(d):
    for v in range(d.n):
        fwd = reachable(d, 1 << v)
        for w in members(fwd):
            assert reachable(reverse(d), 1 << w) >> v & 1
