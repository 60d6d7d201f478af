from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vosper.connectivity as conn
from conftest import cay, digraphs
from vosper.bits import mask_of, members
from vosper.connectivity import (
    connectivity_profile,
    is_k_separable,
    is_superconnected,
    is_vosperian,
    isoperimetric_connectivity,
    k_atoms,
    k_fragments,
    min_vertex_separator,
    minimum_cutset,
    nontrivial_small_cutset,
    vertex_connectivity,
)
from vosper.digraph import from_edge_list, is_strongly_connected, reverse
from vosper.cayley import classify_superconnected_cayley
from vosper.errors import PreconditionError
from vosper.groups import make_cyclic
from vosper.oracle import (
    connectivity_bruteforce,
    kappa_k_bruteforce,
    superconnected_by_definition,
)
from vosper.suites import catalog_cayley, random_regular_digraph


def test_named_connectivities(c5, k5, z7):
    for d, kappa in ((c5, 1), (k5, 4), (z7, 3), (cay("Z4", [1, 2, 3]), 3)):
        assert vertex_connectivity(d) == kappa == connectivity_bruteforce(d)


def test_named_kappa2(c5, k5, z7):
    assert isoperimetric_connectivity(c5, 2) == 1 == kappa_k_bruteforce(c5, 2)
    assert isoperimetric_connectivity(k5, 2) is None
    assert isoperimetric_connectivity(z7, 2) == 3 == kappa_k_bruteforce(z7, 2)
    assert isoperimetric_connectivity(c5, 3) is None
    assert not is_k_separable(c5, 3)


def test_minimum_cutset_witness(z7):
    kappa, cut = minimum_cutset(z7)
    assert kappa == 3 and cut.bit_count() == 3
    assert not is_strongly_connected(z7, z7.full & ~cut)


def test_vertex_transitive_shortcut_agrees():
    for _, _, d in catalog_cayley(8):
        assert vertex_connectivity(d, vertex_transitive=True) == vertex_connectivity(d)


def test_min_vertex_separator_adjacent_terminals(c5):
    assert min_vertex_separator(c5, 1 << 0, 1 << 1) is None
    size, cut = min_vertex_separator(c5, 1 << 0, 1 << 3)
    assert size == 1 and cut in (1 << 1, 1 << 2)
    with pytest.raises(ValueError):
        min_vertex_separator(c5, 1, 1)


def test_c5_fragments(c5):
    frags = k_fragments(c5, 2)
    assert [members(f.x) for f in frags] == [[0, 1], [0, 4], [1, 2], [2, 3], [3, 4]]
    assert all(f.boundary.bit_count() == 1 for f in frags)
    singles = [f for f in k_fragments(c5, 1) if f.size == 1]
    assert len(singles) == 5


def test_z7_atoms(z7):
    atoms = k_atoms(z7, 2)
    assert len(atoms) == 7
    assert all(f.size == 2 for f in atoms)
    assert {frozenset(members(f.x)) for f in atoms} == {frozenset({i, (i + 1) % 7}) for i in range(7)}


def test_negative_fragments_are_reverse_fragments(z7):
    neg = [f.x for f in k_fragments(z7, 2, "negative")]
    assert neg == [f.x for f in k_fragments(reverse(z7), 2)]


def test_fragments_require_separable(k5):
    with pytest.raises(PreconditionError):
        k_fragments(k5, 2)
    with pytest.raises(ValueError):
        k_fragments(k5, 0)
    with pytest.raises(ValueError):
        isoperimetric_connectivity(k5, 0)
    with pytest.raises(ValueError):
        isoperimetric_connectivity(k5, 1, method="magic")


def test_named_deciders(c5, k5, z7, z4):
    # Cay(Z4,{1,3}) is reducible but has only four vertices, so it is not
    # 2-separable and hence vosperian; the oracle agrees.
    assert [is_vosperian(d) for d in (c5, k5, z7, z4)] == [False, True, False, True]
    assert [is_superconnected(d) for d in (c5, k5, z7, z4)] == [True, True, True, True]
    assert is_superconnected(cay("Z4", [1, 2, 3]))


def test_profiles(c5, k5, z4):
    p = connectivity_profile(c5).as_dict()
    assert {k: p[k] for k in ("kappa", "kappa2", "degree", "vosperian", "superconnected")} == {
        "kappa": 1,
        "kappa2": 1,
        "degree": 1,
        "vosperian": False,
        "superconnected": True,
    }
    p = connectivity_profile(k5)
    assert (p.kappa, p.kappa2, p.vosperian, p.superconnected) == (4, None, True, True)
    assert p.witness_fragment is None
    p = connectivity_profile(z4)
    assert (p.kappa, p.kappa2, p.vosperian) == (2, None, True)


def test_non_superconnected_witness():
    # Two disjoint directed triangles joined both ways: the cut {0, 3} is not a
    # neighbourhood.
    d = cay("Z6", [2, 3])
    cut = nontrivial_small_cutset(d)
    assert superconnected_by_definition(d) == (cut is None)
    if cut is not None:
        assert cut not in d.succ and cut not in d.pred
        assert not is_strongly_connected(d, d.full & ~cut)


def test_deciders_reject_bad_input():
    path = from_edge_list(3, [(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        is_vosperian(path)
    two_cycles = from_edge_list(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
    with pytest.raises(PreconditionError):
        is_superconnected(two_cycles)


def test_combination_path_matches_scan(monkeypatch):
    # Above the scan ceiling the superconnectivity check enumerates d-sets;
    # force that route on small inputs and compare.
    corpus = [d for _, _, d in catalog_cayley(8)]
    rng = random.Random(5)
    corpus += [random_regular_digraph(rng, rng.randint(4, 9), rng.randint(1, 3)) for _ in range(40)]
    expected = [is_superconnected(d) for d in corpus]
    monkeypatch.setattr(conn, "SCAN_CEILING", 0)
    assert [is_superconnected(d) for d in corpus] == expected


@pytest.mark.parametrize(
    "subset", [[1, 2], [1, 4], [1, 2, 4], [1, 15, 16], [1, 2, 15, 16], [1, 10, 20]]
)
def test_large_cyclic_superconnectivity(subset):
    # n = 30 goes through the combination route; the group-theoretic
    # classifier is the independent reference.
    g = make_cyclic(30)
    s = mask_of(subset)
    expected = classify_superconnected_cayley(g, s).superconnected
    assert is_superconnected(cay("Z30", subset)) == expected


@settings(max_examples=120, deadline=None)
@given(digraphs(max_n=8))
def test_flow_connectivity_matches_bruteforce(d):
    assert vertex_connectivity(d) == connectivity_bruteforce(d)


@settings(max_examples=80, deadline=None)
@given(digraphs(max_n=8), st.integers(1, 3))
def test_kappa_k_routes_agree(d, k):
    want = kappa_k_bruteforce(d, k)
    assert isoperimetric_connectivity(d, k, method="exhaustive") == want
    assert isoperimetric_connectivity(d, k, method="flow") == want


@settings(max_examples=120, deadline=None)
@given(digraphs(min_n=2, max_n=9))
def test_kappa_equals_kappa1_when_strong(d):
    if is_strongly_connected(d):
        k1 = isoperimetric_connectivity(d, 1)
        assert vertex_connectivity(d) == (d.n - 1 if k1 is None else k1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(4, 10))
def test_profile_invariants_on_regular_digraphs(seed, n):
    rng = random.Random(seed)
    d = random_regular_digraph(rng, n, rng.randint(1, n - 2))
    p = connectivity_profile(d)
    assert p.kappa <= p.degree
    if p.kappa2 is not None:
        assert p.kappa <= p.kappa2
        assert p.witness_fragment.boundary.bit_count() == p.kappa2
    if p.vosperian:
        assert p.superconnected
    assert is_vosperian(d) == is_vosperian(reverse(d))
    assert p.superconnected == superconnected_by_definition(d)


def two_atoms_contain_circuits(d) -> bool:
    if isoperimetric_connectivity(d, 2) is None:
        return True
    for atom in k_atoms(d, 2):
        if atom.size > 2:
            for x in members(atom.x):
                if not d.pred[x] & atom.x:
                    return False
    return True


def test_large_two_atoms_contain_circuits():
    for _, _, d in catalog_cayley(9):
        assert two_atoms_contain_circuits(d), d
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(4, 10)
        d = random_regular_digraph(rng, n, rng.randint(1, n - 2))
        assert two_atoms_contain_circuits(d)


def test_exterior_of_fragment_is_negative_fragment(z7):
    kappa2 = isoperimetric_connectivity(z7, 2)
    rev = reverse(z7)
    negatives = {f.x for f in k_fragments(z7, 2, "negative")}
    for f in k_fragments(z7, 2):
        assert f.exterior in negatives
        assert f.boundary.bit_count() == kappa2
    assert mask_of([5, 6]) in negatives
    assert isoperimetric_connectivity(rev, 2) == kappa2
