from math import sqrt

import networkx as nx
import pytest
from hypothesis import given, settings

from clique_spectra.enumeration import (EnumSpec, SearchSpaceError, argmax_energy,
                                        canonical_form, certificate,
                                        check_max_radius_is_clique_path,
                                        enumerate_clique_trees, evaluate, isomorphic, raw_count,
                                        unique_clique_trees)
from clique_spectra.graph import balanced_clique_path, clique_path, distance_matrix

from conftest import clique_trees


def nx_graph(t):
    g = nx.Graph()
    g.add_nodes_from(range(t.n))
    g.add_edges_from(t.edges())
    return g


def vf2_classes(trees):
    reps = []
    for t in trees:
        g = nx_graph(t)
        if not any(nx.is_isomorphic(g, r) for r in reps):
            reps.append(g)
    return reps


def test_raw_stream_222_has_path_and_star():
    raw = list(enumerate_clique_trees(EnumSpec.by_multiset([2, 2, 2])))
    assert len(raw) == raw_count(EnumSpec.by_multiset([2, 2, 2])) == 6
    classes = vf2_classes(raw)
    assert len(classes) == 2
    assert sorted(sorted(d for _, d in g.degree()) for g in classes) == [[1, 1, 1, 3],
                                                                           [1, 1, 2, 2]]


def test_raw_stream_33_single_class():
    assert len(vf2_classes(enumerate_clique_trees(EnumSpec.by_multiset([3, 3])))) == 1


def test_by_nk_4_3_equals_multiset_222():
    a = vf2_classes(enumerate_clique_trees(EnumSpec.by_nk(4, 3)))
    b = vf2_classes(enumerate_clique_trees(EnumSpec.by_multiset([2, 2, 2])))
    assert len(a) == len(b) == 2


def test_raw_stream_deterministic():
    spec = EnumSpec.by_multiset([3, 2, 2])
    first = [t.blocks for t in enumerate_clique_trees(spec)]
    assert first == [t.blocks for t in enumerate_clique_trees(spec)]


@pytest.mark.parametrize("spec", [
    EnumSpec.by_multiset([2, 2, 2, 2, 2]),
    EnumSpec.by_multiset([3, 2, 2, 2]),
    EnumSpec.by_multiset([4, 3, 3]),
    EnumSpec.by_nk(7, 3),
    EnumSpec.by_nk(6, 4),
])
def test_unique_matches_raw_classes(spec):
    raw = list(enumerate_clique_trees(spec))
    uniq = unique_clique_trees(spec)
    classes = vf2_classes(raw)
    assert len(uniq) == len(classes)
    for g in classes:
        assert sum(nx.is_isomorphic(g, nx_graph(t)) for t in uniq) == 1


def test_unique_counts_match_known_sequences():
    # connected block graphs on n vertices; trees on n vertices
    block_graphs = [1, 2, 4, 9, 22, 59, 165, 496, 1540]
    for n, want in zip(range(2, 11), block_graphs):
        assert sum(len(unique_clique_trees(EnumSpec.by_nk(n, k))) for k in range(1, n)) == want
    trees = [1, 1, 2, 3, 6, 11, 23, 47, 106]
    for n, want in zip(range(2, 11), trees):
        assert len(unique_clique_trees(EnumSpec.by_multiset([2] * (n - 1)))) == want


@settings(max_examples=120, deadline=None)
@given(clique_trees(max_blocks=5, max_size=4), clique_trees(max_blocks=5, max_size=4))
def test_canonical_form_is_exact(a, b):
    same = canonical_form(a) == canonical_form(b)
    assert same == (a.n == b.n and nx.is_isomorphic(nx_graph(a), nx_graph(b)))


@settings(max_examples=60, deadline=None)
@given(clique_trees(max_blocks=6, max_size=4))
def test_emitted_graphs_are_valid_with_expected_spectrum(t):
    d = distance_matrix(t)
    assert t.n == sum(t.block_sizes) - (len(t.blocks) - 1)
    for block in t.blocks:
        assert all(d[u, v] == 1 for u in block for v in block if u != v)
    e = evaluate(t)
    assert e.inertia_ok and e.energy_identity_ok


def test_guard():
    with pytest.raises(SearchSpaceError):
        list(enumerate_clique_trees(EnumSpec.by_multiset([2] * 8), guard=100))
    with pytest.raises(SearchSpaceError):
        unique_clique_trees(EnumSpec.by_multiset([2] * 8), guard=100)
    with pytest.raises(SearchSpaceError):
        argmax_energy(EnumSpec.by_nk(8, 3), guard=50)


@pytest.mark.parametrize("bad", [
    dict(mode="by-multiset", sizes=(2, 1)),
    dict(mode="by-multiset", sizes=()),
    dict(mode="by-nk", n=4, k=4),
    dict(mode="by-nk", n=1, k=1),
    dict(mode="nope"),
])
def test_enumspec_validation(bad):
    with pytest.raises(ValueError):
        EnumSpec(**bad)


def test_argmax_n4_k3():
    res = argmax_energy(EnumSpec.by_nk(4, 3))
    assert res.winner_energy == pytest.approx(4 + 2 * sqrt(10), abs=1e-6)
    assert res.runner_up_energy == pytest.approx(2 * (2 + sqrt(7)), abs=1e-6)
    assert isomorphic(res.winner, clique_path([2, 2, 2]))
    assert res.matches_balanced
    assert res.distinct_certificates == 2
    assert res.winner_energy == pytest.approx(2 * res.winner_radius, rel=1e-8)


def test_argmax_n5_k2_balanced_split():
    res = argmax_energy(EnumSpec.by_nk(5, 2))
    assert isomorphic(res.winner, clique_path([3, 3]))
    assert res.runner_up_energy < res.winner_energy


@pytest.mark.parametrize("n", range(3, 9))
def test_argmax_all_edges_is_path(n):
    res = argmax_energy(EnumSpec.by_multiset([2] * (n - 1)))
    assert isomorphic(res.winner, clique_path([2] * (n - 1)))


def test_argmax_ignores_duplicates_and_order():
    sizes = [3, 2, 4, 2]
    a = argmax_energy(EnumSpec.by_multiset(sizes))
    b = argmax_energy(EnumSpec.by_multiset(sizes[::-1]))
    cert = lambda t: certificate(distance_matrix(t))
    assert cert(a.winner) == cert(b.winner)
    # raw stream with all its duplicates reaches the same maximum
    raw_best = max(evaluate(t).energy for t in enumerate_clique_trees(EnumSpec.by_multiset(sizes)))
    assert raw_best == pytest.approx(a.winner_energy, abs=1e-9)


def test_argmax_export():
    res = argmax_energy(EnumSpec.by_nk(5, 3))
    data = res.to_dict()
    assert data["reading"] == "by-nk"
    assert data["winner_sizes"] == list(balanced_clique_path(5, 3).block_sizes)
    lines = res.certificates_csv().splitlines()
    assert lines[0] == "certificate,energy"
    assert len(lines) == 1 + res.distinct_certificates


@pytest.mark.parametrize("sizes, arrangement", [
    ([2, 2, 2], [2, 2, 2]),
    ([3, 2, 2], [2, 2, 3]),
    ([4], [4]),
    ([4, 3, 2, 2], [3, 2, 2, 4]),
])
def test_max_radius_is_clique_path(sizes, arrangement):
    rep = check_max_radius_is_clique_path(sizes)
    assert rep.passed
    assert rep.details["arrangement"] == arrangement


def test_max_radius_many_large_blocks():
    assert check_max_radius_is_clique_path([3, 3, 3, 2]).passed
