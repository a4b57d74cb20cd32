from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import temporal_graphs
from tmatch.cover import CoverBudgetExceeded, sliding_nu, vertex_cover_number, window_nu
from tmatch.temporal import StaticGraph, TemporalGraph, TimeEdge, pad_lifetime


def cover_by_enumeration(g: StaticGraph) -> int:
    for k in range(g.vertex_count + 1):
        for cand in itertools.combinations(range(g.vertex_count), k):
            chosen = set(cand)
            if all(u in chosen or w in chosen for u, w in g.edges):
                return k
    raise AssertionError("unreachable")


def matching_by_enumeration(edges) -> int:
    for k in range(len(edges), 0, -1):
        for sub in itertools.combinations(edges, k):
            ends = [x for e in sub for x in e]
            if len(ends) == len(set(ends)):
                return k
    return 0


@st.composite
def static_graphs(draw, max_n: int = 8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n)]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return StaticGraph(n, tuple(sorted(edges)))


@st.composite
def bipartite_graphs(draw):
    left = draw(st.integers(1, 4))
    right = draw(st.integers(1, 4))
    pairs = [(u, left + w) for u in range(left) for w in range(right)]
    edges = draw(st.sets(st.sampled_from(pairs)))
    return StaticGraph(left + right, tuple(sorted(edges)))


def test_cover_examples():
    assert vertex_cover_number(StaticGraph(3, ((0, 1), (0, 2), (1, 2)))) == 2
    assert vertex_cover_number(StaticGraph(4, ((0, 1), (0, 2), (0, 3)))) == 1
    assert vertex_cover_number(StaticGraph(8, ((0, 1), (2, 3), (4, 5), (6, 7)))) == 4
    assert vertex_cover_number(StaticGraph(5, ())) == 0


@given(static_graphs())
def test_cover_matches_enumeration(g):
    assert vertex_cover_number(g) == cover_by_enumeration(g)


@given(static_graphs())
def test_cover_at_least_matching(g):
    assert vertex_cover_number(g) >= matching_by_enumeration(g.edges)


@given(bipartite_graphs())
def test_koenig_on_bipartite(g):
    assert vertex_cover_number(g) == matching_by_enumeration(g.edges)


def test_cover_budget():
    k5 = StaticGraph(5, tuple(itertools.combinations(range(5), 2)))
    assert vertex_cover_number(k5, budget=3) is None
    assert vertex_cover_number(k5, budget=4) == 4


def test_window_nu_examples(one_pair):
    assert window_nu(one_pair, 8).nu_hat == 1
    assert window_nu(TemporalGraph(4, ((),) * 4), 2).nu_hat == 0
    disjoint = TemporalGraph.from_time_edges(
        6, 3, [TimeEdge(1, 0, 1), TimeEdge(2, 2, 3), TimeEdge(3, 4, 5)]
    )
    bound = window_nu(disjoint, 1)
    assert bound.nu_hat == 1
    assert bound.per_window == (1, 1, 1)
    assert (bound.nu_lower, bound.nu_upper) == (1, 2)


def test_window_nu_needs_aligned_lifetime(worked):
    with pytest.raises(ValueError):
        window_nu(worked, 3)


def test_window_nu_budget_names_window():
    layers = (tuple(itertools.combinations(range(5), 2)),)
    with pytest.raises(CoverBudgetExceeded) as info:
        window_nu(TemporalGraph(5, layers), 1, budget=2)
    assert info.value.window == 1


@given(temporal_graphs(max_n=6, max_tau=9), st.integers(1, 4), st.randoms(use_true_random=False))
def test_window_nu_invariant_under_in_window_permutation(g, delta, rnd):
    g = pad_lifetime(g, delta)
    layers = list(g.layers)
    for d in range(g.lifetime // delta):
        chunk = layers[d * delta : (d + 1) * delta]
        rnd.shuffle(chunk)
        layers[d * delta : (d + 1) * delta] = chunk
    assert window_nu(TemporalGraph(g.vertex_count, tuple(layers)), delta) == window_nu(g, delta)


@given(temporal_graphs(max_n=7, max_tau=9), st.integers(1, 4))
def test_window_nu_exact_per_window(g, delta):
    g = pad_lifetime(g, delta)
    bound = window_nu(g, delta)
    for d, value in enumerate(bound.per_window, start=1):
        edges = {e for t in range(delta * (d - 1), delta * d) for e in g.layers[t]}
        assert value == cover_by_enumeration(StaticGraph(g.vertex_count, tuple(edges)))


@given(temporal_graphs(max_n=6, max_tau=10), st.integers(1, 4))
def test_sliding_bracket(g, delta):
    g = pad_lifetime(g, delta)
    aligned = window_nu(g, delta).nu_hat
    assert aligned <= sliding_nu(g, delta) <= 2 * aligned
