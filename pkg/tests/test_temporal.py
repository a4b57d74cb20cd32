from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import temporal_graphs
from tmatch.dp import solve
from tmatch.temporal import (
    ParseError,
    TemporalGraph,
    TimeEdge,
    blocks,
    delta_independent,
    first_violation,
    format_instance,
    format_matching,
    pad_lifetime,
    parse_instance,
    parse_matching,
    split_at_empty_windows,
    underlying_graph,
    validate_matching,
    window_slice,
)

U, V, W, X, Y = range(5)

time_edges = st.builds(
    lambda t, pair: TimeEdge.of(pair[0], pair[1], t),
    st.integers(1, 12),
    st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda p: p[0] != p[1]),
)


@pytest.mark.parametrize(
    "a, b, delta, expected",
    [
        (TimeEdge.of(U, V, 3), TimeEdge.of(U, W, 3), 2, False),
        (TimeEdge.of(U, V, 1), TimeEdge.of(U, W, 3), 2, True),
        (TimeEdge.of(U, V, 1), TimeEdge.of(X, Y, 1), 5, True),
    ],
)
def test_delta_independent_examples(a, b, delta, expected):
    assert delta_independent(a, b, delta) is expected


@pytest.mark.parametrize(
    "edge, vertex, t_prime, delta, expected",
    [
        (TimeEdge.of(U, V, 5), U, 5, 1, True),
        (TimeEdge.of(U, V, 5), U, 6, 1, False),
        (TimeEdge.of(U, V, 1), V, 4, 4, True),
    ],
)
def test_blocks_examples(edge, vertex, t_prime, delta, expected):
    assert blocks(edge, vertex, t_prime, delta) is expected


@given(time_edges, time_edges, st.integers(1, 6))
def test_delta_independent_symmetric(a, b, delta):
    assert delta_independent(a, b, delta) == delta_independent(b, a, delta)


@given(time_edges, st.integers(0, 4), st.integers(1, 12), st.integers(1, 6))
def test_blocks_is_complement_of_independence(edge, v, t_prime, delta):
    if abs(edge.t - t_prime) >= delta:
        assert not blocks(edge, v, t_prime, delta)
    # an incident edge at t_prime is blocked exactly when it is not independent
    other = next(x for x in range(5) if x not in (v, edge.u, edge.w))
    if v in edge.endpoints:
        probe = TimeEdge.of(v, other, t_prime)
        assert blocks(edge, v, t_prime, delta) == (not delta_independent(edge, probe, delta))


def test_validate_matching_examples(one_pair, worked):
    assert not validate_matching(one_pair, [TimeEdge(1, 0, 1), TimeEdge(5, 0, 1)], 8)
    assert validate_matching(one_pair, [], 8)
    assert validate_matching(worked, [], 2)
    assert validate_matching(worked, [TimeEdge(1, 0, 1), TimeEdge(4, 0, 1)], 2)


def test_validate_rejects_missing_edge(worked):
    assert first_violation(worked, [TimeEdge(3, 0, 1)], 2) == (TimeEdge(3, 0, 1), None)


@given(temporal_graphs(), st.integers(1, 5), st.data())
def test_validate_is_pairwise_independence(g, delta, data):
    edges = list(g.time_edges())
    m = data.draw(st.lists(st.sampled_from(edges), unique=True, max_size=5)) if edges else []
    pairwise = all(delta_independent(a, b, delta) for a, b in itertools.combinations(m, 2))
    assert validate_matching(g, m, delta) == pairwise


def test_window_slice_examples(one_pair):
    assert window_slice(one_pair, 5, 6).edge_count == 2
    assert window_slice(one_pair, 2, 2).edge_count == 0
    whole = window_slice(one_pair, 1, one_pair.lifetime)
    assert list(whole.time_edges()) == list(one_pair.time_edges())


def test_window_slice_keeps_absolute_labels(one_pair):
    assert [e.t for e in window_slice(one_pair, 5, 8).time_edges()] == [5, 6]


def test_window_slice_rejects_out_of_range(one_pair):
    with pytest.raises(ValueError):
        window_slice(one_pair, 0, 3)
    with pytest.raises(ValueError):
        window_slice(one_pair, 4, 9)


@given(temporal_graphs(max_tau=10), st.data())
def test_window_slice_nested(g, data):
    a, b, c, d = sorted(data.draw(st.lists(st.integers(1, g.lifetime), min_size=4, max_size=4)))
    outer = set(window_slice(g, a, d).time_edges())
    inner = set(window_slice(g, b, c).time_edges())
    assert inner <= outer


@pytest.mark.parametrize("tau, delta, expected", [(5, 2, 6), (4, 2, 4), (1, 3, 3)])
def test_pad_lifetime(tau, delta, expected):
    g = TemporalGraph.from_time_edges(2, tau, [TimeEdge(1, 0, 1)])
    padded = pad_lifetime(g, delta)
    assert padded.lifetime == expected
    assert list(padded.time_edges()) == list(g.time_edges())


@given(temporal_graphs(max_n=4, max_tau=8, max_edges=8), st.integers(1, 4))
def test_pad_then_solve_is_solve(g, delta):
    # empty trailing layers never change the optimum, aligned or not
    assert solve(pad_lifetime(g, delta), delta).size == solve(g, delta).size


def test_split_examples():
    g = TemporalGraph.from_time_edges(3, 6, [TimeEdge(1, 0, 1), TimeEdge(6, 1, 2)])
    parts = split_at_empty_windows(g, 2)
    assert len(parts) == 2
    assert [list(p.time_edges()) for p in parts] == [[TimeEdge(1, 0, 1)], [TimeEdge(2, 1, 2)]]

    full = TemporalGraph.from_time_edges(3, 4, [TimeEdge(2, 0, 1), TimeEdge(3, 1, 2)])
    (only,) = split_at_empty_windows(full, 2)
    assert only == full

    empty = TemporalGraph(3, ((),) * 4)
    assert split_at_empty_windows(empty, 2) == []
    assert solve(empty, 2).size == 0


@given(temporal_graphs(max_n=4, max_tau=10, max_edges=10), st.integers(1, 3))
def test_split_optima_add_up(g, delta):
    g = pad_lifetime(g, delta)
    total = sum(solve(part, delta).size for part in split_at_empty_windows(g, delta))
    assert total == solve(g, delta).size


def test_underlying_graph(one_pair):
    assert underlying_graph(one_pair).edges == ((0, 1),)
    assert underlying_graph(TemporalGraph(3, ((), ()))).edges == ()
    path = TemporalGraph(3, (((0, 1),), ((1, 2),)))
    assert underlying_graph(path).edges == ((0, 1), (1, 2))


def test_parse_and_format_round_trip(worked):
    text = format_instance(worked)
    assert text.splitlines()[0] == "tg 3 4"
    assert parse_instance(text) == worked


def test_parse_comments_and_blank_lines():
    g = parse_instance("# demo\n\ntg 2 3\n# edge\n2 0 1\n")
    assert list(g.time_edges()) == [TimeEdge(2, 0, 1)]


@pytest.mark.parametrize(
    "text, line",
    [
        ("tg 3 4\n1 0 x\n", 2),
        ("tg 3 4\n1 0 1\n1 0 1\n", 3),
        ("tg 3 4\n5 0 1\n", 2),
        ("tg 3 4\n1 1 0\n", 2),
        ("graph 3 4\n", 1),
        ("tg 3 4\n1 0 1 2\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_matching_format_round_trip():
    m = (TimeEdge(4, 0, 1), TimeEdge(1, 0, 1))
    text = format_matching(m)
    assert text == "size 2\n1 0 1\n4 0 1\n"
    assert parse_matching(text) == tuple(sorted(m))
    assert parse_matching("size 0\n") == ()


def test_matching_size_line_checked():
    with pytest.raises(ParseError):
        parse_matching("size 3\n1 0 1\n")


def test_time_edge_normalises_endpoints():
    assert TimeEdge.of(3, 1, 2) == TimeEdge(2, 1, 3)
    with pytest.raises(ValueError):
        TimeEdge.of(1, 1, 2)


def test_graph_rejects_duplicates_and_bad_edges():
    with pytest.raises(ValueError):
        TemporalGraph.from_time_edges(2, 2, [TimeEdge(1, 0, 1), TimeEdge(1, 0, 1)])
    with pytest.raises(ValueError):
        TemporalGraph.from_time_edges(2, 2, [TimeEdge(1, 0, 2)])
    with pytest.raises(ValueError):
        TemporalGraph(2, ())
