"""Shared hypothesis strategies and the acceptance report buffer."""

from __future__ import annotations

from hypothesis import strategies as st

from tmatch.temporal import TemporalGraph, TimeEdge

# one "[PASS]/[FAIL] ..." line per acceptance criterion, printed at session end
ACCEPTANCE_LINES: dict[str, str] = {}


@st.composite
def temporal_graphs(draw, max_n: int = 5, max_tau: int = 8, max_edges: int = 14):
    n = draw(st.integers(2, max_n))
    tau = draw(st.integers(1, max_tau))
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n)]
    cells = st.tuples(st.integers(1, tau), st.sampled_from(pairs))
    chosen = draw(st.sets(cells, max_size=max_edges))
    return TemporalGraph.from_time_edges(n, tau, [TimeEdge(t, u, w) for t, (u, w) in chosen])


def window_matchings_by_enumeration(g: TemporalGraph, delta: int, d: int) -> set:
    """Every vertex-disjoint set of time edges of aligned window d (the empty one included)."""
    from tmatch.oracle import all_matchings
    from tmatch.temporal import window_slice

    lo, hi = delta * (d - 1) + 1, delta * d
    return set(all_matchings(window_slice(g, lo, hi), delta))


def check_gadget_correspondence(g: TemporalGraph, delta: int, d: int, nu_hat: int) -> int:
    """Both directions of the gadget/matching correspondence on one window.

    Returns the number of unions inspected.
    """
    from tmatch.temporal import validate_matching
    from tmatch.windows import build_gadgets, matching_from_set, union_family

    universe, h, edges = build_gadgets(g, delta, d, nu_hat)
    extracted = set()
    unions = union_family(h, nu_hat)
    for combo in unions:
        elements = [x for i in combo for x in h.sets[i]]
        assert len(elements) == len(set(elements))
        m = matching_from_set(elements, universe)
        # (<=) a disjoint union is a valid window matching of size equal to its weight
        assert validate_matching(g, m, delta)
        assert len(m) == sum(h.weights[i] for i in combo)
        extracted.add(m)
    # (=>) every window matching arises from some disjoint union
    expected = window_matchings_by_enumeration(g, delta, d)
    assert expected <= extracted, expected - extracted
    assert extracted <= expected
    return len(unions)


def check_d_complete(g: TemporalGraph, delta: int) -> int:
    """Exchange property of every window family against every matching of g.

    Returns the number of (matching, window) pairs checked.
    """
    from tmatch.cover import window_nu
    from tmatch.oracle import all_matchings
    from tmatch.temporal import pad_lifetime, validate_matching
    from tmatch.windows import d_complete_family

    eff = min(delta, g.lifetime)
    gp = pad_lifetime(g, eff)
    nu = window_nu(gp, eff).nu_hat
    windows = gp.lifetime // eff
    families = {d: d_complete_family(gp, eff, d, nu).matchings for d in range(1, windows + 1)}
    checked = 0
    for m in all_matchings(gp, eff, limit=200_000):
        for d in range(1, windows + 1):
            lo, hi = eff * (d - 1) + 1, eff * d
            rest = [e for e in m if not lo <= e.t <= hi]
            assert any(
                len(rest) + len(alt) >= len(m) and validate_matching(gp, rest + list(alt), eff)
                for alt in families[d]
            ), (m, d)
            checked += 1
    return checked
