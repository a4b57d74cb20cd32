"""Gadget families for one aligned Delta-window and their d-complete matchings.

Every non-isolated vertex of the window gets its own Delta-postfix tree.  A
time edge ``({u, w}, t)`` becomes the gadget made of the two root paths to
leaf ``t - Delta*(d-1)`` in ``T_u`` and ``T_w`` plus one id standing for the
time edge itself, padded with private dummies to ``2*ceil(log2 Delta) + 3``
elements.  ``nu_hat`` further all-dummy sets of weight 0 allow unions of
fewer real gadgets.  Two gadgets meet iff their edges share an endpoint
(they share at least that endpoint's root), so disjoint unions of
``nu_hat`` sets are exactly the matchings of the window.

Blocking from neighbouring windows is encoded by separators: a vertex
blocked during a prefix or suffix of the window forbids the separator of
that interval in its tree, and a root path avoids the separator iff its
leaf lies outside the interval.  A max ``4*nu_hat*(log+1)``-representative
of the union family therefore keeps, for every such pattern, a best
unblocked matching.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .postfix import PostfixTree, build_tree, ceil_log2, root_leaf_path
from .representative import (
    UnionRepResult,
    WeightedSetFamily,
    iterated_union_representative,
)
from .temporal import Matching, TemporalGraph, TimeEdge, window_time_edges


def gadget_size(delta: int) -> int:
    return 2 * ceil_log2(delta) + 3


def separator_budget(delta: int, nu_hat: int) -> int:
    """Largest punctured set produced by blocking from both neighbour windows."""
    return 4 * nu_hat * (ceil_log2(delta) + 1)


@dataclass(frozen=True)
class FamilyParameters:
    alpha: int
    beta: int
    gamma: int

    @property
    def rank(self) -> int:
        return (self.alpha + self.beta) * self.gamma

    @property
    def q(self) -> int:
        return self.beta * self.gamma

    @property
    def size_bound(self) -> int:
        return comb(self.rank, self.alpha * self.gamma)


def family_parameters(delta: int, nu_hat: int) -> FamilyParameters:
    """Unions of ``nu_hat`` gadgets; smallest slack ``beta`` covering the separator budget."""
    gamma = gadget_size(delta)
    need = separator_budget(delta, nu_hat)
    beta = -(-need // gamma)
    return FamilyParameters(nu_hat, beta, gamma)


def window_bounds(delta: int, d: int) -> tuple[int, int]:
    return delta * (d - 1) + 1, delta * d


@dataclass
class GadgetUniverse:
    delta: int
    d: int
    trees: dict[int, PostfixTree]
    edge_ids: dict[TimeEdge, int]
    edge_of: dict[int, TimeEdge]
    size: int = 0

    @property
    def start(self) -> int:
        return window_bounds(self.delta, self.d)[0]

    def local_time(self, t: int) -> int:
        return t - self.delta * (self.d - 1)

    def fresh(self, count: int) -> list[int]:
        ids = list(range(self.size, self.size + count))
        self.size += count
        return ids


@dataclass
class DCompleteFamily:
    d: int
    matchings: list[Matching]
    params: FamilyParameters
    stats: dict = field(default_factory=dict)

    @property
    def weights(self) -> list[int]:
        return [len(m) for m in self.matchings]

    def __len__(self) -> int:
        return len(self.matchings)


def edge_gadget(universe: GadgetUniverse, e: TimeEdge) -> list[int]:
    """Tree-path and edge-id part of a gadget, before padding."""
    leaf = universe.local_time(e.t)
    elements = root_leaf_path(universe.trees[e.u], leaf)
    elements += root_leaf_path(universe.trees[e.w], leaf)
    elements.append(universe.edge_ids[e])
    return elements


def build_gadgets(
    g: TemporalGraph, delta: int, d: int, nu_hat: int
) -> tuple[GadgetUniverse, WeightedSetFamily, list[TimeEdge]]:
    """Gadget family for window ``d``; edge gadgets first, then the dummy sets.

    Also returns the window's time edges, aligned with the first sets of the family.
    """
    if g.lifetime % delta:
        raise ValueError("lifetime must be a multiple of delta; pad first")
    if not 1 <= d <= g.lifetime // delta:
        raise ValueError(f"window {d} outside [1, {g.lifetime // delta}]")
    lo, hi = window_bounds(delta, d)
    edges = window_time_edges(g, lo, hi)
    universe = GadgetUniverse(delta, d, {}, {}, {})
    for v in sorted({x for e in edges for x in (e.u, e.w)}):
        tree = build_tree(delta, owner=v, id_offset=universe.size)
        universe.trees[v] = tree
        universe.size += tree.node_count
    for e in edges:
        (eid,) = universe.fresh(1)
        universe.edge_ids[e] = eid
        universe.edge_of[eid] = e

    gamma = gadget_size(delta)
    sets: list[list[int]] = []
    for e in edges:
        core = edge_gadget(universe, e)
        sets.append(core + universe.fresh(gamma - len(core)))
    for _ in range(nu_hat):
        sets.append(universe.fresh(gamma))
    weights = [1] * len(edges) + [0] * nu_hat
    return universe, WeightedSetFamily.build(sets, weights, gamma), edges


def matching_from_set(s: Iterable[int], universe: GadgetUniverse) -> Matching:
    """Time edges whose ids occur in ``s``."""
    return tuple(sorted(universe.edge_of[x] for x in s if x in universe.edge_of))


class FamilyBoundViolation(AssertionError):
    pass


def d_complete_family(
    g: TemporalGraph,
    delta: int,
    d: int,
    nu_hat: int,
    *,
    mode: str = "auto",
) -> DCompleteFamily:
    """Small family of window-``d`` matchings containing a replacement for any global matching."""
    params = family_parameters(delta, nu_hat)
    if nu_hat == 0:
        return DCompleteFamily(d, [()], params, {"gadgets": 0, "universe": 0, "kept": 1})
    universe, h, edges = build_gadgets(g, delta, d, nu_hat)
    result: UnionRepResult = iterated_union_representative(
        h, params.alpha, params.beta, universe.size, mode=mode,
        interchangeable=range(len(edges), len(h)),
    )
    seen: set[Matching] = set()
    matchings: list[Matching] = []
    for member in result.members:
        m = matching_from_set(member.elements, universe)
        if m not in seen:
            seen.add(m)
            matchings.append(m)
    if len(matchings) > params.size_bound:
        raise FamilyBoundViolation(
            f"window {d}: {len(matchings)} matchings exceed C({params.rank}, "
            f"{params.alpha * params.gamma})"
        )
    stats = {
        "d": d,
        "gadgets": len(edges),
        "universe": universe.size,
        "r": params.rank,
        "kept": len(result.members),
        "family": len(matchings),
        "max_weight": max(len(m) for m in matchings) if matchings else 0,
        "rounds": result.rounds,
    }
    return DCompleteFamily(d, matchings, params, stats)


def union_family(h: WeightedSetFamily, alpha: int) -> list[tuple[tuple[int, ...], ...]]:
    """All ways to pick ``alpha`` pairwise disjoint sets of ``h`` (as index tuples).

    Exponential; meant for checking small windows against the representative.
    """
    masks = [sum(1 << x for x in s) for s in h.sets]
    out: list[tuple[int, ...]] = []

    def extend(start: int, chosen: tuple[int, ...], used: int) -> None:
        if len(chosen) == alpha:
            out.append(chosen)
            return
        for j in range(start, len(masks)):
            if not masks[j] & used:
                extend(j + 1, chosen + (j,), used | masks[j])

    extend(0, (), 0)
    return out


def blocking_separator_set(
    universe: GadgetUniverse, pattern: Sequence[tuple[int, int, int]]
) -> set[int]:
    """Union of separators for blocking triples ``(vertex, a, b)`` in window-local time.

    Vertices without a tree in this window are skipped: no gadget uses them.
    """
    from .postfix import separator

    y: set[int] = set()
    for v, a, b in pattern:
        tree = universe.trees.get(v)
        if tree is not None:
            y |= separator(tree, a, b).nodes
    return y


def blocking_pattern(
    before: Iterable[TimeEdge], after: Iterable[TimeEdge], delta: int, d: int
) -> list[tuple[int, int, int]]:
    """Blocked prefixes/suffixes of window ``d`` caused by edges of the adjacent windows.

    An edge at time ``t`` in window ``d-1`` blocks its endpoints on window-local
    steps ``[1, t - delta*(d-1)]``; one in window ``d+1`` blocks
    ``[t + 1 - delta*d, delta]``.  Empty intervals are dropped.
    """
    pattern = []
    base = delta * (d - 1)
    for e in before:
        b = e.t + delta - 1 - base   # last blocked absolute step is t + delta - 1
        if b >= 1:
            pattern += [(v, 1, min(b, delta)) for v in (e.u, e.w)]
    for e in after:
        a = e.t - delta + 1 - base   # first blocked absolute step is t - delta + 1
        if a <= delta:
            pattern += [(v, max(a, 1), delta) for v in (e.u, e.w)]
    return pattern
