"""Ground truth and baselines, independent of the representative-family machinery.

Random instances come from SplitMix64 so that corpora can be regenerated
bit for bit in any language:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                      (all arithmetic mod 2**64)

A uniform double is ``(next() >> 11) * 2**-53``.  ``random_instance`` walks
``t = 1..tau``, then ``u < w`` lexicographically, and keeps ``(t, u, w)``
when the next double is below ``edge_prob``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .temporal import Matching, TemporalGraph, TimeEdge, delta_independent

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` (multiply-shift, tiny bias irrelevant here)."""
        return (self.next() * n) >> 64

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next())


def random_instance(seed: int, n: int, tau: int, delta: int, edge_prob: float) -> TemporalGraph:
    """Each ``(t, {u, w})`` is present independently with probability ``edge_prob``.

    ``delta`` does not influence the draw; it is accepted so generator calls
    record the parameter the instance is meant for.
    """
    if n < 0 or tau < 1 or delta < 1:
        raise ValueError("need n >= 0, tau >= 1, delta >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = SplitMix64(seed)
    edges = []
    for t in range(1, tau + 1):
        for u in range(n):
            for w in range(u + 1, n):
                if rng.random() < edge_prob:
                    edges.append(TimeEdge(t, u, w))
    return TemporalGraph.from_time_edges(n, tau, edges)


class OracleBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_time_edges: int = 24
    max_nodes: int = 5_000_000      # search nodes over all pieces


def _conflict_masks(edges: list[TimeEdge], delta: int) -> list[int]:
    conflicts = [0] * len(edges)
    for i, a in enumerate(edges):
        for j in range(i + 1, len(edges)):
            if not delta_independent(a, edges[j], delta):
                conflicts[i] |= 1 << j
                conflicts[j] |= 1 << i
    return conflicts


def _components(conflicts: list[int]) -> list[list[int]]:
    seen = 0
    out = []
    for start in range(len(conflicts)):
        if seen >> start & 1:
            continue
        comp, frontier = 0, 1 << start
        while frontier:
            comp |= frontier
            nxt = 0
            for i in _bits(frontier):
                nxt |= conflicts[i]
            frontier = nxt & ~comp
        seen |= comp
        out.append(list(_bits(comp)))
    return out


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def brute_force(
    g: TemporalGraph, delta: int, budget: OracleBudget = OracleBudget()
) -> tuple[int, Matching]:
    """Exact optimum by include/exclude search over time edges in canonical order.

    Pieces of the conflict graph (time edges joined when not Delta-independent)
    are searched separately and their optima added.
    """
    edges = list(g.time_edges())
    if len(edges) > budget.max_time_edges:
        raise OracleBudgetExceeded(
            f"{len(edges)} time edges exceed the oracle budget of {budget.max_time_edges}"
        )
    conflicts = _conflict_masks(edges, delta)
    nodes = 0
    chosen_all: list[TimeEdge] = []
    total = 0
    for comp in _components(conflicts):
        local = {g_i: l_i for l_i, g_i in enumerate(comp)}
        conf = [sum(1 << local[j] for j in _bits(conflicts[i])) for i in comp]
        best = [0, 0]   # size, chosen bitmask

        def search(i: int, chosen: int, size: int, allowed: int) -> None:
            nonlocal nodes
            nodes += 1
            if nodes > budget.max_nodes:
                raise OracleBudgetExceeded(f"more than {budget.max_nodes} search nodes")
            if size > best[0]:
                best[0], best[1] = size, chosen
            if size + bin(allowed >> i).count("1") <= best[0]:
                return
            while i < len(comp) and not (allowed >> i) & 1:
                i += 1
            if i == len(comp):
                return
            search(i + 1, chosen | (1 << i), size + 1, allowed & ~conf[i] & ~(1 << i))
            search(i + 1, chosen, size, allowed & ~(1 << i))

        search(0, 0, 0, (1 << len(comp)) - 1)
        total += best[0]
        chosen_all.extend(edges[comp[i]] for i in _bits(best[1]))
    return total, tuple(sorted(chosen_all))


def all_matchings(g: TemporalGraph, delta: int, limit: int = 1_000_000) -> Iterator[Matching]:
    """Every Delta-temporal matching of ``g``, the empty one included."""
    edges = list(g.time_edges())
    produced = 0

    def extend(start: int, chosen: list[TimeEdge]) -> Iterator[Matching]:
        nonlocal produced
        produced += 1
        if produced > limit:
            raise OracleBudgetExceeded(f"more than {limit} matchings")
        yield tuple(chosen)
        for j in range(start, len(edges)):
            e = edges[j]
            if all(delta_independent(e, c, delta) for c in chosen):
                chosen.append(e)
                yield from extend(j + 1, chosen)
                chosen.pop()

    yield from extend(0, [])


def greedy(g: TemporalGraph, delta: int) -> tuple[int, Matching]:
    """Maximal (not maximum) matching from one pass in ``(t, u, w)`` order."""
    chosen: list[TimeEdge] = []
    for e in g.time_edges():
        if all(delta_independent(e, c, delta) for c in chosen):
            chosen.append(e)
    return len(chosen), tuple(chosen)
