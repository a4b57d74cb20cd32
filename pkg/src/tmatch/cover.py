"""Exact vertex cover by bounded search tree, and the per-window parameter.

The solver sizes its gadget families with ``nu_hat``, the largest vertex
cover number over the underlying graphs of the aligned Delta-windows.  The
sliding-window Delta-vertex cover number lies in ``[nu_hat, 2 * nu_hat]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .temporal import StaticGraph, TemporalGraph

DEFAULT_BUDGET = 30


class CoverBudgetExceeded(RuntimeError):
    def __init__(self, budget: int, window: int | None = None):
        where = f" in window {window}" if window is not None else ""
        super().__init__(f"vertex cover exceeds budget {budget}{where}")
        self.budget = budget
        self.window = window


@dataclass(frozen=True)
class CoverBound:
    per_window: tuple[int, ...]
    nu_hat: int

    @property
    def nu_lower(self) -> int:
        return self.nu_hat

    @property
    def nu_upper(self) -> int:
        return 2 * self.nu_hat


def _adjacency(edges: Iterable[tuple[int, int]]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for u, w in edges:
        adj.setdefault(u, set()).add(w)
        adj.setdefault(w, set()).add(u)
    return adj


def _remove(adj: dict[int, set[int]], gone: Iterable[int]) -> dict[int, set[int]]:
    gone = set(gone)
    out = {}
    for v, nb in adj.items():
        if v in gone:
            continue
        rest = nb - gone
        if rest:
            out[v] = rest
    return out


def _greedy_matching_size(adj: dict[int, set[int]]) -> int:
    used: set[int] = set()
    size = 0
    for v in sorted(adj):
        if v in used:
            continue
        for w in sorted(adj[v]):
            if w not in used:
                used.update((v, w))
                size += 1
                break
    return size


def _cover_at_most(adj: dict[int, set[int]], k: int) -> bool:
    if not adj:
        return True
    if k <= 0:
        return False
    # each cover vertex hits at most max-degree edges
    degrees = {v: len(nb) for v, nb in adj.items()}
    v = max(degrees, key=lambda x: (degrees[x], -x))
    m = sum(degrees.values()) // 2
    if m > k * degrees[v]:
        return False
    if degrees[v] == 1:
        # a perfect matching remains; every edge needs its own cover vertex
        return m <= k
    if _cover_at_most(_remove(adj, (v,)), k - 1):
        return True
    nbrs = adj[v]
    return len(nbrs) <= k and _cover_at_most(_remove(adj, nbrs), k - len(nbrs))


def vertex_cover_number(g: StaticGraph, budget: int | None = None) -> int | None:
    """Minimum vertex cover size of ``g``, or None if it exceeds ``budget``."""
    adj = _adjacency(g.edges)
    k = _greedy_matching_size(adj)
    limit = budget if budget is not None else max(g.vertex_count, k)
    while k <= limit:
        if _cover_at_most(adj, k):
            return k
        k += 1
    return None


def _window_cover(edges: set[tuple[int, int]], n: int, budget: int, window: int) -> int:
    vc = vertex_cover_number(StaticGraph(n, tuple(sorted(edges))), budget)
    if vc is None:
        raise CoverBudgetExceeded(budget, window)
    return vc


def window_nu(g: TemporalGraph, delta: int, budget: int = DEFAULT_BUDGET) -> CoverBound:
    """Exact vertex cover of each aligned window's underlying graph."""
    if g.lifetime % delta:
        raise ValueError("lifetime must be a multiple of delta; pad first")
    per_window = []
    for d in range(1, g.lifetime // delta + 1):
        edges: set[tuple[int, int]] = set()
        for t in range(delta * (d - 1), delta * d):
            edges.update(g.layers[t])
        per_window.append(_window_cover(edges, g.vertex_count, budget, d))
    return CoverBound(tuple(per_window), max(per_window, default=0))


def sliding_nu(g: TemporalGraph, delta: int, budget: int = DEFAULT_BUDGET) -> int:
    """The Delta-vertex cover number: max cover over all windows of delta consecutive layers."""
    if delta >= g.lifetime:
        starts = [1]
        delta = g.lifetime
    else:
        starts = list(range(1, g.lifetime - delta + 2))
    cache: dict[frozenset, int] = {}
    best = 0
    for i in starts:
        edges = frozenset(e for t in range(i - 1, i - 1 + delta) for e in g.layers[t])
        if edges not in cache:
            cache[edges] = _window_cover(set(edges), g.vertex_count, budget, i)
        best = max(best, cache[edges])
    return best
