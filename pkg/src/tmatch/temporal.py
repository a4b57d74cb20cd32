"""Temporal graphs, time edges and the Delta-independence predicates.

Vertices are dense integer ids ``0..n-1``.  Time steps are 1-based, so a
graph of lifetime ``tau`` has layers ``1..tau``.  Every public iteration over
time edges runs in ``(t, u, w)`` lexicographic order with ``u < w``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence


class TimeEdge(NamedTuple):
    """Edge ``{u, w}`` present at time ``t``; always stored with ``u < w``."""

    t: int
    u: int
    w: int

    @classmethod
    def of(cls, u: int, w: int, t: int) -> "TimeEdge":
        if u == w:
            raise ValueError(f"self-loop on vertex {u}")
        return cls(t, u, w) if u < w else cls(t, w, u)

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.w)

    def shifted(self, offset: int) -> "TimeEdge":
        return TimeEdge(self.t + offset, self.u, self.w)


Matching = tuple[TimeEdge, ...]


class StaticGraph(NamedTuple):
    vertex_count: int
    edges: tuple[tuple[int, int], ...]


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class TemporalGraph:
    """Vertex count plus one sorted edge tuple per time step."""

    vertex_count: int
    layers: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        if len(self.layers) < 1:
            raise ValueError("lifetime must be at least 1")
        n = self.vertex_count
        for t, layer in enumerate(self.layers, start=1):
            for u, w in layer:
                if not (0 <= u < w < n):
                    raise ValueError(f"bad edge ({u}, {w}) at time {t}")
            if any(a >= b for a, b in zip(layer, layer[1:])):
                raise ValueError(f"layer {t} is not strictly sorted (duplicate edge?)")

    @classmethod
    def from_time_edges(
        cls, vertex_count: int, lifetime: int, edges: Iterable[TimeEdge]
    ) -> "TemporalGraph":
        buckets: list[set[tuple[int, int]]] = [set() for _ in range(lifetime)]
        for e in edges:
            e = TimeEdge.of(e.u, e.w, e.t)
            if not 1 <= e.t <= lifetime:
                raise ValueError(f"time {e.t} outside [1, {lifetime}]")
            if (e.u, e.w) in buckets[e.t - 1]:
                raise ValueError(f"duplicate time edge {tuple(e)}")
            buckets[e.t - 1].add((e.u, e.w))
        return cls(vertex_count, tuple(tuple(sorted(b)) for b in buckets))

    @property
    def lifetime(self) -> int:
        return len(self.layers)

    @property
    def edge_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def size(self) -> int:
        """``|V| + sum_t |E_t|``."""
        return self.vertex_count + self.edge_count

    def time_edges(self) -> Iterator[TimeEdge]:
        for t, layer in enumerate(self.layers, start=1):
            for u, w in layer:
                yield TimeEdge(t, u, w)

    def has_time_edge(self, e: TimeEdge) -> bool:
        if not 1 <= e.t <= self.lifetime:
            return False
        layer = self.layers[e.t - 1]
        key = (e.u, e.w)
        # layers are short; bisect would not pay off
        return key in layer


def delta_independent(a: TimeEdge, b: TimeEdge, delta: int) -> bool:
    if abs(a.t - b.t) >= delta:
        return True
    return a.u != b.u and a.u != b.w and a.w != b.u and a.w != b.w


def blocks(edge: TimeEdge, vertex: int, t_prime: int, delta: int) -> bool:
    """True iff ``edge`` Delta-blocks the vertex appearance ``(vertex, t_prime)``."""
    return vertex in (edge.u, edge.w) and abs(edge.t - t_prime) <= delta - 1


def first_violation(
    g: TemporalGraph, m: Iterable[TimeEdge], delta: int
) -> tuple[TimeEdge, TimeEdge | None] | None:
    """Return the first offending time edge (or pair), or None if ``m`` is valid.

    A missing time edge is reported as ``(edge, None)``.
    """
    edges = sorted(set(m))
    for e in edges:
        if not g.has_time_edge(e):
            return (e, None)
    for i, a in enumerate(edges):
        for b in edges[i + 1 :]:
            if b.t - a.t >= delta:
                break
            if not delta_independent(a, b, delta):
                return (a, b)
    return None


def validate_matching(g: TemporalGraph, m: Iterable[TimeEdge], delta: int) -> bool:
    return first_violation(g, m, delta) is None


def window_slice(g: TemporalGraph, a: int, b: int) -> TemporalGraph:
    """Keep only time edges with ``a <= t <= b``; labels are not shifted."""
    if not 1 <= a <= b <= g.lifetime:
        raise ValueError(f"window [{a}, {b}] outside lifetime [1, {g.lifetime}]")
    layers = tuple(
        layer if a <= t <= b else () for t, layer in enumerate(g.layers, start=1)
    )
    return TemporalGraph(g.vertex_count, layers)


def window_time_edges(g: TemporalGraph, a: int, b: int) -> list[TimeEdge]:
    """Time edges in ``[a, b]`` without building a new graph."""
    a = max(a, 1)
    b = min(b, g.lifetime)
    return [TimeEdge(t, u, w) for t in range(a, b + 1) for u, w in g.layers[t - 1]]


def pad_lifetime(g: TemporalGraph, delta: int) -> TemporalGraph:
    """Append empty layers up to the smallest multiple of delta >= max(tau, delta)."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    target = max(g.lifetime, delta)
    target = -(-target // delta) * delta
    if target == g.lifetime:
        return g
    return TemporalGraph(g.vertex_count, g.layers + ((),) * (target - g.lifetime))


def nonempty_window_runs(g: TemporalGraph, delta: int) -> list[tuple[int, int]]:
    """Maximal runs ``(first, last)`` of consecutive non-empty aligned windows."""
    if g.lifetime % delta:
        raise ValueError("lifetime must be a multiple of delta; pad first")
    runs: list[tuple[int, int]] = []
    start = None
    windows = g.lifetime // delta
    for d in range(1, windows + 1):
        empty = not any(g.layers[t] for t in range(delta * (d - 1), delta * d))
        if empty:
            if start is not None:
                runs.append((start, d - 1))
                start = None
        elif start is None:
            start = d
    if start is not None:
        runs.append((start, windows))
    return runs


def split_at_empty_windows(g: TemporalGraph, delta: int) -> list[TemporalGraph]:
    """Cut the timeline at every empty aligned window.

    Each part is re-based to start at time 1.  Edges on opposite sides of an
    empty aligned window are at least delta apart, so optima add up.
    """
    parts = []
    for first, last in nonempty_window_runs(g, delta):
        parts.append(
            TemporalGraph(g.vertex_count, g.layers[delta * (first - 1) : delta * last])
        )
    return parts


def underlying_graph(g: TemporalGraph) -> StaticGraph:
    edges = sorted(set(itertools.chain.from_iterable(g.layers)))
    return StaticGraph(g.vertex_count, tuple(edges))


# -- text formats ------------------------------------------------------------


def parse_instance(text: str) -> TemporalGraph:
    """Parse the line format ``tg <n> <tau>`` followed by ``<t> <u> <w>`` lines."""
    header = None
    edges: list[TimeEdge] = []
    seen: set[TimeEdge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 3 or fields[0] != "tg":
                raise ParseError(lineno, "expected header 'tg <n> <tau>'")
            try:
                n, tau = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(lineno, "header values must be integers") from None
            if n < 0 or tau < 1:
                raise ParseError(lineno, "need n >= 0 and tau >= 1")
            header = (n, tau)
            continue
        if len(fields) != 3:
            raise ParseError(lineno, "expected '<t> <u> <w>'")
        try:
            t, u, w = (int(x) for x in fields)
        except ValueError:
            raise ParseError(lineno, "time edge fields must be integers") from None
        n, tau = header
        if not 1 <= t <= tau:
            raise ParseError(lineno, f"time {t} outside [1, {tau}]")
        if not 0 <= u < w < n:
            raise ParseError(lineno, f"need 0 <= u < w < {n}, got {u} {w}")
        e = TimeEdge(t, u, w)
        if e in seen:
            raise ParseError(lineno, f"duplicate time edge {t} {u} {w}")
        seen.add(e)
        edges.append(e)
    if header is None:
        raise ParseError(0, "missing 'tg' header")
    return TemporalGraph.from_time_edges(header[0], header[1], edges)


def format_instance(g: TemporalGraph) -> str:
    lines = [f"tg {g.vertex_count} {g.lifetime}"]
    lines += [f"{e.t} {e.u} {e.w}" for e in g.time_edges()]
    return "\n".join(lines) + "\n"


def format_matching(m: Sequence[TimeEdge]) -> str:
    edges = sorted(m)
    lines = [f"size {len(edges)}"] + [f"{e.t} {e.u} {e.w}" for e in edges]
    return "\n".join(lines) + "\n"


def parse_matching(text: str) -> Matching:
    """Inverse of :func:`format_matching`; the ``size`` line is optional but checked."""
    declared = None
    edges: list[TimeEdge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "size":
            if declared is not None or edges or len(fields) != 2:
                raise ParseError(lineno, "misplaced 'size' line")
            try:
                declared = int(fields[1])
            except ValueError:
                raise ParseError(lineno, "size must be an integer") from None
            continue
        if len(fields) != 3:
            raise ParseError(lineno, "expected '<t> <u> <w>'")
        try:
            t, u, w = (int(x) for x in fields)
        except ValueError:
            raise ParseError(lineno, "time edge fields must be integers") from None
        try:
            edges.append(TimeEdge.of(u, w, t))
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    if declared is not None and declared != len(edges):
        raise ParseError(0, f"size line says {declared}, found {len(edges)} edges")
    return tuple(sorted(edges))
