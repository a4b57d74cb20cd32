"""Window dynamic program and the end-to-end solver.

``T_1[M] = |M|`` and, for later windows,
``T_i[M] = max({|M| + T_{i-1}[M'] : M' compatible with M} | {0})``.
The optimum is the largest entry of the last window; following the stored
predecessors yields a witness of exactly that size.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .cover import DEFAULT_BUDGET, sliding_nu, window_nu
from .temporal import (
    Matching,
    TemporalGraph,
    TimeEdge,
    delta_independent,
    nonempty_window_runs,
    pad_lifetime,
    validate_matching,
)
from .representative import RepGuardError
from .windows import DCompleteFamily, d_complete_family


def compatible(m_prev: Sequence[TimeEdge], m_cur: Sequence[TimeEdge], delta: int) -> bool:
    """True iff the union of two matchings from adjacent windows is a Delta-matching."""
    for a in m_prev:
        for b in m_cur:
            if abs(a.t - b.t) < delta and not delta_independent(a, b, delta):
                return False
    return True


@dataclass
class DPTable:
    values: list[np.ndarray]
    back: list[np.ndarray]   # -1 where there is no predecessor

    @property
    def optimum(self) -> int:
        if not self.values or len(self.values[-1]) == 0:
            return 0
        return int(self.values[-1].max())


def _conflicts(prev: Sequence[Matching], cur: Sequence[Matching], n: int, delta: int) -> np.ndarray:
    """Boolean matrix ``[i, j]``: member ``prev[i]`` clashes with ``cur[j]``.

    Inside one window a vertex is used at most once, so it suffices to compare
    the time each vertex is used on either side.
    """
    late = np.full((len(prev), n), -(10**9), dtype=np.int64)
    for i, m in enumerate(prev):
        for e in m:
            late[i, e.u] = late[i, e.w] = e.t
    early = np.full((len(cur), n), 10**9, dtype=np.int64)
    for j, m in enumerate(cur):
        for e in m:
            early[j, e.u] = early[j, e.w] = e.t
    return ((early[None, :, :] - late[:, None, :]) < delta).any(axis=2)


def run_dp(families: Sequence[DCompleteFamily], vertex_count: int, delta: int) -> DPTable:
    values: list[np.ndarray] = []
    back: list[np.ndarray] = []
    for i, fam in enumerate(families):
        sizes = np.array([len(m) for m in fam.matchings], dtype=np.int64)
        if i == 0:
            values.append(sizes)
            back.append(np.full(len(sizes), -1, dtype=np.int64))
            continue
        prev_fam, prev_vals = families[i - 1], values[-1]
        clash = _conflicts(prev_fam.matchings, fam.matchings, vertex_count, delta)
        # masked predecessors get -1, below every real table value
        cand = np.where(clash, -1, prev_vals[:, None])
        if cand.shape[0] == 0:
            values.append(np.zeros(len(sizes), dtype=np.int64))
            back.append(np.full(len(sizes), -1, dtype=np.int64))
            continue
        best = cand.argmax(axis=0)          # first maximum = lowest member index
        best_val = cand[best, np.arange(len(sizes))]
        ok = best_val >= 0
        values.append(np.where(ok, sizes + best_val, 0))
        back.append(np.where(ok, best, -1))
    return DPTable(values, back)


def reconstruct(table: DPTable, families: Sequence[DCompleteFamily]) -> Matching:
    if not families or table.optimum == 0:
        return ()
    idx = int(table.values[-1].argmax())
    chosen: list[TimeEdge] = []
    for i in range(len(families) - 1, -1, -1):
        chosen.extend(families[i].matchings[idx])
        idx = int(table.back[i][idx])
        if idx < 0:
            break
    return tuple(sorted(chosen))


@dataclass
class SolveReport:
    size: int
    matching: Matching
    delta: int
    effective_delta: int
    nu_hat: int
    windows: list[dict] = field(default_factory=list)
    ms: dict = field(default_factory=dict)
    k: int | None = None

    @property
    def decision(self) -> bool | None:
        return None if self.k is None else self.size >= self.k

    def to_json(self) -> dict:
        out = {
            "size": self.size,
            "matching": [[e.t, e.u, e.w] for e in self.matching],
            "nu_hat": self.nu_hat,
            "delta": self.delta,
            "windows": self.windows,
            "ms": self.ms,
        }
        if self.k is not None:
            out["k"] = self.k
            out["answer"] = "yes" if self.decision else "no"
        return out


def solve(
    g: TemporalGraph,
    delta: int,
    k: int | None = None,
    *,
    strict_nu: bool = False,
    budget: int = DEFAULT_BUDGET,
    mode: str = "auto",
    window_log: Callable[[dict], None] | None = None,
) -> SolveReport:
    """Maximum Delta-temporal matching of ``g`` with a witness.

    The timeline is padded to whole windows and cut at empty windows; each
    part gets its own parameter, window families and dynamic program.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    clock = time.perf_counter
    t0 = clock()
    # no two time edges are delta apart once delta >= tau
    eff = min(delta, g.lifetime)
    padded = pad_lifetime(g, eff)
    runs = nonempty_window_runs(padded, eff)
    ms = {"cover": 0.0, "families": 0.0, "dp": 0.0}
    report = SolveReport(0, (), delta, eff, 0, k=k)
    witness: list[TimeEdge] = []
    for first, last in runs:
        offset = eff * (first - 1)
        part = TemporalGraph(g.vertex_count, padded.layers[offset : eff * last])
        t1 = clock()
        nu = sliding_nu(part, eff, budget) if strict_nu else window_nu(part, eff, budget).nu_hat
        t2 = clock()
        families = []
        for d in range(1, last - first + 2):
            try:
                fam = d_complete_family(part, eff, d, nu, mode=mode)
            except RepGuardError as exc:
                exc.window = first + d - 1
                raise
            families.append(fam)
            record = {
                "d": first + d - 1,
                "nu_hat": nu,
                "edges": fam.stats.get("gadgets", 0),
                "r": fam.params.rank,
                "kept": fam.stats.get("kept", 0),
                "family": len(fam),
                "bound": fam.params.size_bound,
                "max_weight": max(fam.weights, default=0),
            }
            report.windows.append(record)
            if window_log is not None:
                window_log(record)
        t3 = clock()
        table = run_dp(families, g.vertex_count, eff)
        part_witness = reconstruct(table, families)
        t4 = clock()
        if len(part_witness) != table.optimum:
            raise AssertionError("witness size disagrees with the table optimum")
        report.size += table.optimum
        report.nu_hat = max(report.nu_hat, nu)
        witness.extend(e.shifted(offset) for e in part_witness)
        ms["cover"] += (t2 - t1) * 1e3
        ms["families"] += (t3 - t2) * 1e3
        ms["dp"] += (t4 - t3) * 1e3
    report.matching = tuple(sorted(witness))
    ms["total"] = (clock() - t0) * 1e3
    report.ms = {key: round(v, 3) for key, v in ms.items()}
    if not validate_matching(g, report.matching, delta):
        raise AssertionError("solver produced an invalid witness")
    return report
