"""Max q-representative families of weighted p-families over uniform matroids.

The uniform matroid of rank ``k = p + q`` on ``n`` elements is represented by
a ``k x n`` Vandermonde matrix ``A`` over a prime field (element ``e`` gets
node ``e + 1``; any ``k`` columns are independent).  A p-set ``X`` is mapped
to the wedge product of its columns, a vector in the ``C(k, p)``-dimensional
exterior power.  Sets are scanned by non-increasing weight (stable on input
order) and a set is kept iff its wedge vector is independent of the wedge
vectors kept so far.  Because ``wedge(X) ^ wedge(Y) != 0`` exactly when
``X`` and ``Y`` are disjoint, the kept sets form a max q-representative of
size at most ``C(k, p)``.

Wedge vectors are never materialised; they are probed through linear forms.
A decomposable form ``w_1 ^ ... ^ w_p`` evaluates to ``det(W @ A[:, X])``.

* ``exact`` mode uses the ``C(k, p)`` coordinate forms (row subsets of
  ``A``), which recover the wedge vector completely.
* ``projected`` mode uses seeded random forms over a 26-bit prime, always
  at least ``SLACK`` more of them than the current basis size.  A set kept
  in this mode is certainly independent, so the size bound holds
  unconditionally.  A set is dropped wrongly only if the random forms
  happen to annihilate a non-zero vector of a small subspace, which has
  probability roughly ``(p / modulus) ** (SLACK + 1)`` per decision.

``auto`` picks exact mode when ``C(k, p) <= EXACT_DIM_LIMIT`` and the form
tensor fits in ``EXACT_CELL_LIMIT`` entries.
"""

from __future__ import annotations

import itertools
from functools import partial
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .field import EchelonBasis, PrimeField, next_prime, prev_prime

EXACT_DIM_LIMIT = 4096
PROJECTED_MODULUS = prev_prime(1 << 26)
SLACK = 4
FORM_SEED = 20200906
MAX_RANK = 128
MAX_CANDIDATES = 200_000
VERIFY_LIMIT = 10**6
INITIAL_FORMS = 256
EXACT_CELL_LIMIT = 1 << 25      # entries of the exact form tensor (256 MiB)


class RepGuardError(RuntimeError):
    """A parameter guard of the representative computation was exceeded."""

    def __init__(self, guard: str, value: int, limit: int):
        super().__init__(guard, value, limit)
        self.guard = guard
        self.value = value
        self.limit = limit
        self.window: int | None = None

    def __str__(self) -> str:
        where = f" in window {self.window}" if self.window is not None else ""
        return f"guard '{self.guard}' exceeded{where}: {self.value} > {self.limit}"


class VerifyTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class WeightedSetFamily:
    sets: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        if len(self.sets) != len(self.weights):
            raise ValueError("one weight per set required")
        seen = set()
        for s, w in zip(self.sets, self.weights):
            if len(s) != self.p:
                raise ValueError(f"set {s} does not have size {self.p}")
            if any(a >= b for a, b in zip(s, s[1:])):
                raise ValueError(f"set {s} must be strictly increasing")
            if s in seen:
                raise ValueError(f"duplicate set {s}")
            if w < 0:
                raise ValueError("weights must be non-negative")
            seen.add(s)

    @classmethod
    def build(
        cls, sets: Iterable[Iterable[int]], weights: Iterable[int] | None = None, p: int | None = None
    ) -> "WeightedSetFamily":
        sets = tuple(tuple(sorted(s)) for s in sets)
        weights = tuple(weights) if weights is not None else (1,) * len(sets)
        if p is None:
            p = len(sets[0]) if sets else 0
        return cls(sets, weights, p)

    def __len__(self) -> int:
        return len(self.sets)

    def max_element(self) -> int:
        return max((s[-1] for s in self.sets if s), default=-1)


@dataclass(frozen=True)
class RepResult:
    indices: tuple[int, ...]
    q: int
    mode: str
    dimension: int

    def __len__(self) -> int:
        return len(self.indices)


class _Prober:
    """Evaluates the linear forms on wedge vectors of p-subsets.

    Form ``j`` is ``X -> det(C[j][:, X])`` where ``C[j]`` is a ``p x universe``
    matrix: a row subset of the Vandermonde matrix (exact mode) or a random
    ``p x k`` combination of its rows (projected mode).
    """

    def __init__(self, p: int, q: int, universe: int, mode: str):
        self.p = p
        self.k = p + q
        self.dimension = comb(self.k, p)
        if mode == "auto":
            small = self.dimension <= EXACT_DIM_LIMIT
            mode = "exact" if small and self.dimension * p * universe <= EXACT_CELL_LIMIT else "projected"
        self.mode = mode
        if mode == "exact":
            cells = self.dimension * p * universe
            if cells > EXACT_CELL_LIMIT:
                raise RepGuardError("exact_cells", cells, EXACT_CELL_LIMIT)
            modulus = next_prime(max(universe, self.dimension))
        elif mode == "projected":
            modulus = PROJECTED_MODULUS
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if universe >= modulus:
            raise RepGuardError("universe", universe, modulus - 1)
        self.field = PrimeField(modulus)
        self.A = self.field.vandermonde(self.k, np.arange(1, universe + 1))
        if mode == "exact":
            rows = np.array(list(itertools.combinations(range(self.k), p)), dtype=np.int64)
            self.C = self.A[rows.reshape(self.dimension, p)]
            self.forms = self.dimension
        else:
            self._rng = np.random.default_rng(FORM_SEED)
            self.C = np.zeros((0, p, universe), dtype=np.int64)
            self.forms = 0

    def ensure_forms(self, needed: int) -> bool:
        """Grow the random form set to at least ``needed``; True if it grew."""
        if self.mode == "exact" or needed <= self.forms:
            return False
        target = max(needed, self.forms + self.forms // 2)
        W = self._rng.integers(0, self.field.p, size=(target - self.forms, self.p, self.k))
        self.C = np.concatenate([self.C, self.field.matmul(W.astype(np.int64), self.A)])
        self.forms = target
        return True

    def probe(self, sets: Sequence[tuple[int, ...]], lo: int = 0) -> np.ndarray:
        """Values of forms ``lo..forms-1`` on each set, shape ``(len(sets), forms-lo)``."""
        arr = np.array(sets, dtype=np.int64).reshape(len(sets), self.p)
        return self.field.minors(self.C[lo:], arr)


def _check_guards(p: int, q: int, count: int) -> None:
    if p + q > MAX_RANK:
        raise RepGuardError("rank", p + q, MAX_RANK)
    if count > MAX_CANDIDATES:
        raise RepGuardError("candidates", count, MAX_CANDIDATES)


def _greedy(
    order: Sequence[int],
    dimension: int,
    prober: _Prober,
    values_for,
    trace: list | None = None,
) -> list[int]:
    """Scan ``order`` and keep every candidate independent of those kept so far.

    ``values_for(lo)`` returns the values of forms ``lo..prober.forms-1`` on all
    candidates as a ``(count, forms - lo)`` array.
    """
    # kept never exceeds the candidate count, so small scans need no regrowth
    prober.ensure_forms(min(len(order), dimension, INITIAL_FORMS) + 1 + SLACK)
    values = values_for(0)
    basis = EchelonBasis(prober.field, prober.forms)
    kept: list[int] = []
    for idx in order:
        if prober.ensure_forms(len(kept) + 1 + SLACK):
            values = np.hstack([values, values_for(values.shape[1])])
            basis = EchelonBasis(prober.field, prober.forms)
            for k in kept:
                basis.add(values[k])
        added = len(kept) < dimension and basis.add(values[idx])
        if added:
            kept.append(idx)
        if trace is not None:
            trace.append((idx, added))
    return kept


def representative(
    family: WeightedSetFamily,
    q: int,
    universe: int,
    *,
    mode: str = "auto",
    trace: list | None = None,
) -> RepResult:
    """Max q-representative of ``family`` with elements drawn from ``range(universe)``.

    Returns indices into ``family`` in scan order (heaviest first).  If
    ``trace`` is a list, ``(index, kept)`` decisions are appended to it.
    """
    if q < 0:
        raise ValueError("q must be non-negative")
    p = family.p
    dimension = comb(p + q, p)
    if len(family) == 0:
        return RepResult((), q, "trivial", dimension)
    if family.max_element() >= universe:
        raise ValueError("family uses elements outside the universe")
    _check_guards(p, q, len(family))
    order = sorted(range(len(family)), key=lambda i: -family.weights[i])
    prober = _Prober(p, q, universe, mode)
    kept = _greedy(order, dimension, prober, lambda lo: prober.probe(family.sets, lo), trace)
    return RepResult(tuple(kept), q, prober.mode, dimension)


@dataclass(frozen=True)
class UnionMember:
    elements: tuple[int, ...]
    weight: int
    parts: tuple[int, ...]


@dataclass
class UnionRepResult:
    members: list[UnionMember]
    alpha: int
    beta: int
    gamma: int
    rounds: list[dict] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return (self.alpha + self.beta) * self.gamma

    @property
    def size_bound(self) -> int:
        return comb(self.rank, self.alpha * self.gamma)


def iterated_union_representative(
    h: WeightedSetFamily,
    alpha: int,
    beta: int,
    universe: int,
    *,
    mode: str = "auto",
    interchangeable: Sequence[int] = (),
) -> UnionRepResult:
    """Max (beta*gamma)-representative of all disjoint unions of ``alpha`` sets of ``h``.

    Built round by round: round ``i`` keeps a max ``(r - i*gamma)``-representative
    of the ``i``-fold unions, extending only the survivors of round ``i - 1``.
    Union weights are sums of the part weights.

    ``interchangeable`` lists indices of equal-weight sets whose elements
    nothing outside ``h`` ever touches (padding sets).  A union may then only
    use a prefix of that list, which removes unions differing just in the
    choice of padding.  The guarantee is kept for every ``Y`` disjoint from
    those sets.
    """
    gamma = h.p
    out = UnionRepResult([], alpha, beta, gamma)
    if alpha == 0:
        out.members.append(UnionMember((), 0, ()))
        return out
    r = (alpha + beta) * gamma
    if r < 1:
        raise ValueError("(alpha + beta) * gamma must be >= 1")
    masks = [sum(1 << x for x in s) for s in h.sets]

    slot = {j: pos for pos, j in enumerate(interchangeable)}
    if len(slot) != len(interchangeable) or any(not 0 <= j < len(h) for j in slot):
        raise ValueError("interchangeable must list distinct indices of h")

    def padding_used(m: UnionMember) -> int:
        return sum(1 for j in m.parts if j in slot)

    current = [
        UnionMember(s, w, (i,))
        for i, (s, w) in enumerate(zip(h.sets, h.weights))
        if slot.get(i, 0) == 0
    ]
    current_masks = [masks[m.parts[0]] for m in current]
    for i in range(1, alpha + 1):
        if i > 1:
            # one candidate per element set, carrying its heaviest decomposition
            seen: dict[int, int] = {}
            cands: list[UnionMember] = []
            cand_masks: list[int] = []
            for base, bm in zip(current, current_masks):
                used = padding_used(base)
                for j, hm in enumerate(masks):
                    if bm & hm or slot.get(j, used) != used:
                        continue
                    weight = base.weight + h.weights[j]
                    at = seen.get(bm | hm)
                    if at is not None:
                        if weight > cands[at].weight:
                            cands[at] = UnionMember(cands[at].elements, weight, base.parts + (j,))
                        continue
                    seen[bm | hm] = len(cands)
                    elements = tuple(sorted(base.elements + h.sets[j]))
                    cands.append(UnionMember(elements, weight, base.parts + (j,)))
                    cand_masks.append(bm | hm)
                    if len(cands) > MAX_CANDIDATES:
                        raise RepGuardError("candidates", len(cands), MAX_CANDIDATES)
            current, current_masks = cands, cand_masks
        p, q = i * gamma, r - i * gamma
        if current:
            _check_guards(p, q, len(current))
            order = sorted(range(len(current)), key=lambda c: -current[c].weight)
            prober = _Prober(p, q, universe, mode)
            sets = [m.elements for m in current]
            kept = _greedy(order, comb(p + q, p), prober, partial(prober.probe, sets))
            used_mode = prober.mode
        else:
            kept, used_mode = [], "trivial"
        out.rounds.append(
            {"round": i, "p": p, "q": q, "candidates": len(current),
             "kept": len(kept), "mode": used_mode}
        )
        current = [current[k] for k in kept]
        current_masks = [current_masks[k] for k in kept]
        if not current:
            break
    out.members = current
    return out


def verify_representative(
    full: WeightedSetFamily,
    sub: RepResult | Sequence[int],
    q: int,
    universe: int,
) -> bool:
    """Exhaustively check the max q-representative property.

    Only elements that occur in some set can matter, so punctured sets ``Y``
    are drawn from those; raises :class:`VerifyTooLarge` beyond
    ``VERIFY_LIMIT`` candidate sets.
    """
    indices = sub.indices if isinstance(sub, RepResult) else tuple(sub)
    if any(not 0 <= i < len(full) for i in indices):
        return False
    used = sorted({x for s in full.sets for x in s})
    if any(x >= universe for x in used):
        raise ValueError("family uses elements outside the universe")
    count = sum(comb(len(used), j) for j in range(min(q, len(used)) + 1))
    if count > VERIFY_LIMIT:
        raise VerifyTooLarge(f"{count} punctured sets exceed {VERIFY_LIMIT}")
    masks = [sum(1 << x for x in s) for s in full.sets]
    sub_pairs = [(masks[i], full.weights[i]) for i in indices]
    all_pairs = list(zip(masks, full.weights))
    for size in range(min(q, len(used)) + 1):
        for ys in itertools.combinations(used, size):
            y = sum(1 << x for x in ys)
            best = max((w for m, w in all_pairs if not m & y), default=None)
            if best is None:
                continue
            kept = max((w for m, w in sub_pairs if not m & y), default=None)
            if kept is None or kept < best:
                return False
    return True
