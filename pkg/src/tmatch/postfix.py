"""Delta-postfix trees and their [a, b]-separators.

A tree for Delta leaves is built by splitting the leaf range ceil/floor
recursively, so its depth is ``ceil(log2(Delta))``.  Leaves are numbered
left to right, which is a valid post order.  Node ids are global: a tree
built at ``id_offset`` owns ids ``id_offset .. id_offset + 2*Delta - 2``
(preorder, root first).
"""

from __future__ import annotations

from dataclasses import dataclass


def ceil_log2(x: int) -> int:
    """``ceil(log2(x))`` with ``ceil_log2(1) == 0``."""
    if x < 1:
        raise ValueError("x must be positive")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class PostfixTree:
    owner: int
    delta: int
    id_offset: int
    parent: tuple[int, ...]        # local index -> local parent index, -1 for root
    children: tuple[tuple[int, int] | None, ...]
    depth: tuple[int, ...]
    span: tuple[tuple[int, int], ...]  # local index -> leaf range [lo, hi]
    leaf_local: tuple[int, ...]    # leaf i (1-based) -> local index at position i-1

    @property
    def node_count(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return self.id_offset

    @property
    def height(self) -> int:
        return max(self.depth)

    def leaf(self, i: int) -> int:
        if not 1 <= i <= self.delta:
            raise IndexError(f"leaf index {i} outside [1, {self.delta}]")
        return self.id_offset + self.leaf_local[i - 1]

    def node_ids(self) -> range:
        return range(self.id_offset, self.id_offset + self.node_count)

    def parent_of(self, node: int) -> int | None:
        p = self.parent[node - self.id_offset]
        return None if p < 0 else p + self.id_offset

    def children_of(self, node: int) -> tuple[int, int] | None:
        c = self.children[node - self.id_offset]
        return None if c is None else (c[0] + self.id_offset, c[1] + self.id_offset)

    def depth_of(self, node: int) -> int:
        return self.depth[node - self.id_offset]

    def dump(self) -> str:
        """One line per node: ``id depth parent kind``; parent is ``-`` for the root."""
        lines = []
        leaf_pos = {loc: i + 1 for i, loc in enumerate(self.leaf_local)}
        for loc in range(self.node_count):
            gid = loc + self.id_offset
            par = "-" if self.parent[loc] < 0 else str(self.parent[loc] + self.id_offset)
            if loc == 0:
                kind = "root" if self.children[loc] else f"root,leaf{leaf_pos[loc]}"
            elif self.children[loc] is None:
                kind = f"leaf{leaf_pos[loc]}"
            else:
                kind = "inner"
            lines.append(f"{gid} {self.depth[loc]} {par} {kind}")
        return "\n".join(lines) + "\n"


def build_tree(delta: int, owner: int = 0, id_offset: int = 0) -> PostfixTree:
    if delta < 1:
        raise ValueError("delta must be >= 1")
    parent: list[int] = []
    children: list[tuple[int, int] | None] = []
    depth: list[int] = []
    span: list[tuple[int, int]] = []
    leaf_local = [0] * delta

    # explicit stack keeps preorder ids without recursion limits
    stack = [(1, delta, 0, -1, None)]
    while stack:
        lo, hi, dep, par, slot = stack.pop()
        me = len(parent)
        parent.append(par)
        children.append(None)
        depth.append(dep)
        span.append((lo, hi))
        if slot is not None:
            pair = children[par] or (-1, -1)
            children[par] = (me, pair[1]) if slot == 0 else (pair[0], me)
        if lo == hi:
            leaf_local[lo - 1] = me
            continue
        mid = lo + (hi - lo + 1 + 1) // 2 - 1   # left gets ceil(size / 2)
        stack.append((mid + 1, hi, dep + 1, me, 1))
        stack.append((lo, mid, dep + 1, me, 0))
    return PostfixTree(
        owner=owner,
        delta=delta,
        id_offset=id_offset,
        parent=tuple(parent),
        children=tuple(children),
        depth=tuple(depth),
        span=tuple(span),
        leaf_local=tuple(leaf_local),
    )


def root_leaf_path(tree: PostfixTree, i: int) -> list[int]:
    """Node ids from the root down to leaf ``i`` inclusive."""
    node = tree.leaf(i) - tree.id_offset
    path = []
    while node >= 0:
        path.append(node + tree.id_offset)
        node = tree.parent[node]
    path.reverse()
    return path


@dataclass(frozen=True)
class Separator:
    a: int
    b: int
    nodes: frozenset[int]

    def __len__(self) -> int:
        return len(self.nodes)


def check_interval(delta: int, a: int, b: int) -> None:
    if not 1 <= a <= b <= delta:
        raise ValueError(f"[{a}, {b}] is not a sub-interval of [1, {delta}]")
    if a == 1 and b == delta:
        raise ValueError(f"[{a}, {b}] is not a proper sub-interval")
    if a != 1 and b != delta:
        raise ValueError(f"[{a}, {b}] touches neither end of [1, {delta}]")


def separator(tree: PostfixTree, a: int, b: int) -> Separator:
    """Neighbourhood of the union of root paths to leaves outside ``[a, b]``.

    That union is closed under taking parents, so its neighbourhood is the
    set of children of union nodes that are not in the union themselves:
    the maximal subtrees whose leaves all lie in ``[a, b]``.
    """
    check_interval(tree.delta, a, b)
    found = set()
    stack = [0]
    while stack:
        loc = stack.pop()
        lo, hi = tree.span[loc]
        if a <= lo and hi <= b:
            found.add(loc + tree.id_offset)
            continue
        if hi < a or lo > b:
            continue
        pair = tree.children[loc]
        if pair is not None:
            stack.extend(pair)
    return Separator(a, b, frozenset(found))
