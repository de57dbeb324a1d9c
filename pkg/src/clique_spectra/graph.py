"""Clique trees: construction from block specifications and distance matrices.

Vertices are numbered densely in creation order. A block of size ``s`` glued
at vertex ``v`` contributes ``v`` followed by ``s - 1`` fresh vertices.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np


class CliqueTreeError(ValueError):
    """Raised for block specifications that do not describe a clique tree."""


@dataclass(frozen=True)
class BlockSpec:
    size: int
    attach_block: Optional[int] = None
    attach_vertex: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"size": self.size}
        if self.attach_block is not None:
            out["attach_block"] = self.attach_block
        if self.attach_vertex is not None:
            out["attach_vertex"] = self.attach_vertex
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "BlockSpec":
        if not isinstance(d, dict):
            raise CliqueTreeError(f"block entry must be an object, got {d!r}")
        unknown = set(d) - {"size", "attach_block", "attach_vertex"}
        if unknown:
            raise CliqueTreeError(f"unknown block field(s): {sorted(unknown)}")
        if "size" not in d:
            raise CliqueTreeError("block entry missing field 'size'")
        for key in ("size", "attach_block", "attach_vertex"):
            val = d.get(key)
            if val is not None and (isinstance(val, bool) or not isinstance(val, int)):
                raise CliqueTreeError(f"field '{key}' must be an integer, got {val!r}")
        return cls(d["size"], d.get("attach_block"), d.get("attach_vertex"))


@dataclass(frozen=True)
class CliqueTree:
    """A connected graph whose blocks are cliques, built by gluing blocks.

    Instances come from :func:`build_clique_tree` (or the helpers on top of
    it), which guarantees the invariants; do not construct directly.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    specs: tuple[BlockSpec, ...] = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for block in self.blocks:
            for u, v in combinations(block, 2):
                nbrs[u].add(v)
                nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for block in self.blocks:
            idx = np.array(block)
            a[np.ix_(idx, idx)] = True
        np.fill_diagonal(a, False)
        a.flags.writeable = False
        return a

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.neighbors[u] if u < v)

    def is_clique_path(self) -> bool:
        """True when the blocks can be ordered so consecutive ones share one
        cut vertex and no vertex lies in more than two blocks."""
        k = len(self.blocks)
        if k == 1:
            return True
        membership = [0] * self.n
        for block in self.blocks:
            for v in block:
                membership[v] += 1
        if max(membership) > 2:
            return False
        # block intersection graph must be a path: k-1 links, max degree 2
        degree = [sum(1 for v in b if membership[v] == 2) for b in self.blocks]
        return max(degree) <= 2 and sum(degree) == 2 * (k - 1)

    def path_block_order(self) -> list[int]:
        """Block indices from one end of a clique path to the other."""
        if not self.is_clique_path():
            raise CliqueTreeError("graph is not a clique path")
        if len(self.blocks) == 1:
            return [0]
        owners: dict[int, list[int]] = {}
        for i, block in enumerate(self.blocks):
            for v in block:
                owners.setdefault(v, []).append(i)
        links: dict[int, list[int]] = {i: [] for i in range(len(self.blocks))}
        for pair in owners.values():
            if len(pair) == 2:
                links[pair[0]].append(pair[1])
                links[pair[1]].append(pair[0])
        start = min(i for i, nb in links.items() if len(nb) == 1)
        order, prev = [start], None
        while len(order) < len(self.blocks):
            nxt = next(j for j in links[order[-1]] if j != prev)
            prev = order[-1]
            order.append(nxt)
        return order

    def to_dict(self) -> dict:
        return {
            "blocks": [s.to_dict() for s in self.specs],
            "n": self.n,
            "edges": [list(e) for e in self.edges()],
        }


def build_clique_tree(specs: Sequence[BlockSpec | dict]) -> CliqueTree:
    specs = tuple(s if isinstance(s, BlockSpec) else BlockSpec.from_dict(s) for s in specs)
    if not specs:
        raise CliqueTreeError("at least one block is required")
    blocks: list[tuple[int, ...]] = []
    n = 0
    for i, spec in enumerate(specs):
        if spec.size < 2:
            raise CliqueTreeError(f"block {i}: size must be >= 2, got {spec.size}")
        if i == 0:
            if spec.attach_block is not None or spec.attach_vertex is not None:
                raise CliqueTreeError("block 0: first block cannot have an attachment")
            blocks.append(tuple(range(spec.size)))
            n = spec.size
            continue
        v = spec.attach_vertex
        if v is None:
            raise CliqueTreeError(f"block {i}: missing attach_vertex")
        if not 0 <= v < n:
            raise CliqueTreeError(f"block {i}: attach_vertex {v} does not exist (n={n})")
        if spec.attach_block is not None:
            if not 0 <= spec.attach_block < i:
                raise CliqueTreeError(
                    f"block {i}: attach_block {spec.attach_block} is not a previous block"
                )
            if v not in blocks[spec.attach_block]:
                raise CliqueTreeError(
                    f"block {i}: vertex {v} is not in block {spec.attach_block}"
                )
        blocks.append((v, *range(n, n + spec.size - 1)))
        n += spec.size - 1
    tree = CliqueTree(n, tuple(blocks), specs)
    _check_invariants(tree)
    return tree


def _check_invariants(tree: CliqueTree) -> None:
    for (i, a), (j, b) in combinations(enumerate(tree.blocks), 2):
        if len(set(a) & set(b)) > 1:
            raise CliqueTreeError(f"blocks {i} and {j} share an edge")
    expected = sum(tree.block_sizes) - (len(tree.blocks) - 1)
    if tree.n != expected:
        raise CliqueTreeError(f"vertex count {tree.n} != {expected}")


def clique_path(sizes: Iterable[int]) -> CliqueTree:
    """P_{n1,...,nk}: blocks glued in a chain; the cut vertex between block
    ``i`` and ``i + 1`` is the last vertex created by block ``i``."""
    sizes = list(sizes)
    if not sizes:
        raise CliqueTreeError("clique path needs at least one block")
    for s in sizes:
        if s < 2:
            raise CliqueTreeError(f"block size must be >= 2, got {s}")
    specs = [BlockSpec(sizes[0])]
    last = sizes[0] - 1
    for i, s in enumerate(sizes[1:], start=1):
        specs.append(BlockSpec(s, i - 1, last))
        last += s - 1
    return build_clique_tree(specs)


def balanced_sizes(n: int, k: int) -> list[int]:
    if k < 1 or n < 2 or k > n - 1:
        raise CliqueTreeError(f"no clique tree with n={n} vertices and k={k} blocks")
    if k == 1:
        return [n]
    m = n - k + 3
    return [m // 2] + [2] * (k - 2) + [(m + 1) // 2]


def balanced_clique_path(n: int, k: int) -> CliqueTree:
    """The clique path with all middle blocks K2 and end blocks split as
    evenly as possible; the distance-energy maximizer for given n and k."""
    return clique_path(balanced_sizes(n, k))


def distance_matrix(g: CliqueTree) -> np.ndarray:
    """All-pairs distances by breadth-first search from every vertex."""
    n = g.n
    d = np.full((n, n), -1, dtype=np.int64)
    for src in range(n):
        row = d[src]
        row[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in g.neighbors[u]:
                if row[v] < 0:
                    row[v] = row[u] + 1
                    queue.append(v)
    if (d < 0).any():
        raise CliqueTreeError("graph is disconnected")
    d.flags.writeable = False
    return d


def block_path_distances(g: CliqueTree) -> np.ndarray:
    """Distances as the number of blocks on the block path between vertices.

    Walks the block-cut tree (vertices and blocks as nodes); the walk between
    two vertices alternates vertex/block, so distance is half its length.
    """
    n, k = g.n, len(g.blocks)
    member_of: list[list[int]] = [[] for _ in range(n)]
    for b, block in enumerate(g.blocks):
        for v in block:
            member_of[v].append(b)
    d = np.zeros((n, n), dtype=np.int64)
    for src in range(n):
        blocks_seen = [-1] * k
        vert_seen = [-1] * n
        vert_seen[src] = 0
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for b in member_of[v]:
                    if blocks_seen[b] < 0:
                        blocks_seen[b] = vert_seen[v] + 1
                        for w in g.blocks[b]:
                            if vert_seen[w] < 0:
                                vert_seen[w] = blocks_seen[b]
                                nxt.append(w)
            frontier = nxt
        d[src] = vert_seen
    return d


def load_graph(path: str) -> CliqueTree:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CliqueTreeError(f"{path}: invalid JSON ({exc})") from exc
    return graph_from_dict(data)


def graph_from_dict(data: dict) -> CliqueTree:
    if not isinstance(data, dict) or "blocks" not in data:
        raise CliqueTreeError("graph JSON must be an object with a 'blocks' array")
    if not isinstance(data["blocks"], list):
        raise CliqueTreeError("'blocks' must be an array")
    tree = build_clique_tree(data["blocks"])
    if "n" in data and data["n"] != tree.n:
        raise CliqueTreeError(f"field 'n' is {data['n']} but blocks give n={tree.n}")
    return tree
