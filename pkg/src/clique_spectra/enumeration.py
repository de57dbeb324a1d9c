"""Exhaustive generation of small clique trees and the distance-energy argmax.

Clique trees are grown by gluing one block at a time onto an existing vertex.
Every clique tree arises this way (repeatedly strip a leaf block), so trying
every ordering of the block sizes and every attachment vertex covers the
class. The raw stream repeats isomorphic graphs; :func:`unique_clique_trees`
keeps one representative per isomorphism class at every level.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import networkx as nx
import numpy as np

from ._parallel import pmap
from .graph import BlockSpec, CliqueTree, balanced_clique_path, build_clique_tree, distance_matrix
from .report import VerificationReport
from .spectra import distance_energy, eig_symmetric, inertia

SEARCH_GUARD = 10**7
TIE_ATOL = 1e-9
ENERGY_RTOL = 1e-8


class SearchSpaceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumSpec:
    mode: str
    sizes: tuple[int, ...] = ()
    n: int = 0
    k: int = 0

    def __post_init__(self):
        if self.mode == "by-multiset":
            if not self.sizes or any(s < 2 for s in self.sizes):
                raise ValueError(f"block sizes must all be >= 2, got {list(self.sizes)}")
        elif self.mode == "by-nk":
            if self.n < 2 or not 1 <= self.k <= self.n - 1:
                raise ValueError(f"no clique tree with n={self.n}, k={self.k}")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def by_multiset(cls, sizes: Sequence[int]) -> "EnumSpec":
        return cls("by-multiset", sizes=tuple(sizes))

    @classmethod
    def by_nk(cls, n: int, k: int) -> "EnumSpec":
        return cls("by-nk", n=n, k=k)

    def multisets(self) -> list[tuple[int, ...]]:
        if self.mode == "by-multiset":
            return [tuple(sorted(self.sizes, reverse=True))]
        return list(_partitions(self.n + self.k - 1, self.k, self.n))


def _partitions(total: int, parts: int, largest: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing tuples of ``parts`` integers >= 2 summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(largest, total - 2 * (parts - 1)), 1, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first, *rest)


def _distinct_orderings(sizes: Sequence[int]) -> Iterator[tuple[int, ...]]:
    counts = Counter(sizes)
    keys = sorted(counts)
    out: list[int] = []

    def rec():
        if len(out) == len(sizes):
            yield tuple(out)
            return
        for s in keys:
            if counts[s]:
                counts[s] -= 1
                out.append(s)
                yield from rec()
                out.pop()
                counts[s] += 1

    yield from rec()


def raw_count(spec: EnumSpec) -> int:
    """Length of the raw stream, computed without generating it."""
    total = 0
    for ms in spec.multisets():
        for order in _distinct_orderings(ms):
            n, ways = order[0], 1
            for s in order[1:]:
                ways *= n
                n += s - 1
            total += ways
    return total


def _attach(tree: CliqueTree, size: int, vertex: int) -> CliqueTree:
    owner = next(i for i, b in enumerate(tree.blocks) if vertex in b)
    return build_clique_tree([*tree.specs, BlockSpec(size, owner, vertex)])


def enumerate_clique_trees(spec: EnumSpec, guard: int = SEARCH_GUARD) -> Iterator[CliqueTree]:
    """Deterministic raw stream covering every clique tree of the class."""
    count = raw_count(spec)
    if count > guard:
        raise SearchSpaceError(f"{count} candidates exceed the search guard of {guard}")

    def grow(tree: CliqueTree, rest: tuple[int, ...]) -> Iterator[CliqueTree]:
        if not rest:
            yield tree
            return
        for v in range(tree.n):
            yield from grow(_attach(tree, rest[0], v), rest[1:])

    for ms in spec.multisets():
        for order in _distinct_orderings(ms):
            yield from grow(build_clique_tree([BlockSpec(order[0])]), order[1:])


def certificate(d: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Sorted multiset of sorted distance rows; an isomorphism invariant."""
    return tuple(sorted(tuple(sorted(row)) for row in np.asarray(d).tolist()))


def certificate_str(cert) -> str:
    return ";".join(",".join(map(str, row)) for row in cert)


def _nx(tree: CliqueTree) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(tree.n))
    g.add_edges_from(tree.edges())
    return g


def canonical_form(tree: CliqueTree) -> str:
    """Exact isomorphism key for clique trees.

    A clique tree is determined by its block-cut tree with each block node
    labelled by its size, so the key is the AHU encoding of that tree rooted
    at its center (the smaller encoding when there are two centers).
    """
    if len(tree.blocks) == 1:
        return f"B{tree.n}()"
    owners: dict[int, list[int]] = {}
    for i, block in enumerate(tree.blocks):
        for v in block:
            owners.setdefault(v, []).append(i)
    adj: dict[tuple[str, int], list[tuple[str, int]]] = {
        ("b", i): [] for i in range(len(tree.blocks))
    }
    for v, bs in owners.items():
        if len(bs) > 1:
            adj[("c", v)] = [("b", i) for i in bs]
            for i in bs:
                adj[("b", i)].append(("c", v))
    # strip leaves to find the center(s)
    degree = {node: len(nb) for node, nb in adj.items()}
    layer = [node for node, d in degree.items() if d <= 1]
    remaining = len(adj)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for nb in adj[leaf]:
                degree[nb] -= 1
                if degree[nb] == 1:
                    nxt.append(nb)
        layer = nxt
    centers = layer

    def encode(node, parent) -> str:
        label = f"B{len(tree.blocks[node[1]])}" if node[0] == "b" else "C"
        kids = sorted(encode(c, node) for c in adj[node] if c != parent)
        return label + "(" + "".join(kids) + ")"

    return min(encode(c, None) for c in centers)


def isomorphic(a: CliqueTree, b: CliqueTree) -> bool:
    """Exact isomorphism test (VF2 on the underlying graphs)."""
    if a.n != b.n or sorted(a.block_sizes) != sorted(b.block_sizes):
        return False
    if certificate(distance_matrix(a)) != certificate(distance_matrix(b)):
        return False
    return nx.is_isomorphic(_nx(a), _nx(b))


@dataclass
class EnumStats:
    generated: int = 0


def unique_clique_trees(spec: EnumSpec, guard: int = SEARCH_GUARD,
                        stats: Optional[EnumStats] = None) -> list[CliqueTree]:
    """One clique tree per isomorphism class, deterministic order.

    Grows level by level from isomorphism-reduced parents; sound because
    isomorphic parents have isomorphic sets of one-block extensions.
    """
    stats = stats if stats is not None else EnumStats()
    out: list[CliqueTree] = []
    for ms in spec.multisets():
        # state: remaining multiset -> representatives grown so far
        level: dict[tuple[int, ...], dict[str, CliqueTree]] = {}
        for s in sorted(set(ms)):
            rest = list(ms)
            rest.remove(s)
            tree = build_clique_tree([BlockSpec(s)])
            level.setdefault(tuple(rest), {})[canonical_form(tree)] = tree
            stats.generated += 1
        for _ in range(len(ms) - 1):
            nxt: dict[tuple[int, ...], dict[str, CliqueTree]] = {}
            for rest, reps in level.items():
                for s in sorted(set(rest)):
                    remaining = list(rest)
                    remaining.remove(s)
                    bucket = nxt.setdefault(tuple(remaining), {})
                    for tree in reps.values():
                        for v in range(tree.n):
                            stats.generated += 1
                            if stats.generated > guard:
                                raise SearchSpaceError(
                                    f"more than {guard} candidates generated")
                            child = _attach(tree, s, v)
                            bucket.setdefault(canonical_form(child), child)
            level = nxt
        out.extend(level[()].values())
    return out


@dataclass(frozen=True)
class Evaluation:
    tree: CliqueTree
    energy: float
    radius: float
    inertia: tuple[int, int, int]
    certificate: str

    @property
    def energy_identity_ok(self) -> bool:
        return abs(self.energy - 2 * self.radius) <= ENERGY_RTOL * abs(self.energy)

    @property
    def inertia_ok(self) -> bool:
        return self.inertia == (1, 0, self.tree.n - 1)


def evaluate(tree: CliqueTree) -> Evaluation:
    d = distance_matrix(tree)
    s = eig_symmetric(d)
    return Evaluation(tree, distance_energy(s), s.radius, tuple(inertia(s)),
                      certificate_str(certificate(d)))


@dataclass
class ExtremalResult:
    winner: CliqueTree
    winner_energy: float
    winner_radius: float
    runner_up_energy: Optional[float]
    total_generated: int
    distinct_certificates: int
    reading: str
    ties: list[CliqueTree] = field(default_factory=list)
    matches_balanced: Optional[bool] = None
    inertia_failures: list[CliqueTree] = field(default_factory=list)
    energy_failures: list[CliqueTree] = field(default_factory=list)
    certificate_energies: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "reading": self.reading,
            "winner": self.winner.to_dict(),
            "winner_sizes": list(_arrangement(self.winner)),
            "winner_energy": self.winner_energy,
            "winner_radius": self.winner_radius,
            "runner_up_energy": self.runner_up_energy,
            "total_generated": self.total_generated,
            "distinct_certificates": self.distinct_certificates,
            "ties": len(self.ties),
            "matches_balanced": self.matches_balanced,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def certificates_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["certificate", "energy"])
        for cert, e in sorted(self.certificate_energies.items(), key=lambda kv: -kv[1]):
            writer.writerow([cert, repr(e)])
        return buf.getvalue()


def _arrangement(tree: CliqueTree) -> tuple[int, ...]:
    """Block sizes in path order when the tree is a clique path, else as built."""
    if tree.is_clique_path():
        sizes = [len(tree.blocks[i]) for i in tree.path_block_order()]
        return tuple(min(sizes, sizes[::-1]))
    return tree.block_sizes


def argmax_energy(spec: EnumSpec, guard: int = SEARCH_GUARD) -> ExtremalResult:
    """Brute-force distance-energy maximizer over the class described by ``spec``.

    In by-nk mode the result records whether some maximal candidate is
    isomorphic to the balanced clique path on ``n`` vertices and ``k`` blocks.
    """
    stats = EnumStats()
    trees = unique_clique_trees(spec, guard=guard, stats=stats)
    evals = pmap(evaluate, trees)
    best = max(e.energy for e in evals)
    top = [e for e in evals if e.energy >= best - TIE_ATOL]
    rest = [e.energy for e in evals if e.energy < best - TIE_ATOL]
    winner = top[0]
    matches = None
    if spec.mode == "by-nk":
        target = balanced_clique_path(spec.n, spec.k)
        hit = next((e for e in top if isomorphic(e.tree, target)), None)
        matches = hit is not None
        winner = hit or winner
    return ExtremalResult(
        winner=winner.tree,
        winner_energy=winner.energy,
        winner_radius=winner.radius,
        runner_up_energy=max(rest) if rest else None,
        total_generated=stats.generated,
        distinct_certificates=len({e.certificate for e in evals}),
        reading=spec.mode,
        ties=[e.tree for e in top],
        matches_balanced=matches,
        inertia_failures=[e.tree for e in evals if not e.inertia_ok],
        energy_failures=[e.tree for e in evals if not e.energy_identity_ok],
        certificate_energies={e.certificate: e.energy for e in evals},
    )


def check_max_radius_is_clique_path(sizes: Sequence[int],
                                    guard: int = SEARCH_GUARD) -> VerificationReport:
    """Among clique trees with a fixed block multiset, the radius maximizer is a
    clique path, with the blocks larger than K2 at its ends when at most two
    such blocks exist."""
    spec = EnumSpec.by_multiset(sizes)
    trees = unique_clique_trees(spec, guard=guard)
    evals = pmap(evaluate, trees)
    best = max(e.radius for e in evals)
    top = [e for e in evals if e.radius >= best - TIE_ATOL]
    params = {"sizes": sorted(sizes, reverse=True)}

    def shape_ok(tree: CliqueTree) -> bool:
        if not tree.is_clique_path():
            return False
        if sum(1 for s in sizes if s > 2) > 2:
            return True
        order = [len(tree.blocks[i]) for i in tree.path_block_order()]
        return all(s == 2 for s in order[1:-1])

    good = next((e for e in top if shape_ok(e.tree)), None)
    shown = good or top[0]
    return VerificationReport(
        "max_radius_clique_path", params, shown.radius, best, "eq", TIE_ATOL,
        0.0 if good else float("-inf"), good is not None,
        details={"arrangement": list(_arrangement(shown.tree)),
                 "candidates": len(evals), "ties": len(top)},
    )


def expected_tree_determinant(n: int) -> int:
    """(-1)^(n-1) (n-1) 2^(n-2): determinant of the distance matrix of any tree."""
    if n < 2:
        raise ValueError("need n >= 2")
    return (-1) ** (n - 1) * (n - 1) * 2 ** (n - 2)


__all__ = [
    "EnumSpec", "ExtremalResult", "SearchSpaceError", "argmax_energy", "certificate",
    "check_max_radius_is_clique_path", "enumerate_clique_trees", "evaluate",
    "expected_tree_determinant", "isomorphic", "raw_count", "unique_clique_trees",
]
