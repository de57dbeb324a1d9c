"""Equitable partitions of distance matrices and their quotient matrices.

For the clique path with end blocks K_{n1+1}, K_{n2+1} and k-2 middle K2
blocks, the cells are: the first end block minus its cut vertex, each cut
vertex on its own, and the last end block minus its cut vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .graph import CliqueTree, clique_path, distance_matrix
from .report import VerificationReport
from .spectra import eig_symmetric, power_iteration

RADIUS_RTOL = 1e-9


@dataclass(frozen=True)
class Partition:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = [v for cell in self.cells for v in cell]
        if any(len(c) == 0 for c in self.cells):
            raise ValueError("partition cells must be nonempty")
        if sorted(seen) != list(range(len(seen))):
            raise ValueError("cells must be disjoint and cover 0..n-1")

    @classmethod
    def of(cls, cells: Sequence[Sequence[int]]) -> "Partition":
        return cls(tuple(tuple(int(v) for v in c) for c in cells))

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.cells)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def characteristic_matrix(self) -> np.ndarray:
        s = np.zeros((self.n, len(self.cells)), dtype=np.int64)
        for j, cell in enumerate(self.cells):
            s[list(cell), j] = 1
        return s


@dataclass(frozen=True)
class QuotientSystem:
    """Quotient of ``matrix`` by ``partition``.

    ``B`` holds exact values: an int64 array when every average row sum is an
    integer, otherwise an object array of ``Fraction``.
    """

    matrix: np.ndarray = field(repr=False)
    partition: Partition
    S: np.ndarray = field(repr=False)
    B: np.ndarray
    equitable: bool
    offending: tuple[tuple[int, int], ...] = ()

    @property
    def B_float(self) -> np.ndarray:
        return np.array(self.B, dtype=float)

    def to_dict(self) -> dict:
        def cell(x):
            if isinstance(x, Fraction) and x.denominator != 1:
                return str(x)
            return int(x)

        return {
            "cells": [list(c) for c in self.partition.cells],
            "B": [[cell(x) for x in row] for row in self.B.tolist()],
            "equitable": self.equitable,
        }


def cliquepath_partition(n1: int, k: int, n2: int,
                         g: Optional[CliqueTree] = None) -> Partition:
    """Partition of P_{n1+1, 2, ..., 2, n2+1} (k blocks) into k + 1 cells."""
    if n1 < 1 or n2 < 1 or k < 2:
        raise ValueError(f"need n1, n2 >= 1 and k >= 2, got n1={n1}, k={k}, n2={n2}")
    sizes = [n1 + 1] + [2] * (k - 2) + [n2 + 1]
    if g is None:
        g = clique_path(sizes)
    elif list(g.block_sizes) != sizes or not _chained(g):
        raise ValueError(
            f"graph with blocks {list(g.block_sizes)} is not P{tuple(sizes)} in block order"
        )
    cuts = [next(iter(set(a) & set(b))) for a, b in zip(g.blocks, g.blocks[1:])]
    first = tuple(v for v in g.blocks[0] if v != cuts[0])
    last = tuple(v for v in g.blocks[-1] if v != cuts[-1])
    return Partition((first, *((c,) for c in cuts), last))


def _chained(g: CliqueTree) -> bool:
    return g.is_clique_path() and all(
        len(set(a) & set(b)) == 1 for a, b in zip(g.blocks, g.blocks[1:])
    )


def quotient_matrix(d, p: Partition) -> QuotientSystem:
    d = np.asarray(d)
    if d.dtype.kind not in "iu":
        raise ValueError("quotient_matrix expects an integer matrix")
    if d.shape != (p.n, p.n):
        raise ValueError(f"partition covers {p.n} vertices, matrix is {d.shape}")
    m = len(p.cells)
    entries: list[list[Fraction]] = [[Fraction(0)] * m for _ in range(m)]
    offending = []
    for i, ci in enumerate(p.cells):
        for j, cj in enumerate(p.cells):
            row_sums = d[np.ix_(ci, cj)].sum(axis=1)
            if (row_sums != row_sums[0]).any():
                offending.append((i, j))
            entries[i][j] = Fraction(int(row_sums.sum()), len(ci))
    if all(x.denominator == 1 for row in entries for x in row):
        b = np.array([[int(x) for x in row] for row in entries], dtype=np.int64)
    else:
        b = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(m):
                b[i, j] = entries[i][j]
    return QuotientSystem(d, p, p.characteristic_matrix(), b, not offending, tuple(offending))


def closed_form_quotient(n1: int, k: int, n2: int) -> np.ndarray:
    """Quotient of D(P_{n1+1,2,...,2,n2+1}) written out directly.

    Layout (u = (1..k-1), w = reversed u, D(P_{k-1}) the path distances)::

        [ n1-1    u^T      k*n2  ]
        [ n1*u  D(P_{k-1}) n2*w  ]
        [ k*n1    w^T      n2-1  ]
    """
    if n1 < 1 or n2 < 1 or k < 2:
        raise ValueError(f"need n1, n2 >= 1 and k >= 2, got n1={n1}, k={k}, n2={n2}")
    u = np.arange(1, k, dtype=np.int64)
    w = u[::-1]
    idx = np.arange(k - 1)
    b = np.zeros((k + 1, k + 1), dtype=np.int64)
    b[0, 0] = n1 - 1
    b[0, 1:k] = u
    b[0, k] = k * n2
    b[1:k, 0] = n1 * u
    b[1:k, 1:k] = np.abs(idx[:, None] - idx[None, :])
    b[1:k, k] = n2 * w
    b[k, 0] = k * n1
    b[k, 1:k] = w
    b[k, k] = n2 - 1
    return b


def verify_radius_transfer(qs: QuotientSystem, g: Optional[CliqueTree] = None,
                           params: Optional[dict] = None) -> VerificationReport:
    """The largest eigenvalue of D equals the Perron root of its equitable quotient."""
    params = params or {}
    if not qs.equitable:
        return VerificationReport("radius_transfer", params, None, None, "eq", RADIUS_RTOL,
                                  float("-inf"), False,
                                  note=f"partition not equitable at blocks {list(qs.offending)}")
    d = qs.matrix if g is None else distance_matrix(g)
    lam_d = eig_symmetric(d).radius
    lam_b = power_iteration(qs.B_float)[0]
    rel = abs(lam_b - lam_d) / abs(lam_d)
    return VerificationReport.compare("radius_transfer", params, lam_b, lam_d, "eq",
                                      RADIUS_RTOL * abs(lam_d), relative_error=rel)


class LiftError(ArithmeticError):
    pass


def lift_eigenvector(qs: QuotientSystem, v, mu: float) -> np.ndarray:
    """Return S @ v, checking it is an eigenvector of the full matrix for ``mu``."""
    if not qs.equitable:
        raise LiftError(f"partition not equitable at blocks {list(qs.offending)}")
    v = np.asarray(v, dtype=float)
    scale = abs(mu) if mu != 0 else 1.0
    res_b = np.abs(qs.B_float @ v - mu * v).max()
    if res_b > 1e-9 * scale * max(np.abs(v).max(), 1.0):
        raise LiftError(f"(mu, v) is not an eigenpair of B: residual {res_b:.3e}")
    sv = qs.S @ v
    res_d = np.abs(qs.matrix @ sv - mu * sv).max()
    if res_d > 1e-8 * scale * np.abs(sv).max():
        raise LiftError(f"lifted vector residual {res_d:.3e} exceeds bound")
    return sv


def verify_lift(qs: QuotientSystem, params: Optional[dict] = None) -> VerificationReport:
    """Lift the Perron pair of B and report the residual against D."""
    params = params or {}
    mu, v = power_iteration(qs.B_float)
    sv = qs.S @ v
    res = float(np.abs(qs.matrix @ sv - mu * sv).max())
    bound = 1e-8 * abs(mu) * float(np.abs(sv).max())
    positive = bool((sv > 0).all())
    rep = VerificationReport.compare("eigenvector_lift", params, res, bound, "le",
                                     perron_root=mu, lifted_positive=positive)
    rep.passed = rep.passed and positive
    return rep
