"""Dense symmetric spectra, spectral radius, inertia, energy and exact determinants."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

JACOBI_MAX_SWEEPS = 30
POWER_MAX_ITER = 200_000
POWER_RTOL = 1e-13
POWER_STABLE_STEPS = 3


class ConvergenceError(RuntimeError):
    pass


class Inertia(NamedTuple):
    positive: int
    zero: int
    negative: int


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, with the accuracy actually achieved.

    ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]`` when requested.
    """

    eigenvalues: np.ndarray
    zero_threshold: float
    residual: float
    eigenvectors: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def radius(self) -> float:
        return float(self.eigenvalues[0])

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "residual": float(self.residual),
            "zero_threshold": float(self.zero_threshold),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "eigenvalue"])
        for i, lam in enumerate(self.eigenvalues, start=1):
            writer.writerow([i, repr(float(lam))])
        return buf.getvalue()


def check_symmetric(m) -> np.ndarray:
    """Return ``m`` as a float array, rejecting non-square or asymmetric input.

    Integer input must be exactly symmetric; real input within 1e-12 relative.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.dtype.kind in "iub":
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not symmetric")
        return a.astype(float)
    a = a.astype(float)
    scale = max(np.abs(a).max(initial=0.0), 1.0)
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    return (a + a.T) / 2


def _round_robin_pairs(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # Tournament schedule: each round is a set of disjoint index pairs, and
    # the rounds together cover every pair once.
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(a.diagonal())
    return float(np.sqrt(np.sum(off * off)))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return np.zeros(n), v
    rounds = _round_robin_pairs(n)
    tol = np.finfo(float).eps * n * norm
    for _ in range(JACOBI_MAX_SWEEPS):
        off = _off_norm(a)
        if off <= tol:
            return a.diagonal().copy(), v
        for ps, qs in rounds:
            apq = a[ps, qs]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            ps, qs, apq = ps[active], qs[active], apq[active]
            theta = (a[qs, qs] - a[ps, ps]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(n)
            rot[ps, ps] = c
            rot[qs, qs] = c
            rot[ps, qs] = s
            rot[qs, ps] = -s
            a = rot.T @ a @ rot
            a[ps, qs] = 0.0
            a[qs, ps] = 0.0
            v = v @ rot
    off = _off_norm(a)
    if off <= tol:
        return a.diagonal().copy(), v
    raise ConvergenceError(
        f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (off-diagonal {off:.3e})"
    )


def eig_symmetric(m, vectors: bool = False) -> Spectrum:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations."""
    a = check_symmetric(m)
    n = a.shape[0]
    w, v = _jacobi(a)
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    v /= np.linalg.norm(v, axis=0)
    residual = float(np.abs(a @ v - v * w).max(initial=0.0))
    scale = float(np.abs(a).max(initial=0.0))
    threshold = max(10.0 * residual, 1e-9 * n * scale)
    w.flags.writeable = False
    return Spectrum(w, threshold, residual, v if vectors else None)


def power_iteration(m, max_iter: int = POWER_MAX_ITER) -> tuple[float, np.ndarray]:
    """Perron root and unit Perron vector of a nonnegative irreducible matrix.

    Starts from the all-ones vector; stops once the Rayleigh quotient changes by
    less than 1e-13 relative on three consecutive steps. ``m`` may be
    non-symmetric (quotient matrices).
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if (a < 0).any():
        raise ValueError("matrix has negative entries")
    if not a.any():
        raise ValueError("zero matrix has no Perron root")
    x = np.ones(a.shape[0]) / np.sqrt(a.shape[0])
    lam = None
    stable = 0
    for _ in range(max_iter):
        y = a @ x
        new = float(x @ y)
        ny = np.linalg.norm(y)
        if ny == 0.0:
            raise ConvergenceError("iterate collapsed to zero; matrix is reducible")
        x = y / ny
        if lam is not None and abs(new - lam) <= POWER_RTOL * abs(new):
            stable += 1
            if stable >= POWER_STABLE_STEPS:
                return float(x @ (a @ x)), x
        else:
            stable = 0
        lam = new
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


def spectral_radius(m) -> float:
    return power_iteration(m)[0]


def inertia(s: Spectrum) -> Inertia:
    ev = np.asarray(s.eigenvalues)
    pos = int((ev > s.zero_threshold).sum())
    neg = int((ev < -s.zero_threshold).sum())
    return Inertia(pos, len(ev) - pos - neg, neg)


def distance_energy(s: Spectrum) -> float:
    return float(np.abs(s.eigenvalues).sum())


def det_exact(m) -> int:
    """Exact determinant of an integer matrix by Bareiss fraction-free elimination."""
    rows = [[int(x) for x in row] for row in np.asarray(m, dtype=object).tolist()]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("expected a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri = rows[i]
            rik = ri[k]
            for j in range(k + 1, n):
                # exact: Bareiss guarantees divisibility by the previous pivot
                ri[j] = (pivot * ri[j] - rik * rows[k][j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def char_poly_eval(m, x: float) -> float:
    """det(xI - m) by LU with partial pivoting."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return float(np.linalg.det(x * np.eye(a.shape[0]) - a))
