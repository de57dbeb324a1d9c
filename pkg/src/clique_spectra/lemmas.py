"""Numerical checks of the identities and inequalities behind the energy bound.

Throughout, ``M = xI - D(P_{k-1})`` where ``D(P_m)`` is the distance matrix of
the path on ``m`` vertices, ``u = (1, ..., k-1)`` and ``w`` is ``u`` reversed.
Quadratic forms are evaluated by solving ``M y = u`` and ``M z = w``; the
inverse is never formed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .graph import clique_path, distance_matrix
from .quotient import closed_form_quotient
from .report import VerificationReport
from .spectra import char_poly_eval, eig_symmetric, inertia, spectral_radius

IDENTITY_RTOL = 1e-10
FACTOR_RTOL = 1e-8
SYMMETRY_ATOL = 1e-9
NEAR_EPS = 1e-3


def path_distance_matrix(m: int) -> np.ndarray:
    idx = np.arange(m)
    return np.abs(idx[:, None] - idx[None, :])


@lru_cache(maxsize=None)
def path_radius(m: int) -> float:
    """Largest distance eigenvalue of the path on ``m`` vertices."""
    if m < 1:
        raise ValueError("path needs at least one vertex")
    if m == 1:
        return 0.0
    return spectral_radius(path_distance_matrix(m))


def uw_vectors(k: int) -> tuple[np.ndarray, np.ndarray]:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    u = np.arange(1, k, dtype=np.int64)
    return u, u[::-1].copy()


@dataclass(frozen=True)
class AlphaBetaGamma:
    k: int
    x: float
    alpha: float
    beta: float
    gamma: float


def abg(k: int, x: float) -> AlphaBetaGamma:
    """alpha = u'M^-1 u, beta = u'M^-1 w, gamma = (u-w)'M^-1 (u-w) / 2."""
    u, w = uw_vectors(k)
    lam = path_radius(k - 1)
    if not x > lam + 1e-6:
        raise ValueError(f"x={x} must exceed the path radius {lam} (k-1={k - 1} vertices)")
    m = x * np.eye(k - 1) - path_distance_matrix(k - 1)
    y, z = np.linalg.solve(m, np.column_stack([u, w]).astype(float)).T
    diff = (u - w).astype(float)
    return AlphaBetaGamma(k, float(x), float(u @ y), float(u @ z), 0.5 * float(diff @ (y - z)))


def uw_norm_exact(k: int) -> tuple[int, int]:
    """(||u - w||^2, (k-1)k(k-2)/3) in exact integers."""
    u, w = uw_vectors(k)
    lhs = sum(int(d) * int(d) for d in (u - w))
    return lhs, (k - 1) * k * (k - 2) // 3


def _rel_tol(*values: float, rtol: float) -> float:
    return rtol * max(max(abs(v) for v in values), 1.0)


def check_uw_identities(k: int, x: float) -> VerificationReport:
    """Symmetry and positivity of the u/w quadratic forms, the exact norm of
    u - w, and u'M^-1(u - w) = gamma."""
    params = {"k": k, "x": x}
    if k < 2:
        raise ValueError("k must be >= 2")
    u, w = uw_vectors(k)
    lam = path_radius(k - 1)
    if not x > lam:
        raise ValueError(f"x={x} must exceed the path radius {lam}")
    m = x * np.eye(k - 1) - path_distance_matrix(k - 1)
    uf, wf = u.astype(float), w.astype(float)
    mu_inv_u = np.linalg.solve(m, uf)
    mu_inv_w = np.linalg.solve(m, wf)
    diff = uf - wf
    uw, wu = uf @ mu_inv_w, wf @ mu_inv_u
    uu, ww = uf @ mu_inv_u, wf @ mu_inv_w
    lhs4 = uf @ np.linalg.solve(m, diff)
    rhs4 = 0.5 * diff @ np.linalg.solve(m, diff)
    norm_lhs, norm_rhs = uw_norm_exact(k)
    parts = [
        VerificationReport.compare("cross_form_symmetric", params, uw, wu, "eq",
                                   _rel_tol(uw, wu, rtol=IDENTITY_RTOL)),
        VerificationReport.compare("cross_form_positive", params, uw, 0.0, "gt"),
        VerificationReport.compare("self_form_symmetric", params, uu, ww, "eq",
                                   _rel_tol(uu, ww, rtol=IDENTITY_RTOL)),
        VerificationReport.compare("self_form_positive", params, uu, 0.0, "gt"),
        VerificationReport.compare("uw_norm_exact", params, norm_lhs, norm_rhs, "eq", 0),
        VerificationReport.compare("half_difference_form", params, lhs4, rhs4, "eq",
                                   _rel_tol(lhs4, rhs4, rtol=IDENTITY_RTOL)),
    ]
    note = "degenerate: u = w, norm identity reads 0 = 0" if k == 2 else ""
    return VerificationReport.combine("uw_identities", params, parts, note=note)


def factorization_rhs(n1: int, n2: int, k: int, x: float) -> float:
    """Bracket times det(xI - D(P_{k-1})):
    (x+1)^2 - (n1+n2)(1+a)(x+1) + n1 n2 (1+a+k+b)(1-k+g)."""
    c = abg(k, x)
    bracket = ((x + 1) ** 2 - (n1 + n2) * (1 + c.alpha) * (x + 1)
               + n1 * n2 * (1 + c.alpha + k + c.beta) * (1 - k + c.gamma))
    return bracket * char_poly_eval(path_distance_matrix(k - 1), x)


def check_factorization(n1: int, n2: int, k: int, x: float) -> VerificationReport:
    """det(xI - B) for the clique-path quotient against its factored form."""
    params = {"n1": n1, "n2": n2, "k": k, "x": x}
    if n1 < 1 or n2 < 1 or k < 2:
        raise ValueError(f"need n1, n2 >= 1 and k >= 2, got {params}")
    lhs = char_poly_eval(closed_form_quotient(n1, k, n2), x)
    rhs = factorization_rhs(n1, n2, k, x)
    return VerificationReport.compare("char_poly_factorization", params, lhs, rhs, "eq",
                                      FACTOR_RTOL * max(abs(lhs), 1.0))


def check_path_radius_bound(k: int, splits: Iterable[tuple[int, int]] = ((1, 1), (2, 3), (4, 1))
                            ) -> VerificationReport:
    """lambda(P_k) > 1'D(P_k)1 / k = (k-1)(k+1)/3, and every clique path
    P_{n1+1,2,...,2,n2+1} with k blocks has radius at least lambda(P_k)."""
    params = {"k": k}
    if k < 2:
        raise ValueError("k must be >= 2")
    lam = path_radius(k)
    d = path_distance_matrix(k)
    rayleigh = int(d.sum())
    bound = (k - 1) * (k + 1) / 3
    if rayleigh != (k - 1) * k * (k + 1) // 3:
        raise ArithmeticError("all-ones Rayleigh quotient disagrees with closed form")
    parts = [VerificationReport.compare("path_radius_lower_bound", params, lam, bound, "gt",
                                          1e-12 * bound)]
    for n1, n2 in splits:
        big = spectral_radius(distance_matrix(clique_path([n1 + 1] + [2] * (k - 2) + [n2 + 1])))
        parts.append(VerificationReport.compare(
            "submatrix_monotone", {**params, "n1": n1, "n2": n2}, big, lam, "ge",
            _rel_tol(big, lam, rtol=1e-12)))
    note = "boundary: at k=2 the bound is attained (1 = 1), strictness fails" if k == 2 else ""
    return VerificationReport.combine("path_radius_bound", params, parts, note=note)


def check_gamma_chain(k: int, x: Optional[float] = None) -> VerificationReport:
    """gamma <= (k-1)k(k-2)/(6x) < k-1 for x >= lambda(P_k), using that the
    second distance eigenvalue of P_{k-1} is negative."""
    if k < 3:
        raise ValueError("gamma chain needs k >= 3")
    lam_k = path_radius(k)
    if x is None:
        x = lam_k
    params = {"k": k, "x": x}
    if x < lam_k * (1 - 1e-12):
        raise ValueError(f"x={x} is below lambda(P_k)={lam_k}")
    spec = eig_symmetric(path_distance_matrix(k - 1))
    second = float(spec.eigenvalues[1])
    c = abg(k, x)
    bound = (k - 1) * k * (k - 2) / (6 * x)
    parts = [
        VerificationReport.compare("second_eigenvalue_negative", params, second,
                                   -spec.zero_threshold, "lt",
                                   inertia=list(inertia(spec))),
        VerificationReport.compare("gamma_le_bound", params, c.gamma, bound, "le"),
        VerificationReport.compare("bound_lt_k_minus_1", params, bound, k - 1, "lt"),
    ]
    return VerificationReport.combine("gamma_chain", params, parts)


def _f(n1: int, n2: int, k: int, x: float) -> float:
    return char_poly_eval(closed_form_quotient(n1, k, n2), x)


def meq_difference(n1: int, n2: int, n1p: int, n2p: int, k: int, x: float) -> float:
    """Factored form of f(n1,n2,x) - f(n1p,n2p,x) when n1+n2 = n1p+n2p."""
    c = abg(k, x)
    return ((n1 * n2 - n1p * n2p) * (1 + c.alpha + k + c.beta) * (1 - k + c.gamma)
            * char_poly_eval(path_distance_matrix(k - 1), x))


def sample_points(k: int) -> list[float]:
    lam = path_radius(k)
    return [lam + NEAR_EPS, 1.1 * lam, 10.0 * k]


def check_split_monotonicity(n1: int, n2: int, n1p: int, n2p: int, k: int,
                             xs: Optional[Iterable[float]] = None) -> VerificationReport:
    """A more balanced split (n1, n2) of the end-clique vertices gives a
    strictly larger radius than (n1p, n2p).

    Checks that the factored char-poly difference matches the directly
    computed one, that its sign is the one that forces the larger root (the
    difference is negative for x >= lambda(P_k), since 1 - k + gamma < 0),
    and compares the two radii directly. ``details["difference_positive"]``
    records whether the difference was positive at every sample.
    """
    params = {"n1": n1, "n2": n2, "n1p": n1p, "n2p": n2p, "k": k}
    if min(n1, n2, n1p, n2p) < 1 or k < 2:
        raise ValueError(f"need all parts >= 1 and k >= 2, got {params}")
    if n1 + n2 != n1p + n2p:
        raise ValueError("splits must have the same total")
    if not max(n1, n2) < max(n1p, n2p):
        raise ValueError("first split must be strictly more balanced")
    xs = list(sample_points(k) if xs is None else xs)
    lam_k = path_radius(k)
    parts = []
    diffs = []
    for x in xs:
        if x < lam_k:
            raise ValueError(f"sample x={x} below lambda(P_k)={lam_k}")
        fa, fb = _f(n1, n2, k, x), _f(n1p, n2p, k, x)
        factored = meq_difference(n1, n2, n1p, n2p, k, x)
        diffs.append(factored)
        p = {**params, "x": x}
        parts.append(VerificationReport.compare(
            "difference_factored", p, factored, fa - fb, "eq",
            FACTOR_RTOL * max(abs(fa), abs(fb), 1.0)))
        parts.append(VerificationReport.compare("difference_sign", p, factored, 0.0, "lt"))
    lam = eig_symmetric(distance_matrix(clique_path([n1 + 1] + [2] * (k - 2) + [n2 + 1]))).radius
    lam_p = eig_symmetric(distance_matrix(clique_path([n1p + 1] + [2] * (k - 2) + [n2p + 1]))).radius
    parts.append(VerificationReport.compare("radius_strictly_larger", params, lam, lam_p, "gt"))
    rep = VerificationReport.combine("split_monotonicity", params, parts)
    rep.details["differences"] = diffs
    rep.details["difference_positive"] = all(d > 0 for d in diffs)
    rep.details["radii"] = [lam, lam_p]
    return rep


def balanced_chain(s: int) -> list[tuple[int, int]]:
    """Splits of s into two positive parts, most balanced first."""
    return [(s - b, b) for b in range(s // 2, 0, -1)]


def check_perron_symmetry(k: int) -> VerificationReport:
    """The unit Perron vector X of D(P_{k-1}) is palindromic, so X'(u - w) = 0."""
    if k < 3:
        raise ValueError("perron symmetry needs k >= 3")
    params = {"k": k}
    spec = eig_symmetric(path_distance_matrix(k - 1), vectors=True)
    x = spec.eigenvectors[:, 0]
    x = x if x.sum() > 0 else -x
    u, w = uw_vectors(k)
    asym = float(np.abs(x - x[::-1]).max())
    ortho = float(abs(x @ (u - w)))
    parts = [
        VerificationReport.compare("perron_palindromic", params, asym, 0.0, "eq", SYMMETRY_ATOL),
        VerificationReport.compare("perron_orthogonal_u_minus_w", params, ortho, 0.0, "eq",
                                   SYMMETRY_ATOL),
        VerificationReport.compare("perron_positive", params, float(x.min()), 0.0, "gt"),
    ]
    return VerificationReport.combine("perron_symmetry", params, parts)
