"""Parameter-grid sweeps that back ``clique-spectra verify``.

Each sweep returns a flat list of :class:`VerificationReport`; default ranges
are the ones the acceptance suite runs.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from ._parallel import pmap
from .enumeration import (EnumSpec, ExtremalResult, argmax_energy, evaluate,
                          expected_tree_determinant, isomorphic, unique_clique_trees)
from .graph import CliqueTree, balanced_clique_path, clique_path, distance_matrix
from .lemmas import (balanced_chain, check_factorization, check_gamma_chain,
                     check_path_radius_bound, check_perron_symmetry, check_split_monotonicity,
                     check_uw_identities, path_radius, uw_norm_exact)
from .quotient import (closed_form_quotient, cliquepath_partition, quotient_matrix,
                       verify_lift, verify_radius_transfer)
from .report import VerificationReport
from .spectra import det_exact


def all_clique_trees(n_max: int, n_min: int = 2) -> list[CliqueTree]:
    """One representative of every clique tree with n_min <= n <= n_max."""
    out = []
    for n in range(max(n_min, 2), n_max + 1):
        for k in range(1, n):
            out.extend(unique_clique_trees(EnumSpec.by_nk(n, k)))
    return out


def all_trees(n_max: int, n_min: int = 2) -> list[CliqueTree]:
    return [t for n in range(max(n_min, 2), n_max + 1)
            for t in unique_clique_trees(EnumSpec.by_multiset([2] * (n - 1)))]


def _tree_params(t: CliqueTree) -> dict:
    return {"n": t.n, "blocks": [s.to_dict() for s in t.specs]}


def _inertia_report(t: CliqueTree) -> VerificationReport:
    e = evaluate(t)
    want = (1, 0, t.n - 1)
    ok = e.inertia == want
    return VerificationReport("inertia", _tree_params(t), list(e.inertia), list(want), "eq",
                              0.0, 0.0 if ok else -1.0, ok)


def _energy_report(t: CliqueTree) -> VerificationReport:
    e = evaluate(t)
    return VerificationReport.compare("energy_identity", _tree_params(t), e.energy,
                                      2 * e.radius, "eq", 1e-8 * abs(e.energy))


def _determinant_report(t: CliqueTree) -> VerificationReport:
    det = det_exact(distance_matrix(t))
    return VerificationReport.compare("tree_determinant", _tree_params(t), det,
                                      expected_tree_determinant(t.n), "eq", 0)


def inertia_sweep(n_max: int = 10) -> list[VerificationReport]:
    return pmap(_inertia_report, all_clique_trees(n_max))


def energy_sweep(n_max: int = 10) -> list[VerificationReport]:
    return pmap(_energy_report, all_clique_trees(n_max))


def graham_pollak_sweep(n_max: int = 9) -> list[VerificationReport]:
    return pmap(_determinant_report, all_trees(n_max))


def quotient_case(n1: int, k: int, n2: int) -> list[VerificationReport]:
    params = {"n1": n1, "k": k, "n2": n2}
    g = clique_path([n1 + 1] + [2] * (k - 2) + [n2 + 1])
    qs = quotient_matrix(distance_matrix(g), cliquepath_partition(n1, k, n2, g))
    closed = closed_form_quotient(n1, k, n2)
    same = qs.B.dtype != object and qs.B.shape == closed.shape and np.array_equal(qs.B, closed)
    return [
        VerificationReport("closed_form_quotient", params, qs.B.tolist(), closed.tolist(), "eq",
                           0.0, 0.0 if same else -1.0, bool(same)),
        VerificationReport("equitable", params, qs.equitable, True, "eq", 0.0,
                           0.0 if qs.equitable else -1.0, qs.equitable,
                           details={"offending": [list(b) for b in qs.offending]}),
        verify_radius_transfer(qs, params=params),
        verify_lift(qs, params=params),
    ]


def quotient_sweep(n1_max: int = 5, k_max: int = 8, n2_max: Optional[int] = None
                   ) -> list[VerificationReport]:
    n2_max = n1_max if n2_max is None else n2_max
    cases = [(n1, k, n2) for n1 in range(1, n1_max + 1) for k in range(2, k_max + 1)
             for n2 in range(1, n2_max + 1)]
    return [r for reps in pmap(_quotient_case_tuple, cases) for r in reps]


def _quotient_case_tuple(case: tuple[int, int, int]) -> list[VerificationReport]:
    return quotient_case(*case)


def identity_points(k: int) -> list[float]:
    """Five evaluation points above lambda(P_{k-1}), near and far."""
    lam = path_radius(k - 1)
    return [lam + 1e-3, lam + 0.5, 1.1 * lam + 1.0, lam + 5.0, 10.0 * k]


def factorization_points(k: int) -> list[float]:
    lam = path_radius(k)
    return [lam + 0.5, lam + 5.0, 10.0 * k]


def uw_sweep(k_max: int = 12, norm_k_max: int = 50) -> list[VerificationReport]:
    out = []
    for k in range(3, norm_k_max + 1):
        lhs, rhs = uw_norm_exact(k)
        out.append(VerificationReport.compare("uw_norm_exact", {"k": k}, lhs, rhs, "eq", 0))
    for k in range(3, k_max + 1):
        out.extend(check_uw_identities(k, x) for x in identity_points(k))
    return out


def factorization_sweep(n_max: int = 5, k_max: int = 8) -> list[VerificationReport]:
    out = [check_factorization(2, 1, 2, 6.0)]
    for k in range(2, k_max + 1):
        xs = factorization_points(k)
        for n1 in range(1, n_max + 1):
            for n2 in range(1, n_max + 1):
                out.extend(check_factorization(n1, n2, k, x) for x in xs)
    return out


def path_bound_sweep(k_max: int = 100) -> list[VerificationReport]:
    return [check_path_radius_bound(k) for k in range(3, k_max + 1)]


def gamma_chain_sweep(k_max: int = 30) -> list[VerificationReport]:
    return [check_gamma_chain(k) for k in range(3, k_max + 1)]


def perron_sweep(k_max: int = 12) -> list[VerificationReport]:
    return [check_perron_symmetry(k) for k in range(3, k_max + 1)]


def monotonicity_sweep(k_max: int = 6, s_max: int = 10) -> list[VerificationReport]:
    """Consecutive comparisons along each balanced-to-skewed chain of splits."""
    out = []
    for k in range(2, k_max + 1):
        for s in range(2, s_max + 1):
            chain = balanced_chain(s)
            for (n1, n2), (n1p, n2p) in zip(chain, chain[1:]):
                out.append(check_split_monotonicity(n1, n2, n1p, n2p, k))
    return out


def lemma_sweep(k_max: Optional[int] = None) -> list[VerificationReport]:
    if k_max is None:
        return (uw_sweep() + factorization_sweep() + path_bound_sweep() + gamma_chain_sweep()
                + perron_sweep() + monotonicity_sweep())
    return (uw_sweep(k_max, max(k_max, 3)) + factorization_sweep(5, k_max)
            + path_bound_sweep(k_max) + gamma_chain_sweep(k_max) + perron_sweep(k_max)
            + monotonicity_sweep(min(k_max, 6)))


def conjecture_case(n: int, k: int) -> tuple[VerificationReport, ExtremalResult]:
    res = argmax_energy(EnumSpec.by_nk(n, k))
    target = balanced_clique_path(n, k)
    ok = bool(res.matches_balanced) and isomorphic(res.winner, target)
    params = {"n": n, "k": k, "balanced_sizes": list(target.block_sizes)}
    rep = VerificationReport(
        "conjecture", params, res.winner_energy, 2 * res.winner_radius, "eq",
        1e-8 * res.winner_energy, 0.0 if ok else -1.0, ok,
        note="reading: all clique trees with n vertices and k blocks",
        details=res.to_dict())
    return rep, res


def conjecture_sweep(n_max: int = 11, n_min: int = 4,
                     ks: Optional[Iterable[int]] = None) -> list[VerificationReport]:
    out = []
    for n in range(n_min, n_max + 1):
        for k in (range(2, n) if ks is None else ks):
            if 2 <= k <= n - 1:
                out.append(conjecture_case(n, k)[0])
    return out
