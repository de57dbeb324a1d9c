"""Exit criteria. Each test records one PASS/FAIL line, printed at session end
(see ``pytest_terminal_summary`` in conftest) or by running this file directly."""

from math import sqrt

import numpy as np
import pytest

from clique_spectra.enumeration import argmax_energy, EnumSpec, expected_tree_determinant, isomorphic
from clique_spectra.graph import balanced_clique_path, clique_path, distance_matrix
from clique_spectra.lemmas import (abg, balanced_chain, check_factorization, check_gamma_chain,
                                   check_path_radius_bound, check_uw_identities, meq_difference,
                                   path_radius, sample_points, uw_norm_exact)
from clique_spectra.quotient import (closed_form_quotient, cliquepath_partition, quotient_matrix)
from clique_spectra.spectra import det_exact, distance_energy, eig_symmetric, inertia, power_iteration
from clique_spectra.sweeps import all_clique_trees, all_trees, factorization_points, identity_points

RESULTS: dict[str, tuple[bool, str]] = {}


def record(name, ok, detail):
    RESULTS[name] = (bool(ok), detail)
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def population():
    """Every clique tree with n <= 10, with its spectrum."""
    trees = all_clique_trees(10)
    return [(t, eig_symmetric(distance_matrix(t))) for t in trees]


def test_tree_determinant_formula():
    trees = all_trees(9)
    bad = [t for t in trees if det_exact(distance_matrix(t)) != expected_tree_determinant(t.n)]
    record("01 tree determinant (-1)^(n-1)(n-1)2^(n-2), n<=9",
           not bad and len(trees) == 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47,
           f"{len(trees)} trees, {len(bad)} mismatches")


def test_inertia_of_clique_trees(population):
    bad = [t for t, s in population if inertia(s) != (1, 0, t.n - 1)]
    record("02 inertia (1, 0, n-1), clique trees n<=10", not bad,
           f"{len(population)} graphs, {len(bad)} failures")


def test_energy_is_twice_radius(population):
    worst = max(abs(distance_energy(s) - 2 * s.radius) / distance_energy(s)
                for _, s in population)
    record("03 energy = 2*lambda1 (rel 1e-8), n<=10", worst <= 1e-8,
           f"max relative error {worst:.2e}")


def test_quotient_closed_form_and_radius_transfer():
    bad, worst = [], 0.0
    for n1 in range(1, 6):
        for k in range(2, 9):
            for n2 in range(1, 6):
                g = clique_path([n1 + 1] + [2] * (k - 2) + [n2 + 1])
                qs = quotient_matrix(distance_matrix(g), cliquepath_partition(n1, k, n2, g))
                exact = (qs.B.dtype != object
                         and np.array_equal(qs.B, closed_form_quotient(n1, k, n2)))
                lam_d = eig_symmetric(qs.matrix).radius
                rel = abs(power_iteration(qs.B_float)[0] - lam_d) / lam_d
                worst = max(worst, rel)
                if not (exact and qs.equitable and rel <= 1e-9):
                    bad.append((n1, k, n2))
    record("04 closed-form quotient exact, equitable, radius transfer (rel 1e-9)", not bad,
           f"175 cases, {len(bad)} failures, max rel diff {worst:.2e}")


def test_uw_identities():
    norm_bad = [k for k in range(3, 51) if uw_norm_exact(k)[0] != uw_norm_exact(k)[1]]
    id_bad = [(k, x) for k in range(3, 13) for x in identity_points(k)
              if not check_uw_identities(k, x).passed]
    record("05 ||u-w||^2 exact k<=50; form identities (rel 1e-10) k<=12",
           not norm_bad and not id_bad,
           f"norm failures {norm_bad}, identity failures {len(id_bad)} of 50")


def test_char_poly_factorization():
    hand = check_factorization(2, 1, 2, 6.0)
    reps = [check_factorization(n1, n2, k, x) for k in range(2, 9)
            for x in factorization_points(k) for n1 in range(1, 6) for n2 in range(1, 6)]
    bad = [r.params for r in reps if not r.passed]
    record("06 char-poly factorization (rel 1e-8), incl. (2,1,2,x=6)",
           hand.passed and abs(hand.lhs - 107) <= 1e-8 * 107 and not bad,
           f"hand point lhs={hand.lhs:.10g} rhs={hand.rhs:.10g}; {len(bad)}/{len(reps)} failures")


def test_path_radius_lower_bound():
    reps = [check_path_radius_bound(k, splits=()) for k in range(3, 101)]
    bad = [r.params["k"] for r in reps if not (r.passed and r.margin > 0)]
    spot = abs(path_radius(3) - (1 + sqrt(3)))
    record("07 lambda(P_k) > (k-1)(k+1)/3, k in 3..100; lambda(P3) = 1+sqrt3",
           not bad and spot <= 1e-9,
           f"min margin {min(r.margin for r in reps):.3e}, spot error {spot:.1e}")


def test_gamma_chain():
    reps = [check_gamma_chain(k) for k in range(3, 31)]
    bad = [r.params["k"] for r in reps if not (r.passed and r.margin > 0)]
    x = path_radius(3)
    spot = abs(abg(3, x).gamma - 1 / (x + 1))
    record("08 gamma <= (k-1)k(k-2)/(6x) < k-1 at x = lambda(P_k), k in 3..30",
           not bad and spot <= 1e-10 * (1 / (x + 1)),
           f"min margin {min(r.margin for r in reps):.3e}, spot error {spot:.1e}")


def test_conjecture_brute_force():
    bad = []
    for n in range(4, 12):
        for k in range(2, n):
            res = argmax_energy(EnumSpec.by_nk(n, k))
            if not (res.matches_balanced and isomorphic(res.winner, balanced_clique_path(n, k))):
                bad.append((n, k))
    spot = argmax_energy(EnumSpec.by_nk(4, 3))
    spot_ok = (isomorphic(spot.winner, clique_path([2, 2, 2]))
               and abs(spot.winner_energy - (4 + 2 * sqrt(10))) <= 1e-6
               and abs(spot.runner_up_energy - 2 * (2 + sqrt(7))) <= 1e-6)
    record("09 balanced clique path maximizes energy, 4<=n<=11, 2<=k<=n-1",
           not bad and spot_ok,
           f"failures {bad}; n=4,k=3 winner energy {spot.winner_energy:.10g} "
           f"vs runner-up {spot.runner_up_energy:.10g}")


def test_split_monotonicity_radii():
    bad = []
    for k in range(2, 7):
        for s in range(2, 11):
            chain = balanced_chain(s)
            radii = [eig_symmetric(distance_matrix(
                clique_path([a + 1] + [2] * (k - 2) + [b + 1]))).radius for a, b in chain]
            if any(r <= q for r, q in zip(radii, radii[1:])):
                bad.append((k, s))
    record("10a radius strictly decreases from balanced to skewed split", not bad,
           f"failures {bad}")


def test_split_difference_positive():
    # as stated: f(n1,n2,x) - f(n1',n2',x) > 0 for the more balanced (n1,n2)
    vals = []
    for k in range(2, 7):
        for s in range(2, 11):
            chain = balanced_chain(s)
            for (a, b), (c, d) in zip(chain, chain[1:]):
                vals.extend(meq_difference(a, b, c, d, k, x) for x in sample_points(k))
    positive = sum(v > 0 for v in vals)
    record("10b factored char-poly difference positive at sampled x >= lambda(P_k)",
           positive == len(vals),
           f"{positive}/{len(vals)} positive; max value {max(vals):.3e} "
           f"(the factor 1-k+gamma is negative, so the difference is negative)")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
