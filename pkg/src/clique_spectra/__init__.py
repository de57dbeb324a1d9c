"""Distance spectra, distance energy and inertia of clique trees."""

from .enumeration import (EnumSpec, ExtremalResult, argmax_energy,
                          check_max_radius_is_clique_path, enumerate_clique_trees,
                          unique_clique_trees)
from .graph import (BlockSpec, CliqueTree, CliqueTreeError, balanced_clique_path,
                    build_clique_tree, clique_path, distance_matrix)
from .lemmas import (AlphaBetaGamma, abg, check_factorization, check_gamma_chain,
                     check_path_radius_bound, check_perron_symmetry,
                     check_split_monotonicity, check_uw_identities, uw_vectors)
from .quotient import (Partition, QuotientSystem, closed_form_quotient, cliquepath_partition,
                       lift_eigenvector, quotient_matrix, verify_radius_transfer)
from .report import VerificationReport
from .spectra import (Inertia, Spectrum, char_poly_eval, det_exact, distance_energy,
                      eig_symmetric, inertia, spectral_radius)

__version__ = "0.1.0"
