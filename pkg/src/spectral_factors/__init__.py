"""Spectral threshold conditions for perfect matchings and star-cycle factors.

The public surface, by layer:

graphs    packed immutable graphs, graph6 codec, clique-star families,
          isomorphism, exhaustive connected enumeration
spectra   adjacency / signless-Laplacian / distance eigenvalues with
          residual contracts; exact integer characteristic polynomials
          and Sturm-chain root isolation
factors   perfect-matching and star-cycle-factor oracles with
          certificates, plus dual witnesses (odd components, isolated
          vertices)
quotient  equitable-partition quotient matrices and the parametrized
          catalog backing the sharpness families
theorems  the five threshold statements, their extremal families, and
          the per-graph verdict checker
verify    vectorized exhaustive verification over all connected labeled
          graphs of a given order
cli       the spectral-factors command line tool
"""

from .factors import (FactorCertificate, Witness, has_perfect_matching,
                      has_star_cycle_factor, iso_witness, maximum_matching,
                      tutte_witness, validate_certificate, validate_witness)
from .graphs import (FamilySpec, Graph, build_graph, complete_graph,
                     enumerate_connected, family, from_family, from_graph6,
                     is_connected, is_isomorphic, min_degree, to_graph6)
from .quotient import CATALOG, QuotientMatrix, catalog_report, is_equitable
from .spectra import (IntegerPolynomial, SpectralValue, adjacency_matrix,
                      char_poly, compare_largest_roots, distance_matrix,
                      kappa, largest_real_root, mu1, rho, signless_laplacian,
                      wiener_index)
from .theorems import (THEOREM_IDS, Threshold, VerdictRecord, beta,
                       check_theorem, check_fact_monotonicity, extremal_K2,
                       extremal_K2_family, extremal_star_cycle,
                       extremal_star_cycle_family, size_threshold,
                       threshold_for)
from .verify import (OracleSummary, RunConfig, RunSummary, run_oracle_check,
                     run_verify)

__version__ = "0.1.0"

__all__ = [
    "CATALOG", "FactorCertificate", "FamilySpec", "Graph",
    "IntegerPolynomial", "OracleSummary", "QuotientMatrix", "RunConfig",
    "RunSummary", "SpectralValue", "THEOREM_IDS", "Threshold",
    "VerdictRecord", "Witness", "adjacency_matrix", "beta", "build_graph",
    "catalog_report", "char_poly", "check_fact_monotonicity",
    "check_theorem", "compare_largest_roots", "complete_graph",
    "distance_matrix", "enumerate_connected", "extremal_K2",
    "extremal_K2_family", "extremal_star_cycle",
    "extremal_star_cycle_family", "family", "from_family", "from_graph6",
    "has_perfect_matching", "has_star_cycle_factor", "is_connected",
    "is_equitable", "is_isomorphic", "iso_witness", "kappa",
    "largest_real_root", "maximum_matching", "min_degree", "mu1", "rho",
    "run_oracle_check", "run_verify", "signless_laplacian",
    "size_threshold", "threshold_for", "to_graph6", "tutte_witness",
    "validate_certificate", "validate_witness", "wiener_index",
]
