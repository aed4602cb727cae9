"""Spectral radius and structure classification for uniform hypergraphs."""

from .beta import BETA, BetaParams, dagger_g, f_iter, solve_beta_F3, solve_symmetric
from .classify import admissibility, dagger_table, structure_report
from .families import build, certificate_for
from .hypergraph import Hypergraph, HypergraphError, PartialHypergraph, extend, reduce, validate
from .labeling import Certificate, Verdict, check, check_consistent, glue
from .spectral import SpectralResult, eigenvector_to_labeling, rho_hypertree, rho_power, spectral_radius, thresholds

__all__ = [
    "BETA", "BetaParams", "Certificate", "Hypergraph", "HypergraphError", "PartialHypergraph",
    "SpectralResult", "Verdict", "admissibility", "build", "certificate_for", "check", "check_consistent",
    "dagger_g", "dagger_table", "eigenvector_to_labeling", "extend", "f_iter", "glue", "reduce",
    "rho_hypertree", "rho_power", "solve_beta_F3", "solve_symmetric", "spectral_radius",
    "structure_report", "thresholds", "validate",
]
