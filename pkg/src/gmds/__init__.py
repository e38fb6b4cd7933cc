"""Generalized minimum dominating sets on weighted graphs.

Cavity-method solvers (belief propagation, decimation, ensemble population
dynamics), exact small-instance oracles, and a graph-based extractive text
summarization pipeline with PageRank and Affinity-Propagation baselines.
"""

from .bp import (BpState, CavityMessage, Rho0Estimate, ThermoDensities,
                 densities, estimate_rho0, marginal, marginals, run_bp,
                 scan_beta, threshold_exceed_sum, update_message)
from .bpd import BpdConfig, BpdResult, bpd_rank_order, bpd_run, bpd_solve
from .errors import (GmdsError, GraphParseError, InputError,
                     InsufficientDataError, SizeLimitError)
from .exact import ExactThermo, exact_mds, exact_thermo
from .generate import (WeightDistribution, benchmark_weight_distribution,
                       generate_er, named_weight_distribution,
                       uniform_support_distribution)
from .graph import (DominatingSet, WeightedGraph, is_satisfying, load_graph,
                    occupy_and_reduce, save_graph)
from .population import (EnsembleDensities, MessagePopulation,
                         ensemble_densities, ensemble_rho0, ensemble_scan,
                         population_sweep, rho0_curve)
from .summarize import (Rouge1Result, RougeScore, Summary, coverage_ratios,
                        rouge1, summarize)
from .text import (SentenceGraph, SentenceVector, build_sentence_graph,
                   cosine_similarity, segment_and_normalize, split_sentences)

__version__ = "0.1.0"

__all__ = [
    "BpState", "CavityMessage", "Rho0Estimate", "ThermoDensities",
    "densities", "estimate_rho0", "marginal", "marginals", "run_bp",
    "scan_beta", "threshold_exceed_sum", "update_message",
    "BpdConfig", "BpdResult", "bpd_rank_order", "bpd_run", "bpd_solve",
    "GmdsError", "GraphParseError", "InputError", "InsufficientDataError",
    "SizeLimitError",
    "ExactThermo", "exact_mds", "exact_thermo",
    "WeightDistribution", "benchmark_weight_distribution", "generate_er",
    "named_weight_distribution", "uniform_support_distribution",
    "DominatingSet", "WeightedGraph", "is_satisfying", "load_graph",
    "occupy_and_reduce", "save_graph",
    "EnsembleDensities", "MessagePopulation", "ensemble_densities",
    "ensemble_rho0", "ensemble_scan", "population_sweep", "rho0_curve",
    "Rouge1Result", "RougeScore", "Summary", "coverage_ratios", "rouge1",
    "summarize",
    "SentenceGraph", "SentenceVector", "build_sentence_graph",
    "cosine_similarity", "segment_and_normalize", "split_sentences",
]
