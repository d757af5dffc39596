"""Sparsification of two-variable boolean valued CSPs."""
from .predicates import (
    ALL_PREDICATES, Predicate, SparsifiabilityClass, classify, evaluate, predicate_from_truth_table,
)
from .model import (
    Constraint, VcspInstance, WeightedDigraph, build_instance, partition_by_predicate,
    predicate_value, to_digraph, value, value_batch,
)
from .double_cover import DoubleCoverGraph, gamma, map_set_and_family, map_set_single, map_set_triple, pull_back
from .sparsifier import QuadraticFormKind, SamplerConfig, leverage_scores, quadratic_form, sample_sparsifier
from .pipeline import SparsifyReport, sparsify_instance, sparsify_predicate_graph, trivial_sparsifier
from .oracle import VerificationResult, exhaustive_max_error

__version__ = "0.1.0"
