"""dhglets: counting, sampling estimation, and characterization of the 91
directed hypergraphlets.

A directed hypergraph is a set of hyperarcs, each an ordered pair of
disjoint non-empty node sets (tail -> head).  Every pair of incident
hyperarcs falls into one of 91 classes determined by which of eight node
regions of the four involved sets are non-empty.  This package derives the
taxonomy from first principles, counts class instances exactly or by three
unbiased sampling estimators, randomizes graphs under a degree-preserving
configuration model, generates synthetic graphs, and computes
characteristic profiles and related analytics.
"""

__version__ = "0.1.0"

from .classify import (
    DUPLICATE_MASK,
    NUM_CLASSES,
    ClassTable,
    DuplicatePairError,
    NotIncidentError,
    RegionPattern,
    canonical_mask,
    canonicalize,
    classify_pair,
    default_table,
    enumerate_classes,
    load_reference_numbering,
    region_pattern,
)
from .core import (
    DirectedHypergraph,
    GraphStats,
    Hyperarc,
    ParseError,
    PreconditionError,
    parse,
    read_file,
    serialize,
    write_file,
)
from .count import (
    ALGORITHMS,
    EmptySampleSpaceError,
    LineGraph,
    NodeWeightTable,
    SampleBudget,
    build_line_graph,
    count_a2a,
    count_coda_a,
    count_dmochy,
    count_exact,
    feature_vector_arc,
    feature_vector_node,
    required_samples,
    run_algorithm,
    run_batched,
    sample_weighted_pairs,
)
from .generate import GenSpec, generate
from .profiles import (
    CpResult,
    DegenerateProfileError,
    MissingTimestampError,
    SnapshotSeries,
    characteristic_profile,
    cos_metric,
    cp_from_graph,
    err_metric,
    pearson_similarity,
    significance,
    similarity_matrix,
    snapshots,
)
from .randomize import randomize, shuffle_sets
from .rng import RNG_ALGORITHM, derive_seed, make_rng

__all__ = [
    "ALGORITHMS",
    "ClassTable",
    "CpResult",
    "DUPLICATE_MASK",
    "DegenerateProfileError",
    "DirectedHypergraph",
    "DuplicatePairError",
    "EmptySampleSpaceError",
    "GenSpec",
    "GraphStats",
    "Hyperarc",
    "LineGraph",
    "MissingTimestampError",
    "NUM_CLASSES",
    "NodeWeightTable",
    "NotIncidentError",
    "ParseError",
    "PreconditionError",
    "RNG_ALGORITHM",
    "RegionPattern",
    "SampleBudget",
    "SnapshotSeries",
    "build_line_graph",
    "canonical_mask",
    "canonicalize",
    "characteristic_profile",
    "classify_pair",
    "cos_metric",
    "count_a2a",
    "count_coda_a",
    "count_dmochy",
    "count_exact",
    "cp_from_graph",
    "default_table",
    "derive_seed",
    "enumerate_classes",
    "err_metric",
    "feature_vector_arc",
    "feature_vector_node",
    "generate",
    "load_reference_numbering",
    "make_rng",
    "parse",
    "pearson_similarity",
    "randomize",
    "read_file",
    "region_pattern",
    "required_samples",
    "run_algorithm",
    "run_batched",
    "sample_weighted_pairs",
    "serialize",
    "shuffle_sets",
    "significance",
    "similarity_matrix",
    "snapshots",
    "write_file",
]
