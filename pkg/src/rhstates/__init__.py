"""Randomized hypergraph states and their entanglement measures."""

__version__ = "0.1.0"

from .hypergraph import (
    Bipartition,
    Hypergraph,
    HypergraphError,
    HypergraphParseError,
    bipartitions,
    parse_hypergraph,
    spanning_subhypergraphs,
)
from .states import (
    apply_ce,
    density,
    hermitian_eigenvalues,
    hypergraph_state,
    partial_trace,
    partial_transpose,
    plus_state,
    trace_norm,
)
from .randomize import apply_noisy_gate, randomize, randomize_mixture
from .measures import (
    ThresholdReport,
    concurrence,
    find_thresholds,
    negativity,
    reduced_concurrence,
)
from .gmn import (
    SdpSolution,
    SolverError,
    WitnessProblem,
    certify_solution,
    gmn,
    gmn_solution,
    solve_witness_sdp,
)
from .presets import PRESETS, identify_presets
from .sweep import Range, SweepConfig, SweepResult, emit_csv, parse_csv, run_sweep
