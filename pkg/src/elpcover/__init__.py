"""Vertex cover via an odd-cycle-strengthened LP relaxation.

Exact rational solver stack: graph surgery, dual simplex over rationals,
cutting-plane relaxation engine, reduction pipeline with backtracking cover
construction, additive-error certificates, and desk-scale exact oracles.
"""

from ._rat import Rat, parse_rat, rat_str
from .cover import (
    BoundCertificate,
    Cover,
    HypothesisFailedError,
    backtrack,
    certify,
    validate_cover,
)
from .elp import ElpSolution, classify_edges, explore_alternate_bfs, separate_odd_cycle, solve_elp
from .graph import Graph, GraphFormatError, OddCycle, generate, parse_graph, to_dimacs
from .oracles import (
    CapExceededError,
    OracleResult,
    enumerate_odd_cycles,
    exact_vc,
    hypothesis_verdict,
    independent_odd_cycle_rank,
    matching_2approx,
    nt_half_integral_round,
    small_edge_conjecture_probe,
)
from .reductions import PipelineConfig, ReductionRecord, ReductionTrace, run_pipeline
from .simplex import BasicSolution, InfeasibleError, LpProblem, LpRow, add_row, solve, solve_with_equality

__version__ = "0.1.0"
