"""Negotiated software module clustering under a stability budget."""

__version__ = "0.1.0"

from .graph import (
    CommonRestriction,
    DependencyGraph,
    GraphError,
    Move,
    Partition,
    apply_move,
    build_graph,
    enumerate_moves,
    restrict,
)
from .metrics import ClusterFlows, MetricsBundle, cluster_flows, evaluate, social_welfare, turbomq, u_coh
from .mojo import mojo, mojo_bruteforce, u_sta
from .negotiation import (
    CandidateEvaluation,
    NegotiationResult,
    StepRecord,
    ThresholdConfig,
    concession_ratio,
    negotiate,
    select_move,
    valid_moves,
    verify_local_pareto,
)
