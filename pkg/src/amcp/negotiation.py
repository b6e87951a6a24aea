"""Asymmetric monotonic concession between a cohesion and a stability agent.

Starting from the previous decomposition, the stability agent proposes, in
every round, the single-module reassignment that costs the least stability
per unit of cohesion gained.  A move is admissible only if it strictly raises
cohesion and keeps stability at or above the architect's budget.  The run
ends once cohesion reaches its target, or in deadlock when no admissible
move is left.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .evaluator import CohesionTracker, StabilityTracker
from .graph import (
    CommonRestriction,
    DependencyGraph,
    Move,
    Partition,
    apply_move,
    enumerate_moves,
    restrict,
)
from .metrics import social_welfare, u_coh
from .mojo import u_sta

logger = logging.getLogger(__name__)

IMPROVEMENT_EPS = 1e-12

THRESHOLD_REACHED = "threshold_reached"
DEADLOCK = "deadlock"


class DeadlockError(RuntimeError):
    """No admissible move remains."""


@dataclass(frozen=True)
class ThresholdConfig:
    tau_sta: float
    tau_coh: float

    def __post_init__(self):
        for name in ("tau_sta", "tau_coh"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


@dataclass(frozen=True)
class CandidateEvaluation:
    move: Move
    partition_after: Partition
    u_coh_after: float
    u_sta_after: float
    ratio: float


@dataclass(frozen=True)
class StepRecord:
    step: int
    move: Move
    u_coh: float
    u_sta: float
    ratio: float
    sw: float
    valid_move_count: int
    candidates_evaluated: int = 0


@dataclass
class NegotiationResult:
    final_partition: Partition
    trace: list[StepRecord]
    termination: str
    initial_u_coh: float
    initial_u_sta: float
    config: Optional[ThresholdConfig] = None
    # candidate evaluations in every round, including a final deadlocked one
    evaluations: list[int] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.trace)

    @property
    def final_u_coh(self) -> float:
        return self.trace[-1].u_coh if self.trace else self.initial_u_coh

    @property
    def final_u_sta(self) -> float:
        return self.trace[-1].u_sta if self.trace else self.initial_u_sta

    @property
    def final_sw(self) -> float:
        return social_welfare(self.final_u_coh, self.final_u_sta)

    @property
    def ratio_decreases(self) -> int:
        """How often the concession ratio dropped from one step to the next."""
        ratios = [rec.ratio for rec in self.trace]
        return sum(1 for a, b in zip(ratios, ratios[1:]) if b < a)

    def to_json(self, modules: Sequence[str]) -> dict:
        return {
            "termination": self.termination,
            "steps": self.steps,
            "initial": {"u_coh": self.initial_u_coh, "u_sta": self.initial_u_sta},
            "final": {
                "u_coh": self.final_u_coh,
                "u_sta": self.final_u_sta,
                "sw": self.final_sw,
            },
            "ratio_decreases": self.ratio_decreases,
            "config": None
            if self.config is None
            else {"tau_sta": self.config.tau_sta, "tau_coh": self.config.tau_coh},
            "final_partition": self.final_partition.to_mapping(modules),
        }


def concession_ratio(
    u_sta_before: float, u_sta_after: float, u_coh_before: float, u_coh_after: float
) -> float:
    """Stability given up per unit of cohesion gained (may be <= 0)."""
    gain = u_coh_after - u_coh_before
    if not gain > IMPROVEMENT_EPS:
        raise ValueError(f"cohesion gain must be positive, got {gain!r}")
    return (u_sta_before - u_sta_after) / gain


def _default_restriction(graph: DependencyGraph, restriction: Optional[CommonRestriction]):
    return CommonRestriction.identity(graph.modules) if restriction is None else restriction


def _round(graph, partition, previous, restriction, config, mode):
    cohesion = CohesionTracker(graph, partition)
    stability = StabilityTracker(partition, previous, restriction, mode)
    u_coh_now = cohesion.u_coh
    u_sta_now = stability.u_sta
    candidates = []
    evaluated = 0
    for move in enumerate_moves(partition):
        evaluated += 1
        tmq, k = cohesion.after(move.module, move.to_cluster)
        u_coh_new = tmq / k
        if not u_coh_new - u_coh_now > IMPROVEMENT_EPS:
            continue
        u_sta_new = stability.u_sta_after(move.module, move.to_cluster)
        if not u_sta_new >= config.tau_sta:
            continue
        ratio = (u_sta_now - u_sta_new) / (u_coh_new - u_coh_now)
        candidates.append(
            CandidateEvaluation(move, apply_move(partition, move), u_coh_new, u_sta_new, ratio)
        )
    return candidates, evaluated, u_coh_now, u_sta_now


def valid_moves(
    graph: DependencyGraph,
    partition: Partition,
    previous: Partition,
    restriction: Optional[CommonRestriction],
    config: ThresholdConfig,
    mode: str = "min",
) -> list[CandidateEvaluation]:
    """Admissible moves from ``partition``, in enumeration order."""
    restriction = _default_restriction(graph, restriction)
    return _round(graph, partition, previous, restriction, config, mode)[0]


def select_move(candidates: Sequence[CandidateEvaluation]) -> CandidateEvaluation:
    """Lowest concession ratio; ties go to the lower (module, target) pair."""
    if not candidates:
        raise DeadlockError("deadlock")
    return min(candidates, key=lambda c: (c.ratio, c.move.module, c.move.to_cluster))


def negotiate(
    graph: DependencyGraph,
    previous: Partition,
    restriction: Optional[CommonRestriction] = None,
    config: ThresholdConfig = ThresholdConfig(0.0, 1.0),
    mode: str = "min",
) -> NegotiationResult:
    restriction = _default_restriction(graph, restriction)
    partition = previous
    cohesion = CohesionTracker(graph, partition)
    stability = StabilityTracker(partition, previous, restriction, mode)
    current_coh, current_sta = cohesion.u_coh, stability.u_sta
    result = NegotiationResult(partition, [], THRESHOLD_REACHED, current_coh, current_sta, config)

    while current_coh < config.tau_coh:
        candidates, evaluated, _, _ = _round(graph, partition, previous, restriction, config, mode)
        result.evaluations.append(evaluated)
        if not candidates:
            result.termination = DEADLOCK
            break
        best = select_move(candidates)
        partition = best.partition_after
        current_coh, current_sta = best.u_coh_after, best.u_sta_after
        record = StepRecord(
            step=len(result.trace) + 1,
            move=best.move,
            u_coh=current_coh,
            u_sta=current_sta,
            ratio=best.ratio,
            sw=social_welfare(current_coh, current_sta),
            valid_move_count=len(candidates),
            candidates_evaluated=evaluated,
        )
        result.trace.append(record)
        logger.debug(
            "step %d: %s u_coh=%.6f u_sta=%.6f ratio=%.6f (%d valid)",
            record.step, best.move, current_coh, current_sta, best.ratio, len(candidates),
        )

    result.final_partition = partition
    return result


def verify_local_pareto(
    graph: DependencyGraph,
    final_partition: Partition,
    previous: Partition,
    restriction: Optional[CommonRestriction],
    config: ThresholdConfig,
    mode: str = "min",
) -> bool:
    """True iff no single move from ``final_partition`` is still admissible.

    Recomputes every neighbour from scratch with the plain metric functions,
    independently of the incremental evaluator used by :func:`negotiate`.
    """
    restriction = _default_restriction(graph, restriction)
    n_common = restriction.n_common
    prev = restrict(previous, restriction, "new")
    base = u_coh(graph, final_partition)
    for move in enumerate_moves(final_partition):
        after = apply_move(final_partition, move)
        if u_coh(graph, after) - base <= IMPROVEMENT_EPS:
            continue
        if u_sta(restrict(after, restriction, "new"), prev, n_common, mode) >= config.tau_sta:
            return False
    return True
