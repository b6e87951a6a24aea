"""Steepest-ascent TurboMQ hill climbing, blind to stability.

This approximates the Bunch hill-climbing family: every step applies the
single-module move with the largest TurboMQ gain.  It is a reference point
for the negotiated runs, not a reimplementation of Bunch itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .evaluator import CohesionTracker
from .graph import CommonRestriction, DependencyGraph, Move, Partition, apply_move, enumerate_moves
from .metrics import evaluate
from .negotiation import IMPROVEMENT_EPS, ThresholdConfig, negotiate

DEFAULT_MAX_STEPS = 100_000


def climb(graph: DependencyGraph, start: Partition, max_steps: int = DEFAULT_MAX_STEPS) -> Iterator[tuple[Move, Partition, float]]:
    """Yield (move, partition after, TurboMQ after) for every accepted step."""
    partition = start
    for _ in range(max_steps):
        tracker = CohesionTracker(graph, partition)
        best: Optional[Move] = None
        best_tmq = tracker.turbomq
        for move in enumerate_moves(partition):
            tmq, _ = tracker.after(move.module, move.to_cluster)
            # strict > keeps the first (lowest module, target) move on ties
            if tmq - tracker.turbomq > IMPROVEMENT_EPS and tmq > best_tmq:
                best, best_tmq = move, tmq
        if best is None:
            return
        partition = apply_move(partition, best)
        yield best, partition, best_tmq


def hillclimb_turbomq(graph: DependencyGraph, start: Partition, max_steps: int = DEFAULT_MAX_STEPS) -> tuple[Partition, int]:
    partition, steps = start, 0
    for _, partition, _ in climb(graph, start, max_steps):
        steps += 1
    return partition, steps


@dataclass(frozen=True)
class ComparisonRow:
    system: str
    tau_sta: Optional[float]
    u_coh: float
    u_sta: float
    sw: float
    steps: int

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "tau_sta": self.tau_sta,
            "u_coh": self.u_coh,
            "u_sta": self.u_sta,
            "sw": self.sw,
            "steps": self.steps,
        }


def compare_runs(
    graph: DependencyGraph,
    previous: Partition,
    restriction: Optional[CommonRestriction],
    config: ThresholdConfig,
    tau_sta_values: Optional[Iterable[float]] = None,
    mode: str = "min",
) -> list[ComparisonRow]:
    """Negotiated rows (one per budget) followed by the hill-climb row."""
    taus: Sequence[float] = [config.tau_sta] if tau_sta_values is None else list(tau_sta_values)
    rows = []
    for tau in taus:
        result = negotiate(graph, previous, restriction, ThresholdConfig(tau, config.tau_coh), mode)
        rows.append(ComparisonRow("AMCP", tau, result.final_u_coh, result.final_u_sta, result.final_sw, result.steps))
    final, steps = hillclimb_turbomq(graph, previous)
    m = evaluate(graph, final, previous, restriction, mode)
    rows.append(ComparisonRow("hill-climb", None, m.u_coh, m.u_sta, m.sw, steps))
    return rows
