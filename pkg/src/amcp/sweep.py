"""Stability-budget sensitivity sweeps."""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import CommonRestriction, DependencyGraph, Partition
from .negotiation import NegotiationResult, ThresholdConfig, negotiate

SWEEP_HEADER = ["tau_sta", "u_coh", "u_sta", "sw", "steps", "diverged"]


@dataclass(frozen=True)
class SweepResult:
    tau_sta: float
    u_coh: float
    u_sta: float
    sw: float
    steps: int
    # final partition differs from the unconstrained (tau_sta = 0) run
    diverged: bool
    termination: str = ""

    def row(self) -> list:
        return [
            repr(self.tau_sta),
            repr(self.u_coh),
            repr(self.u_sta),
            repr(self.sw),
            self.steps,
            "yes" if self.diverged else "no",
        ]


def _run(args) -> NegotiationResult:
    graph, previous, restriction, tau_sta, tau_coh, mode = args
    return negotiate(graph, previous, restriction, ThresholdConfig(tau_sta, tau_coh), mode)


def sweep(
    graph: DependencyGraph,
    previous: Partition,
    restriction: Optional[CommonRestriction],
    tau_sta_values: Sequence[float],
    tau_coh: float,
    mode: str = "min",
    workers: int = 1,
) -> tuple[list[SweepResult], NegotiationResult]:
    """One row per budget, plus the unconstrained reference run."""
    if not tau_sta_values:
        raise ValueError("empty tau_sta list")
    jobs = [(graph, previous, restriction, t, tau_coh, mode) for t in [0.0, *tau_sta_values]]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, jobs))
    else:
        results = [_run(job) for job in jobs]
    reference, runs = results[0], results[1:]
    rows = [
        SweepResult(
            tau_sta=tau,
            u_coh=r.final_u_coh,
            u_sta=r.final_u_sta,
            sw=r.final_sw,
            steps=r.steps,
            diverged=r.final_partition != reference.final_partition,
            termination=r.termination,
        )
        for tau, r in zip(tau_sta_values, runs)
    ]
    return rows, reference


def write_sweep(path, rows: Sequence[SweepResult]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow(row.row())
