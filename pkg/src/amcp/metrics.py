"""Cohesion metrics (TurboMQ, normalized cohesion) and social welfare."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

from .graph import CommonRestriction, DependencyGraph, GraphError, Partition, restrict
from .mojo import mojo, u_sta


@dataclass(frozen=True)
class ClusterFlows:
    mu: tuple[int, ...]
    eps: Mapping[tuple[int, int], int]

    def incident_inter(self, cluster: int) -> int:
        """Sum over j != cluster of eps[cluster, j] + eps[j, cluster]."""
        return sum(w for (i, j), w in self.eps.items() if cluster in (i, j))


def cluster_flows(graph: DependencyGraph, partition: Partition) -> ClusterFlows:
    if partition.n != graph.n:
        raise GraphError(f"partition covers {partition.n} modules, graph has {graph.n}")
    labels = partition.assignment
    mu = [0] * partition.k
    eps: dict[tuple[int, int], int] = {}
    for (s, t), w in graph.edges.items():
        a, b = labels[s], labels[t]
        if a == b:
            mu[a] += w
        else:
            eps[(a, b)] = eps.get((a, b), 0) + w
    return ClusterFlows(tuple(mu), eps)


def cluster_factor(mu: float, inter: float) -> float:
    """mu / (mu + inter/2); an edge-free cluster (mu == 0) contributes 0."""
    if mu == 0:
        return 0.0
    return mu / (mu + inter / 2)


def cluster_factors(graph: DependencyGraph, partition: Partition) -> list[float]:
    flows = cluster_flows(graph, partition)
    inter = [0] * partition.k
    for (i, j), w in flows.eps.items():
        inter[i] += w
        inter[j] += w
    return [cluster_factor(m, x) for m, x in zip(flows.mu, inter)]


def turbomq(graph: DependencyGraph, partition: Partition) -> float:
    # fsum makes the total independent of cluster order, which lets the
    # incremental evaluator reproduce it bit for bit.
    return math.fsum(cluster_factors(graph, partition))


def u_coh(graph: DependencyGraph, partition: Partition) -> float:
    return turbomq(graph, partition) / partition.k


def social_welfare(u_coh: float, u_sta: float) -> float:
    return u_coh + u_sta


@dataclass(frozen=True)
class MetricsBundle:
    turbomq: float
    u_coh: float
    u_sta: float
    sw: float
    mojo: int
    k: int
    n_common: int


def evaluate(
    graph: DependencyGraph,
    partition: Partition,
    previous: Partition,
    restriction: Optional[CommonRestriction] = None,
    mode: str = "min",
) -> MetricsBundle:
    """All utilities of ``partition`` against ``previous`` (both over ``graph``)."""
    if restriction is None:
        restriction = CommonRestriction.identity(graph.modules)
    tmq = turbomq(graph, partition)
    cand = restrict(partition, restriction, "new")
    prev = restrict(previous, restriction, "new")
    distance = mojo(cand, prev, mode)
    stability = u_sta(cand, prev, restriction.n_common, mode)
    cohesion = tmq / partition.k
    return MetricsBundle(
        turbomq=tmq,
        u_coh=cohesion,
        u_sta=stability,
        sw=social_welfare(cohesion, stability),
        mojo=distance,
        k=partition.k,
        n_common=restriction.n_common,
    )
