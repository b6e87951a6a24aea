"""Incremental scoring of single-module moves.

A move touches at most two clusters, so cohesion after a move only needs the
source and destination cluster factors recomputed, and MoJo after a move only
needs two cells of the contingency table adjusted.  Both trackers produce
values bit-identical to the from-scratch metric functions: cluster factors
are computed from the same integer flows and summed with ``math.fsum``.
"""

from __future__ import annotations

import math
from typing import Optional

from .graph import CommonRestriction, DependencyGraph, GraphError, Partition, restrict
from .metrics import cluster_factor
from .mojo import mojo_table


class CohesionTracker:
    def __init__(self, graph: DependencyGraph, partition: Partition):
        if partition.n != graph.n:
            raise GraphError(f"partition covers {partition.n} modules, graph has {graph.n}")
        labels = partition.assignment
        k = partition.k
        self.labels = labels
        self.k = k
        self.size = partition.sizes()
        # conn[m][c]: weight of edges in either direction between m and cluster c
        self.conn = [[0] * k for _ in range(graph.n)]
        self.degree = [0] * graph.n
        self.mu = [0] * k
        self.cluster_degree = [0] * k
        for (s, t), w in graph.edges.items():
            self.conn[s][labels[t]] += w
            self.conn[t][labels[s]] += w
            self.degree[s] += w
            self.degree[t] += w
            self.cluster_degree[labels[s]] += w
            self.cluster_degree[labels[t]] += w
            if labels[s] == labels[t]:
                self.mu[labels[s]] += w
        self.factors = [
            cluster_factor(self.mu[c], self.cluster_degree[c] - 2 * self.mu[c]) for c in range(k)
        ]
        self.turbomq = math.fsum(self.factors)

    @property
    def u_coh(self) -> float:
        return self.turbomq / self.k

    def after(self, module: int, target: int) -> tuple[float, int]:
        """(TurboMQ, cluster count) after moving ``module`` into ``target``."""
        src = self.labels[module]
        conn = self.conn[module]
        deg = self.degree[module]
        mu_src = self.mu[src] - conn[src]
        mu_dst = self.mu[target] + conn[target]
        factors = list(self.factors)
        factors[target] = cluster_factor(mu_dst, self.cluster_degree[target] + deg - 2 * mu_dst)
        if self.size[src] == 1:
            factors[src] = 0.0
            k = self.k - 1
        else:
            factors[src] = cluster_factor(mu_src, self.cluster_degree[src] - deg - 2 * mu_src)
            k = self.k
        return math.fsum(factors), k


class StabilityTracker:
    """MoJo of the current partition against ``previous`` on the common modules."""

    def __init__(
        self,
        partition: Partition,
        previous: Partition,
        restriction: CommonRestriction,
        mode: str = "min",
    ):
        if partition.n != previous.n:
            raise GraphError("partition and previous decomposition differ in size")
        n_common = restriction.n_common
        if n_common <= 0:
            raise GraphError("no common modules")
        prev = restrict(previous, restriction, "new")
        common = restriction.new_to_common
        # prev_label[m]: previous cluster of module m, None for new-only modules
        self.prev_label: list[Optional[int]] = [
            None if c is None else prev.assignment[c] for c in common
        ]
        self.labels = partition.assignment
        self.mode = mode
        self.n_common = n_common
        self.table = [[0] * prev.k for _ in range(partition.k)]
        for module, p in enumerate(self.prev_label):
            if p is not None:
                self.table[self.labels[module]][p] += 1
        self.mojo = mojo_table(self.table, mode)
        self._cache: dict[tuple, int] = {}

    @property
    def u_sta(self) -> float:
        return 1 - self.mojo / self.n_common

    def after(self, module: int, target: int) -> int:
        """MoJo after moving ``module`` into ``target``."""
        p = self.prev_label[module]
        if p is None:
            return self.mojo
        src = self.labels[module]
        table = [list(row) for row in self.table]
        table[src][p] -= 1
        table[target][p] += 1
        key = tuple(map(tuple, table))
        cached = self._cache.get(key)
        if cached is None:
            cached = self._cache[key] = mojo_table(table, self.mode)
        return cached

    def u_sta_after(self, module: int, target: int) -> float:
        return 1 - self.after(module, target) / self.n_common
