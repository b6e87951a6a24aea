"""MoJo (Move-plus-Join) distance between flat partitions.

The exact one-way distance mno(A, B) is computed by tagging: every cluster of
A is tagged with a cluster of B it overlaps most, modules outside their
cluster's tag group are moved, and clusters sharing a tag are joined.  The
cost is ``(n - sum of overlaps) + (l - distinct tags)`` where ``l`` is the
number of clusters of A.  Restricting tags to maximum-overlap groups never
costs anything (a worse tag loses at least one overlap and gains at most one
distinct tag), so the optimum comes from a maximum bipartite matching
between clusters of A and their maximum-overlap groups.

``mojo_bruteforce`` is an independent breadth-first search over the edit
graph, used to certify the above on small inputs.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Sequence

from .graph import GraphError, Partition

MODES = ("min", "ab", "ba")
ORACLE_LIMIT = 6


def contingency(a: Partition, b: Partition) -> list[list[int]]:
    """table[i][j] = |A_i ∩ B_j|."""
    if a.n != b.n:
        raise GraphError(f"partitions cover different module sets ({a.n} vs {b.n})")
    table = [[0] * b.k for _ in range(a.k)]
    for la, lb in zip(a.assignment, b.assignment):
        table[la][lb] += 1
    return table


def _max_matching(options: Sequence[Sequence[int]]) -> int:
    """Size of a maximum matching; options[i] lists columns row i may take."""
    owner: dict[int, int] = {}

    def augment(row: int, seen: set[int]) -> bool:
        for col in options[row]:
            if col in seen:
                continue
            seen.add(col)
            if col not in owner or augment(owner[col], seen):
                owner[col] = row
                return True
        return False

    return sum(1 for row in range(len(options)) if options[row] and augment(row, set()))


def mno_table(table: Sequence[Sequence[int]]) -> int:
    """One-way MoJo from the row partition to the column partition.

    Rows that are all zero (emptied clusters) are ignored.
    """
    n = 0
    overlap = 0
    options = []
    for row in table:
        best = max(row, default=0)
        if best == 0:
            continue
        n += sum(row)
        overlap += best
        options.append([j for j, c in enumerate(row) if c == best])
    return (n - overlap) + (len(options) - _max_matching(options))


def transpose(table: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*table)] if table else []


def mojo_table(table: Sequence[Sequence[int]], mode: str = "min") -> int:
    if mode == "ab":
        return mno_table(table)
    if mode == "ba":
        return mno_table(transpose(table))
    if mode == "min":
        return min(mno_table(table), mno_table(transpose(table)))
    raise ValueError(f"unknown MoJo mode {mode!r}; expected one of {MODES}")


def mojo(a: Partition, b: Partition, mode: str = "min") -> int:
    """MoJo distance.  ``mode``: "min" (symmetric, default), "ab" or "ba"."""
    return mojo_table(contingency(a, b), mode)


def u_sta(candidate: Partition, previous: Partition, n_common: int, mode: str = "min") -> float:
    """Stability utility 1 - MoJo/n_common over the common-module restriction."""
    if n_common <= 0:
        raise GraphError("no common modules")
    if candidate.n != n_common or previous.n != n_common:
        raise GraphError("partitions must be restricted to the common module set")
    return 1 - mojo(candidate, previous, mode) / n_common


@lru_cache(maxsize=None)
def _neighbours(labels: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    return frozenset(_edits(labels))


def _edits(labels: tuple[int, ...]):
    k = max(labels) + 1
    sizes = [0] * k
    for label in labels:
        sizes[label] += 1
    for module, current in enumerate(labels):
        for target in range(k + 1):
            if target == current or (target == k and sizes[current] == 1):
                continue
            moved = list(labels)
            moved[module] = target
            yield Partition(tuple(moved)).assignment
    for x in range(k):
        for y in range(x + 1, k):
            yield Partition(tuple(x if label == y else label for label in labels)).assignment


def mno_bruteforce(a: Partition, b: Partition) -> int:
    """Shortest Move/Join sequence turning ``a`` into ``b`` (BFS)."""
    if a.n != b.n:
        raise GraphError("partitions cover different module sets")
    if a.n > ORACLE_LIMIT:
        raise GraphError("oracle limit")
    if a.n == 0:
        return 0
    return _distances_from(a.assignment)[b.assignment]


@lru_cache(maxsize=4096)
def _distances_from(start: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    # Moves (including to a fresh singleton) reach every partition, so the
    # BFS covers the whole space of set partitions of n modules.
    dist = {start: 0}
    frontier = deque([start])
    while frontier:
        state = frontier.popleft()
        for nxt in _neighbours(state):
            if nxt not in dist:
                dist[nxt] = dist[state] + 1
                frontier.append(nxt)
    return dist


def mojo_bruteforce(a: Partition, b: Partition, mode: str = "min") -> int:
    if mode == "ab":
        return mno_bruteforce(a, b)
    if mode == "ba":
        return mno_bruteforce(b, a)
    if mode == "min":
        return min(mno_bruteforce(a, b), mno_bruteforce(b, a))
    raise ValueError(f"unknown MoJo mode {mode!r}; expected one of {MODES}")
