"""Dependency graphs, flat partitions and single-module moves.

Modules are identified by name and indexed in lexicographic order, so the
same edge list always yields the same indices.  Partitions store labels in
canonical form (0..k-1 by first occurrence over module index), which makes
structurally equal partitions compare and hash equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs, partitions, moves or restrictions."""


@dataclass(frozen=True)
class DependencyGraph:
    modules: tuple[str, ...]
    edges: Mapping[tuple[int, int], int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.modules)

    def index(self, name: str) -> int:
        try:
            return self._index_map[name]
        except KeyError:
            raise GraphError(f"unknown module {name!r}") from None

    @property
    def _index_map(self) -> dict[str, int]:
        cached = self.__dict__.get("_idx")
        if cached is None:
            cached = {name: i for i, name in enumerate(self.modules)}
            object.__setattr__(self, "_idx", cached)
        return cached

    def total_weight(self) -> int:
        return sum(self.edges.values())

    def edge_list(self) -> list[tuple[str, str, int]]:
        """Edges as (source, target, weight) name triples, sorted by index."""
        return [(self.modules[s], self.modules[t], w) for (s, t), w in sorted(self.edges.items())]

    def successors(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for (s, t), w in sorted(self.edges.items()):
            out[s].append((t, w))
        return out


def build_graph(
    edge_list: Iterable[tuple[str, str, int]],
    modules: Optional[Iterable[str]] = None,
) -> DependencyGraph:
    """Build a graph from (source, target, weight) triples.

    Duplicate pairs are summed and self-loops dropped.  ``modules`` declares
    extra (possibly isolated) module names.
    """
    names: set[str] = set(modules or ())
    merged: dict[tuple[str, str], int] = {}
    for source, target, weight in edge_list:
        if not source or not target:
            raise GraphError("module names must be non-empty")
        if weight < 1 or int(weight) != weight:
            raise GraphError(f"edge {source}->{target} has invalid weight {weight!r}")
        names.add(source)
        names.add(target)
        if source == target:
            continue
        merged[(source, target)] = merged.get((source, target), 0) + int(weight)
    if "" in names:
        raise GraphError("module names must be non-empty")
    if not names:
        raise GraphError("empty graph")
    ordered = tuple(sorted(names))
    index = {name: i for i, name in enumerate(ordered)}
    edges = {(index[s], index[t]): w for (s, t), w in merged.items()}
    return DependencyGraph(ordered, edges)


def canonical_labels(labels: Sequence) -> tuple[int, ...]:
    relabel: dict = {}
    return tuple(relabel.setdefault(label, len(relabel)) for label in labels)


@dataclass(frozen=True)
class Partition:
    """Flat assignment of module indices to cluster labels.

    Always canonical: construct through :meth:`from_labels` (or pass labels
    that are already canonical; the constructor re-canonicalizes anyway).
    """

    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", canonical_labels(self.assignment))

    @classmethod
    def from_labels(cls, labels: Iterable) -> "Partition":
        return cls(tuple(labels))

    @classmethod
    def from_mapping(cls, modules: Sequence[str], mapping: Mapping[str, object]) -> "Partition":
        missing = [m for m in modules if m not in mapping]
        extra = set(mapping) - set(modules)
        if missing or extra:
            raise GraphError(
                f"partition does not match module set (missing {sorted(missing)[:5]}, "
                f"extra {sorted(extra)[:5]})"
            )
        return cls(tuple(mapping[m] for m in modules))

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def k(self) -> int:
        return max(self.assignment) + 1 if self.assignment else 0

    def clusters(self) -> list[list[int]]:
        groups: list[list[int]] = [[] for _ in range(self.k)]
        for module, label in enumerate(self.assignment):
            groups[label].append(module)
        return groups

    def sizes(self) -> list[int]:
        sizes = [0] * self.k
        for label in self.assignment:
            sizes[label] += 1
        return sizes

    def to_mapping(self, modules: Sequence[str]) -> dict[str, int]:
        if len(modules) != self.n:
            raise GraphError("module list length does not match partition")
        return dict(zip(modules, self.assignment))


@dataclass(frozen=True, order=True)
class Move:
    module: int
    from_cluster: int
    to_cluster: int


def apply_move(partition: Partition, move: Move) -> Partition:
    """Return ``partition`` with one module reassigned (input untouched)."""
    if not 0 <= move.module < partition.n:
        raise GraphError(f"module index {move.module} out of range")
    if move.from_cluster == move.to_cluster:
        raise GraphError("move must change the module's cluster")
    if partition.assignment[move.module] != move.from_cluster:
        raise GraphError(
            f"module {move.module} is in cluster {partition.assignment[move.module]}, "
            f"not {move.from_cluster}"
        )
    if not 0 <= move.to_cluster < partition.k:
        raise GraphError(f"target cluster {move.to_cluster} is empty or does not exist")
    labels = list(partition.assignment)
    labels[move.module] = move.to_cluster
    return Partition(tuple(labels))


def enumerate_moves(partition: Partition) -> list[Move]:
    """All reassignments of one module into another existing cluster."""
    k = partition.k
    return [
        Move(module, current, target)
        for module, current in enumerate(partition.assignment)
        for target in range(k)
        if target != current
    ]


@dataclass(frozen=True)
class CommonRestriction:
    """Modules shared by an old and a new version, with index maps into them.

    ``old_to_common[i]`` is the common index of old module ``i`` (or None if
    the module only exists in the old version); likewise ``new_to_common``.
    """

    common_names: tuple[str, ...]
    old_to_common: tuple[Optional[int], ...]
    new_to_common: tuple[Optional[int], ...]

    @property
    def n_common(self) -> int:
        return len(self.common_names)

    @classmethod
    def between(cls, old_modules: Sequence[str], new_modules: Sequence[str]) -> "CommonRestriction":
        common = tuple(sorted(set(old_modules) & set(new_modules)))
        position = {name: i for i, name in enumerate(common)}
        return cls(
            common,
            tuple(position.get(name) for name in old_modules),
            tuple(position.get(name) for name in new_modules),
        )

    @classmethod
    def identity(cls, modules: Sequence[str]) -> "CommonRestriction":
        return cls.between(modules, modules)

    def index_map(self, side: str) -> tuple[Optional[int], ...]:
        if side == "old":
            return self.old_to_common
        if side == "new":
            return self.new_to_common
        raise GraphError(f"side must be 'old' or 'new', got {side!r}")

    def is_identity(self, side: str = "new") -> bool:
        mapping = self.index_map(side)
        return len(mapping) == self.n_common and all(c == i for i, c in enumerate(mapping))


def restrict(partition: Partition, restriction: CommonRestriction, side: str = "new") -> Partition:
    """Project ``partition`` (over one version's modules) onto the common modules."""
    mapping = restriction.index_map(side)
    if len(mapping) != partition.n:
        raise GraphError(
            f"restriction expects {len(mapping)} modules on the {side} side, "
            f"partition has {partition.n}"
        )
    labels = [0] * restriction.n_common
    for module, common in enumerate(mapping):
        if common is not None:
            labels[common] = partition.assignment[module]
    return Partition(tuple(labels))
