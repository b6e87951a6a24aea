"""CSV readers/writers for edge lists, partitions and negotiation traces."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .graph import DependencyGraph, GraphError, Partition, build_graph


class FormatError(GraphError):
    pass


def _rows(path) -> list[dict[str, str]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise FormatError(f"{path}: no header")
    reader = csv.DictReader(io.StringIO("\n".join(lines)))
    reader.fieldnames = [name.strip() for name in reader.fieldnames or []]
    return [{k: (v or "").strip() for k, v in row.items() if k is not None} for row in reader]


def read_edges(path, modules: Optional[Iterable[str]] = None) -> DependencyGraph:
    """Read a ``source,target[,weight]`` CSV.

    Rows with an empty target declare an isolated module.
    """
    rows = _rows(path)
    if rows and not {"source", "target"} <= set(rows[0]):
        raise FormatError(f"{path}: header must contain source,target")
    declared = set(modules or ())
    triples = []
    for lineno, row in enumerate(rows, start=2):
        source, target = row.get("source", ""), row.get("target", "")
        if source and not target:
            declared.add(source)
            continue
        raw = row.get("weight") or "1"
        try:
            weight = int(raw)
        except ValueError:
            raise FormatError(f"{path}: row {lineno}: bad weight {raw!r}") from None
        triples.append((source, target, weight))
    try:
        return build_graph(triples, declared)
    except GraphError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def write_edges(path, graph: DependencyGraph) -> None:
    connected = {i for pair in graph.edges for i in pair}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["source", "target", "weight"])
        for source, target, weight in graph.edge_list():
            writer.writerow([source, target, weight])
        for i, name in enumerate(graph.modules):
            if i not in connected:
                writer.writerow([name, "", ""])


def read_partition_mapping(path) -> dict[str, str]:
    """Raw ``module -> cluster label`` mapping, labels kept as strings."""
    rows = _rows(path)
    if rows and not {"module", "cluster"} <= set(rows[0]):
        raise FormatError(f"{path}: header must be module,cluster")
    mapping: dict[str, str] = {}
    for row in rows:
        module = row["module"]
        if not module:
            raise FormatError(f"{path}: empty module name")
        if module in mapping:
            raise FormatError(f"{path}: module {module!r} listed twice")
        mapping[module] = row["cluster"]
    if not mapping:
        raise FormatError(f"{path}: empty partition")
    return mapping


def read_partition(path, modules: Sequence[str]) -> Partition:
    try:
        return Partition.from_mapping(modules, read_partition_mapping(path))
    except FormatError:
        raise
    except GraphError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def write_partition(path, modules: Sequence[str], partition: Partition) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["module", "cluster"])
        for name, label in zip(modules, partition.assignment):
            writer.writerow([name, label])


TRACE_HEADER = ["step", "module", "from_cluster", "to_cluster", "u_coh", "u_sta", "ratio", "sw"]


def _num(value: float) -> str:
    return "" if value is None or math.isnan(value) else repr(float(value))


def write_trace(path, modules: Sequence[str], trace: Iterable) -> None:
    """Write step records (anything with the StepRecord attributes)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for rec in trace:
            writer.writerow([
                rec.step,
                modules[rec.move.module],
                rec.move.from_cluster,
                rec.move.to_cluster,
                _num(rec.u_coh),
                _num(rec.u_sta),
                _num(rec.ratio),
                _num(rec.sw),
            ])


def write_json(path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
