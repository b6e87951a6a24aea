"""Turn directories or JARs of class files into dependency snapshots."""

from __future__ import annotations

import logging
import zipfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional

from ..graph import CommonRestriction, DependencyGraph, GraphError, Partition, build_graph
from .classfile import ClassFileSummary, ClassFormatError, parse_class_file

logger = logging.getLogger(__name__)

SKIPPED_CLASSES = ("module-info", "package-info")


class ExtractionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExtractOptions:
    merge_nested: bool = True
    weighted: bool = False

    def to_json(self) -> dict:
        return {"merge_nested": self.merge_nested, "weighted": self.weighted}


@dataclass(frozen=True)
class VersionSnapshot:
    label: str
    graph: DependencyGraph
    package_partition: Partition
    packages: tuple[str, ...] = ()
    manifest: dict = field(default_factory=dict, compare=False)

    def package_of(self) -> dict[str, str]:
        return {
            name: self.packages[label]
            for name, label in zip(self.graph.modules, self.package_partition.assignment)
        }


def _class_blobs(path: Path) -> Iterator[tuple[str, bytes]]:
    if path.is_dir():
        for file in sorted(path.rglob("*.class")):
            yield str(file.relative_to(path)), file.read_bytes()
    elif path.is_file() and path.suffix == ".class":
        yield path.name, path.read_bytes()
    elif path.is_file():
        try:
            with zipfile.ZipFile(path) as archive:
                for info in sorted(archive.infolist(), key=lambda i: i.filename):
                    if info.filename.endswith(".class") and not info.filename.startswith("META-INF/"):
                        yield info.filename, archive.read(info)
        except (zipfile.BadZipFile, OSError) as exc:
            raise ExtractionError(f"unreadable archive {path}: {exc}") from exc
    else:
        raise ExtractionError(f"no such file or directory: {path}")


def read_classes(path) -> list[ClassFileSummary]:
    """Parse every class file under ``path``; later duplicates are ignored."""
    seen: dict[str, ClassFileSummary] = {}
    for entry, blob in _class_blobs(Path(path)):
        try:
            summary = parse_class_file(blob)
        except ClassFormatError as exc:
            raise ExtractionError(f"{entry}: {exc}") from exc
        if summary.class_name.rsplit("/", 1)[-1] in SKIPPED_CLASSES:
            continue
        if summary.class_name in seen:
            logger.warning("duplicate class %s in %s, keeping the first", summary.class_name, entry)
            continue
        seen[summary.class_name] = summary
    return [seen[name] for name in sorted(seen)]


def dotted(internal_name: str) -> str:
    return internal_name.replace("/", ".")


def package_name(module: str) -> str:
    return module.rsplit(".", 1)[0] if "." in module else ""


def build_snapshot(
    classes: Iterable[ClassFileSummary],
    label: str = "",
    options: ExtractOptions = ExtractOptions(),
) -> VersionSnapshot:
    classes = list(classes)
    if not classes:
        raise ExtractionError("zero class files")
    names = {dotted(c.class_name) for c in classes}

    def module_of(name: str) -> Optional[str]:
        if options.merge_nested and "$" in name:
            outer = name.split("$", 1)[0]
            if outer in names:
                return outer
        return name if name in names else None

    counts: dict[tuple[str, str], int] = {}
    dropped: set[tuple[str, str]] = set()
    for summary in classes:
        source = module_of(dotted(summary.class_name))
        for ref in sorted(summary.referenced_classes):
            target = module_of(dotted(ref))
            if target is None:
                dropped.add((source, dotted(ref)))
            elif target != source:
                counts[(source, target)] = counts.get((source, target), 0) + 1

    modules = sorted({module_of(n) for n in names})
    triples = [(s, t, w if options.weighted else 1) for (s, t), w in sorted(counts.items())]
    graph = build_graph(triples, modules)
    packages = tuple(sorted({package_name(m) for m in graph.modules}))
    by_name = {p: i for i, p in enumerate(packages)}
    raw = [by_name[package_name(m)] for m in graph.modules]
    partition = Partition(tuple(raw))
    # keep package names aligned with canonical cluster labels
    ordered: dict[int, str] = {}
    for canon, original in zip(partition.assignment, raw):
        ordered.setdefault(canon, packages[original])
    packages = tuple(ordered[i] for i in range(partition.k))

    manifest = {
        "label": label,
        "class_file_count": len(classes),
        "module_count": graph.n,
        "edge_count": len(graph.edges),
        "package_count": partition.k,
        "dropped_reference_count": len(dropped),
        "options": options.to_json(),
    }
    return VersionSnapshot(label, graph, partition, packages, manifest)


def extract_snapshot(path, options: ExtractOptions = ExtractOptions(), label: str = "") -> VersionSnapshot:
    return build_snapshot(read_classes(path), label or Path(path).name, options)


def seed_previous(
    graph: DependencyGraph, old_clusters: Mapping[str, object]
) -> tuple[CommonRestriction, Partition]:
    """Place the previous decomposition onto ``graph``'s modules.

    Common modules keep their old cluster.  A module that only exists in
    ``graph`` joins the cluster of its lexicographically first dependency
    target that is a common module, or else opens a fresh singleton cluster.
    """
    restriction = CommonRestriction.between(sorted(old_clusters), graph.modules)
    if restriction.n_common == 0:
        raise GraphError("no common modules")
    successors = graph.successors()
    labels: list[object] = []
    for i, name in enumerate(graph.modules):
        if name in old_clusters:
            labels.append(("old", old_clusters[name]))
            continue
        targets = sorted(graph.modules[t] for t, _ in successors[i] if graph.modules[t] in old_clusters)
        labels.append(("old", old_clusters[targets[0]]) if targets else ("new", name))
    return restriction, Partition(tuple(labels))


def align_versions(old: VersionSnapshot, new: VersionSnapshot) -> tuple[CommonRestriction, Partition]:
    """Common-module restriction plus the old packages seeded onto ``new``."""
    if old.manifest.get("options") != new.manifest.get("options"):
        raise ExtractionError("snapshots were extracted with different options")
    old_clusters = dict(zip(old.graph.modules, old.package_partition.assignment))
    return seed_previous(new.graph, old_clusters)
