from .classfile import ClassFileSummary, ClassFormatError, element_class, parse_class_file
from .snapshot import (
    ExtractionError,
    ExtractOptions,
    VersionSnapshot,
    align_versions,
    build_snapshot,
    extract_snapshot,
    read_classes,
    seed_previous,
)

__all__ = [
    "ClassFileSummary",
    "ClassFormatError",
    "ExtractOptions",
    "ExtractionError",
    "VersionSnapshot",
    "align_versions",
    "build_snapshot",
    "element_class",
    "extract_snapshot",
    "parse_class_file",
    "read_classes",
    "seed_previous",
]
