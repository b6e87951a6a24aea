"""Constant-pool reader for JVM class files.

Only the header, the constant pool and ``this_class`` are decoded; method
bodies are never looked at.  Every ``CONSTANT_Class`` entry counts as a
reference, which slightly over-approximates real dependencies because the
compiler may leave unused entries in the pool.

Layout (JVMS chapter 4)::

    u4 magic; u2 minor_version; u2 major_version;
    u2 constant_pool_count; cp_info constant_pool[constant_pool_count-1];
    u2 access_flags; u2 this_class; ...
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

MAGIC = 0xCAFEBABE

UTF8 = 1
INTEGER = 3
FLOAT = 4
LONG = 5
DOUBLE = 6
CLASS = 7
STRING = 8
FIELDREF = 9
METHODREF = 10
INTERFACE_METHODREF = 11
NAME_AND_TYPE = 12
METHOD_HANDLE = 15
METHOD_TYPE = 16
DYNAMIC = 17
INVOKE_DYNAMIC = 18
MODULE = 19
PACKAGE = 20

# payload sizes of the fixed-width entries (tag byte excluded)
FIXED_SIZES = {
    INTEGER: 4,
    FLOAT: 4,
    LONG: 8,
    DOUBLE: 8,
    CLASS: 2,
    STRING: 2,
    FIELDREF: 4,
    METHODREF: 4,
    INTERFACE_METHODREF: 4,
    NAME_AND_TYPE: 4,
    METHOD_HANDLE: 3,
    METHOD_TYPE: 2,
    DYNAMIC: 4,
    INVOKE_DYNAMIC: 4,
    MODULE: 2,
    PACKAGE: 2,
}


class ClassFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ClassFileSummary:
    class_name: str
    referenced_classes: frozenset[str]
    version: tuple[int, int]


def decode_modified_utf8(raw: bytes) -> str:
    # Java encodes U+0000 as C0 80 and supplementary characters as
    # surrogate pairs; surrogatepass keeps those decodable.
    return raw.replace(b"\xc0\x80", b"\x00").decode("utf-8", errors="surrogatepass")


def element_class(descriptor: str):
    """Class named by a CONSTANT_Class string, unwrapping array descriptors.

    ``[[Lcom/a/B;`` gives ``com/a/B``; primitive arrays such as ``[I`` give None.
    """
    if not descriptor.startswith("["):
        return descriptor
    element = descriptor.lstrip("[")
    if element.startswith("L") and element.endswith(";") and len(element) > 2:
        return element[1:-1]
    return None


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int, what: str = "malformed constant pool") -> bytes:
        end = self.pos + size
        if end > len(self.data):
            raise ClassFormatError(what)
        chunk = self.data[self.pos:end]
        self.pos = end
        return chunk

    def u1(self, what: str = "malformed constant pool") -> int:
        return self.take(1, what)[0]

    def u2(self, what: str = "malformed constant pool") -> int:
        return struct.unpack(">H", self.take(2, what))[0]


def read_constant_pool(reader: _Reader) -> dict[int, tuple[int, object]]:
    count = reader.u2()
    pool: dict[int, tuple[int, object]] = {}
    index = 1
    while index < count:
        tag = reader.u1()
        if tag == UTF8:
            length = reader.u2()
            pool[index] = (tag, reader.take(length))
            index += 1
        elif tag in FIXED_SIZES:
            payload = reader.take(FIXED_SIZES[tag])
            if tag == CLASS:
                pool[index] = (tag, struct.unpack(">H", payload)[0])
            else:
                pool[index] = (tag, None)
            # long and double occupy two slots
            index += 2 if tag in (LONG, DOUBLE) else 1
        else:
            raise ClassFormatError(f"unsupported constant tag {tag}")
    return pool


def _class_name(pool, index: int) -> str:
    entry = pool.get(index)
    if entry is None or entry[0] != CLASS:
        raise ClassFormatError(f"constant #{index} is not a class entry")
    utf = pool.get(entry[1])
    if utf is None or utf[0] != UTF8:
        raise ClassFormatError(f"class entry #{index} does not point at a UTF-8 entry")
    try:
        return decode_modified_utf8(utf[1])
    except UnicodeDecodeError as exc:
        raise ClassFormatError(f"bad UTF-8 in constant #{entry[1]}") from exc


def parse_class_file(data: bytes) -> ClassFileSummary:
    reader = _Reader(bytes(data))
    if len(reader.data) < 4 or struct.unpack(">I", reader.data[:4])[0] != MAGIC:
        raise ClassFormatError("not a class file")
    reader.take(4)
    minor = reader.u2("truncated class header")
    major = reader.u2("truncated class header")
    pool = read_constant_pool(reader)
    reader.u2("truncated class file")  # access_flags
    this_index = reader.u2("truncated class file")
    name = _class_name(pool, this_index)

    referenced = set()
    for index, (tag, _) in pool.items():
        if tag != CLASS:
            continue
        target = element_class(_class_name(pool, index))
        if target and target != name:
            referenced.add(target)
    return ClassFileSummary(name, frozenset(referenced), (major, minor))
