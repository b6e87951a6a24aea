import io
import random

import pytest

from amcp.extraction.classfile import ClassFormatError, element_class, parse_class_file

from classfiles import (
    MINIMAL,
    assemble,
    class_ref,
    double_const,
    long_const,
    simple_class,
    utf8,
)


def jawa_view(blob):
    """Independent reading of a class file via the jawa library."""
    jawa = pytest.importorskip("jawa.cf")
    from jawa.constants import ConstantClass

    cf = jawa.ClassFile(io.BytesIO(blob))
    names = {c.name.value for c in cf.constants.find(type_=ConstantClass)}
    return cf.this.name.value, names, (cf.version.major, cf.version.minor)


def test_minimal_class():
    summary = parse_class_file(MINIMAL)
    assert summary.class_name == "Min"
    assert summary.referenced_classes == {"java/lang/Object"}
    assert summary.version == (52, 0)


def test_minimal_class_agrees_with_jawa():
    name, classes, version = jawa_view(MINIMAL)
    summary = parse_class_file(MINIMAL)
    assert name == summary.class_name
    assert classes - {name} == summary.referenced_classes
    assert version == summary.version


def test_builder_matches_hand_bytes():
    assert simple_class("Min") == MINIMAL


def test_long_and_double_take_two_slots():
    entries = [
        long_const(1 << 40),  # #1-#2
        utf8("p/Wide"),  # #3
        class_ref(3),  # #4
        double_const(2.5),  # #5-#6
        utf8("p/Other"),  # #7
        class_ref(7),  # #8
    ]
    blob = assemble(entries, this_class=4, slots=8)
    summary = parse_class_file(blob)
    assert summary.class_name == "p/Wide"
    assert summary.referenced_classes == {"p/Other"}
    name, classes, _ = jawa_view(blob)
    assert name == "p/Wide" and classes == {"p/Wide", "p/Other"}


def test_array_descriptors():
    blob = simple_class("com/a/A", refs=["[[Lcom/a/B;", "[I", "[Ljava/lang/String;"])
    summary = parse_class_file(blob)
    assert summary.referenced_classes == {"java/lang/Object", "com/a/B", "java/lang/String"}


def test_self_reference_excluded():
    blob = simple_class("com/a/A", refs=["[Lcom/a/A;"])
    assert parse_class_file(blob).referenced_classes == {"java/lang/Object"}


@pytest.mark.parametrize(
    "descriptor, expected",
    [("a/B", "a/B"), ("[La/B;", "a/B"), ("[[[La/B;", "a/B"), ("[J", None), ("[[Z", None)],
)
def test_element_class(descriptor, expected):
    assert element_class(descriptor) == expected


def test_bad_magic():
    with pytest.raises(ClassFormatError, match="not a class file"):
        parse_class_file(bytes(16))
    with pytest.raises(ClassFormatError, match="not a class file"):
        parse_class_file(b"\xca\xfe")


def test_truncated_pool():
    for cut in range(10, len(MINIMAL) - 14):
        with pytest.raises(ClassFormatError, match="malformed constant pool"):
            parse_class_file(MINIMAL[:cut])


def test_truncated_after_pool():
    with pytest.raises(ClassFormatError, match="truncated class file"):
        parse_class_file(MINIMAL[:-12])


def test_unknown_tag():
    blob = assemble([b"\x02\x00\x00"], this_class=1)
    with pytest.raises(ClassFormatError, match="unsupported constant tag 2"):
        parse_class_file(blob)


def test_dangling_class_index():
    blob = assemble([class_ref(9)], this_class=1)
    with pytest.raises(ClassFormatError):
        parse_class_file(blob)


def test_never_crashes_on_garbage():
    rng = random.Random(0)
    good = simple_class("x/Y", refs=["x/Z", "[Lx/W;"])
    for _ in range(2000):
        blob = bytearray(good)
        for _ in range(rng.randint(1, 4)):
            blob[rng.randrange(len(blob))] = rng.randrange(256)
        blob = bytes(blob[: rng.randint(0, len(blob))])
        try:
            parse_class_file(blob)
        except ClassFormatError:
            pass
