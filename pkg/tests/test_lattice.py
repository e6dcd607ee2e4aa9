import pytest

from nagata.errors import ClassSyntaxError, DimensionMismatch
from nagata.exactnum import QuadNum
from nagata.lattice import (
    DivisorClass,
    anticanonical_class,
    arithmetic_genus,
    canonical_class,
    class_from_json,
    class_to_json,
    exceptional,
    line,
    pair,
    parse_class,
    render_class,
)


def test_basic_pairings():
    n = 5
    assert pair(line(n), line(n)) == 1
    assert pair(exceptional(n, 2), exceptional(n, 2)) == -1
    assert pair(line(n), exceptional(n, 3)) == 0
    assert pair(canonical_class(n), canonical_class(n)) == 9 - n
    assert pair(canonical_class(n), exceptional(n, 1)) == -1


def test_parse_render_roundtrip():
    c = parse_class("6;3,2^7")
    assert c == DivisorClass.of(6, 3, 2, 2, 2, 2, 2, 2, 2)
    assert render_class(c) == "6;3,2^7"
    assert parse_class(render_class(c)) == c
    d = parse_class("sqrt(10);1^10")
    assert d.d == QuadNum(0, 1, 10) and d.n == 10
    assert class_from_json(class_to_json(d)) == d


@pytest.mark.parametrize("text", ["", ";1", "3;1,,1", "3;1^x", "a;1", "3;1^-2"])
def test_parse_errors(text):
    with pytest.raises(ClassSyntaxError):
        parse_class(text)


def test_empty_point_list():
    assert parse_class("3;").n == 0 and parse_class("3").n == 0
    assert pair(parse_class("3;"), parse_class("3;")) == 9


def test_syntax_error_position():
    with pytest.raises(ClassSyntaxError) as info:
        parse_class("3;1,x,1")
    assert info.value.position == 4


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        pair(line(3), line(4))


def test_genus_of_cubic_and_exceptional():
    assert arithmetic_genus(anticanonical_class(9)) == 1
    assert arithmetic_genus(exceptional(4, 1)) == 0
    assert arithmetic_genus(parse_class("4;2^3")) == 0


def test_arithmetic():
    a, b = parse_class("3;1^4"), parse_class("1;1,1,0,0")
    assert a - b == parse_class("2;0,0,1,1")
    assert 2 * b == parse_class("2;2,2,0,0")
    assert -anticanonical_class(4) == canonical_class(4)
