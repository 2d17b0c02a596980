import pytest

from orientramsey.errors import DomainError, ParseError
from orientramsey.graph import Orientation, cycle_graph
from orientramsey.patterns import (
    antidirected_biclique,
    antidirected_cycle,
    blockstring,
    cycle_from_blockstring,
    cycle_longest_block,
    parse_pattern,
    pattern_class,
    pattern_m2,
)


@pytest.mark.parametrize(
    "name, cls",
    [
        ("tt3", "tt"),
        ("ttk:5", "tt"),
        ("dircycle:5", "cycle"),
        ("cycle:5:++-+-", "cycle"),
        ("anti:c6", "cycle"),
        ("anti:k2,3", "anti"),
        ("dircycle:3", "cyclic"),
    ],
)
def test_parse_and_classify(name, cls):
    assert pattern_class(parse_pattern(name)) == cls


def test_blockstring_roundtrip():
    for s in ["++-+-", "++++--", "+-+-", "+++"]:
        assert blockstring(cycle_from_blockstring(s)) == s


def test_antidirected():
    assert antidirected_cycle(6).is_antidirected()
    assert antidirected_biclique(2, 2).is_antidirected()
    with pytest.raises(DomainError):
        antidirected_cycle(5)


def test_bad_names():
    with pytest.raises(ParseError):
        parse_pattern("nope")
    with pytest.raises(DomainError):
        parse_pattern("cycle:5:++-")
    with pytest.raises(DomainError):
        cycle_from_blockstring("+x+")


def test_pattern_file(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("3; 0>1 1>2 0>2")
    assert pattern_class(parse_pattern(str(f))) == "tt"
    f.write_text("3; 0>1 1-2")
    with pytest.raises(DomainError):
        parse_pattern(str(f))


def test_partial_pattern_rejected():
    with pytest.raises(DomainError):
        pattern_class(Orientation(cycle_graph(4), [(0, 1)]))


def test_m2_and_blocks():
    from fractions import Fraction

    assert pattern_m2(parse_pattern("dircycle:5")) == Fraction(4, 3)
    assert cycle_longest_block(parse_pattern("cycle:6:++++--")) == 4
