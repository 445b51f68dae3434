import pytest

from gcsurgery.groups import (GroupTag, IdentifyBudgets, Presentation, describe_tag,
                              identify_group, match_standard_form, parse_group_text)


@pytest.mark.parametrize("names, rels, tag, param", [
    ("a b", ["a b^-1", "b^2 a^-3"], GroupTag.TRIVIAL, None),
    ("a b", ["a b a^-1 b^-2", "b a b^-1 a^-2"], GroupTag.TRIVIAL, None),
    ("a b", ["a^7", "b"], GroupTag.FINITE_CYCLIC, 7),
    ("a b", ["[a,b]", "a^5"], GroupTag.FREE_ABELIAN_TIMES_CYCLIC, 5),
    ("a b", ["[a,b]"], GroupTag.FREE_ABELIAN_TIMES_CYCLIC, 0),
    ("a b c", ["c"], GroupTag.FREE, 2),
    ("a b c", ["c a^-1"], GroupTag.FREE, 2),
    ("a1 b1 a2 b2", ["[a1,b1] [a2,b2]"], GroupTag.SURFACE, 2),
    ("a1 b1 a2 b2 a3 b3", ["[a1,b1] [a2,b2] [a3,b3]"], GroupTag.SURFACE, 3),
])
def test_standard_groups(names, rels, tag, param):
    g = identify_group(Presentation.parse(names, rels))
    assert g.key() == (tag, param)
    assert g.certified and g.evidence


def test_finite_needs_closed_coset_table():
    p = Presentation.parse("a b", ["a^2", "b^3", "(a b)^5"])
    g = identify_group(p)
    assert g.tag is GroupTag.UNKNOWN  # perfect group A5: no standard form
    small = identify_group(Presentation.parse("a", ["a^5"]), IdentifyBudgets(max_cosets=3))
    assert small.tag is GroupTag.UNKNOWN
    assert any("Overflow(>3)" in e for e in small.evidence)


def test_infinite_group_with_no_standard_form_is_unknown():
    g = identify_group(Presentation.parse("x y", ["x y x y^-1 x^-1 y^-1"]))
    assert g.tag is GroupTag.UNKNOWN and not g.certified


def test_match_standard_form_rejects_near_misses():
    assert match_standard_form(Presentation.parse("a b", ["a b a^-1 b"])) is None
    assert match_standard_form(Presentation.parse("a b", ["[a,b]", "a^2", "b^2"])) is None


@pytest.mark.parametrize("tag, param", [
    (GroupTag.TRIVIAL, None), (GroupTag.FINITE_CYCLIC, 4),
    (GroupTag.FREE_ABELIAN_TIMES_CYCLIC, 0), (GroupTag.FREE_ABELIAN_TIMES_CYCLIC, 5),
    (GroupTag.FREE, 1), (GroupTag.FREE, 3), (GroupTag.SURFACE, 2),
])
def test_describe_parse_round_trip(tag, param):
    assert parse_group_text(describe_tag(tag, param)) == (tag, param)


def test_parse_aliases():
    assert parse_group_text("{1}") == (GroupTag.TRIVIAL, None)
    assert parse_group_text("Z^2") == (GroupTag.FREE_ABELIAN_TIMES_CYCLIC, 0)
    assert parse_group_text("Z + Z/3") == (GroupTag.FREE_ABELIAN_TIMES_CYCLIC, 3)
    with pytest.raises(ValueError):
        parse_group_text("SL(2,Z)")
