import pytest
from hypothesis import given, settings, strategies as st

from gcsurgery.blocks import Geometry
from gcsurgery.dsl import ScenarioSyntaxError, format_scenario, parse_scenario
from gcsurgery.dsl import parser as ast
from gcsurgery.invariants import Tri

from conftest import SCENARIOS, load


@pytest.mark.parametrize("stem", sorted(SCENARIOS))
def test_corpus_round_trip(stem):
    script = load(stem)
    again = parse_scenario(format_scenario(script), stem)
    assert again == script
    assert format_scenario(again) == format_scenario(script)


def test_x4_directive_counts():
    s = load("x4")
    counts = {k.__name__: s.count(k) for k in (ast.Block, ast.Perturb, ast.Surgery, ast.Expect)}
    assert counts == {"Block": 1, "Perturb": 1, "Surgery": 8, "Expect": 4}
    assert len(s.directives) == 14


def test_empty_and_comment_only():
    assert parse_scenario("").directives == ()
    assert parse_scenario("# nothing\n\n   # here\n").directives == ()


def test_surgery_arity_column():
    with pytest.raises(ScenarioSyntaxError) as info:
        parse_scenario("surgery M T1 (1,0)")
    assert (info.value.line, info.value.column) == (1, 14)
    assert "3 entries" in info.value.message


def test_non_integer_coefficient_column():
    with pytest.raises(ScenarioSyntaxError) as info:
        parse_scenario("\n  surgery M T1 (1,x,0)")
    assert (info.value.line, info.value.column) == (2, 19)


@pytest.mark.parametrize("text, line, col", [
    ("frobnicate X", 1, 1),
    ("block X = nope(1)", 1, 11),
    ("block X product_surfaces(2, 2)", 1, 9),
    ("expect X colour red", 1, 10),
    ("assert X sphere_square_zero extra", 1, 29),
    ("expect X homeo \"unterminated", 1, 16),
    ("blowup X two", 1, 10),
    ("external E {\n  gens a\n", 1, 12),
    ("external E {\n  torus F m=a\n}", 2, 14),
])
def test_diagnostics(text, line, col):
    with pytest.raises(ScenarioSyntaxError) as info:
        parse_scenario(text)
    assert (info.value.line, info.value.column) == (line, col), info.value.message


def test_hash_inside_quotes_is_not_a_comment():
    s = parse_scenario('expect X homeo "3 CP2 # 4 CP2bar"  # trailing comment')
    assert s.directives[0].value == "3 CP2 # 4 CP2bar"


def test_perturb_accepts_bracket_list():
    a = parse_scenario("perturb X [T1, T2]").directives[0]
    b = parse_scenario("perturb X T1 T2").directives[0]
    assert a == b and a.tori == ("T1", "T2")


def test_sum_identification_with_commutators():
    d = parse_scenario("sum Z = A.T1 ~ B.F {a1=[u,v], c1=u^-1}").directives[0]
    assert d.ident == (("a1", "[u,v]"), ("c1", "u^-1"))
    assert (d.left, d.left_torus, d.right, d.right_torus) == ("A", "T1", "B", "F")


def test_external_block():
    text = """
external E {
  gens u v
  rel [u,v]
  torus F m=u l=v mu=1 symplectic
  surface S genus=2 m=1 l=1 mu=1 loops=u,v lagrangian
  euler 12
  signature -8
  form 0 1 9
  spin no
  trust "declared"
}
"""
    (d,) = parse_scenario(text).directives
    assert d.gens == ("u", "v") and d.rels == ("[u,v]",)
    assert d.surfaces[0] == ast.SurfaceLine("F", 1, "u", "v", "1", Geometry.SYMPLECTIC)
    assert d.surfaces[1].genus == 2 and d.surfaces[1].loops == ("u", "v")
    assert (d.euler, d.signature, d.form, d.spin) == (12, -8, (0, 1, 9), Tri.NO)
    assert d.line == 2


# generated scripts

ident = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,5}", fullmatch=True).filter(
    lambda s: s not in ("external",))
ints = st.integers(-20, 20)
value = st.text(st.characters(blacklist_characters='"\n\r', blacklist_categories=("Cs", "Cc")),
                min_size=1, max_size=12).filter(lambda s: s.strip())
simple_word = st.from_regex(r"[a-z][0-9]?(\^-?[1-9])?|\[[a-z],[a-z]\]", fullmatch=True)

directives = st.one_of(
    st.builds(ast.Block, ident, st.sampled_from(["product_surfaces", "four_torus", "external"]),
              st.lists(st.one_of(st.integers(0, 9), ident), max_size=3).map(tuple)),
    st.builds(ast.Perturb, ident, st.lists(ident, max_size=4).map(tuple)),
    st.builds(ast.Surgery, ident, ident, st.tuples(ints, ints, ints)),
    st.builds(ast.Sum, ident, ident, ident, ident, ident,
              st.lists(st.tuples(ident, simple_word), max_size=3).map(tuple)),
    st.builds(ast.BlowUp, ident, st.integers(0, 9)),
    st.builds(ast.BlowDown, ident),
    st.builds(ast.Assert, ident, st.just("sphere_square_zero")),
    st.builds(ast.Assert, ident, st.just("claim_homeo"), value),
    st.builds(ast.Expect, ident, st.sampled_from(ast.EXPECT_KEYS), value),
    st.builds(ast.External, ident, st.lists(ident, max_size=3).map(tuple),
              st.lists(simple_word, max_size=2).map(tuple),
              st.lists(st.builds(ast.SurfaceLine, ident, st.integers(1, 3), simple_word,
                                 simple_word, simple_word, st.sampled_from(list(Geometry)),
                                 st.lists(ident, max_size=2).map(tuple)), max_size=2).map(tuple),
              st.none() | ints, st.none() | ints,
              st.none() | st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)),
              st.sampled_from(list(Tri)), st.lists(value, max_size=2).map(tuple)),
)


@settings(max_examples=300, deadline=None)
@given(st.lists(directives, max_size=6))
def test_generated_round_trip(ds):
    script = ast.ScenarioScript("gen", tuple(ds))
    text = format_scenario(script)
    assert parse_scenario(text, "gen") == script
