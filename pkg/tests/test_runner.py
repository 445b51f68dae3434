import json

import pytest

from gcsurgery.cli import bundled_scenarios, main
from gcsurgery.dsl import (ScenarioError, Verdict, emit_json, emit_report, execute_scenario,
                           parse_scenario)
from gcsurgery.groups import IdentifyBudgets

from conftest import SCENARIOS, load, run


def verdicts(result):
    return {(r.state, r.key): r.verdict for r in result.expectations}


def test_x4_all_pass():
    res = run("x4")
    assert set(verdicts(res).values()) == {Verdict.PASS}
    assert [r.key for r in res.expectations] == ["pi1", "e", "loci", "homeo"]


def test_x4_overflow_is_inconclusive_not_fail():
    res = execute_scenario(load("x4"), IdentifyBudgets(max_cosets=2))
    v = verdicts(res)
    assert v[("X", "pi1")] is Verdict.INCONCLUSIVE
    assert v[("X", "homeo")] is Verdict.INCONCLUSIVE
    assert v[("X", "e")] is Verdict.PASS
    assert not res.failed
    pi1 = res.expectations[0]
    assert "Overflow(>2)" in pi1.reason


def test_mismatch_is_fail_even_when_identification_unknown():
    res = execute_scenario(parse_scenario(
        "block X = product_surfaces(2, 2)\nexpect X pi1 trivial\nexpect X homeo S4\n"))
    v = verdicts(res)
    assert v[("X", "pi1")] is Verdict.FAIL  # H1 = Z^8 refutes it
    assert v[("X", "homeo")] is Verdict.INCONCLUSIVE
    assert res.failed


def test_value_mismatch_fails():
    res = execute_scenario(parse_scenario(
        "block X = t2_x_s2()\nsurgery X T (1,0,0)\nexpect X e 5\nexpect X pi1 Z/3\n"
        "expect X homeo S4\nexpect X spin maybe\n"))
    assert all(r.verdict is Verdict.FAIL for r in res.expectations)


def test_first_expect_finalizes():
    text = "block X = t2_x_s2()\nexpect X e 0\nsurgery X T (1,0,0)\n"
    with pytest.raises(ScenarioError) as info:
        execute_scenario(parse_scenario(text))
    assert info.value.index == 2 and info.value.line == 3
    assert "finalized" in info.value.message


@pytest.mark.parametrize("text, index", [
    ("surgery X T1 (1,0,0)", 0),
    ("block X = product_surfaces(2, 2)\nsurgery X T9 (1,0,0)", 1),
    ("block X = product_surfaces(2, 2)\nsurgery X T1 (0,0,0)", 1),
    ("block X = product_surfaces(3, 3)", 0),
    ("block X = external(Missing)", 0),
    ("block X = product_surfaces(2, 2)\nblowdown X", 1),
    ("block X = four_torus()\nblock Y = four_torus()\nsum Z = X.T3 ~ Y.T1 {a=x}", 2),
])
def test_operation_errors_carry_directive_index(text, index):
    with pytest.raises(ScenarioError) as info:
        execute_scenario(parse_scenario(text))
    assert info.value.index == index


def test_assert_only_states_are_finalized():
    res = execute_scenario(parse_scenario(
        'block X = t2_x_s2()\nsurgery X T (1,0,0)\nassert X claim_homeo "S3xS1"\n'))
    assert list(res.reports) == ["X"]
    assert any("agrees" in n for n in res.reports["X"].annotations)


def test_state_names_come_from_bindings():
    res = run("torus_sum")
    assert list(res.reports) == ["W"] and res.reports["W"].name == "W"


def test_json_report_schema():
    doc = json.loads(emit_json([run("x4")], IdentifyBudgets()))
    (state,) = doc["scenarios"][0]["states"]
    keys = list(state)
    assert keys[:17] == ["name", "pi1", "e", "sigma", "b1", "b2", "b2plus", "b2minus", "spin",
                         "even", "structure", "loci", "twist", "label", "homeo", "basis",
                         "almost_complex"]
    assert keys[-2:] == ["annotations", "expectations"]
    assert list(state["pi1"])[:2] == ["tag", "param"]
    assert "evidence" in state["pi1"] and "abelianization" in state["pi1"]
    assert state["loci"] == 4 and state["twist"] == "untwisted"
    assert doc["budgets"] == {"max_cosets": 100000, "tietze_budget": 5000, "relator_cap": 64}


def test_unknown_identification_has_explicit_null_homeo():
    res = run("sigma22")
    state = json.loads(emit_json([res], IdentifyBudgets()))["scenarios"][0]["states"][0]
    assert state["pi1"]["tag"] == "Unknown"
    assert state["label"] == "unclassified"
    assert "homeo" in state and state["homeo"] is None


@pytest.mark.parametrize("stem", ["x4", "assembly_g1_r1_k0", "four_torus_p5"])
def test_json_is_byte_identical_across_runs(stem):
    a = emit_json([execute_scenario(load(stem))], IdentifyBudgets())
    b = emit_json([execute_scenario(load(stem))], IdentifyBudgets())
    assert a == b


def test_human_report():
    text = emit_report([run("x4")], "human")
    assert "[X]" in text and "1(S2xS2) (Freedman)" in text
    with pytest.raises(ValueError):
        emit_report([], "xml")


@pytest.mark.parametrize("stem", sorted(SCENARIOS))
def test_corpus_euler_relation(stem):
    for rep in run(stem).reports.values():
        b = rep.betti
        assert rep.record.euler == 2 - 2 * b.b1 + b.b2
        assert rep.record.signature == b.b2_plus - b.b2_minus


# CLI


def test_cli_exit_codes(tmp_path, capsys):
    x4 = str(SCENARIOS["x4"])
    assert main(["run", x4]) == 0
    assert main(["run", "--max-cosets", "2", x4]) == 0
    bad = tmp_path / "bad.gcs"
    bad.write_text("block X = t2_x_s2()\nexpect X e 7\n")
    assert main(["run", x4, str(bad)]) == 1
    broken = tmp_path / "broken.gcs"
    broken.write_text("surgery M T1 (1,0)\n")
    assert main(["run", str(broken)]) == 2
    err = capsys.readouterr().err
    assert "broken.gcs:1:14" in err


def test_cli_json(capsys):
    assert main(["run", "--json", "--max-cosets", "2", str(SCENARIOS["x4"])]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["budgets"]["max_cosets"] == 2
    exp = doc["scenarios"][0]["states"][0]["expectations"]
    assert exp[0]["verdict"] == "Inconclusive"


def test_cli_rejects_bad_budget():
    with pytest.raises(SystemExit):
        main(["run", "--max-cosets", "0", "x.gcs"])


def test_bundled_corpus_listing(capsys):
    assert main(["corpus"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == len(bundled_scenarios()) >= 29
