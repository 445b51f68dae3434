"""Human and JSON renderings of scenario results."""

from __future__ import annotations

import json
from dataclasses import asdict
from typing import Sequence

from ..groups import IdentifyBudgets
from ..surgery import FinalReport
from .runner import ExpectationResult, ScenarioResult


def _expectation_json(r: ExpectationResult) -> dict:
    return {"key": r.key, "expected": r.expected, "actual": r.actual,
            "verdict": r.verdict.value, "line": r.line, "reason": r.reason or None}


def state_json(rep: FinalReport, expectations: Sequence[ExpectationResult]) -> dict:
    ident = rep.identification
    rec = rep.record
    return {
        "name": rep.name,
        "pi1": {
            "tag": ident.tag.value,
            "param": ident.param,
            "description": ident.describe(),
            "evidence": list(ident.evidence),
            "abelianization": rep.ab.format(),
            "presentation": rep.simplified.format(),
        },
        "e": rec.euler,
        "sigma": rec.signature,
        "b1": rep.betti.b1,
        "b2": rep.betti.b2,
        "b2plus": rep.betti.b2_plus,
        "b2minus": rep.betti.b2_minus,
        "spin": rec.spin.value,
        "even": rep.even,
        "structure": rep.structure.value,
        "loci": rep.loci,
        "twist": rep.twist,
        "label": rep.label.label,
        "homeo": rep.label.label if rep.label.classified else None,
        "basis": rep.label.basis,
        "almost_complex": rep.almost_complex.value,
        "annotations": list(rep.annotations),
        "expectations": [_expectation_json(r) for r in expectations],
    }


def result_json(result: ScenarioResult) -> dict:
    return {
        "scenario": result.name,
        "states": [state_json(rep, result.for_state(name))
                   for name, rep in result.reports.items()],
        "warnings": list(result.warnings),
        "failed": result.failed,
    }


def emit_json(results: Sequence[ScenarioResult], budgets: IdentifyBudgets,
              errors: Sequence[dict] = ()) -> str:
    doc = {"budgets": asdict(budgets), "scenarios": [result_json(r) for r in results]}
    if errors:
        doc["errors"] = list(errors)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _rows(rep: FinalReport) -> list[tuple[str, str]]:
    ident = rep.identification
    rec = rep.record
    return [
        ("pi1", f"{ident.describe()} [{ident.tag.value}]"),
        ("H1", rep.ab.format()),
        ("e / sigma", f"{rec.euler} / {rec.signature}"),
        ("b1 b2 b2+ b2-", f"{rep.betti.b1} {rep.betti.b2} {rep.betti.b2_plus} {rep.betti.b2_minus}"),
        ("spin", rec.spin.value),
        ("structure", rep.structure.value),
        ("loci", str(rep.loci)),
        ("twist", rep.twist),
        ("label", rep.label.label + (f" ({rep.label.basis})" if rep.label.basis else "")),
        ("almost complex", rep.almost_complex.value),
    ]


def emit_human(results: Sequence[ScenarioResult]) -> str:
    out = []
    for res in results:
        out.append(f"== {res.name}")
        for w in res.warnings:
            out.append(f"  warning: {w}")
        for name, rep in res.reports.items():
            out.append(f"  [{name}]")
            rows = _rows(rep)
            width = max(len(k) for k, _ in rows)
            out += [f"    {k.ljust(width)}  {v}" for k, v in rows]
            for ev in rep.identification.evidence:
                out.append(f"    evidence: {ev}")
            for note in rep.annotations:
                out.append(f"    note: {note}")
            for r in res.for_state(name):
                line = f"    expect {r.key} {r.expected!r}: {r.verdict.value} (actual {r.actual!r})"
                if r.reason:
                    line += f" - {r.reason}"
                out.append(line)
    return "\n".join(out) + "\n"


def emit_report(results: Sequence[ScenarioResult], fmt: str = "human",
                budgets: IdentifyBudgets = IdentifyBudgets()) -> str:
    if fmt == "json":
        return emit_json(results, budgets)
    if fmt == "human":
        return emit_human(results)
    raise ValueError(f"unknown report format {fmt!r}")
