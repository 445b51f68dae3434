"""Execute scenario scripts and check their expectations."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from ..blocks import ExternalDecl, ManifoldState, SurfaceDecl, instantiate_block, perturb_tori
from ..errors import GCSurgeryError, UnknownPieceError
from ..groups import GroupTag, IdentifyBudgets, parse_group_text
from ..invariants import Tri, parse_label
from ..surgery import (Assertion, FinalReport, SurgerySpec, blow_down, blow_up,
                       finalize_report, symplectic_fiber_sum, torus_surgery)
from . import parser as ast


class Verdict(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ExpectationResult:
    state: str
    key: str
    expected: str
    actual: str
    verdict: Verdict
    line: int = 0
    reason: str = ""


class ScenarioError(GCSurgeryError):
    """An operation failed; ``index`` is the 0-based directive position."""

    def __init__(self, message: str, index: int, line: int):
        super().__init__(f"directive {index} (line {line}): {message}")
        self.message = message
        self.index = index
        self.line = line


@dataclass
class ScenarioResult:
    name: str
    reports: dict[str, FinalReport] = field(default_factory=dict)
    expectations: list[ExpectationResult] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(r.verdict is Verdict.FAIL for r in self.expectations)

    def for_state(self, name: str) -> list[ExpectationResult]:
        return [r for r in self.expectations if r.state == name]


# expectation checks


def _cmp(actual: str, ok: bool) -> tuple[str, Verdict, str]:
    return actual, Verdict.PASS if ok else Verdict.FAIL, ""


def _expected_abelianization(tag: GroupTag, param: int | None) -> tuple[tuple[int, ...], int]:
    if tag is GroupTag.TRIVIAL:
        return (), 0
    if tag is GroupTag.FINITE_CYCLIC:
        return (param,), 0
    if tag is GroupTag.FREE_ABELIAN_TIMES_CYCLIC:
        return ((param,) if param else ()), 1 + (param == 0)
    if tag is GroupTag.FREE:
        return (), param
    return (), 2 * param


def _check_pi1(rep: FinalReport, value: str):
    tag, param = parse_group_text(value)
    ident = rep.identification
    actual = ident.describe()
    if ident.certified:
        return _cmp(actual, ident.key() == (tag, param))
    # H1 alone can refute the expectation
    torsion, rank = _expected_abelianization(tag, param)
    if (tuple(x for x in torsion if x > 1), rank) != (rep.ab.torsion, rep.ab.rank):
        return actual, Verdict.FAIL, f"H1 is {rep.ab.format()}"
    evidence = next((e for e in ident.evidence if "Overflow" in e), "identification unknown")
    return actual, Verdict.INCONCLUSIVE, evidence


def _check_tri(actual: Tri, value: str):
    want = Tri(value.lower())
    if actual is Tri.UNKNOWN and want is not Tri.UNKNOWN:
        return actual.value, Verdict.INCONCLUSIVE, "not determined"
    return _cmp(actual.value, actual is want)


def _same_label(a: str, b: str) -> bool:
    try:
        return sorted(parse_label(a)) == sorted(parse_label(b))
    except UnknownPieceError:
        return " ".join(a.split()) == " ".join(b.split())


def _check_homeo(rep: FinalReport, value: str):
    label = rep.label.label
    if rep.label.classified:
        return _cmp(label, _same_label(label, value))
    if not rep.identification.certified or rep.record.is_even() is None:
        return label, Verdict.INCONCLUSIVE, "classification input unknown"
    return label, Verdict.FAIL, "no classification applies"


def _check_int(actual: int, value: str):
    return _cmp(str(actual), int(value) == actual)


def _check_twist(rep: FinalReport, value: str):
    return _cmp(rep.twist, value.strip().lower() == rep.twist)


_CHECKS = {
    "pi1": _check_pi1,
    "e": lambda r, v: _check_int(r.record.euler, v),
    "sigma": lambda r, v: _check_int(r.record.signature, v),
    "b1": lambda r, v: _check_int(r.betti.b1, v),
    "b2": lambda r, v: _check_int(r.betti.b2, v),
    "loci": lambda r, v: _check_int(r.loci, v),
    "spin": lambda r, v: _check_tri(r.record.spin, v),
    "twist": _check_twist,
    "homeo": _check_homeo,
    "almost_complex": lambda r, v: _check_tri(r.almost_complex, v),
}


def check_expectation(rep: FinalReport, d: ast.Expect) -> ExpectationResult:
    try:
        actual, verdict, reason = _CHECKS[d.key](rep, d.value)
    except (ValueError, UnknownPieceError) as exc:
        actual, verdict, reason = "", Verdict.FAIL, f"bad expected value: {exc}"
    return ExpectationResult(d.name, d.key, d.value, actual, verdict, d.line, reason)


# execution


def _decl(d: ast.External) -> ExternalDecl:
    h, p, m = d.form if d.form is not None else (None, None, None)
    return ExternalDecl(
        d.name, d.gens, d.rels,
        tuple(SurfaceDecl(s.id, s.m, s.l, s.mu, s.tag, s.genus, s.loops) for s in d.surfaces),
        d.euler, d.signature, h, p, m, d.spin, d.trust)


class _Run:
    def __init__(self, script: ast.ScenarioScript, budgets: IdentifyBudgets):
        self.budgets = budgets
        self.states: dict[str, ManifoldState] = {}
        self.decls: dict[str, ExternalDecl] = {}
        self.asserts: dict[str, list[Assertion]] = {}
        self.result = ScenarioResult(script.name)

    def state(self, name: str) -> ManifoldState:
        if name not in self.states:
            raise GCSurgeryError(f"unknown state {name!r}")
        return self.states[name]

    def bind(self, name: str, s: ManifoldState):
        if name in self.result.reports:
            raise GCSurgeryError(f"{name} was finalized by an earlier expect")
        self.states[name] = replace(s, name=name)

    def finalize(self, name: str) -> FinalReport:
        if name not in self.result.reports:
            self.result.reports[name] = finalize_report(
                self.state(name), self.asserts.get(name, ()), self.budgets)
        return self.result.reports[name]

    def apply(self, d):
        if isinstance(d, ast.External):
            if d.name in self.decls:
                raise GCSurgeryError(f"external {d.name} declared twice")
            self.decls[d.name] = _decl(d)
        elif isinstance(d, ast.Block):
            args = d.args
            if d.kind == "external":
                if len(args) != 1 or args[0] not in self.decls:
                    raise GCSurgeryError(f"external block needs a declared name, got {args}")
                args = (self.decls[args[0]],)
            s = instantiate_block(d.kind, *args)
            self.bind(d.name, s)
        elif isinstance(d, ast.Perturb):
            s, warnings = perturb_tori(self.state(d.name), d.tori)
            self.result.warnings += [f"{d.name}: {w}" for w in warnings]
            self.bind(d.name, s)
        elif isinstance(d, ast.Surgery):
            self.bind(d.name, torus_surgery(self.state(d.name),
                                            SurgerySpec(d.torus, *d.coefficients)))
        elif isinstance(d, ast.Sum):
            s = symplectic_fiber_sum(self.state(d.left), d.left_torus, self.state(d.right),
                                     d.right_torus, dict(d.ident), d.name)
            self.bind(d.name, s)
        elif isinstance(d, ast.BlowUp):
            self.bind(d.name, blow_up(self.state(d.name), d.count))
        elif isinstance(d, ast.BlowDown):
            self.bind(d.name, blow_down(self.state(d.name)))
        elif isinstance(d, ast.Assert):
            self.state(d.name)
            if d.name in self.result.reports:
                raise GCSurgeryError(f"{d.name} was finalized by an earlier expect")
            self.asserts.setdefault(d.name, []).append(Assertion(d.fact, d.value))
        elif isinstance(d, ast.Expect):
            rep = self.finalize(d.name)
            self.result.expectations.append(check_expectation(rep, d))
        else:
            raise TypeError(f"not a directive: {d!r}")


def execute_scenario(script: ast.ScenarioScript,
                     budgets: IdentifyBudgets = IdentifyBudgets()) -> ScenarioResult:
    """Apply directives in order; the first ``expect`` on a state finalizes it.

    States that carry assertions but no expectation are finalized at the end.
    """
    run = _Run(script, budgets)
    for i, d in enumerate(script.directives):
        try:
            run.apply(d)
        except (GCSurgeryError, ValueError) as exc:
            raise ScenarioError(str(exc), i, d.line) from exc
    for name in run.asserts:
        run.finalize(name)
    return run.result
