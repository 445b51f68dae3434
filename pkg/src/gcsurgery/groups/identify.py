"""Heuristic identification of a finitely presented group.

Every tag other than ``UNKNOWN`` carries a terminating certificate:

* finite tags (trivial, finite cyclic) need a closed coset table for the
  presentation as given, over the trivial subgroup; a Tietze reduction to
  the standard form is recorded as a cross-check only;
* infinite tags (free, surface, ``Z/p + Z``) need the simplifier to reach the
  literal standard form.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from .abelian import AbelianInvariants, abelianize
from .cosets import DEFAULT_MAX_COSETS, enumerate_cosets
from .presentation import Presentation
from .tietze import DEFAULT_BUDGET, DEFAULT_RELATOR_CAP, simplify_with_trace
from .words import FreeWord, cyclically_reduce


class GroupTag(enum.Enum):
    TRIVIAL = "Trivial"
    FINITE_CYCLIC = "FiniteCyclic"
    FREE_ABELIAN_TIMES_CYCLIC = "FreeAbelianTimesCyclic"
    FREE = "FreeOfRank"
    SURFACE = "SurfaceGroup"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class GroupIdentification:
    tag: GroupTag
    param: int | None = None
    evidence: tuple[str, ...] = field(default=())

    @property
    def certified(self) -> bool:
        return self.tag is not GroupTag.UNKNOWN

    def key(self) -> tuple[GroupTag, int | None]:
        return (self.tag, self.param)

    def describe(self) -> str:
        """Short human rendering, e.g. ``Z/5 + Z`` or ``surface(2)``."""
        return describe_tag(self.tag, self.param)

    def is_simply_connected(self) -> bool:
        return self.tag is GroupTag.TRIVIAL

    def is_infinite_cyclic(self) -> bool:
        return self.tag is GroupTag.FREE and self.param == 1


def describe_tag(tag: GroupTag, param: int | None) -> str:
    if tag is GroupTag.TRIVIAL:
        return "trivial"
    if tag is GroupTag.FINITE_CYCLIC:
        return f"Z/{param}"
    if tag is GroupTag.FREE_ABELIAN_TIMES_CYCLIC:
        return "Z + Z" if param == 0 else f"Z/{param} + Z"
    if tag is GroupTag.FREE:
        return "Z" if param == 1 else f"F({param})"
    if tag is GroupTag.SURFACE:
        return f"surface({param})"
    return "unknown"


def parse_group_text(text: str) -> tuple[GroupTag, int | None]:
    """Inverse of :func:`describe_tag`, with a few aliases (``1``, ``Z^2``, ``free(n)``)."""
    t = "".join(text.split()).lower()
    if t in ("trivial", "1", "{1}"):
        return GroupTag.TRIVIAL, None
    if t in ("z", "f(1)", "free(1)"):
        return GroupTag.FREE, 1
    if t in ("z+z", "z^2"):
        return GroupTag.FREE_ABELIAN_TIMES_CYCLIC, 0
    m = re.fullmatch(r"z/(\d+)\+z", t) or re.fullmatch(r"z\+z/(\d+)", t)
    if m:
        return GroupTag.FREE_ABELIAN_TIMES_CYCLIC, int(m.group(1))
    m = re.fullmatch(r"z/(\d+)", t)
    if m:
        return GroupTag.FINITE_CYCLIC, int(m.group(1))
    m = re.fullmatch(r"(?:f|free)\((\d+)\)", t)
    if m:
        return GroupTag.FREE, int(m.group(1))
    m = re.fullmatch(r"surface\((\d+)\)", t)
    if m:
        return GroupTag.SURFACE, int(m.group(1))
    raise ValueError(f"unrecognised group description {text!r}")


# standard-form recognisers on a simplified presentation


def _single_power(w: FreeWord) -> tuple[int, int] | None:
    w = cyclically_reduce(w)
    if len(w.letters) == 1:
        g, e = w.letters[0]
        return g, abs(e)
    return None


def _commutator_pair(flat: list[int]) -> tuple[int, int] | None:
    """Generators (u, v) if ``flat`` reads ``x y x^-1 y^-1`` for letters x, y."""
    if len(flat) != 4:
        return None
    x, y, x2, y2 = flat
    if abs(x) == abs(y) or x2 != -x or y2 != -y:
        return None
    return abs(x) - 1, abs(y) - 1


def _is_commutator_of(w: FreeWord, gens: set[int]) -> bool:
    flat = cyclically_reduce(w).flat()
    for rot in range(len(flat)):
        pair = _commutator_pair(flat[rot:] + flat[:rot])
        if pair and set(pair) == gens:
            return True
    return False


def _surface_genus(p: Presentation) -> int | None:
    if len(p.relators) != 1 or p.ngens % 2 or p.ngens < 4:
        return None
    g = p.ngens // 2
    flat = cyclically_reduce(p.relators[0]).flat()
    if len(flat) != 4 * g:
        return None
    for seq in (flat, [-x for x in reversed(flat)]):
        for rot in range(len(seq)):
            s = seq[rot:] + seq[:rot]
            used: set[int] = set()
            ok = True
            for k in range(g):
                pair = _commutator_pair(s[4 * k:4 * k + 4])
                if pair is None or used & set(pair):
                    ok = False
                    break
                used |= set(pair)
            if ok and len(used) == p.ngens:
                return g
    return None


def match_standard_form(p: Presentation) -> tuple[GroupTag, int | None] | None:
    rels = [r for r in p.relators if not cyclically_reduce(r).is_identity()]
    if p.ngens == 0:
        return GroupTag.TRIVIAL, None
    if not rels:
        return GroupTag.FREE, p.ngens
    if p.ngens == 1 and len(rels) == 1:
        sp = _single_power(rels[0])
        if sp:
            n = sp[1]
            return (GroupTag.TRIVIAL, None) if n == 1 else (GroupTag.FINITE_CYCLIC, n)
    if p.ngens == 2:
        both = {0, 1}
        comms = [r for r in rels if _is_commutator_of(r, both)]
        powers = [sp for sp in map(_single_power, rels) if sp]
        if len(rels) == 1 and len(comms) == 1:
            return GroupTag.FREE_ABELIAN_TIMES_CYCLIC, 0
        if len(rels) == 2 and len(comms) == 1 and len(powers) == 1 and powers[0][1] >= 2:
            return GroupTag.FREE_ABELIAN_TIMES_CYCLIC, powers[0][1]
    genus = _surface_genus(Presentation(p.names, tuple(rels)))
    if genus:
        return GroupTag.SURFACE, genus
    return None


@dataclass(frozen=True)
class IdentifyBudgets:
    max_cosets: int = DEFAULT_MAX_COSETS
    tietze_budget: int = DEFAULT_BUDGET
    relator_cap: int = DEFAULT_RELATOR_CAP


def identify_group(p: Presentation, budgets: IdentifyBudgets = IdentifyBudgets()) -> GroupIdentification:
    return identify_and_simplify(p, budgets)[0]


def identify_and_simplify(p: Presentation, budgets: IdentifyBudgets = IdentifyBudgets(),
                          ab: AbelianInvariants | None = None
                          ) -> tuple[GroupIdentification, Presentation]:
    """Simplify, match standard forms, abelianize, then enumerate cosets."""
    evidence: list[str] = []
    simp = simplify_with_trace(p, budgets.tietze_budget, budgets.relator_cap)
    q = simp.presentation
    evidence.append(
        f"tietze: {len(simp.moves)} move(s), {p.ngens}->{q.ngens} generators, "
        f"{len(p.relators)}->{len(q.relators)} relators"
        + (" (budget exhausted)" if simp.exhausted else ""))
    if ab is None:
        ab = abelianize(p)
    form = match_standard_form(q)

    def enumerate_finite(expected_order: int | None):
        outcome = enumerate_cosets(p, (), budgets.max_cosets)
        evidence.append(f"coset enumeration over trivial subgroup: {outcome} "
                        f"({outcome.defined} cosets defined)")
        if not outcome.closed:
            return None
        if expected_order is not None and outcome.index != expected_order:
            evidence.append(f"conflict: standard form predicts order {expected_order}")
            return None
        return outcome.index

    if form is not None:
        tag, param = form
        evidence.append(f"simplified presentation is the standard form of {describe_tag(tag, param)}")
        if tag is GroupTag.TRIVIAL:
            if enumerate_finite(1) == 1:
                return GroupIdentification(tag, None, tuple(evidence)), q
            return GroupIdentification(GroupTag.UNKNOWN, None, tuple(evidence)), q
        if tag is GroupTag.FINITE_CYCLIC:
            if enumerate_finite(param) == param:
                return GroupIdentification(tag, param, tuple(evidence)), q
            return GroupIdentification(GroupTag.UNKNOWN, None, tuple(evidence)), q
        return GroupIdentification(tag, param, tuple(evidence)), q

    evidence.append(f"abelianization {ab.format()}")
    if ab.rank == 0:
        order = enumerate_finite(None)
        if order is not None:
            if order == 1:
                return GroupIdentification(GroupTag.TRIVIAL, None, tuple(evidence)), q
            if len(ab.torsion) == 1 and ab.torsion[0] == order:
                # |G| = |G^ab| forces G abelian, and G^ab is cyclic
                evidence.append("order equals abelianization order, abelianization cyclic")
                return GroupIdentification(GroupTag.FINITE_CYCLIC, order, tuple(evidence)), q
            evidence.append(f"finite group of order {order} with no standard tag")
    else:
        evidence.append("infinite (positive free rank); no standard form reached")
    return GroupIdentification(GroupTag.UNKNOWN, None, tuple(evidence)), q
