"""Construction operations on manifold states and report finalization."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .blocks import (Geometry, ManifoldState, Status, Structure, TorusDescriptor,
                     closed_presentation)
from .errors import GCSurgeryError, SurgeryError
from .groups import (AbelianInvariants, FreeWord, GroupIdentification, IdentifyBudgets,
                     Presentation, abelianize, free_product, identify_and_simplify, parse_word)
from .invariants import (UNCLASSIFIED, BettiData, ClassificationLabel, InvariantRecord, Tri,
                         almost_complex_check, betti_from_euler, classify_homeomorphism,
                         label_discrepancies)


@dataclass(frozen=True)
class SurgerySpec:
    torus: str
    p: int
    q: int
    r: int

    @property
    def trivial(self) -> bool:
        return self.p == 0 and self.q == 0 and abs(self.r) == 1

    def __str__(self):
        return f"{self.torus} ({self.p},{self.q},{self.r})"


def _structure_after(s: ManifoldState, t: TorusDescriptor, spec: SurgerySpec):
    """New (structure, loci, flag) for a nontrivial surgery."""
    if spec.r == 0:
        if t.tag is Geometry.SYMPLECTIC:
            structure = (Structure.TWISTED_GC if s.structure is not Structure.UNKNOWN
                         else Structure.UNKNOWN)
            return structure, s.loci + 1, None
        return Structure.UNKNOWN, s.loci, f"r=0 surgery on Lagrangian {t.id}: structure unknown"
    if abs(spec.r) == 1 and t.tag is Geometry.LAGRANGIAN:
        return s.structure, s.loci, None
    return Structure.UNKNOWN, s.loci, f"surgery {spec} has no structure rule: structure unknown"


def torus_surgery(s: ManifoldState, spec: SurgerySpec) -> ManifoldState:
    t = s.torus(spec.torus)
    if not t.available:
        raise SurgeryError(f"{s.name}: torus {t.id} is {t.status.value}")
    if t.genus != 1:
        raise SurgeryError(f"{s.name}: {t.id} is a genus-{t.genus} surface, not a torus")
    if (spec.p, spec.q, spec.r) == (0, 0, 0):
        raise SurgeryError(f"{s.name}: (0,0,0) is not a surgery coefficient")
    rel = t.relator(spec.p, spec.q, spec.r)
    pres = Presentation(s.presentation.names, s.presentation.relators + (rel,))
    rec = s.record
    structure, loci, flag = s.structure, s.loci, None
    if not spec.trivial:
        structure, loci, flag = _structure_after(s, t, spec)
        if t.essential and rec.hyperbolic:
            # kills the torus class and its dual: one hyperbolic pair
            rec = replace(rec, hyperbolic=rec.hyperbolic - 1)
        else:
            rec = rec.forget_summands()
    out = replace(s, presentation=pres, record=rec, structure=structure, loci=loci)
    out = out.with_torus(replace(t, status=Status.SURGERED,
                                 coefficients=(spec.p, spec.q, spec.r)))
    assert (out.record.euler, out.record.signature) == (s.record.euler, s.record.signature)
    out = out.log(f"surgery {spec}")
    if flag:
        out = replace(out, notes=out.notes + (flag,))
    return out


def _fresh_name(name: str, taken: set[str], suffix: str) -> str:
    cand = f"{name}_{suffix}"
    n = 2
    while cand in taken:
        cand = f"{name}_{suffix}{n}"
        n += 1
    return cand


def symplectic_fiber_sum(a: ManifoldState, ta: str, b: ManifoldState, tb: str,
                         ident: Mapping[str, str], label: str = "sum") -> ManifoldState:
    """Sum along ``a.ta`` and ``b.tb``.

    ``ident`` maps generators carried by ``ta`` to words in ``b``'s generators.
    Generators and torus ids of ``b`` that collide with ``a`` get a ``_label``
    suffix.
    """
    sa, sb = a.torus(ta), b.torus(tb)
    for st, t in ((a, sa), (b, sb)):
        if not t.available:
            raise SurgeryError(f"{st.name}: {t.id} is {t.status.value}")
        if t.tag is not Geometry.SYMPLECTIC:
            raise SurgeryError(f"{st.name}: {t.id} is not symplectic")
    if sa.genus != sb.genus:
        raise SurgeryError(f"genus mismatch: {ta} has genus {sa.genus}, {tb} has {sb.genus}")
    loops = {a.names()[i] for i in sa.loops}
    if loops and not ident:
        raise SurgeryError(f"empty identification for {ta}")
    for key in ident:
        if key not in a.names():
            raise SurgeryError(f"identification key {key!r} is not a generator of {a.name}")
        if key not in loops:
            raise SurgeryError(f"identification key {key!r} is not carried by {ta}")

    taken = set(a.names())
    b_names = []
    for n in b.names():
        new = _fresh_name(n, taken | set(b.names()), label) if n in taken else n
        taken.add(new)
        b_names.append(new)
    shift = {i: i + a.presentation.ngens for i in range(b.presentation.ngens)}

    def lift(w: FreeWord) -> FreeWord:
        return w.reindex(shift)

    try:
        images = {k: lift(parse_word(v, b.names())) for k, v in ident.items()}
    except GCSurgeryError as exc:
        raise SurgeryError(f"identification word: {exc}") from exc
    pres = free_product(a.presentation, b.presentation, b_names)
    extra = [FreeWord.gen(a.names().index(k)) * ~w for k, w in images.items()]
    extra.append(sa.mu * ~lift(sb.mu))
    pres = Presentation(pres.names, pres.relators + tuple(extra))

    ids = {t.id for t in a.tori}
    tori = [replace(t, status=Status.CONSUMED) if t.id == ta else t for t in a.tori]
    for t in b.tori:
        tid = _fresh_name(t.id, ids | {u.id for u in b.tori}, label) if t.id in ids else t.id
        ids.add(tid)
        status = Status.CONSUMED if t.id == tb else t.status
        tori.append(replace(t, id=tid, m=lift(t.m), l=lift(t.l), mu=lift(t.mu),
                            loops=tuple(shift[i] for i in t.loops), status=status))

    fiber_euler = 2 - 2 * sa.genus
    rec = InvariantRecord(a.record.euler + b.record.euler - 2 * fiber_euler,
                          a.record.signature + b.record.signature,
                          exceptional=a.record.exceptional + b.record.exceptional)
    both = a.structure is Structure.SYMPLECTIC and b.structure is Structure.SYMPLECTIC
    history = (a.history + tuple(f"[{b.name}] {h}" for h in b.history)
               + (f"sum {a.name}.{ta} ~ {b.name}.{tb}",))
    return ManifoldState(label, pres, tuple(tori), rec,
                         Structure.SYMPLECTIC if both else Structure.UNKNOWN,
                         a.loci + b.loci, history, a.notes + b.notes)


_BLOW_NOTE = "blow-ups and blow-downs leave the number of type change loci unchanged"


def blow_up(s: ManifoldState, k: int) -> ManifoldState:
    if k < 0:
        raise SurgeryError(f"blow-up count {k} < 0")
    if s.structure is Structure.UNKNOWN:
        raise SurgeryError(f"{s.name}: blow-up needs a symplectic or twisted-gc structure")
    if k == 0:
        return s
    r = s.record
    rec = replace(r, euler=r.euler + k, signature=r.signature - k,
                  minus_one=None if r.minus_one is None else r.minus_one + k,
                  exceptional=r.exceptional + k)
    notes = s.notes if _BLOW_NOTE in s.notes else s.notes + (_BLOW_NOTE,)
    return replace(s, record=rec, notes=notes).log(f"blowup {k}")


def blow_down(s: ManifoldState) -> ManifoldState:
    if s.structure is not Structure.TWISTED_GC:
        raise SurgeryError(f"{s.name}: blow-down needs a twisted-gc structure")
    r = s.record
    tracked = r.minus_one if r.minus_one is not None else r.exceptional
    if tracked < 1:
        raise SurgeryError(f"{s.name}: no <-1> summand tracked")
    rec = replace(r, euler=r.euler - 1, signature=r.signature + 1,
                  minus_one=None if r.minus_one is None else r.minus_one - 1,
                  exceptional=r.exceptional - 1)
    notes = s.notes if _BLOW_NOTE in s.notes else s.notes + (_BLOW_NOTE,)
    return replace(s, record=rec, notes=notes).log("blowdown")


# finalization


@dataclass(frozen=True)
class Assertion:
    fact: str
    value: str | None = None


@dataclass(frozen=True)
class FinalReport:
    name: str
    presentation: Presentation
    simplified: Presentation
    identification: GroupIdentification
    ab: AbelianInvariants
    betti: BettiData
    record: InvariantRecord
    structure: Structure
    loci: int
    label: ClassificationLabel
    almost_complex: Tri
    annotations: tuple[str, ...]
    budgets: IdentifyBudgets
    history: tuple[str, ...] = field(default=())

    @property
    def untwisted(self) -> bool:
        return self.ab.is_trivial()

    @property
    def twist(self) -> str:
        return "untwisted" if self.untwisted else "twisted"

    @property
    def even(self) -> bool | None:
        return self.record.is_even()


FACTS = ("sphere_square_zero", "claim_homeo", "sphere_brane")


def finalize_report(s: ManifoldState, assertions: Sequence[Assertion] = (),
                    budgets: IdentifyBudgets = IdentifyBudgets()) -> FinalReport:
    closed = closed_presentation(s)
    ab = abelianize(closed)
    ident, simplified = identify_and_simplify(closed, budgets, ab)
    rec = s.record
    betti = betti_from_euler(rec.euler, ab, rec.signature)
    notes = list(s.notes)
    b2_rec = rec.b2_from_summands()
    if b2_rec is not None and b2_rec != betti.b2:
        notes.append(f"summand record gives b2={b2_rec}, homology gives b2={betti.b2}: "
                     "form data degraded to unknown")
        rec = rec.forget_summands()
    if ident.certified:
        label = classify_homeomorphism(betti, rec, ident)
    else:
        label = ClassificationLabel(UNCLASSIFIED)
    if s.structure is Structure.UNKNOWN:
        notes.append("structure unknown: some operation has no structure rule")
    for a in assertions:
        if a.fact == "sphere_square_zero":
            if betti.b2_plus > 1:
                notes.append("SW trivial by adjunction (asserted essential sphere of square zero); "
                             "non-symplectic by Taubes")
            else:
                notes.append("asserted sphere of square zero; b2+ <= 1, no Taubes conclusion")
        elif a.fact == "claim_homeo":
            issues = label_discrepancies(a.value, rec.euler, rec.signature, betti, rec.is_even())
            if issues:
                notes.append(f"discrepancy: claimed {a.value!r}: " + "; ".join(issues))
            else:
                notes.append(f"claimed {a.value!r} agrees with computed invariants")
        elif a.fact == "sphere_brane":
            notes.append("asserted: blown-down spheres meet the complex locus in one "
                         "non-degenerate point")
        else:
            raise SurgeryError(f"unknown assertion {a.fact!r}")
    return FinalReport(s.name, closed, simplified, ident, ab, betti, rec, s.structure, s.loci,
                       label, almost_complex_check(betti, ident), tuple(notes), budgets,
                       s.history)
