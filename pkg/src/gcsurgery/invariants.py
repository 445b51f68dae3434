"""Integer invariants of closed oriented 4-manifolds and homeomorphism labels.

Summand counts track the intersection form as ``h H + p <1> + m <-1>``.  Any
count may be ``None`` (unknown); rules that cannot justify an update degrade
to ``None`` rather than guess.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import InconsistentInvariantsError, UnknownPieceError
from .groups import AbelianInvariants, GroupIdentification, GroupTag


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool | None) -> Tri:
        if flag is None:
            return cls.UNKNOWN
        return cls.YES if flag else cls.NO


@dataclass(frozen=True)
class InvariantRecord:
    euler: int
    signature: int
    hyperbolic: int | None = None
    plus_one: int | None = None
    minus_one: int | None = None
    # net blow-ups minus blow-downs; base_spin describes the state at zero
    base_spin: Tri = Tri.UNKNOWN
    exceptional: int = 0

    def __post_init__(self):
        for name in ("hyperbolic", "plus_one", "minus_one"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise InconsistentInvariantsError(f"{name} = {v} < 0")
        if self.plus_one is not None and self.minus_one is not None:
            if self.plus_one - self.minus_one != self.signature:
                raise InconsistentInvariantsError(
                    f"signature {self.signature} != {self.plus_one} - {self.minus_one}")
        if self.spin is Tri.YES and (self.plus_one or self.minus_one):
            raise InconsistentInvariantsError("spin form with <+-1> summands")

    @property
    def spin(self) -> Tri:
        if self.exceptional > 0:
            return Tri.NO
        return self.base_spin if self.exceptional == 0 else Tri.UNKNOWN

    @property
    def summands_known(self) -> bool:
        return None not in (self.hyperbolic, self.plus_one, self.minus_one)

    def b2_from_summands(self) -> int | None:
        if not self.summands_known:
            return None
        return 2 * self.hyperbolic + self.plus_one + self.minus_one

    def is_even(self) -> bool | None:
        """Parity of the form, when the record determines it."""
        if self.spin is Tri.YES:
            return True
        if self.summands_known:
            return self.plus_one == 0 and self.minus_one == 0
        if self.exceptional > 0:
            return False
        return None

    def forget_summands(self) -> InvariantRecord:
        return replace(self, hyperbolic=None, plus_one=None, minus_one=None,
                       base_spin=Tri.UNKNOWN)


@dataclass(frozen=True)
class BettiData:
    b1: int
    b2: int
    b2_plus: int
    b2_minus: int

    def __post_init__(self):
        if min(self.b1, self.b2, self.b2_plus, self.b2_minus) < 0:
            raise InconsistentInvariantsError(f"negative Betti number in {self}")
        if self.b2_plus + self.b2_minus != self.b2:
            raise InconsistentInvariantsError(f"b2+ + b2- != b2 in {self}")

    @property
    def euler(self) -> int:
        return 2 - 2 * self.b1 + self.b2

    @property
    def signature(self) -> int:
        return self.b2_plus - self.b2_minus


def betti_from_euler(e: int, ab: AbelianInvariants, sigma: int) -> BettiData:
    b1 = ab.rank
    b2 = e - 2 + 2 * b1
    if b2 < 0 or (b2 + sigma) % 2 or abs(sigma) > b2:
        raise InconsistentInvariantsError(
            f"no Betti numbers for e={e}, b1={b1}, sigma={sigma} (b2 would be {b2})")
    return BettiData(b1, b2, (b2 + sigma) // 2, (b2 - sigma) // 2)


# connected sums of standard pieces


@dataclass(frozen=True)
class _Piece:
    euler: int
    signature: int
    b1: int
    hyperbolic: int
    plus_one: int
    minus_one: int
    torsion: int = 1


_FIXED_PIECES = {
    "S4": _Piece(2, 0, 0, 0, 0, 0),
    "S2xS2": _Piece(4, 0, 0, 1, 0, 0),
    "CP2": _Piece(3, 1, 0, 0, 1, 0),
    "CP2bar": _Piece(3, -1, 0, 0, 0, 1),
    "S3xS1": _Piece(0, 0, 1, 0, 0, 0),
    "T2xS2": _Piece(0, 0, 2, 1, 0, 0),
}

_LENS = re.compile(r"LpxS1(~?)\((\d+)\)")


def piece_data(tag: str) -> _Piece:
    if tag in _FIXED_PIECES:
        return _FIXED_PIECES[tag]
    m = _LENS.fullmatch(tag)
    if m and int(m.group(2)) >= 1:
        p = int(m.group(2))
        if m.group(1):
            # L(p,1) x S1 with the circle factor surgered away: e rises by 2
            return _Piece(2, 0, 0, 0, 0, 0, p)
        return _Piece(0, 0, 1, 0, 0, 0, p)
    raise UnknownPieceError(tag)


def connected_sum_invariants(pieces: Iterable[tuple[str, int]]) -> tuple[InvariantRecord, BettiData]:
    """Invariants of ``#`` over ``(tag, multiplicity)`` pairs."""
    expanded: list[_Piece] = []
    for tag, mult in pieces:
        if mult < 0:
            raise ValueError(f"negative multiplicity for {tag}")
        expanded.extend([piece_data(tag)] * mult)
    if not expanded:
        raise ValueError("connected sum of no pieces")
    e = sum(p.euler for p in expanded) - 2 * (len(expanded) - 1)
    sigma = sum(p.signature for p in expanded)
    h = sum(p.hyperbolic for p in expanded)
    plus = sum(p.plus_one for p in expanded)
    minus = sum(p.minus_one for p in expanded)
    b1 = sum(p.b1 for p in expanded)
    spin = Tri.of(plus == 0 and minus == 0)
    rec = InvariantRecord(e, sigma, h, plus, minus, spin)
    b2 = 2 * h + plus + minus
    return rec, BettiData(b1, b2, h + plus, h + minus)


_TERM = re.compile(r"""\s*(?:(\d+)\s*)?      # multiplicity
                       (?:\(\s*([^()]+?)\s*\)|([A-Za-z0-9~]+(?:\(\d+\))?))\s*$""", re.X)


def parse_label(text: str) -> list[tuple[str, int]]:
    """``"2(S2xS2) # S3xS1"`` -> ``[("S2xS2", 2), ("S3xS1", 1)]``."""
    out = []
    for term in text.split("#"):
        m = _TERM.match(term)
        if not m:
            raise UnknownPieceError(f"cannot read label term {term.strip()!r}")
        tag = m.group(2) or m.group(3)
        piece_data(tag)
        mult = int(m.group(1)) if m.group(1) is not None else 1
        if mult:
            out.append((tag, mult))
    return out


# classification


@dataclass(frozen=True)
class ClassificationLabel:
    label: str
    basis: str | None = None

    @property
    def classified(self) -> bool:
        return self.label != UNCLASSIFIED


UNCLASSIFIED = "unclassified"


def _form_terms(b: BettiData, even: bool | None) -> list[str] | None:
    if even is None:
        return None
    if even:
        if b.signature != 0:
            return None
        return [f"{b.b2 // 2}(S2xS2)"] if b.b2 else []
    terms = []
    if b.b2_plus:
        terms.append(f"{b.b2_plus} CP2")
    if b.b2_minus:
        terms.append(f"{b.b2_minus} CP2bar")
    return terms


def classify_homeomorphism(b: BettiData, rec: InvariantRecord,
                           g: GroupIdentification) -> ClassificationLabel:
    even = rec.is_even()
    if g.tag is GroupTag.TRIVIAL and b.b1 == 0:
        terms = _form_terms(b, even)
        if terms is None:
            return ClassificationLabel(UNCLASSIFIED)
        return ClassificationLabel(" # ".join(terms) or "S4", "Freedman")
    if g.is_infinite_cyclic() and b.b1 == 1:
        terms = _form_terms(b, even)
        if terms is None:
            return ClassificationLabel(UNCLASSIFIED)
        return ClassificationLabel(" # ".join(terms + ["S3xS1"]), "Hambleton-Teichner")
    if g.tag is GroupTag.FINITE_CYCLIC and b.b1 == 0:
        terms = _form_terms(b, even)
        if terms is None:
            return ClassificationLabel(UNCLASSIFIED)
        return ClassificationLabel(" # ".join(terms + [f"LpxS1~({g.param})"]), "Hambleton-Kreck")
    return ClassificationLabel(UNCLASSIFIED)


def almost_complex_check(b: BettiData, g: GroupIdentification) -> Tri:
    if g.tag is GroupTag.TRIVIAL:
        return Tri.of(b.b2_plus % 2 == 1)
    return Tri.UNKNOWN


def label_discrepancies(label: str, e: int, sigma: int, b: BettiData,
                        even: bool | None) -> list[str]:
    """Differences between a claimed homeomorphism label and computed invariants."""
    rec, lb = connected_sum_invariants(parse_label(label))
    out = []
    for name, claimed, actual in (("e", rec.euler, e), ("sigma", rec.signature, sigma),
                                  ("b1", lb.b1, b.b1), ("b2", lb.b2, b.b2)):
        if claimed != actual:
            out.append(f"{name}: label gives {claimed}, computed {actual}")
    claimed_even = rec.is_even()
    if even is not None and claimed_even != even:
        out.append(f"parity: label is {'even' if claimed_even else 'odd'}, "
                   f"computed {'even' if even else 'odd'}")
    return out


def pieces_text(pieces: Sequence[tuple[str, int]]) -> str:
    return " # ".join(tag if n == 1 else f"{n}({tag})" for tag, n in pieces)
