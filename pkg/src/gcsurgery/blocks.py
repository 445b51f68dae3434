"""Building blocks: complement presentations, torus catalogs, starting invariants.

Meridians and pushoffs are stored as words in the block's generators; the
ambient relators are those holding in the complement of the catalogued tori.
A torus left untouched contributes its meridian as a relator when a state is
finalized.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import BlockError, InvalidGeneratorError, WordSyntaxError
from .groups import FreeWord, Presentation, parse_word
from .invariants import InvariantRecord, Tri


class Geometry(enum.Enum):
    LAGRANGIAN = "lagrangian"
    SYMPLECTIC = "symplectic"


class Status(enum.Enum):
    AVAILABLE = "available"
    SURGERED = "surgered"
    CONSUMED = "consumed"


class Structure(enum.Enum):
    SYMPLECTIC = "symplectic"
    TWISTED_GC = "twisted-gc"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TorusDescriptor:
    """A catalogued torus (or, with ``genus > 1``, a surface) of square zero.

    ``loops`` lists the generators carried by the surface itself; a fiber sum
    may identify only those.
    """

    id: str
    m: FreeWord
    l: FreeWord
    mu: FreeWord
    tag: Geometry
    genus: int = 1
    loops: tuple[int, ...] = ()
    dual_id: str | None = None
    essential: bool = True
    status: Status = Status.AVAILABLE
    coefficients: tuple[int, int, int] | None = None
    cycle: str = ""

    @property
    def available(self) -> bool:
        return self.status is Status.AVAILABLE

    def relator(self, p: int, q: int, r: int) -> FreeWord:
        """``mu^r m^p l^q``."""
        return (self.mu ** r) * (self.m ** p) * (self.l ** q)


@dataclass(frozen=True)
class ManifoldState:
    name: str
    presentation: Presentation
    tori: tuple[TorusDescriptor, ...]
    record: InvariantRecord
    structure: Structure = Structure.SYMPLECTIC
    loci: int = 0
    history: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def torus(self, tid: str) -> TorusDescriptor:
        for t in self.tori:
            if t.id == tid:
                return t
        raise BlockError(f"{self.name}: no catalogued torus {tid!r}")

    def with_torus(self, t: TorusDescriptor) -> ManifoldState:
        tori = tuple(t if old.id == t.id else old for old in self.tori)
        return replace(self, tori=tori)

    def log(self, entry: str) -> ManifoldState:
        return replace(self, history=self.history + (entry,))

    def names(self) -> tuple[str, ...]:
        return self.presentation.names


# catalog helpers


def _torus(names, tid, m, l, mu, tag=Geometry.LAGRANGIAN, cycle="") -> TorusDescriptor:
    mw, lw, muw = (parse_word(w, names) for w in (m, l, mu))
    loops = tuple(sorted(mw.generators() | lw.generators()))
    return TorusDescriptor(tid, mw, lw, muw, tag, loops=loops, cycle=cycle)


def _surface_relator(pairs: Sequence[tuple[str, str]]) -> str:
    return "".join(f"[{a},{b}]" for a, b in pairs)


def _state(name, names, relators, tori, e, sigma, hyperbolic, notes=()) -> ManifoldState:
    pres = Presentation.parse(names, relators)
    rec = InvariantRecord(e, sigma, hyperbolic, 0, 0, Tri.YES)
    return ManifoldState(name, pres, tuple(tori), rec, Structure.SYMPLECTIC, 0,
                         (f"block {name}",), tuple(notes))


def _sigma_names(prefix_a, prefix_b, g):
    return [x for j in range(1, g + 1) for x in (f"{prefix_a}{j}", f"{prefix_b}{j}")]


def product_surfaces(g: int, h: int, variant: str | None = None) -> ManifoldState:
    """Sigma_g x Sigma_h for (g, h) = (2, 2) or (2, h >= 3)."""
    if g != 2 or h < 2:
        raise BlockError(f"product_surfaces({g},{h}) is not catalogued; need g = 2, h >= 2")
    names = _sigma_names("a", "b", 2) + _sigma_names("c", "d", h)
    rels = [_surface_relator([("a1", "b1"), ("a2", "b2")]),
            _surface_relator([(f"c{j}", f"d{j}") for j in range(1, h + 1)])]
    e = (2 - 2 * g) * (2 - 2 * h)
    hyperbolic = 4 * h + 1
    if h == 2:
        if variant is not None:
            raise BlockError(f"no variant {variant!r} of product_surfaces(2,2)")
        rows = [
            ("T1", "a1", "c1", "[b1^-1,d1^-1]", "a1 x c1"),
            ("T2", "a1", "c2", "[b1^-1,d2^-1]", "a1 x c2"),
            ("T3", "a2", "c1", "[b2^-1,d1^-1]", "a2 x c1"),
            ("T4", "a2", "c2", "[b2^-1,d2^-1]", "a2 x c2"),
            ("T5", "b1", "d1 c1 d1^-1", "[a1^-1,d1]", "b1 x c1"),
            ("T6", "b2", "d2 c2 d2^-1", "[a2^-1,d2]", "b2 x c2"),
            ("T7", "b2 a2 b2^-1", "d1", "[b2,c1^-1]", "a2 x d1"),
            ("T8", "b1 a1 b1^-1", "d2", "[b1,c2^-1]", "a1 x d2"),
        ]
        notes = ()
    elif variant == "twelve":
        if h != 3:
            raise BlockError("the twelve-torus catalog exists only for product_surfaces(2,3)")
        rows = [
            ("T1", "a1", "c1", "[b1^-1,d1^-1]", "a1 x c1"),
            ("T2", "a1", "c2", "[b1^-1,d2^-1]", "a1 x c2"),
            ("T3", "a1", "c3", "[b1^-1,d3^-1]", "a1 x c3"),
            ("T4", "a2", "c1", "[b2^-1,d1^-1]", "a2 x c1"),
            ("T5", "a2", "c2", "[b2^-1,d2^-1]", "a2 x c2"),
            ("T6", "a2", "c3", "[b2^-1,d3^-1]", "a2 x c3"),
            ("T7", "b1", "d1 c1 d1^-1", "[a1^-1,d1]", "b1 x c1"),
            ("T8", "b2", "d2 c2 d2^-1", "[a2^-1,d2]", "b2 x c2"),
            ("T9", "b2 a2 b2^-1", "d1", "[b2,c1^-1]", "a2 x d1"),
            ("T10", "b1 a1 b1^-1", "d2", "[b1,c2^-1]", "a1 x d2"),
            ("T11", "b1 a1 b1^-1", "d3", "[b1,c3^-1]", "a1 x d3"),
            ("T12", "b2 a2 b2^-1", "d3", "[b2,c3^-1]", "a2 x d3"),
        ]
        notes = ("twelve-torus catalog",)
    elif variant is None:
        # each surgery relation reads killed = C^r, so the meridian is C^-1
        rows = [
            ("T1", "a1", "c1", "[b1^-1,d1^-1]^-1", "a1 x c1"),
            ("T2", "b1", "d1 c1 d1^-1", "[a1^-1,d1]^-1", "b1 x c1"),
            ("T3", "a2", "c2", "[b2^-1,d2^-1]^-1", "a2 x c2"),
            ("T4", "b2", "d2 c2 d2^-1", "[a2^-1,d2]^-1", "b2 x c2"),
            ("T5", "a2", "c1", "[d1^-1,b2^-1]^-1", "a2 x c1"),
            ("T6", "b2 a2 b2^-1", "d1", "[c1^-1,b2]^-1", "a2 x d1"),
            ("T7", "a1", "c2", "[d2^-1,b1^-1]^-1", "a1 x c2"),
            ("T8", "b1 a1 b1^-1", "d2", "[c2^-1,b1]^-1", "a1 x d2"),
        ]
        for j in range(3, h + 1):
            rows.append((f"T{2 * j + 3}", "b1", f"c{j}", f"[a1^-1,d{j}^-1]^-1", f"b1 x c{j}"))
            rows.append((f"T{2 * j + 4}", "b2", f"d{j}", f"[a2^-1,c{j}^-1]^-1", f"b2 x d{j}"))
        notes = () if h == 3 else ("extrapolated",)
    else:
        raise BlockError(f"unknown variant {variant!r}")
    tori = [_torus(names, tid, m, l, mu, cycle=cyc) for tid, m, l, mu, cyc in rows]
    label = f"product_surfaces({g},{h}{',' + variant if variant else ''})"
    return _state(label, names, rels, tori, e, 0, hyperbolic, notes)


def t2_x_sigma(g: int) -> ManifoldState:
    """T^2 x Sigma_g with 2g Lagrangian tori and the genus-g surface ``S``."""
    if g < 1:
        raise BlockError(f"t2_x_sigma needs g >= 1, got {g}")
    names = ["x", "y"] + _sigma_names("a", "b", g)
    rels = []
    for i in range(1, g + 1):
        rels += [f"[x,a{i}]", f"[y,a{i}]", f"[y,b{i} a{i} b{i}^-1]"]
    rels.append(_surface_relator([(f"a{i}", f"b{i}") for i in range(1, g + 1)]))
    tori = []
    for i in range(1, g + 1):
        tori.append(_torus(names, f"T{2 * i - 1}", "x", f"a{i}", f"[b{i}^-1,y^-1]",
                           cycle=f"x x a{i}"))
        tori.append(_torus(names, f"T{2 * i}", "y", f"b{i} a{i} b{i}^-1", f"[x^-1,b{i}]",
                           cycle=f"y x a{i}"))
    surface_loops = tuple(range(2, 2 + 2 * g))
    tori.append(TorusDescriptor("S", FreeWord(), FreeWord(), parse_word("[x,y]", names),
                                Geometry.SYMPLECTIC, genus=g, loops=surface_loops,
                                cycle=f"pt x Sigma_{g}"))
    return _state(f"t2_x_sigma({g})", names, rels, tori, 0, 0, 2 * g + 1)


def four_torus() -> ManifoldState:
    names = ["x", "y", "a", "b"]
    tori = [
        _torus(names, "T1", "x", "a", "[b^-1,y^-1]", cycle="x x a"),
        _torus(names, "T2", "y", "b a b^-1", "[x^-1,b]", cycle="y x a"),
        _torus(names, "T3", "a", "b", "[x,y]", Geometry.SYMPLECTIC, cycle="a x b"),
    ]
    return _state("four_torus", names, ["[x,a]", "[y,a]"], tori, 0, 0, 3)


def t2_x_s2() -> ManifoldState:
    names = ["x", "y"]
    tori = [TorusDescriptor("T", FreeWord.gen(0), FreeWord.gen(1), FreeWord(),
                            Geometry.SYMPLECTIC, loops=(0, 1), cycle="T2 x pt")]
    return _state("t2_x_s2", names, ["[x,y]"], tori, 0, 0, 1)


# external declarations


@dataclass(frozen=True)
class SurfaceDecl:
    id: str
    m: str = "1"
    l: str = "1"
    mu: str = "1"
    tag: Geometry = Geometry.SYMPLECTIC
    genus: int = 1
    loops: tuple[str, ...] = ()


@dataclass(frozen=True)
class ExternalDecl:
    """User-declared block; its data is trusted, only consistency is checked."""

    name: str
    gens: tuple[str, ...] = ()
    rels: tuple[str, ...] = ()
    surfaces: tuple[SurfaceDecl, ...] = ()
    euler: int | None = None
    signature: int | None = None
    hyperbolic: int | None = None
    plus_one: int | None = None
    minus_one: int | None = None
    spin: Tri = Tri.UNKNOWN
    trust: tuple[str, ...] = field(default=())


def external(decl: ExternalDecl) -> ManifoldState:
    if decl.euler is None or decl.signature is None:
        raise BlockError(f"external {decl.name}: euler and signature are required")
    if (decl.euler - decl.signature) % 2:
        raise BlockError(f"external {decl.name}: e={decl.euler} and sigma={decl.signature} "
                         "have different parity")
    try:
        pres = Presentation.parse(decl.gens, decl.rels)
        tori = []
        seen = set()
        for s in decl.surfaces:
            if s.id in seen:
                raise BlockError(f"external {decl.name}: duplicate surface {s.id}")
            seen.add(s.id)
            if s.genus < 1:
                raise BlockError(f"external {decl.name}: surface {s.id} has genus {s.genus}")
            m, l, mu = (parse_word(w, pres.names) for w in (s.m, s.l, s.mu))
            if s.loops:
                loops = tuple(sorted(pres.names.index(n) for n in s.loops))
            else:
                loops = tuple(sorted(m.generators() | l.generators()))
            tori.append(TorusDescriptor(s.id, m, l, mu, s.tag, genus=s.genus, loops=loops,
                                        essential=False, cycle="declared"))
        rec = InvariantRecord(decl.euler, decl.signature, decl.hyperbolic, decl.plus_one,
                              decl.minus_one, decl.spin)
    except (WordSyntaxError, InvalidGeneratorError, ValueError) as exc:
        if isinstance(exc, BlockError):
            raise
        raise BlockError(f"external {decl.name}: {exc}") from exc
    notes = tuple(f"trusted: {t}" for t in decl.trust)
    return ManifoldState(f"external({decl.name})", pres, tuple(tori), rec,
                         Structure.SYMPLECTIC, 0, (f"block external {decl.name}",), notes)


BLOCK_KINDS = ("product_surfaces", "t2_x_sigma", "four_torus", "t2_x_s2", "external")


def instantiate_block(kind: str, *params) -> ManifoldState:
    if kind == "product_surfaces":
        if len(params) not in (2, 3):
            raise BlockError("product_surfaces takes (g, h) or (g, h, variant)")
        return product_surfaces(*params)
    if kind == "t2_x_sigma":
        if len(params) != 1:
            raise BlockError("t2_x_sigma takes one parameter")
        return t2_x_sigma(*params)
    if kind in ("four_torus", "t2_x_s2"):
        if params:
            raise BlockError(f"{kind} takes no parameters")
        return four_torus() if kind == "four_torus" else t2_x_s2()
    if kind == "external":
        if len(params) != 1 or not isinstance(params[0], ExternalDecl):
            raise BlockError("external takes one declaration")
        return external(params[0])
    raise BlockError(f"unknown block kind {kind!r}")


def perturb_tori(s: ManifoldState, ids: Iterable[str]) -> tuple[ManifoldState, list[str]]:
    """Flip Lagrangian tori to symplectic.  Returns the state and warnings."""
    ids = list(ids)
    if s.structure is not Structure.SYMPLECTIC:
        raise BlockError(f"{s.name}: perturbation needs a symplectic state, have {s.structure.value}")
    warnings = []
    out = s
    for tid in ids:
        t = out.torus(tid)
        if not t.available:
            raise BlockError(f"{s.name}: torus {tid} is {t.status.value}")
        if t.tag is Geometry.SYMPLECTIC:
            warnings.append(f"{tid} is already symplectic")
            continue
        out = out.with_torus(replace(t, tag=Geometry.SYMPLECTIC))
    if ids:
        out = out.log(f"perturb {' '.join(ids)}")
    return out, warnings


def fill_in_relators(s: ManifoldState) -> list[FreeWord]:
    """Meridians of every still-available torus (the trivial (0,0,1) fill-in)."""
    return [t.mu for t in s.tori if t.available and not t.mu.is_identity()]


def closed_presentation(s: ManifoldState) -> Presentation:
    return Presentation(s.presentation.names,
                        s.presentation.relators + tuple(fill_in_relators(s)))


__all__ = [
    "Geometry", "Status", "Structure", "TorusDescriptor", "ManifoldState", "SurfaceDecl",
    "ExternalDecl", "BLOCK_KINDS", "instantiate_block", "product_surfaces", "t2_x_sigma",
    "four_torus", "t2_x_s2", "external", "perturb_tori", "fill_in_relators",
    "closed_presentation",
]
