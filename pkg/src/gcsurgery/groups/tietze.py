"""Tietze transformations and a budgeted, conservative simplifier.

The simplifier only uses moves that cannot grow a presentation past the
relator-length cap:

* drop relators that cyclically reduce to the identity (or duplicate another
  relator up to rotation and inversion),
* free and cyclic reduction of relators,
* eliminate a generator ``g`` when some relator contains it exactly once,
  i.e. can be rotated to ``g w^-1`` with ``w`` free of ``g``; every other
  relator has ``g`` replaced by ``w`` and ``g`` leaves the generating set.

The expanding moves (``add_consequence``, ``add_generator``) exist for
property testing of invariants under arbitrary Tietze sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import Presentation
from .words import FreeWord, canonical_cyclic, cyclically_reduce

DEFAULT_BUDGET = 5000
DEFAULT_RELATOR_CAP = 64


@dataclass(frozen=True)
class Simplification:
    presentation: Presentation
    moves: tuple[str, ...]
    exhausted: bool


def drop_trivial_relators(p: Presentation) -> Presentation:
    seen = set()
    keep = []
    for r in p.relators:
        key = canonical_cyclic(r)
        if key and key not in seen:
            seen.add(key)
            keep.append(r)
    return Presentation(p.names, tuple(keep))


def isolate(r: FreeWord, gen: int) -> FreeWord | None:
    """Return ``w`` with ``gen = w`` implied by ``r``, if ``gen`` occurs once in ``r``."""
    flat = cyclically_reduce(r).flat()
    hits = [i for i, x in enumerate(flat) if abs(x) == gen + 1]
    if len(hits) != 1:
        return None
    i = hits[0]
    rotated = flat[i:] + flat[:i]
    rest = FreeWord.from_letters(rotated[1:])
    # g^e * rest = 1  =>  g = rest^-1 when e = 1, g = rest when e = -1
    return ~rest if rotated[0] > 0 else rest


def eliminate(p: Presentation, gen: int, image: FreeWord, source: int) -> Presentation:
    """Substitute ``gen -> image`` everywhere, dropping relator ``source`` and ``gen``."""
    keep = [i for i in range(p.ngens) if i != gen]
    remap = {old: new for new, old in enumerate(keep)}
    rels = []
    for k, r in enumerate(p.relators):
        if k == source:
            continue
        rels.append(r.substitute({gen: image}).reindex(remap))
    return Presentation(tuple(p.names[i] for i in keep), tuple(rels))


def _best_elimination(p: Presentation, cap: int):
    best = None
    for k, r in sorted(enumerate(p.relators), key=lambda kr: (len(kr[1]), kr[0])):
        for g in sorted(r.generators()):
            image = isolate(r, g)
            if image is None:
                continue
            growth = 0
            too_long = False
            for j, other in enumerate(p.relators):
                if j == k:
                    continue
                n = other.occurrences(g)
                if not n:
                    continue
                new_len = len(cyclically_reduce(other.substitute({g: image})))
                if new_len > cap:
                    too_long = True
                    break
                growth += new_len - len(other)
            if too_long:
                continue
            score = (growth - len(r), len(r), k, g)
            if best is None or score < best[0]:
                best = (score, k, g, image)
        if best is not None and len(r) == 1:
            # a relator that is a single generator is always the cheapest move
            break
    return best


def simplify_with_trace(p: Presentation, budget: int = DEFAULT_BUDGET,
                        relator_cap: int = DEFAULT_RELATOR_CAP) -> Simplification:
    if budget <= 0:
        raise ValueError("budget must be positive")
    moves: list[str] = []
    current = p
    while True:
        cleaned = drop_trivial_relators(current)
        if cleaned != current:
            if len(moves) >= budget:
                return Simplification(current, tuple(moves), True)
            moves.append(f"drop {len(current.relators) - len(cleaned.relators)} trivial/duplicate relator(s)")
            current = cleaned
        best = _best_elimination(current, relator_cap)
        if best is None:
            return Simplification(current, tuple(moves), False)
        if len(moves) >= budget:
            return Simplification(current, tuple(moves), True)
        _, k, g, image = best
        moves.append(f"eliminate {current.names[g]} = {image.format(current.names)}")
        current = eliminate(current, g, image, k)


def simplify_presentation(p: Presentation, budget: int = DEFAULT_BUDGET,
                          relator_cap: int = DEFAULT_RELATOR_CAP) -> Presentation:
    return simplify_with_trace(p, budget, relator_cap).presentation


# expanding moves, used to exercise invariance properties


def add_consequence(p: Presentation, parts: list[tuple[int, FreeWord, int]]) -> Presentation:
    """Append a product of conjugates ``c r_k^e c^-1`` of existing relators."""
    w = FreeWord()
    for k, conj, e in parts:
        w = w * conj * (p.relators[k] ** e) * ~conj
    return Presentation(p.names, p.relators + (w,))


def add_generator(p: Presentation, name: str, definition: FreeWord) -> Presentation:
    """New generator ``name`` with defining relator ``name^-1 definition``."""
    g = FreeWord.gen(p.ngens)
    return Presentation(p.names + (name,), p.relators + (~g * definition,))


def reorder_relators(p: Presentation, order: list[int]) -> Presentation:
    return Presentation(p.names, tuple(p.relators[i] for i in order))


def invert_relator(p: Presentation, k: int) -> Presentation:
    rels = list(p.relators)
    rels[k] = ~rels[k]
    return Presentation(p.names, tuple(rels))
