from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import InvalidGeneratorError
from .words import FreeWord, cyclically_reduce, parse_word


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group.  Relators are kept cyclically reduced."""

    names: tuple[str, ...]
    relators: tuple[FreeWord, ...] = field(default=())

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise InvalidGeneratorError(f"duplicate generator names in {self.names}")
        rels = []
        for r in self.relators:
            _check(r, len(self.names))
            rels.append(cyclically_reduce(r))
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def parse(cls, names: Sequence[str] | str, relators: Iterable[str] = ()) -> Presentation:
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        return cls(names, tuple(parse_word(r, names) for r in relators))

    @property
    def ngens(self) -> int:
        return len(self.names)

    def word(self, text: str) -> FreeWord:
        return parse_word(text, self.names)

    def format(self) -> str:
        rels = ", ".join(r.format(self.names) for r in self.relators)
        return f"< {' '.join(self.names)} | {rels} >"

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)


def _check(w: FreeWord, ngens: int):
    for g, _ in w.letters:
        if not 0 <= g < ngens:
            raise InvalidGeneratorError(f"generator index {g} out of range for {ngens} generators")


def quotient(p: Presentation, extra: Iterable[FreeWord]) -> Presentation:
    """Append relators; the normal closure is implicit in presentation semantics."""
    extra = tuple(extra)
    for w in extra:
        _check(w, p.ngens)
    return Presentation(p.names, p.relators + extra)


def free_product(a: Presentation, b: Presentation, b_names: Sequence[str]) -> Presentation:
    """Disjoint union of generators (b's generators renamed to ``b_names``)."""
    shift = {i: i + a.ngens for i in range(b.ngens)}
    rels = a.relators + tuple(r.reindex(shift) for r in b.relators)
    return Presentation(a.names + tuple(b_names), rels)
