"""Words in a free group.

A word is a sequence of syllables ``(generator_index, exponent)``.  Words built
through the public constructors are always freely reduced: adjacent syllables
have distinct generators and no exponent is zero.  ``FreeWord(letters)`` can
hold an unreduced sequence; :func:`reduce_word` normalises it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..errors import WordSyntaxError

Syllable = tuple[int, int]


def _reduce_syllables(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    stack: list[list[int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Syllable, ...] = ()

    @classmethod
    def of(cls, syllables: Iterable[Syllable]) -> FreeWord:
        return cls(_reduce_syllables(syllables))

    @classmethod
    def identity(cls) -> FreeWord:
        return cls(())

    @classmethod
    def gen(cls, index: int, exp: int = 1) -> FreeWord:
        return cls(((index, exp),) if exp else ())

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> FreeWord:
        """Build from signed letters ``+-(index + 1)``."""
        return cls.of((abs(x) - 1, 1 if x > 0 else -1) for x in letters)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord.of(self.letters + other.letters)

    def __invert__(self) -> FreeWord:
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    inverse = __invert__

    def __pow__(self, n: int) -> FreeWord:
        if n < 0:
            return (~self) ** -n
        out = FreeWord()
        for _ in range(n):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def is_reduced(self) -> bool:
        return _reduce_syllables(self.letters) == self.letters

    def flat(self) -> list[int]:
        """Signed letters, one entry per unit of exponent."""
        out = []
        for g, e in self.letters:
            out.extend([g + 1 if e > 0 else -(g + 1)] * abs(e))
        return out

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def exponent_sums(self, ngens: int) -> list[int]:
        row = [0] * ngens
        for g, e in self.letters:
            row[g] += e
        return row

    def occurrences(self, gen: int) -> int:
        return sum(abs(e) for g, e in self.letters if g == gen)

    def substitute(self, images: Mapping[int, FreeWord]) -> FreeWord:
        parts: list[Syllable] = []
        for g, e in self.letters:
            if g in images:
                img = images[g] if e > 0 else ~images[g]
                for _ in range(abs(e)):
                    parts.extend(img.letters)
            else:
                parts.append((g, e))
        return FreeWord.of(parts)

    def reindex(self, mapping: Mapping[int, int]) -> FreeWord:
        return FreeWord.of((mapping[g], e) for g, e in self.letters)

    def rotations(self) -> list[FreeWord]:
        """All cyclic rotations at letter granularity."""
        flat = self.flat()
        return [FreeWord.from_letters(flat[i:] + flat[:i]) for i in range(max(1, len(flat)))]

    def format(self, names: Sequence[str], sep: str = " ") -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return sep.join(parts)


def reduce_word(w: FreeWord) -> FreeWord:
    return FreeWord(_reduce_syllables(w.letters))


def commutator_word(u: FreeWord, v: FreeWord) -> FreeWord:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * ~u * ~v


def cyclically_reduce(w: FreeWord) -> FreeWord:
    flat = w.flat()
    # free reduction first, then peel matching ends
    flat = reduce_word(FreeWord.from_letters(flat)).flat()
    i, j = 0, len(flat) - 1
    while i < j and flat[i] == -flat[j]:
        i += 1
        j -= 1
    return FreeWord.from_letters(flat[i:j + 1])


def canonical_cyclic(w: FreeWord) -> tuple[int, ...]:
    """Key identifying a cyclic word up to rotation and inversion."""
    flat = cyclically_reduce(w).flat()
    if not flat:
        return ()
    inv = [-x for x in reversed(flat)]
    cands = []
    for seq in (flat, inv):
        for i in range(len(seq)):
            cands.append(tuple(seq[i:] + seq[:i]))
    return min(cands)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[\[\]\(\),\^\*]))")


class _WordParser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.index = {n: i for i, n in enumerate(names)}
        self.toks = self._lex(text)
        self.pos = 0

    def _lex(self, text):
        toks = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise WordSyntaxError(f"unexpected character {text[i]!r}", i)
            kind = m.lastgroup
            start = m.start(kind)
            toks.append((kind, m.group(kind), start))
            i = m.end()
        return toks

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None, len(self.text))

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None:
            raise WordSyntaxError("unexpected end of word", tok[2])
        if sym is not None and tok[1] != sym:
            raise WordSyntaxError(f"expected {sym!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def word(self) -> FreeWord:
        out = FreeWord()
        seen = False
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                continue
            if kind == "name" or (kind == "sym" and val in "[(") or kind == "int":
                out = out * self.factor()
                seen = True
                continue
            break
        if not seen:
            raise WordSyntaxError("empty word", self.peek()[2])
        return out

    def factor(self) -> FreeWord:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            k, v, col = self.take()
            if k != "int":
                raise WordSyntaxError(f"expected integer exponent, found {v!r}", col)
            base = base ** int(v)
        return base

    def atom(self) -> FreeWord:
        kind, val, col = self.take()
        if kind == "name":
            if val not in self.index:
                raise WordSyntaxError(f"unknown generator {val!r}", col)
            return FreeWord.gen(self.index[val])
        if kind == "int":
            if val != "1":
                raise WordSyntaxError(f"integer {val!r} is not a word (only 1 denotes the identity)", col)
            return FreeWord()
        if val == "(":
            w = self.word()
            self.take(")")
            return w
        if val == "[":
            u = self.word()
            self.take(",")
            v = self.word()
            self.take("]")
            return commutator_word(u, v)
        raise WordSyntaxError(f"unexpected {val!r}", col)


def parse_word(text: str, names: Sequence[str]) -> FreeWord:
    """Parse ``b2 a2 b2^-1``, ``[b1^-1, d1^-1]``, ``x^5 * y`` or ``1``."""
    p = _WordParser(text, names)
    w = p.word()
    if p.pos != len(p.toks):
        raise WordSyntaxError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    return w
