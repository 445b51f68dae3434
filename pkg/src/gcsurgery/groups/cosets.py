"""Todd-Coxeter coset enumeration, HLT strategy with lookahead.

Columns of the coset table are ``2*g`` for generator ``g`` and ``2*g + 1`` for
its inverse, so ``col ^ 1`` is the inverse column.  Relators and subgroup
generators are sorted into a canonical order before enumeration, which makes
the outcome (including the point of overflow) independent of the order in
which they were supplied.

``max_cosets`` bounds the number of rows ever allocated, live or dead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .presentation import Presentation
from .words import FreeWord, cyclically_reduce

DEFAULT_MAX_COSETS = 100_000


@dataclass(frozen=True)
class CosetOutcome:
    index: int | None
    max_cosets: int
    defined: int

    @property
    def closed(self) -> bool:
        return self.index is not None

    def __str__(self):
        if self.closed:
            return f"Index({self.index})"
        return f"Overflow(>{self.max_cosets})"


class _Full(Exception):
    pass


def _columns(w: FreeWord) -> list[int]:
    return [2 * (abs(x) - 1) + (0 if x > 0 else 1) for x in w.flat()]


class _Table:
    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.rows: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        # budget counts every row ever allocated; dead rows are not reclaimed
        self.max = max_cosets

    def define(self, c: int, x: int):
        if len(self.rows) >= self.max:
            raise _Full
        new = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.parent.append(new)
        self.live += 1
        self.rows[c][x] = new
        self.rows[new][x ^ 1] = c

    def rep(self, c: int) -> int:
        root = c
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def _merge(self, a: int, b: int, queue: list[int]):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        rows = self.rows
        i = 0
        while i < len(queue):
            dead = queue[i]
            i += 1
            for x in range(self.ncols):
                d = rows[dead][x]
                if d < 0:
                    continue
                if rows[d][x ^ 1] == dead:
                    rows[d][x ^ 1] = -1
                mu, nu = self.rep(dead), self.rep(d)
                if rows[mu][x] >= 0:
                    self._merge(nu, rows[mu][x], queue)
                elif rows[nu][x ^ 1] >= 0:
                    self._merge(mu, rows[nu][x ^ 1], queue)
                else:
                    rows[mu][x] = nu
                    rows[nu][x ^ 1] = mu

    def scan(self, c: int, word: list[int], fill: bool):
        """Scan ``word`` from coset ``c``; define cosets only when ``fill``."""
        rows = self.rows
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and rows[f][word[i]] >= 0:
                f = rows[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][word[j] ^ 1] >= 0:
                b = rows[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                rows[f][word[i]] = b
                rows[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, word[i])

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def lookahead(self, relators: list[list[int]]):
        c = 0
        while c < len(self.rows):
            if self.alive(c):
                for w in relators:
                    self.scan(c, w, fill=False)
                    if not self.alive(c):
                        break
            c += 1


def enumerate_cosets(p: Presentation, subgroup: Sequence[FreeWord] = (),
                     max_cosets: int = DEFAULT_MAX_COSETS) -> CosetOutcome:
    """Index of the subgroup generated by ``subgroup``, or an overflow outcome."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    relators = sorted({tuple(_columns(cyclically_reduce(r))) for r in p.relators} - {()})
    relators = [list(w) for w in relators]
    subgens = sorted({tuple(_columns(w)) for w in subgroup} - {()}, key=lambda w: (len(w), w))
    subgens = [list(w) for w in subgens]

    table = _Table(p.ngens, max_cosets)

    def guarded(step):
        while True:
            try:
                step()
                return
            except _Full:
                # lookahead may close the table without further definitions
                before = table.live
                table.lookahead(relators)
                if table.live >= before:
                    raise

    try:
        def scan_subgroup():
            for w in subgens:
                table.scan(0, w, fill=True)
        guarded(scan_subgroup)

        c = 0
        while c < len(table.rows):
            if table.alive(c):
                def process(c=c):
                    for w in relators:
                        if not table.alive(c):
                            return
                        table.scan(c, w, fill=True)
                    if table.alive(c):
                        row = table.rows[c]
                        for x in range(table.ncols):
                            if row[x] < 0:
                                table.define(c, x)
                guarded(process)
            c += 1
    except _Full:
        return CosetOutcome(None, max_cosets, len(table.rows))
    return CosetOutcome(table.live, max_cosets, len(table.rows))
