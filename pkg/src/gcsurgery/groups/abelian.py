from __future__ import annotations

from dataclasses import dataclass

from .presentation import Presentation


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z/t1 + ... + Z/tk + Z^rank`` with ``t1 | t2 | ... | tk`` and every ``ti >= 2``."""

    torsion: tuple[int, ...] = ()
    rank: int = 0

    def __post_init__(self):
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion factor {t} < 2")
        for s, t in zip(self.torsion, self.torsion[1:]):
            if t % s:
                raise ValueError(f"torsion factors {self.torsion} violate divisibility")
        if self.rank < 0:
            raise ValueError("negative rank")

    def is_trivial(self) -> bool:
        return not self.torsion and self.rank == 0

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def format(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, in divisibility order.

    Plain elimination over the integers: pick the smallest nonzero entry as
    pivot, reduce its row and column modulo it, repeat until the pivot divides
    everything left in the block.
    """
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # pivot must also divide the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # a remainder smaller than the pivot exists: move it into pivot position
            best = None
            for i in range(t + 1, m):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                    best = (i, t, a[i][t])
            for j in range(t + 1, n):
                if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                    best = (t, j, a[t][j])
            bi, bj, _ = best
            if bj == t:
                a[t], a[bi] = a[bi], a[t]
            else:
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelianize(p: Presentation) -> AbelianInvariants:
    matrix = [r.exponent_sums(p.ngens) for r in p.relators]
    diag = smith_diagonal(matrix) if matrix and p.ngens else []
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(torsion, p.ngens - len(diag))
