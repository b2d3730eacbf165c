"""Young walls on the patterns P^1 and P^n.

A wall is stored as its column heights h_0 >= h_1 >= ... (column 0 is the
rightmost one); block colors are recomputed from the pattern.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .cartan import (AffineWeight, ClassicalWeight, RootVector, cl, fundamental,
                     root_to_weight)
from .crystal import Crystal, reduced_action
from .errors import DomainError
from .paths import Path, normalize
from .perfect import B1Elem, BnElem, _mod1

KINDS = ("Y1", "Yn")


@dataclass(frozen=True)
class WallPattern:
    kind: str  # "Y1" (pattern P^1) or "Yn" (pattern P^n)
    n: int
    k: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown wall kind {self.kind!r}")
        if self.n < 1:
            raise DomainError("rank must be positive")
        object.__setattr__(self, "k", self.k % (self.n + 1))

    def color(self, j: int, r: int) -> int:
        """Color of the block in column j at height r (r >= 1)."""
        if self.kind == "Y1":
            return (self.k - j + (r - 1)) % (self.n + 1)
        return (self.k + j - (r - 1)) % (self.n + 1)

    @property
    def path_crystal(self) -> str:
        return "B1" if self.kind == "Y1" else "Bn"


@dataclass(frozen=True)
class YoungWall:
    pattern: WallPattern
    heights: tuple[int, ...] = ()

    def __post_init__(self):
        hs = tuple(int(h) for h in self.heights)
        while hs and hs[-1] == 0:
            hs = hs[:-1]
        if any(h < 0 for h in hs):
            raise DomainError(f"negative height in {hs}")
        if any(a < b for a, b in zip(hs, hs[1:])):
            raise DomainError(f"heights must weakly decrease: {hs}")
        object.__setattr__(self, "heights", hs)

    @classmethod
    def empty(cls, kind: str, n: int, k: int = 0) -> YoungWall:
        return cls(WallPattern(kind, n, k))

    @property
    def n(self) -> int:
        return self.pattern.n

    def h(self, j: int) -> int:
        return self.heights[j] if 0 <= j < len(self.heights) else 0

    @property
    def size(self) -> int:
        return sum(self.heights)

    def is_reduced(self) -> bool:
        size = self.n + 1
        hs = self.heights + (0,)
        return all(a - b < size for a, b in zip(hs, hs[1:]))

    def column_colors(self, j: int) -> list[int]:
        return [self.pattern.color(j, r) for r in range(1, self.h(j) + 1)]

    @cached_property
    def color_counts(self) -> tuple[int, ...]:
        counts = [0] * (self.n + 1)
        for j in range(len(self.heights)):
            for c in self.column_colors(j):
                counts[c] += 1
        return tuple(counts)

    def with_heights(self, hs) -> YoungWall:
        return YoungWall(self.pattern, tuple(hs))

    def to_json(self) -> dict:
        p = self.pattern
        return {"kind": p.kind, "n": p.n, "k": p.k, "heights": list(self.heights)}

    @classmethod
    def from_json(cls, data) -> YoungWall:
        return cls(WallPattern(data["kind"], int(data["n"]), int(data.get("k", 0))),
                   tuple(int(h) for h in data["heights"]))

    def key(self) -> str:
        return f"{self.pattern.kind}[{','.join(map(str, self.heights))}]"

    def __str__(self):
        return self.key()


def column_weight(Y: YoungWall, j: int) -> RootVector:
    """wt(y_j) = sum of alpha_c over the blocks of column j."""
    c = [0] * (Y.n + 1)
    for col in Y.column_colors(j):
        c[col] += 1
    return RootVector(tuple(c))


def wall_weight(Y: YoungWall) -> AffineWeight:
    return fundamental(Y.n, Y.pattern.k) - root_to_weight(RootVector(Y.color_counts))


def signature(Y: YoungWall, i: int) -> list[tuple[str, int]]:
    """Unreduced i-signature, tagged by column, read from column len(heights) down to 0."""
    p = Y.pattern
    i %= Y.n + 1
    out = []
    for j in range(len(Y.heights), -1, -1):
        h = Y.h(j)
        if h >= 1 and p.color(j, h) == i and h - 1 >= Y.h(j + 1):
            out.append(("-", j))
        if p.color(j, h + 1) == i and (j == 0 or h + 1 <= Y.h(j - 1)):
            out.append(("+", j))
    return out


def wall_f(i: int, Y: YoungWall) -> YoungWall | None:
    j = reduced_action(signature(Y, i)).f_tag
    if j is None:
        return None
    hs = list(Y.heights) + [0] * (j + 1 - len(Y.heights))
    hs[j] += 1
    return Y.with_heights(hs)


def wall_e(i: int, Y: YoungWall) -> YoungWall | None:
    j = reduced_action(signature(Y, i)).e_tag
    if j is None:
        return None
    hs = list(Y.heights)
    hs[j] -= 1
    return Y.with_heights(hs)


def wall_eps(Y: YoungWall, i: int) -> int:
    return reduced_action(signature(Y, i)).eps


def wall_phi(Y: YoungWall, i: int) -> int:
    return reduced_action(signature(Y, i)).phi


class WallCrystal(Crystal):
    """Young walls of one pattern and base weight, with the signature-rule operators."""

    def __init__(self, kind: str, n: int, k: int = 0):
        self.pattern = WallPattern(kind, n, k)
        self.n = n

    @property
    def highest_weight(self) -> YoungWall:
        return YoungWall(self.pattern)

    def e(self, i, b):
        return wall_e(i, b)

    def f(self, i, b):
        return wall_f(i, b)

    def epsilon(self, i, b):
        return wall_eps(b, i)

    def phi(self, i, b):
        return wall_phi(b, i)

    def weight(self, b) -> ClassicalWeight:
        return cl(wall_weight(b))

    def affine_weight(self, b) -> AffineWeight:
        return wall_weight(b)

    def depth(self, b) -> int:
        """Ht(Lambda_k - wt(b)), the number of blocks."""
        return b.size

    def key(self, b):
        return b.key()


def wall_from_path(p: Path) -> YoungWall:
    """Invert the letter congruences, from the last non-ground position down to 0."""
    if p.crystal not in ("B1", "Bn"):
        raise DomainError(f"walls realize only B1/Bn paths, got {p.crystal}")
    kind = "Y1" if p.crystal == "B1" else "Yn"
    n, k = p.n, p.k % (p.n + 1)
    size = n + 1
    q = normalize(p)
    L = len(q.tail)
    hs = [0] * L
    above = 0
    for j in range(L - 1, -1, -1):
        b = q.letter(j)
        if kind == "Y1":
            if not isinstance(b, B1Elem):
                raise DomainError(f"letter {b} is not in B1")
            target = (b.idx + j - k) % size
        else:
            if not isinstance(b, BnElem):
                raise DomainError(f"letter {b} is not in Bn")
            target = (1 + j + k - b.idx) % size
        h = above + (target - above) % size
        hs[j] = h
        above = h
    return YoungWall(WallPattern(kind, n, k), tuple(hs))


def path_from_wall(Y: YoungWall) -> Path:
    n, k = Y.n, Y.pattern.k
    letters = []
    for j in range(len(Y.heights)):
        h = Y.h(j)
        if Y.pattern.kind == "Y1":
            letters.append(B1Elem(_mod1(h - j + k, n)))
        else:
            letters.append(BnElem(_mod1(1 - h + j + k, n)))
    return normalize(Path(Y.pattern.path_crystal, n, k, tuple(reversed(letters))))


def render(Y: YoungWall) -> str:
    """ASCII picture: rows top to bottom, columns left (high j) to right (j = 0)."""
    ncols = max(len(Y.heights), 1)
    top = max(Y.heights, default=0)
    lines = []
    for r in range(top, 0, -1):
        cells = []
        for j in range(ncols - 1, -1, -1):
            cells.append(str(Y.pattern.color(j, r)) if Y.h(j) >= r else ".")
        lines.append(" ".join(cells))
    lines.append("-" * (2 * ncols - 1))
    return "\n".join(lines)


def enumerate_reduced_walls(kind: str, n: int, k: int, max_blocks: int) -> list[YoungWall]:
    """All (n+1)-reduced walls with at most ``max_blocks`` blocks."""
    pat = WallPattern(kind, n, k)
    out: list[YoungWall] = []

    def rec(prefix: list[int], left: int):
        out.append(YoungWall(pat, tuple(prefix)))
        cap = prefix[-1] if prefix else left
        for h in range(1, min(cap, left) + 1):
            prefix.append(h)
            rec(prefix, left - h)
            prefix.pop()

    rec([], max_blocks)
    return [Y for Y in out if Y.is_reduced()]
