"""lambda-paths over B^1, B^n and B^ad.

A path is ``... (x) p_2 (x) p_1 (x) p_0`` with p_m equal to the ground-state
letter for all large m.  Only the finite tail (p_{L-1}, ..., p_0) is stored.

The operators e_i, f_i are computed on the truncation
``u_{lambda_N} (x) p_{N-1} (x) ... (x) p_0``, where u_{lambda_N} is the highest
weight element of B(lambda_N) and lambda_N is the weight carried by the ground
state at position N.  It contributes ``+`` repeated <h_i, lambda_N> times and no
``-``.  The result is recomputed with one more period as a consistency check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cartan import ClassicalWeight, fundamental_cl, pairing
from .crystal import Crystal, apply_word, reduced_action
from .errors import ConventionError, DomainError
from .perfect import (GroundState, ground_state, letter_display, letter_from_json,
                      letter_to_json, perfect_crystal)

CRYSTALS = ("B1", "Bn", "Bad")


@dataclass(frozen=True)
class Path:
    crystal: str
    n: int
    k: int
    tail: tuple = ()  # (p_{L-1}, ..., p_1, p_0)

    def __post_init__(self):
        if self.crystal not in CRYSTALS:
            raise DomainError(f"unknown path crystal {self.crystal!r}")
        object.__setattr__(self, "k", self.k % (self.n + 1))
        object.__setattr__(self, "tail", tuple(self.tail))

    @property
    def ground(self) -> GroundState:
        return ground_state(self.crystal, self.k, self.n)

    def letter(self, m: int):
        L = len(self.tail)
        if m < L:
            return self.tail[L - 1 - m]
        return self.ground.letter(m)

    def letters(self, length: int) -> list:
        """Positions length-1, ..., 0 in tensor (left to right) order."""
        return [self.letter(m) for m in range(length - 1, -1, -1)]

    def key(self) -> str:
        return f"{self.crystal}:{self.k}:" + "⊗".join(str(b) for b in self.tail)

    def display(self) -> str:
        return "(…, " + ", ".join(letter_display(b, self.n) for b in self.tail) + ")"

    def to_json(self) -> dict:
        return {"crystal": self.crystal, "n": self.n, "k": self.k,
                "tail": [letter_to_json(b) for b in self.tail]}

    @classmethod
    def from_json(cls, data) -> Path:
        return normalize(cls(data["crystal"], int(data["n"]), int(data.get("k", 0)),
                             tuple(letter_from_json(x) for x in data["tail"])))

    def __str__(self):
        return self.key()


def normalize(p: Path) -> Path:
    """Drop leading tail entries that equal the ground-state letter."""
    tail = list(p.tail)
    gs = p.ground
    while tail and tail[0] == gs.letter(len(tail) - 1):
        tail.pop(0)
    if len(tail) == len(p.tail):
        return p
    return Path(p.crystal, p.n, p.k, tuple(tail))


def ground_path(crystal: str, n: int, k: int = 0) -> Path:
    return Path(crystal, n, k, ())


class PathCrystal(Crystal):
    def __init__(self, crystal: str, n: int, k: int = 0):
        self.name = crystal
        self.n = n
        self.k = k % (n + 1)
        self.B = perfect_crystal(crystal, n)
        self.gs = ground_state(crystal, self.k, n)

    @property
    def highest_weight(self) -> Path:
        return ground_path(self.name, self.n, self.k)

    def _start_length(self, p: Path) -> int:
        size = self.n + 1
        need = len(p.tail) + size
        return -(-need // size) * size

    def _action(self, i: int, p: Path, N: int):
        """Reduced signature action on the length-N truncation (tags are positions)."""
        signs = [("+", "u")] * pairing(i, fundamental_cl(self.n, self.gs.weight_index(N)))
        for m in range(N - 1, -1, -1):
            b = p.letter(m)
            signs.extend(("-", m) for _ in range(self.B.epsilon(i, b)))
            signs.extend(("+", m) for _ in range(self.B.phi(i, b)))
        return reduced_action(signs)

    def _apply(self, i: int, p: Path, N: int, op: str):
        while True:
            act = self._action(i, p, N)
            tag = act.f_tag if op == "f" else act.e_tag
            if tag != "u":
                break
            N += self.n + 1  # f reached the highest weight factor: look further left
        if tag is None:
            return None, act
        letters = p.letters(N)
        idx = N - 1 - tag
        b = letters[idx]
        new = self.B.f(i, b) if op == "f" else self.B.e(i, b)
        if new is None:
            raise ConventionError(f"signature selected position {tag} but {op}_{i} is undefined there")
        letters[idx] = new
        return normalize(Path(self.name, self.n, self.k, tuple(letters))), act

    def _checked(self, i: int, p: Path, op: str):
        self._own(p)
        N = self._start_length(p)
        r1, a1 = self._apply(i, p, N, op)
        r2, a2 = self._apply(i, p, N + self.n + 1, op)
        if r1 != r2 or (a1.eps, a1.phi) != (a2.eps, a2.phi):
            raise ConventionError(f"truncation unstable for {op}_{i} on {p.key()}")
        return r1, a1

    def _own(self, p: Path) -> None:
        if p.crystal != self.name or p.n != self.n or p.k != self.k:
            raise DomainError(f"path {p.key()} does not belong to {self.name}, n={self.n}, k={self.k}")

    def f(self, i, p):
        return self._checked(i, p, "f")[0]

    def e(self, i, p):
        return self._checked(i, p, "e")[0]

    def epsilon(self, i, p):
        return self._checked(i, p, "e")[1].eps

    def phi(self, i, p):
        return self._checked(i, p, "e")[1].phi

    def weight(self, p) -> ClassicalWeight:
        w = fundamental_cl(self.n, self.k)
        for m in range(len(p.tail)):
            w = w + self.B.weight(p.letter(m)) - self.B.weight(self.gs.letter(m))
        return w

    def key(self, p):
        return p.key()


def path_f(i: int, p: Path) -> Path | None:
    return PathCrystal(p.crystal, p.n, p.k).f(i, p)


def path_e(i: int, p: Path) -> Path | None:
    return PathCrystal(p.crystal, p.n, p.k).e(i, p)


def replay_word(word: Sequence[int], start: Path) -> Path | None:
    """Apply the operator word f_{w[0]} ... f_{w[-1]} to ``start`` (rightmost first)."""
    return apply_word(PathCrystal(start.crystal, start.n, start.k), word, start)


DEFAULT_MAX_STEPS = 10_000


def canonical_word(crystal: Crystal, x, max_steps: int | None = None) -> list[int]:
    """An f-word w with x = f_{w[0]} f_{w[1]} ... u, found greedily.

    At each step e_i is applied for the smallest i with eps_i > 0.  The step
    bound defaults to the realization's depth (number of blocks for walls).
    """
    if max_steps is None:
        depth = getattr(crystal, "depth", None)
        max_steps = depth(x) if depth is not None else DEFAULT_MAX_STEPS
    word = []
    while True:
        i = next((i for i in crystal.residues if crystal.epsilon(i, x) > 0), None)
        if i is None:
            return word
        if len(word) >= max_steps:
            raise DomainError("element is not in the highest weight component")
        x = crystal.e(i, x)
        word.append(i)


def convert(x, source: Crystal, target: Crystal):
    """Send x to the corresponding element of another realization of B(lambda)."""
    word = canonical_word(source, x)
    out = apply_word(target, word, target.highest_weight)
    if out is None:
        raise ConventionError("canonical word dies in the target realization")
    return out
