"""Affine Cartan datum of type A_n^(1).

Residues live in I = Z/(n+1)Z and are always normalized to 0..n.  Roots and
weights are plain integer vectors indexed by residue:

* :class:`RootVector` -- coefficients of alpha_0..alpha_n.
* :class:`AffineWeight` -- coefficients of Lambda_0..Lambda_n plus a delta part.
* :class:`ClassicalWeight` -- coefficients of Lambda_0..Lambda_n only.

Classical roots (images of roots under ``cl``) are tuples of length n holding
the coefficients of alpha_1..alpha_n.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .errors import DomainError


@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Affine Cartan matrix a_ij = alpha_j(h_i) of type A_n^(1)."""
    if n < 1:
        raise DomainError(f"rank must be positive, got {n}")
    size = n + 1
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i == j:
                row.append(2)
            elif n == 1:
                # both neighbours of i coincide in Z/2Z
                row.append(-2)
            elif (i - j) % size in (1, size - 1):
                row.append(-1)
            else:
                row.append(0)
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class CartanDatum:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"rank must be positive, got {self.n}")

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return cartan_matrix(self.n)

    def a(self, i: int, j: int) -> int:
        size = self.n + 1
        return self.matrix[i % size][j % size]

    @property
    def residues(self) -> range:
        return range(self.n + 1)


@dataclass(frozen=True)
class RootVector:
    coeff: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coeff) - 1

    @classmethod
    def zero(cls, n: int) -> RootVector:
        return cls((0,) * (n + 1))

    @classmethod
    def simple(cls, n: int, i: int) -> RootVector:
        c = [0] * (n + 1)
        c[i % (n + 1)] = 1
        return cls(tuple(c))

    @classmethod
    def delta(cls, n: int) -> RootVector:
        return cls((1,) * (n + 1))

    def __add__(self, other: RootVector) -> RootVector:
        return RootVector(tuple(a + b for a, b in zip(self.coeff, other.coeff)))

    def __sub__(self, other: RootVector) -> RootVector:
        return RootVector(tuple(a - b for a, b in zip(self.coeff, other.coeff)))

    def __neg__(self) -> RootVector:
        return RootVector(tuple(-a for a in self.coeff))

    def scale(self, m: int) -> RootVector:
        return RootVector(tuple(m * a for a in self.coeff))

    def is_positive(self) -> bool:
        """Membership in Q^+ (all coefficients nonnegative)."""
        return all(a >= 0 for a in self.coeff)

    def to_json(self) -> list[int]:
        return list(self.coeff)

    @classmethod
    def from_json(cls, data) -> RootVector:
        return cls(tuple(int(a) for a in data))


@dataclass(frozen=True)
class AffineWeight:
    lam: tuple[int, ...]
    delta: int = 0

    @property
    def n(self) -> int:
        return len(self.lam) - 1

    def __add__(self, other: AffineWeight) -> AffineWeight:
        return AffineWeight(tuple(a + b for a, b in zip(self.lam, other.lam)),
                            self.delta + other.delta)

    def __sub__(self, other: AffineWeight) -> AffineWeight:
        return AffineWeight(tuple(a - b for a, b in zip(self.lam, other.lam)),
                            self.delta - other.delta)

    def to_json(self) -> dict:
        return {"lam": list(self.lam), "del": self.delta}

    @classmethod
    def from_json(cls, data) -> AffineWeight:
        return cls(tuple(int(a) for a in data["lam"]), int(data.get("del", 0)))


@dataclass(frozen=True)
class ClassicalWeight:
    lam: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.lam) - 1

    @classmethod
    def zero(cls, n: int) -> ClassicalWeight:
        return cls((0,) * (n + 1))

    def __add__(self, other: ClassicalWeight) -> ClassicalWeight:
        return ClassicalWeight(tuple(a + b for a, b in zip(self.lam, other.lam)))

    def __sub__(self, other: ClassicalWeight) -> ClassicalWeight:
        return ClassicalWeight(tuple(a - b for a, b in zip(self.lam, other.lam)))

    def __neg__(self) -> ClassicalWeight:
        return ClassicalWeight(tuple(-a for a in self.lam))

    def is_zero(self) -> bool:
        return not any(self.lam)


Weightlike = Union[AffineWeight, ClassicalWeight, RootVector]


def fundamental(n: int, k: int) -> AffineWeight:
    """Lambda_k as an affine weight."""
    lam = [0] * (n + 1)
    lam[k % (n + 1)] = 1
    return AffineWeight(tuple(lam))


def fundamental_cl(n: int, k: int) -> ClassicalWeight:
    return cl(fundamental(n, k))


def root_to_weight(alpha: RootVector) -> AffineWeight:
    """Express sum_j c_j alpha_j in the basis Lambda_i, delta.

    alpha_j has Lambda_i-coefficient a_ij, and alpha_j(d) = delta_{0j} puts the
    coefficient of alpha_0 into the delta part.
    """
    n = alpha.n
    a = cartan_matrix(n)
    lam = tuple(sum(a[i][j] * alpha.coeff[j] for j in range(n + 1)) for i in range(n + 1))
    return AffineWeight(lam, alpha.coeff[0])


def simple_root_cl(n: int, i: int) -> ClassicalWeight:
    """cl(alpha_i) as a classical weight."""
    return cl(root_to_weight(RootVector.simple(n, i)))


def pairing(i: int, w: Weightlike) -> int:
    """<h_i, w>."""
    if isinstance(w, RootVector):
        a = cartan_matrix(w.n)
        i %= w.n + 1
        return sum(a[i][j] * c for j, c in enumerate(w.coeff))
    return w.lam[i % len(w.lam)]


def level(w: AffineWeight | ClassicalWeight) -> int:
    """<c, w> with c = h_0 + ... + h_n."""
    return sum(w.lam)


def height(alpha: RootVector) -> int:
    if not alpha.is_positive():
        raise DomainError(f"height is defined on Q^+ only, got {alpha.coeff}")
    return sum(alpha.coeff)


def cl(w: AffineWeight | ClassicalWeight) -> ClassicalWeight:
    if isinstance(w, ClassicalWeight):
        return w
    return ClassicalWeight(w.lam)


def cl_root(alpha: RootVector) -> tuple[int, ...]:
    """Coefficients of alpha_1..alpha_n in cl(alpha); delta maps to zero."""
    c0 = alpha.coeff[0]
    return tuple(c - c0 for c in alpha.coeff[1:])


def classical_root_weight(n: int, c: tuple[int, ...]) -> ClassicalWeight:
    """The classical weight of sum_{j=1..n} c_j alpha_j."""
    return cl(root_to_weight(RootVector((0,) + tuple(c))))


@dataclass(frozen=True)
class Arc:
    """Classification of a classical root against +-alpha_{ij}."""

    kind: str  # "zero", "plus", "minus" or "none"
    i: int = 0
    j: int = 0


def arc_decompose(c: tuple[int, ...]) -> Arc:
    """Decide whether c is 0, +alpha_{ij} or -alpha_{ij} (1 <= i <= j <= n)."""
    if not any(c):
        return Arc("zero")
    support = [idx + 1 for idx, v in enumerate(c) if v != 0]
    lo, hi = support[0], support[-1]
    values = set(c[lo - 1:hi])
    if hi - lo + 1 != len(support) or len(values) != 1:
        return Arc("none")
    v = values.pop()
    if v == 1:
        return Arc("plus", lo, hi)
    if v == -1:
        return Arc("minus", lo, hi)
    return Arc("none")
