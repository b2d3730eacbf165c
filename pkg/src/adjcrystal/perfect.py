"""The level-1 perfect crystals B^1, B^n and the adjoint crystal B^ad.

Elements:

* ``B1Elem(a)`` is b_a in B^1 (1 <= a <= n+1), arrows b_i -i-> b_{i+1} and
  b_{n+1} -0-> b_1.
* ``BnElem(a)`` is bbar_a in B^n, arrows bbar_{j+1} -j-> bbar_j and
  bbar_1 -0-> bbar_{n+1}.
* ``AdjointElem`` is one of the empty element, a root element b_{+-alpha_ij}
  or h_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cartan import (ClassicalWeight, arc_decompose, classical_root_weight,
                     fundamental_cl, pairing, simple_root_cl)
from .crystal import Crystal, FiniteCrystal, Report, TensorProduct
from .errors import ConventionError, DomainError, PerfectnessError


@dataclass(frozen=True, order=True)
class B1Elem:
    idx: int

    def __str__(self):
        return f"b{self.idx}"


@dataclass(frozen=True, order=True)
class BnElem:
    idx: int

    def __str__(self):
        return f"bbar{self.idx}"


@dataclass(frozen=True, order=True)
class AdjointElem:
    tag: str  # "empty", "root" or "h"
    sign: int = 0
    i: int = 0
    j: int = 0

    @classmethod
    def empty(cls) -> AdjointElem:
        return cls("empty")

    @classmethod
    def root(cls, sign: int, i: int, j: int) -> AdjointElem:
        if sign not in (1, -1) or not 1 <= i <= j:
            raise DomainError(f"bad root element ({sign}, {i}, {j})")
        return cls("root", sign, i, j)

    @classmethod
    def h(cls, i: int) -> AdjointElem:
        return cls("h", 0, i, 0)

    def classical_root(self, n: int) -> tuple[int, ...]:
        """The root alpha with this element equal to b_alpha (zero for empty/h)."""
        c = [0] * n
        if self.tag == "root":
            for t in range(self.i, self.j + 1):
                c[t - 1] = self.sign
        return tuple(c)

    def __str__(self):
        if self.tag == "empty":
            return "∅"
        if self.tag == "h":
            return f"h{self.i}"
        return f"b[{'+' if self.sign > 0 else '-'}a{self.i}{self.j}]"


def _mod1(a: int, n: int) -> int:
    """Representative of a mod n+1 in 1..n+1."""
    return (a - 1) % (n + 1) + 1


def _lam_diff(n: int, plus: int, minus: int) -> ClassicalWeight:
    return fundamental_cl(n, plus) - fundamental_cl(n, minus)


class B1(FiniteCrystal):
    def __init__(self, n: int):
        elements = [B1Elem(a) for a in range(1, n + 2)]
        arrows = {(i, B1Elem(i)): B1Elem(i + 1) for i in range(1, n + 1)}
        arrows[(0, B1Elem(n + 1))] = B1Elem(1)
        super().__init__(n, elements, arrows,
                         lambda b: _lam_diff(n, b.idx, b.idx - 1), str)

    def letter(self, a: int) -> B1Elem:
        return B1Elem(_mod1(a, self.n))


class Bn(FiniteCrystal):
    def __init__(self, n: int):
        elements = [BnElem(a) for a in range(1, n + 2)]
        arrows = {(j, BnElem(j + 1)): BnElem(j) for j in range(1, n + 1)}
        arrows[(0, BnElem(1))] = BnElem(n + 1)
        super().__init__(n, elements, arrows,
                         lambda b: _lam_diff(n, b.idx - 1, b.idx), str)

    def letter(self, a: int) -> BnElem:
        return BnElem(_mod1(a, self.n))


def adjoint_roots(n: int) -> list[AdjointElem]:
    out = []
    for sign in (1, -1):
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                out.append(AdjointElem.root(sign, i, j))
    return out


def _root_elem(c: tuple[int, ...]) -> AdjointElem | None:
    arc = arc_decompose(c)
    if arc.kind == "plus":
        return AdjointElem.root(1, arc.i, arc.j)
    if arc.kind == "minus":
        return AdjointElem.root(-1, arc.i, arc.j)
    return None


class Badj(FiniteCrystal):
    """The adjoint crystal; defined for n >= 2."""

    def __init__(self, n: int):
        if n < 2:
            raise DomainError("the adjoint crystal is only built for n >= 2")
        roots = adjoint_roots(n)
        elements = [AdjointElem.empty()] + roots + [AdjointElem.h(i) for i in range(1, n + 1)]
        theta = (1,) * n
        arrows = {}
        for b in roots:
            alpha = b.classical_root(n)
            for i in range(1, n + 1):
                beta = tuple(a - (1 if t == i - 1 else 0) for t, a in enumerate(alpha))
                target = _root_elem(beta)
                if target is not None:
                    arrows[(i, b)] = target
            if alpha != theta and tuple(-a for a in alpha) != theta:
                beta = tuple(a + 1 for a in alpha)
                target = _root_elem(beta)
                if target is not None and beta != theta and tuple(-a for a in beta) != theta:
                    arrows[(0, b)] = target
        for i in range(1, n + 1):
            arrows[(i, AdjointElem.root(1, i, i))] = AdjointElem.h(i)
            arrows[(i, AdjointElem.h(i))] = AdjointElem.root(-1, i, i)
        arrows[(0, AdjointElem.root(-1, 1, n))] = AdjointElem.empty()
        arrows[(0, AdjointElem.empty())] = AdjointElem.root(1, 1, n)
        super().__init__(n, elements, arrows,
                         lambda b: classical_root_weight(n, b.classical_root(n)), str)


@lru_cache(maxsize=None)
def perfect_crystal(name: str, n: int) -> FiniteCrystal:
    """``name`` is one of ``"B1"``, ``"Bn"``, ``"Bad"``."""
    if name == "B1":
        return B1(n)
    if name == "Bn":
        return Bn(n)
    if name == "Bad":
        return Badj(n)
    raise DomainError(f"unknown perfect crystal {name!r}")


def pad_iso(bn: BnElem, b1: B1Elem, n: int) -> AdjointElem:
    """The isomorphism B^n (x) B^1 -> B^ad."""
    w = perfect_crystal("Bn", n).weight(bn) + perfect_crystal("B1", n).weight(b1)
    if w.is_zero():
        return AdjointElem.h(b1.idx) if b1.idx != n + 1 else AdjointElem.empty()
    for r in adjoint_roots(n):
        if classical_root_weight(n, r.classical_root(n)) == w:
            return r
    raise ConventionError(f"no adjoint element of weight {w.lam}")


# -- perfectness ------------------------------------------------------------

def eps_weight(B: Crystal, b) -> ClassicalWeight:
    return ClassicalWeight(tuple(B.epsilon_vector(b)))


def phi_weight(B: Crystal, b) -> ClassicalWeight:
    return ClassicalWeight(tuple(B.phi_vector(b)))


def minimal_vectors(B: FiniteCrystal, k: int):
    """(b^lambda, b_lambda) for lambda = Lambda_k."""
    lam = fundamental_cl(B.n, k)
    upper = [b for b in B.elements if eps_weight(B, b) == lam]
    lower = [b for b in B.elements if phi_weight(B, b) == lam]
    if len(upper) != 1 or len(lower) != 1:
        raise PerfectnessError(
            f"Lambda_{k}: {len(upper)} elements with eps = lambda, {len(lower)} with phi = lambda")
    return upper[0], lower[0]


def _level_one_index(w: ClassicalWeight) -> int:
    if sorted(w.lam) != [0] * (len(w.lam) - 1) + [1]:
        raise PerfectnessError(f"weight {w.lam} is not a level-1 fundamental weight")
    return w.lam.index(1)


@dataclass(frozen=True)
class GroundState:
    """Ground-state path: letters[m] for m < len(letters), periodic after ``start``."""

    letters: tuple
    weights: tuple[int, ...]  # k with lambda_m = Lambda_k
    start: int

    @property
    def period(self) -> int:
        return len(self.letters) - self.start

    def letter(self, m: int):
        if m < len(self.letters):
            return self.letters[m]
        return self.letters[self.start + (m - self.start) % self.period]

    def weight_index(self, m: int) -> int:
        if m < len(self.weights):
            return self.weights[m]
        return self.weights[self.start + (m - self.start) % self.period]


@lru_cache(maxsize=None)
def _ground_state(name: str, n: int, k: int) -> GroundState:
    B = perfect_crystal(name, n)
    seen: dict[int, int] = {}
    letters, weights = [], []
    cur = k % (n + 1)
    while cur not in seen:
        seen[cur] = len(letters)
        b = minimal_vectors(B, cur)[1]
        letters.append(b)
        weights.append(cur)
        cur = _level_one_index(eps_weight(B, b))
    return GroundState(tuple(letters), tuple(weights), seen[cur])


def ground_state(B: FiniteCrystal | str, k: int, n: int | None = None) -> GroundState:
    """Ground-state path of weight Lambda_k: b_0 = b_lambda, lambda_{m+1} = eps(b_m)."""
    if isinstance(B, str):
        return _ground_state(B, n, k)
    for name, cls in (("B1", B1), ("Bn", Bn), ("Bad", Badj)):
        if type(B) is cls:
            return _ground_state(name, B.n, k)
    # an ad hoc finite crystal: compute without caching
    seen, letters, weights = {}, [], []
    cur = k % (B.n + 1)
    while cur not in seen:
        seen[cur] = len(letters)
        b = minimal_vectors(B, cur)[1]
        letters.append(b)
        weights.append(cur)
        cur = _level_one_index(eps_weight(B, b))
    return GroundState(tuple(letters), tuple(weights), seen[cur])


@dataclass
class PerfectReport:
    conditions: dict[str, str]
    violations: list[str]
    lambda0: tuple[int, ...] | None = None

    @property
    def passed(self) -> bool:
        return all(v in ("pass", "assumed") for v in self.conditions.values())


def _in_negative_cone(n: int, d: ClassicalWeight) -> bool:
    """Is d in sum_{i != 0} Z_{<=0} cl(alpha_i)?"""
    if sum(d.lam) != 0:
        return False
    # cl(alpha_1..alpha_n) restricted to coordinates 1..n is the finite Cartan
    # matrix, which is invertible; solve and check integrality and sign.
    from fractions import Fraction

    import numpy as np

    from .linalg import solve
    a = np.array([[simple_root_cl(n, j).lam[i] for j in range(1, n + 1)]
                  for i in range(1, n + 1)], dtype=object)
    sol = solve(a, d.lam[1:])
    if sol is None:
        return False
    return all(Fraction(c).denominator == 1 and c <= 0 for c in sol)


def _connected(T: TensorProduct, elements) -> bool:
    if not elements:
        return True
    key = T.key
    todo = [elements[0]]
    seen = {key(elements[0])}
    while todo:
        b = todo.pop()
        for i in T.residues:
            for b2 in (T.e(i, b), T.f(i, b)):
                if b2 is not None and key(b2) not in seen:
                    seen.add(key(b2))
                    todo.append(b2)
    return len(seen) == len(elements)


def check_perfect(B: FiniteCrystal, level: int = 1) -> PerfectReport:
    """Check conditions (b)-(e) of a level-``level`` perfect crystal.

    Condition (a) concerns a module realizing B and is reported as assumed.
    Only level 1 is supported for (e), where the dominant weights are Lambda_k.
    """
    if level != 1:
        raise DomainError("only level 1 is supported")
    n = B.n
    cond = {"a": "assumed"}
    viol = []

    T = TensorProduct(B, B)
    cond["b"] = "pass" if _connected(T, T.elements) else "fail"
    if cond["b"] == "fail":
        viol.append("(b) B (x) B is not connected")

    weights = [B.weight(b) for b in B.elements]
    lambda0 = None
    for cand in weights:
        if sum(1 for w in weights if w == cand) != 1:
            continue
        if all(_in_negative_cone(n, w - cand) for w in weights):
            lambda0 = cand.lam
            break
    cond["c"] = "pass" if lambda0 is not None else "fail"
    if lambda0 is None:
        viol.append("(c) no lambda_0 bounds the weights with a singleton weight space")

    low = [B.key(b) for b in B.elements if sum(B.epsilon_vector(b)) < level]
    cond["d"] = "pass" if not low else "fail"
    if low:
        viol.append(f"(d) <c, eps(b)> < {level} for {low}")

    cond["e"] = "pass"
    for k in range(n + 1):
        try:
            minimal_vectors(B, k)
        except PerfectnessError as exc:
            cond["e"] = "fail"
            viol.append(f"(e) {exc}")
    return PerfectReport(cond, viol, lambda0)


def letter_to_json(b) -> dict:
    if isinstance(b, B1Elem):
        return {"b1": b.idx}
    if isinstance(b, BnElem):
        return {"bn": b.idx}
    if b.tag == "empty":
        return {"ad": {"t": "empty"}}
    if b.tag == "h":
        return {"ad": {"t": "h", "i": b.i}}
    return {"ad": {"t": "root", "sign": b.sign, "i": b.i, "j": b.j}}


def letter_from_json(data):
    if "b1" in data:
        return B1Elem(int(data["b1"]))
    if "bn" in data:
        return BnElem(int(data["bn"]))
    ad = data["ad"]
    if ad["t"] == "empty":
        return AdjointElem.empty()
    if ad["t"] == "h":
        return AdjointElem.h(int(ad["i"]))
    return AdjointElem.root(int(ad["sign"]), int(ad["i"]), int(ad["j"]))


def letter_display(b, n: int) -> str:
    """Residue display: subscripts mod n+1, so b_{n+1} shows as b0."""
    if isinstance(b, B1Elem):
        return f"b{b.idx % (n + 1)}"
    if isinstance(b, BnElem):
        return f"bbar{b.idx % (n + 1)}"
    if b.tag == "empty":
        return "∅"
    if b.tag == "h":
        return f"h{b.i}"
    terms = "+".join(f"a{t}" for t in range(b.i, b.j + 1))
    return f"b[{'-' if b.sign < 0 else ''}{terms}]" if b.sign > 0 else f"b[-({terms})]"
