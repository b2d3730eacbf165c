"""Paths read off kernel filtrations, the one-step maps psi, and cross-checks.

Every component is represented by its wall on the pattern P^n; the P^1 wall
and the adjoint path are reached by canonical-word conversion.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cartan import arc_decompose, cl_root, RootVector
from .crystal import apply_word
from .errors import DomainError, GenericityError
from .paths import Path, PathCrystal, canonical_word, normalize
from .perfect import AdjointElem, B1Elem, BnElem, _mod1, pad_iso
from .quiver import (DEFAULT_BOUND, DEFAULT_SAMPLES, MAX_RETRIES, KernelProfile,
                     generic_profile, x_of_wall, xbar_of_wall)
from .walls import WallCrystal, WallPattern, YoungWall, enumerate_reduced_walls, path_from_wall


def _increments(totals: list[int]) -> list[int]:
    return [b - a for a, b in zip(totals, totals[1:])]


def path1_from_kernels(profile: KernelProfile, k: int = 0) -> Path:
    """Letter i is b_a with a = dim(ker x^{i+1} / ker x^i) - i + k."""
    n = len(profile.dims) - 1
    d = _increments(profile.up_totals)
    letters = [B1Elem(_mod1(d[i] - i + k, n)) for i in range(len(d))]
    return normalize(Path("B1", n, k, tuple(reversed(letters))))


def pathn_from_kernels(profile: KernelProfile, k: int = 0) -> Path:
    """Letter i is bbar_b with b = 1 - dim(ker xbar^{i+1} / ker xbar^i) + i + k."""
    n = len(profile.dims) - 1
    d = _increments(profile.down_totals)
    letters = [BnElem(_mod1(1 - d[i] + i + k, n)) for i in range(len(d))]
    return normalize(Path("Bn", n, k, tuple(reversed(letters))))


def adjoint_letter(theta: tuple[int, ...], c: int, n: int) -> AdjointElem:
    """b_{-cl(theta)} if cl(theta) != 0, else h_c for c != 0, else the empty element."""
    clt = cl_root(RootVector(tuple(theta)))
    if any(clt):
        arc = arc_decompose(tuple(-v for v in clt))
        if arc.kind == "plus":
            return AdjointElem.root(1, arc.i, arc.j)
        if arc.kind == "minus":
            return AdjointElem.root(-1, arc.i, arc.j)
        raise GenericityError(f"-cl(theta) = {tuple(-v for v in clt)} is not a root")
    c %= n + 1
    return AdjointElem.h(c) if c else AdjointElem.empty()


def adjoint_path_from_kernels(profile: KernelProfile, k: int = 0,
                              experimental: bool = False) -> Path:
    """theta_t = dim ker (x xbar)^{t+1} - dim ker (x xbar)^t, graded; c_t from the c-sequence."""
    n = len(profile.dims) - 1
    if k % (n + 1) != 0 and not experimental:
        raise DomainError("the adjoint extraction is stated for Lambda_0 only")
    W = profile.xxbar
    c = profile.c_sequence()
    letters = []
    for t in range(len(W) - 1):
        theta = tuple(b - a for a, b in zip(W[t], W[t + 1]))
        letters.append(adjoint_letter(theta, c[t], n))
    return normalize(Path("Bad", n, k, tuple(reversed(letters))))


# -- one-step maps ----------------------------------------------------------

@dataclass(frozen=True)
class Step:
    wall: YoungWall
    letter: object
    removed: RootVector  # dimension vector of the removed column

    def weight_ok(self, k: int) -> bool:
        """wt(letter) = Lambda_k - Lambda_k' - cl(removed) for the new base weight k'."""
        from .cartan import cl, fundamental_cl, root_to_weight
        from .perfect import perfect_crystal
        n = self.wall.n
        name = "B1" if isinstance(self.letter, B1Elem) else "Bn"
        lhs = perfect_crystal(name, n).weight(self.letter)
        rhs = (fundamental_cl(n, k) - fundamental_cl(n, self.wall.pattern.k)
               - cl(root_to_weight(self.removed)))
        return lhs == rhs


def _column_vector(Y: YoungWall, j: int) -> RootVector:
    c = [0] * (Y.n + 1)
    for col in Y.column_colors(j):
        c[col] += 1
    return RootVector(tuple(c))


def psi1_step(Y: YoungWall) -> Step:
    """Remove column 0 of a P^1 wall at Lambda_k; the letter is b_a, a = h_0 + k."""
    if Y.pattern.kind != "Y1":
        raise DomainError("psi1 acts on walls on the pattern P^1")
    n, k = Y.n, Y.pattern.k
    rest = YoungWall(WallPattern("Y1", n, k - 1), Y.heights[1:])
    return Step(rest, B1Elem(_mod1(Y.h(0) + k, n)), _column_vector(Y, 0))


def psin_step(Y: YoungWall) -> Step:
    """Remove column 0 of a P^n wall at Lambda_k; the letter is bbar_b, b = 1 - h_0 + k."""
    if Y.pattern.kind != "Yn":
        raise DomainError("psin acts on walls on the pattern P^n")
    n, k = Y.n, Y.pattern.k
    rest = YoungWall(WallPattern("Yn", n, k + 1), Y.heights[1:])
    return Step(rest, BnElem(_mod1(1 - Y.h(0) + k, n)), _column_vector(Y, 0))


def convert_wall(Y: YoungWall, kind: str) -> YoungWall:
    """The wall of the other pattern (same base weight) for the same crystal element."""
    if Y.pattern.kind == kind:
        return Y
    src = WallCrystal(Y.pattern.kind, Y.n, Y.pattern.k)
    dst = WallCrystal(kind, Y.n, Y.pattern.k)
    out = apply_word(dst, canonical_word(src, Y), dst.highest_weight)
    if out is None:
        raise DomainError("canonical word does not survive in the target pattern")
    return out


@dataclass(frozen=True)
class AdjointStep:
    wall: YoungWall  # remainder, on the pattern P^n at Lambda_0
    letter: AdjointElem
    a: B1Elem
    b: BnElem


def psi_ad_step(Yn: YoungWall) -> AdjointStep:
    """One step of B(Lambda_0) -> B(Lambda_0) (x) B^ad through both wall patterns."""
    if Yn.pattern.k != 0:
        raise DomainError("the adjoint step starts at Lambda_0")
    s1 = psi1_step(convert_wall(Yn, "Y1"))
    sn = psin_step(convert_wall(s1.wall, "Yn"))
    return AdjointStep(sn.wall, pad_iso(sn.letter, s1.letter, Yn.n), s1.letter, sn.letter)


def adjoint_path_by_steps(Yn: YoungWall) -> Path:
    letters = []
    Y = Yn
    while Y.heights:
        st = psi_ad_step(Y)
        letters.append(st.letter)
        Y = st.wall
    return normalize(Path("Bad", Yn.n, 0, tuple(reversed(letters))))


def geometric_adjoint_step(profile: KernelProfile) -> AdjointElem:
    """theta = dim ker (x xbar) and c = dim ker x of a generic point."""
    n = len(profile.dims) - 1
    W = profile.xxbar
    theta = W[1] if len(W) > 1 else W[0]
    c = profile.up_totals[1] if len(profile.up_totals) > 1 else 0
    return adjoint_letter(theta, c, n)


# -- cross-checks -----------------------------------------------------------

@dataclass
class PathSet:
    p1: Path
    pn: Path
    pad: Path

    def to_json(self) -> dict:
        return {"B1": self.p1.to_json(), "Bn": self.pn.to_json(), "Bad": self.pad.to_json()}

    def display(self) -> dict:
        return {"B1": self.p1.display(), "Bn": self.pn.display(), "Bad": self.pad.display()}


def combinatorial_paths(Yn: YoungWall) -> PathSet:
    """Wall formulas for B^1/B^n, canonical-word replay for B^ad."""
    n, k = Yn.n, Yn.pattern.k
    word = canonical_word(WallCrystal("Yn", n, k), Yn)
    pad = apply_word(PathCrystal("Bad", n, k), word, PathCrystal("Bad", n, k).highest_weight)
    return PathSet(path_from_wall(convert_wall(Yn, "Y1")), path_from_wall(Yn), pad)


def geometric_paths(profile: KernelProfile, k: int = 0, experimental: bool = False) -> PathSet:
    return PathSet(path1_from_kernels(profile, k), pathn_from_kernels(profile, k),
                   adjoint_path_from_kernels(profile, k, experimental))


@dataclass
class Certificate:
    wall: YoungWall
    seeds: list[int]
    dual_seeds: list[int]
    profile: KernelProfile | None
    dual_profile: KernelProfile | None
    geometric: PathSet | None
    dual_geometric: PathSet | None
    combinatorial: PathSet
    by_steps: Path
    diffs: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and not self.diffs

    def to_json(self) -> dict:
        return {
            "wall": self.wall.to_json(),
            "seeds": self.seeds,
            "dual_seeds": self.dual_seeds,
            "profile": self.profile.to_json() if self.profile else None,
            "dual_profile": self.dual_profile.to_json() if self.dual_profile else None,
            "paths": {
                "geometric": self.geometric.to_json() if self.geometric else None,
                "dual_geometric": self.dual_geometric.to_json() if self.dual_geometric else None,
                "combinatorial": self.combinatorial.to_json(),
                "adjoint_by_steps": self.by_steps.to_json(),
            },
            "diffs": self.diffs,
            "error": self.error,
            "verdict": "pass" if self.passed else "fail",
        }


def crosscheck(Yn: YoungWall, seed: int = 0, samples: int = DEFAULT_SAMPLES,
               bound: int = DEFAULT_BOUND, retries: int = MAX_RETRIES,
               dual: bool = True, experimental: bool = False) -> Certificate:
    """Compare kernel-derived paths with wall-derived paths for one component.

    The primary direction samples x over the fiber of xbar(Y^n); the dual one
    samples xbar over the fiber of x(Y^1).
    """
    if Yn.pattern.kind != "Yn":
        raise DomainError("cross-checks take walls on the pattern P^n")
    if not Yn.is_reduced():
        raise DomainError(f"wall {Yn.key()} is not reduced")
    k = Yn.pattern.k
    comb = combinatorial_paths(Yn)
    by_steps = adjoint_path_by_steps(Yn) if k == 0 else comb.pad
    cert = Certificate(Yn, [], [], None, None, None, None, comb, by_steps)
    if by_steps != comb.pad:
        cert.diffs.append(f"adjoint path by psi steps {by_steps.display()} != replay {comb.pad.display()}")
    try:
        gs = generic_profile(xbar_of_wall(Yn), seed, samples, bound, retries)
        cert.seeds, cert.profile = gs.seeds, gs.profile
        cert.geometric = geometric_paths(gs.profile, k, experimental)
        if dual:
            Y1 = convert_wall(Yn, "Y1")
            gd = generic_profile(x_of_wall(Y1), seed, samples, bound, retries)
            cert.dual_seeds, cert.dual_profile = gd.seeds, gd.profile
            cert.dual_geometric = geometric_paths(gd.profile, k, experimental)
    except GenericityError as exc:
        cert.error = str(exc)
        return cert
    for label, geo in (("geometric", cert.geometric), ("dual", cert.dual_geometric)):
        if geo is None:
            continue
        for name in ("p1", "pn", "pad"):
            g, c = getattr(geo, name), getattr(comb, name)
            if g != c:
                cert.diffs.append(f"{label} {name}: {g.display()} != {c.display()}")
    for name, ok in (cert.profile.checks if cert.profile else {}).items():
        if not ok:
            cert.diffs.append(f"kernel check {name} failed")
    return cert


@dataclass
class SweepResult:
    certificates: list[Certificate]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    @property
    def count(self) -> int:
        return len(self.certificates)

    @property
    def failures(self) -> list[Certificate]:
        return [c for c in self.certificates if not c.passed]


def sweep_walls(n: int, max_blocks: int, k: int = 0) -> list[YoungWall]:
    return enumerate_reduced_walls("Yn", n, k, max_blocks)


def random_walls(n: int, max_blocks: int, count: int, seed: int = 0, k: int = 0) -> list[YoungWall]:
    """``count`` distinct reduced walls drawn uniformly from those with at most max_blocks blocks."""
    pool = enumerate_reduced_walls("Yn", n, k, max_blocks)
    rng = random.Random(seed)
    if count >= len(pool):
        return pool
    return sorted(rng.sample(pool, count), key=lambda Y: (Y.size, Y.heights))


def sweep(walls, seed: int = 0, samples: int = DEFAULT_SAMPLES, bound: int = DEFAULT_BOUND,
          dual: bool = True) -> SweepResult:
    return SweepResult([crosscheck(Y, seed, samples, bound, dual=dual) for Y in walls])

