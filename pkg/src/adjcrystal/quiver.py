"""Nilpotent representations of the cyclic quiver with n+1 vertices.

A graded space V = V_0 + ... + V_n is given by its dimension vector.  Maps
are stored blockwise:

* an *up* map x has blocks x_i : V_{i-1} -> V_i,
* a *down* map xbar has blocks xbar_i : V_i -> V_{i-1}.

Full matrices act on V with the basis v^0_0, v^0_1, ..., v^1_0, ... in
residue order.  All arithmetic is exact (see :mod:`adjcrystal.linalg`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ConventionError, DomainError, GenericityError
from .linalg import identity, inverse, is_zero, matpow, nullspace, rank, solve, zeros
from .walls import YoungWall

UP, DOWN = "up", "down"


@dataclass(frozen=True)
class GradedSpace:
    dims: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.dims) - 1

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def cols(self, i: int) -> slice:
        i %= len(self.dims)
        o = self.offsets[i]
        return slice(o, o + self.dims[i])

    def index(self, i: int, a: int) -> int:
        """Position of v^i_a in the full basis."""
        return self.offsets[i % len(self.dims)] + a


def _source_target(direction: str, i: int, size: int) -> tuple[int, int]:
    if direction == UP:
        return (i - 1) % size, i
    return i, (i - 1) % size


@dataclass(frozen=True, eq=False)
class GradedMap:
    direction: str
    dims: tuple[int, ...]
    blocks: tuple  # blocks[i] as object arrays

    @classmethod
    def zero(cls, direction: str, dims: Sequence[int]) -> GradedMap:
        dims = tuple(dims)
        size = len(dims)
        blocks = []
        for i in range(size):
            s, t = _source_target(direction, i, size)
            blocks.append(zeros(dims[t], dims[s]))
        return cls(direction, dims, tuple(blocks))

    @property
    def space(self) -> GradedSpace:
        return GradedSpace(self.dims)

    def matrix(self) -> np.ndarray:
        sp = self.space
        m = zeros(sp.total, sp.total)
        size = len(self.dims)
        for i, blk in enumerate(self.blocks):
            s, t = _source_target(self.direction, i, size)
            if blk.size:
                m[sp.cols(t), sp.cols(s)] = blk
        return m

    @classmethod
    def from_matrix(cls, direction: str, dims: Sequence[int], m: np.ndarray) -> GradedMap:
        """Read blocks off a full matrix (entries outside the blocks are ignored)."""
        dims = tuple(dims)
        sp = GradedSpace(dims)
        size = len(dims)
        blocks = []
        for i in range(size):
            s, t = _source_target(direction, i, size)
            blocks.append(np.array(m[sp.cols(t), sp.cols(s)], dtype=object))
        return cls(direction, dims, tuple(blocks))

    def __add__(self, other: GradedMap) -> GradedMap:
        return GradedMap(self.direction, self.dims,
                         tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def scale(self, c) -> GradedMap:
        return GradedMap(self.direction, self.dims, tuple(b * c for b in self.blocks))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.direction == other.direction and self.dims == other.dims
                and all(a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))
                        for a, b in zip(self.blocks, other.blocks)))

    def support(self) -> list[tuple[int, int, int]]:
        """Nonzero entries as (block, row, col)."""
        out = []
        for i, blk in enumerate(self.blocks):
            for (r, c), v in np.ndenumerate(blk):
                if v != 0:
                    out.append((i, r, c))
        return out

    def to_json(self) -> dict:
        return {"direction": self.direction, "dims": list(self.dims),
                "blocks": [[str(v) for v in blk.flat] for blk in self.blocks]}

    @classmethod
    def from_json(cls, data) -> GradedMap:
        direction = data["direction"]
        dims = tuple(int(d) for d in data["dims"])
        size = len(dims)
        blocks = []
        for i, flat in enumerate(data["blocks"]):
            s, t = _source_target(direction, i, size)
            vals = [_parse_rational(v) for v in flat]
            blocks.append(np.array(vals, dtype=object).reshape(dims[t], dims[s]))
        return cls(direction, dims, tuple(blocks))


def _parse_rational(text: str):
    v = Fraction(text)
    return int(v) if v.denominator == 1 else v


def elementary_up(dims: Sequence[int], s: int, a: int, b: int) -> GradedMap:
    """E^s_{ab}: v^{s-1}_a -> v^s_b."""
    m = GradedMap.zero(UP, dims)
    m.blocks[s % len(dims)][b, a] = 1
    return m


def elementary_down(dims: Sequence[int], s: int, a: int, b: int) -> GradedMap:
    """Ebar^s_{ab}: v^s_a -> v^{s-1}_b."""
    m = GradedMap.zero(DOWN, dims)
    m.blocks[s % len(dims)][b, a] = 1
    return m


# -- maps attached to walls -------------------------------------------------

@dataclass(frozen=True)
class WallBlock:
    row: int  # from the bottom, starting at 1
    col: int  # from the right, starting at 0
    color: int
    order: int  # index o(block) among blocks of its color


def wall_blocks(Y: YoungWall) -> dict[tuple[int, int], WallBlock]:
    """Blocks keyed by (row, col), with o() counted in (row, col) lexicographic order."""
    seen = [0] * (Y.n + 1)
    out = {}
    top = max(Y.heights, default=0)
    for r in range(1, top + 1):
        for j in range(len(Y.heights)):
            if Y.h(j) >= r:
                c = Y.pattern.color(j, r)
                out[(r, j)] = WallBlock(r, j, c, seen[c])
                seen[c] += 1
    return out


def x_terms(Y: YoungWall) -> list[tuple[int, int, int]]:
    """(s, a, b) for the elementary summands E^s_{ab} of x(Y), Y on the pattern P^1."""
    if Y.pattern.kind != "Y1":
        raise DomainError("x(Y) needs a wall on the pattern P^1")
    bl = wall_blocks(Y)
    terms = []
    for (r, j), b in sorted(bl.items()):
        if j > 0:
            nb = bl[(r, j - 1)]
            terms.append((nb.color, b.order, nb.order))
    return sorted(terms)


def xbar_terms(Y: YoungWall) -> list[tuple[int, int, int]]:
    """(s, a, b) for the summands Ebar^s_{ab} of xbar(Y), Y on the pattern P^n."""
    if Y.pattern.kind != "Yn":
        raise DomainError("xbar(Y) needs a wall on the pattern P^n")
    bl = wall_blocks(Y)
    terms = []
    for (r, j), b in sorted(bl.items()):
        if j > 0:
            nb = bl[(r, j - 1)]
            terms.append((b.color, b.order, nb.order))
    return sorted(terms)


def x_of_wall(Y: YoungWall) -> GradedMap:
    m = GradedMap.zero(UP, Y.color_counts)
    for s, a, b in x_terms(Y):
        m.blocks[s][b, a] += 1
    return m


def xbar_of_wall(Y: YoungWall) -> GradedMap:
    m = GradedMap.zero(DOWN, Y.color_counts)
    for s, a, b in xbar_terms(Y):
        m.blocks[s][b, a] += 1
    return m


def span_formula(Y: YoungWall, t: int) -> list[int]:
    """Full-basis indices of the blocks in columns j < t.

    These span ker x(Y)^t (pattern P^1) resp. ker xbar(Y)^t (pattern P^n).
    """
    sp = GradedSpace(Y.color_counts)
    return sorted(sp.index(b.color, b.order) for b in wall_blocks(Y).values() if b.col < t)


# -- points of the commuting variety ---------------------------------------

@dataclass(frozen=True)
class QuiverPoint:
    up: GradedMap
    down: GradedMap

    def __post_init__(self):
        if self.up.direction != UP or self.down.direction != DOWN:
            raise DomainError("a point is an (up, down) pair")
        if self.up.dims != self.down.dims:
            raise DomainError("up and down maps live on different spaces")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.up.dims


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a.dot(b) - b.dot(a)


def moment(chi: QuiverPoint) -> list[np.ndarray]:
    """mu_i = x_i xbar_i - xbar_{i+1} x_{i+1} on V_i."""
    size = len(chi.dims)
    x, xb = chi.up.blocks, chi.down.blocks
    out = []
    for i in range(size):
        j = (i + 1) % size
        out.append(x[i].dot(xb[i]) - xb[j].dot(x[j]))
    return out


def is_flat(chi: QuiverPoint) -> bool:
    return all(is_zero(m) for m in moment(chi))


def is_nilpotent(m: GradedMap | np.ndarray) -> bool:
    mat = m.matrix() if isinstance(m, GradedMap) else m
    return is_zero(matpow(mat, mat.shape[0]))


def point_nilpotent(chi: QuiverPoint) -> bool:
    if not is_flat(chi):
        raise DomainError("nilpotency of x + xbar is reduced to x and xbar only for flat points")
    return is_nilpotent(chi.up) and is_nilpotent(chi.down)


# -- fibers and sampling ----------------------------------------------------

def _unknown_positions(direction: str, dims: tuple[int, ...]):
    size = len(dims)
    out = []
    for i in range(size):
        s, t = _source_target(direction, i, size)
        for r in range(dims[t]):
            for c in range(dims[s]):
                out.append((i, r, c))
    return out


def _map_from_vector(direction: str, dims, positions, vec) -> GradedMap:
    m = GradedMap.zero(direction, dims)
    for (i, r, c), v in zip(positions, vec):
        if v != 0:
            m.blocks[i][r, c] = v
    return m


@dataclass
class Fiber:
    """Partners of a fixed map commuting with it: a basis and its dimension."""

    fixed: GradedMap
    basis: list[GradedMap]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def direction(self) -> str:
        return DOWN if self.fixed.direction == UP else UP

    def point(self, partner: GradedMap) -> QuiverPoint:
        if self.fixed.direction == UP:
            return QuiverPoint(self.fixed, partner)
        return QuiverPoint(partner, self.fixed)


def fiber_basis(fixed: GradedMap) -> Fiber:
    """Basis of {y of the opposite direction : [x, xbar] = 0}."""
    dims = fixed.dims
    direction = DOWN if fixed.direction == UP else UP
    positions = _unknown_positions(direction, dims)
    if not positions:
        return Fiber(fixed, [])
    zero = GradedMap.zero(direction, dims)
    cols = []
    for i, r, c in positions:
        unit = GradedMap(direction, dims, tuple(b.copy() for b in zero.blocks))
        unit.blocks[i][r, c] = 1
        if fixed.direction == UP:
            mu = moment(QuiverPoint(fixed, unit))
        else:
            mu = moment(QuiverPoint(unit, fixed))
        cols.append([v for blk in mu for v in blk.flat])
    nrows = sum(d * d for d in dims)
    coeff = zeros(nrows, len(positions))
    for k, col in enumerate(cols):
        coeff[:, k] = col
    basis = [_map_from_vector(direction, dims, positions, v) for v in nullspace(coeff)]
    return Fiber(fixed, basis)


DEFAULT_SAMPLES = 5
DEFAULT_BOUND = 997


def sample_generic(basis: Sequence[GradedMap], seed, bound: int = DEFAULT_BOUND,
                   direction: str | None = None, dims=None) -> GradedMap:
    """Integer combination of ``basis`` with coefficients uniform in [-bound, bound]."""
    if bound < 2:
        raise DomainError("coefficient bound must be at least 2")
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(-bound, bound + 1, size=len(basis))
    if not basis:
        return GradedMap.zero(direction, dims)
    out = basis[0].scale(int(coeffs[0]))
    for b, c in zip(basis[1:], coeffs[1:]):
        out = out + b.scale(int(c))
    return out


# -- kernel filtrations -----------------------------------------------------

def graded_kernel_dims(m: np.ndarray, space: GradedSpace) -> tuple[int, ...]:
    """dim(ker m cap V_i) for a homogeneous map m."""
    return tuple(d - rank(m[:, space.cols(i)]) for i, d in enumerate(space.dims))


def _kernel_basis(m: np.ndarray) -> np.ndarray:
    vecs = nullspace(m)
    if not vecs:
        return zeros(m.shape[1], 0)
    return np.array(vecs, dtype=object).T


def _is_stable(sub: np.ndarray, op: np.ndarray) -> bool:
    if sub.shape[1] == 0:
        return True
    both = np.concatenate([sub, op.dot(sub)], axis=1)
    return rank(both) == rank(sub)


@dataclass
class KernelProfile:
    """Kernel dimensions of a flat nilpotent point, for t = 0, 1, ... until stable.

    ``up[t]``, ``down[t]`` and ``xxbar[t]`` are graded dimensions of ker x^t,
    ker xbar^t and ker (x xbar)^t; ``x_xxbar[t]`` is dim ker x (x xbar)^t.
    """

    dims: tuple[int, ...]
    up: list[tuple[int, ...]]
    down: list[tuple[int, ...]]
    xxbar: list[tuple[int, ...]]
    x_xxbar: list[int]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.dims)

    @staticmethod
    def _totals(seq) -> list[int]:
        return [sum(g) for g in seq]

    @property
    def up_totals(self) -> list[int]:
        return self._totals(self.up)

    @property
    def down_totals(self) -> list[int]:
        return self._totals(self.down)

    @property
    def xxbar_totals(self) -> list[int]:
        return self._totals(self.xxbar)

    def key(self) -> tuple:
        return (tuple(self.up), tuple(self.down), tuple(self.xxbar), tuple(self.x_xxbar))

    def c_sequence(self) -> list[int]:
        """dim ker x(x xbar)^t - dim ker (x xbar)^t."""
        return [a - b for a, b in zip(self.x_xxbar, self.xxbar_totals)]

    def to_json(self) -> dict:
        return {"dims": list(self.dims),
                "ker_x": [list(g) for g in self.up],
                "ker_xbar": [list(g) for g in self.down],
                "ker_xxbar": [list(g) for g in self.xxbar],
                "ker_x_xxbar": list(self.x_xxbar),
                "checks": dict(self.checks)}

    @classmethod
    def from_json(cls, data) -> KernelProfile:
        return cls(tuple(data["dims"]), [tuple(g) for g in data["ker_x"]],
                   [tuple(g) for g in data["ker_xbar"]], [tuple(g) for g in data["ker_xxbar"]],
                   list(data["ker_x_xxbar"]), dict(data.get("checks", {})))


def _filtration(m: np.ndarray, space: GradedSpace, length: int):
    out, power = [], identity(space.total)
    for _ in range(length + 1):
        out.append((graded_kernel_dims(power, space), power))
        power = power.dot(m)
    return out


def kernel_profile(chi: QuiverPoint, check: bool = True) -> KernelProfile:
    """Kernel filtrations of a flat nilpotent point.

    With ``check`` the function also verifies that ker (x xbar)^t and
    ker (xbar x)^t have equal graded dimensions and that every filtration
    step is stable under both x and xbar.
    """
    if not is_flat(chi):
        raise DomainError("kernel profiles need [x, xbar] = 0")
    if not point_nilpotent(chi):
        raise DomainError("kernel profiles need a nilpotent point")
    sp = GradedSpace(chi.dims)
    total = sp.total
    x, xb = chi.up.matrix(), chi.down.matrix()
    xxb, xbx = x.dot(xb), xb.dot(x)
    up = _filtration(x, sp, total)
    down = _filtration(xb, sp, total)
    mix = _filtration(xxb, sp, total)
    x_mix = [total - rank(x.dot(p)) for _, p in mix]

    def trim(seq):
        full = sp.dims
        out = list(seq)
        while len(out) > 1 and out[-1] == full and out[-2] == full:
            out.pop()
        return out

    up_d = trim([g for g, _ in up])
    down_d = trim([g for g, _ in down])
    mix_d = trim([g for g, _ in mix])
    x_mix = x_mix[:len(mix_d)]
    checks = {}
    if check:
        rev = [graded_kernel_dims(p, sp) for _, p in _filtration(xbx, sp, len(mix_d) - 1)]
        checks["xxbar_eq_xbarx"] = rev == mix_d
        stable = True
        for filt, length in ((up, len(up_d)), (down, len(down_d)), (mix, len(mix_d))):
            for _, p in filt[:length]:
                K = _kernel_basis(p)
                if not (_is_stable(K, x) and _is_stable(K, xb)):
                    stable = False
        checks["chi_stable"] = stable
        checks["monotone"] = all(_monotone(s) for s in (
            [sum(g) for g in up_d], [sum(g) for g in down_d], [sum(g) for g in mix_d]))
    return KernelProfile(sp.dims, up_d, down_d, mix_d, x_mix, checks)


def _monotone(seq: list[int]) -> bool:
    """Strictly increasing until the last (full) value."""
    return all(a < b for a, b in zip(seq, seq[1:]))


def minimal_profile(profiles: Sequence[KernelProfile]) -> KernelProfile:
    """Coordinatewise minimum (sequences padded with their last value)."""
    def pad(seq, length):
        return list(seq) + [seq[-1]] * (length - len(seq))

    def gmin(seqs):
        length = max(len(s) for s in seqs)
        padded = [pad(s, length) for s in seqs]
        out = []
        for t in range(length):
            vals = [p[t] for p in padded]
            if isinstance(vals[0], tuple):
                out.append(tuple(min(v[i] for v in vals) for i in range(len(vals[0]))))
            else:
                out.append(min(vals))
        return out

    first = profiles[0]
    up = gmin([p.up for p in profiles])
    down = gmin([p.down for p in profiles])
    mix = gmin([p.xxbar for p in profiles])
    xm = gmin([p.x_xxbar for p in profiles])
    full = tuple(first.dims)

    def trim(seq):
        while len(seq) > 1 and seq[-1] == seq[-2]:
            seq.pop()
        return seq

    mix = trim(mix)
    xm = xm[:len(mix)] + [sum(full)] * (len(mix) - len(xm))
    checks = {k: all(p.checks.get(k, True) for p in profiles) for k in first.checks}
    return KernelProfile(full, trim(up), trim(down), mix, xm, checks)


def _padded_key(p: KernelProfile, ref: KernelProfile) -> tuple:
    def pad(seq, length):
        return tuple(list(seq) + [seq[-1]] * (length - len(seq)))
    return (pad(p.up, max(len(p.up), len(ref.up))),
            pad(p.down, max(len(p.down), len(ref.down))),
            pad(p.xxbar, max(len(p.xxbar), len(ref.xxbar))),
            pad(p.x_xxbar, max(len(p.x_xxbar), len(ref.xxbar))))


@dataclass
class GenericSample:
    """The outcome of the sampling protocol on one fiber."""

    fiber: Fiber
    seeds: list[int]
    points: list[QuiverPoint]
    profiles: list[KernelProfile]
    profile: KernelProfile
    attained: int
    attempts: int

    @property
    def best_point(self) -> QuiverPoint:
        ref = _padded_key(self.profile, self.profile)
        for pt, p in zip(self.points, self.profiles):
            if _padded_key(p, self.profile) == ref:
                return pt
        return self.points[0]


MAX_RETRIES = 3


def generic_profile(fixed: GradedMap, seed: int = 0, samples: int = DEFAULT_SAMPLES,
                    bound: int = DEFAULT_BOUND, retries: int = MAX_RETRIES,
                    fiber: Fiber | None = None) -> GenericSample:
    """Sample ``samples`` fiber points and take the coordinatewise minimal profile.

    Sample r of attempt a uses seed ``seed + a * samples + r``.  The minimum
    must be attained by at least ``samples - 1`` points, and every point must be
    nilpotent; otherwise the attempt is repeated with fresh seeds.
    """
    fiber = fiber if fiber is not None else fiber_basis(fixed)
    direction = fiber.direction
    last_reason = ""
    for attempt in range(retries + 1):
        seeds = [seed + attempt * samples + r for r in range(samples)]
        points, profiles = [], []
        ok = True
        for s in seeds:
            partner = sample_generic(fiber.basis, s, bound, direction, fixed.dims)
            pt = fiber.point(partner)
            if not point_nilpotent(pt):
                ok, last_reason = False, f"sample with seed {s} is not nilpotent"
                break
            points.append(pt)
            profiles.append(kernel_profile(pt))
        if not ok:
            continue
        prof = minimal_profile(profiles)
        ref = _padded_key(prof, prof)
        attained = sum(1 for p in profiles if _padded_key(p, prof) == ref)
        if attained >= max(samples - 1, 1):
            return GenericSample(fiber, seeds, points, profiles, prof, attained, attempt + 1)
        last_reason = f"minimal profile attained by only {attained} of {samples} samples"
    raise GenericityError(f"no stable generic profile after {retries + 1} attempts: {last_reason}")


# -- commuting extensions ---------------------------------------------------

@dataclass
class Quotient:
    """V / ker x in a graded basis adapted to W = ker x.

    ``P`` has columns: a basis of each W_i followed by standard vectors
    completing it, residue by residue; ``w_index``/``q_index`` list the
    positions of the W part and of the complement within P.
    """

    x: GradedMap
    P: np.ndarray
    Pinv: np.ndarray
    w_index: list[int]
    q_index: list[int]

    @classmethod
    def of(cls, x: GradedMap) -> Quotient:
        sp = x.space
        m = x.matrix()
        cols, w_index, q_index = [], [], []
        for i, d in enumerate(sp.dims):
            block = m[:, sp.cols(i)]
            kernel = nullspace(block) if d else []
            basis = [list(v) for v in kernel]
            for e in range(d):
                unit = [1 if t == e else 0 for t in range(d)]
                trial = np.array(basis + [unit], dtype=object).reshape(len(basis) + 1, d)
                if rank(trial) > len(basis):
                    basis.append(unit)
            for idx, v in enumerate(basis):
                full = [0] * sp.total
                for t, val in enumerate(v):
                    full[sp.offsets[i] + t] = val
                (w_index if idx < len(kernel) else q_index).append(len(cols))
                cols.append(full)
        P = np.array(cols, dtype=object).T if cols else zeros(0, 0)
        return cls(x, P, inverse(P) if cols else P, w_index, q_index)

    @property
    def dim_w(self) -> int:
        return len(self.w_index)

    def adapted(self, m: np.ndarray) -> np.ndarray:
        return self.Pinv.dot(m).dot(self.P)

    def induced(self, m: GradedMap | np.ndarray) -> np.ndarray:
        """The map induced on V/W by m (W must be m-stable)."""
        mat = m.matrix() if isinstance(m, GradedMap) else m
        a = self.adapted(mat)
        if not is_zero(a[np.ix_(self.q_index, self.w_index)]):
            raise DomainError("ker x is not stable under the map")
        return _clean(a[np.ix_(self.q_index, self.q_index)])


def _clean(m: np.ndarray) -> np.ndarray:
    out = np.array(m, dtype=object)
    for idx, v in np.ndenumerate(out):
        if isinstance(v, Fraction) and v.denominator == 1:
            out[idx] = int(v)
    return out


def _degree_ok(direction: str, space: GradedSpace, residue_of: list[int], r: int, c: int) -> bool:
    size = len(space.dims)
    s, t = residue_of[c], residue_of[r]
    if direction == DOWN:
        return t == (s - 1) % size
    return t == (s + 1) % size


def extend_commuting_partner(x: GradedMap, ybar: np.ndarray,
                             quotient: Quotient | None = None) -> GradedMap:
    """A down map xbar with [x, xbar] = 0 inducing ``ybar`` on V / ker x.

    In the adapted basis x = [[0, A], [0, C]] and xbar = [[X, Y], [0, ybar]];
    commuting means C ybar = ybar C and A ybar = X A + Y C, which is linear in
    the graded unknowns X, Y.  One solution (free variables zero) is returned.
    """
    if x.direction != UP:
        raise DomainError("x must be an up map")
    q = quotient or Quotient.of(x)
    sp = x.space
    total = sp.total
    if total == 0:
        return GradedMap.zero(DOWN, sp.dims)
    residue_of = []
    for i, d in enumerate(sp.dims):
        residue_of.extend([i] * d)
    adapted_res = [residue_of[next(r for r in range(total) if q.P[r, c] != 0)] for c in range(total)]
    xa = q.adapted(x.matrix())
    ybar = np.array(ybar, dtype=object).reshape(len(q.q_index), len(q.q_index))
    C = xa[np.ix_(q.q_index, q.q_index)]
    if not is_zero(C.dot(ybar) - ybar.dot(C)):
        raise DomainError("ybar does not commute with the map induced by x")
    base = zeros(total, total)
    base[np.ix_(q.q_index, q.q_index)] = ybar
    unknowns = [(r, c) for r in q.w_index for c in range(total)
                if _degree_ok(DOWN, sp, adapted_res, r, c)]
    const = commutator(xa, base)
    rows = total * total
    coeff = zeros(rows, len(unknowns))
    for k, (r, c) in enumerate(unknowns):
        unit = zeros(total, total)
        unit[r, c] = 1
        coeff[:, k] = list(commutator(xa, unit).flat)
    sol = solve(coeff, [-v for v in const.flat]) if unknowns else (
        [] if is_zero(const) else None)
    if sol is None:
        raise ConventionError("the commuting-extension system has no solution")
    xb = base.copy()
    for (r, c), v in zip(unknowns, sol):
        xb[r, c] = v
    full = _clean(q.P.dot(xb).dot(q.Pinv))
    return GradedMap.from_matrix(DOWN, sp.dims, full)


# -- interval modules along rows -------------------------------------------

@dataclass(frozen=True)
class RowModule:
    row: int
    length: int
    start: int  # 1 - i + k
    end: int  # l_i - i + k


def row_modules(Y: YoungWall) -> list[RowModule]:
    """Interval modules given by the rows of a wall on the pattern P^n."""
    if Y.pattern.kind != "Yn":
        raise DomainError("row modules are read off walls on the pattern P^n")
    k = Y.pattern.k
    out = []
    top = max(Y.heights, default=0)
    for i in range(1, top + 1):
        l_i = sum(1 for h in Y.heights if h >= i)
        out.append(RowModule(i, l_i, 1 - i + k, l_i - i + k))
    if sum(m.length for m in out) != Y.size:
        raise ConventionError("row lengths do not add up to the wall size")
    return out


def is_aperiodic(modules: Sequence[RowModule], n: int) -> bool:
    """No interval length occurs with all n+1 starting residues."""
    starts: dict[int, set[int]] = {}
    for m in modules:
        starts.setdefault(m.end - m.start, set()).add(m.start % (n + 1))
    return all(len(s) < n + 1 for s in starts.values())
