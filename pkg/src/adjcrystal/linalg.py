"""Exact linear algebra over Q on small dense matrices.

Matrices are numpy arrays of ``dtype=object`` holding Python ``int`` or
``Fraction`` entries, so products and powers stay exact.  Ranks use
fraction-free (Bareiss) elimination on rows cleared of denominators; kernels
and linear solves use Gauss-Jordan over ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def identity(size: int) -> np.ndarray:
    m = zeros(size, size)
    for i in range(size):
        m[i, i] = 1
    return m


def as_matrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.array(rows, dtype=object)
    if shape is not None:
        m = m.reshape(shape)
    return m


def is_zero(m: np.ndarray) -> bool:
    return all(v == 0 for v in m.flat)


def matpow(m: np.ndarray, t: int) -> np.ndarray:
    result = identity(m.shape[0])
    for _ in range(t):
        result = result.dot(m)
    return result


def _integer_rows(m: np.ndarray) -> list[list[int]]:
    rows = []
    for row in m.tolist():
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        rows.append([int(v * den) for v in row])
    return rows


def rank(m: np.ndarray) -> int:
    """Rank by fraction-free elimination (all divisions are exact)."""
    if m.size == 0:
        return 0
    a = _integer_rows(m)
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((k for k in range(r, nrows) if a[k][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        pivot_row = a[r]
        for k in range(r + 1, nrows):
            row = a[k]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - f * pivot_row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(m: np.ndarray) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = [[Fraction(v) for v in row] for row in m.tolist()]
    nrows = len(a)
    ncols = m.shape[1]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, nrows) if a[k][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for k in range(nrows):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [vk - f * vr for vk, vr in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def primitive(vec) -> list[int]:
    """Scale a rational vector to coprime integers (first nonzero entry kept positive)."""
    den = 1
    for v in vec:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return ints
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        g = -g
    return [v // g for v in ints]


def nullspace(m: np.ndarray) -> list[list[int]]:
    """Integer basis of {v : m v = 0}, one vector per free column."""
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [[1 if j == c else 0 for j in range(ncols)] for c in range(ncols)]
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pc in zip(rows, pivots):
            vec[pc] = -row[free]
        basis.append(primitive(vec))
    return basis


def solve(a: np.ndarray, b) -> list[Fraction] | None:
    """One solution of a v = b (free variables set to zero), or None."""
    nrows, ncols = a.shape
    aug = zeros(nrows, ncols + 1)
    aug[:, :ncols] = a
    aug[:, ncols] = list(b)
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    sol = [Fraction(0)] * ncols
    for row, pc in zip(rows, pivots):
        sol[pc] = row[ncols]
    return sol


def inverse(m: np.ndarray) -> np.ndarray:
    size = m.shape[0]
    aug = zeros(size, 2 * size)
    aug[:, :size] = m
    aug[:, size:] = identity(size)
    rows, pivots = rref(aug)
    if pivots[:size] != list(range(size)) or len(rows) < size:
        raise ValueError("matrix is singular")
    inv = as_matrix([row[size:] for row in rows])
    return _simplify(inv)


def _simplify(m: np.ndarray) -> np.ndarray:
    out = m.copy()
    for idx, v in np.ndenumerate(out):
        if isinstance(v, Fraction) and v.denominator == 1:
            out[idx] = int(v)
    return out
