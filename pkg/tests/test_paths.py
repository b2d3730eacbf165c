from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from adjcrystal.cartan import fundamental_cl
from adjcrystal.crystal import apply_word, check_axioms, generate_graph
from adjcrystal.errors import DomainError
from adjcrystal.paths import (Path, PathCrystal, canonical_word, convert, normalize,
                              path_e, path_f, replay_word)
from adjcrystal.perfect import AdjointElem, B1Elem, BnElem
from adjcrystal.theorems import adjoint_path_by_steps, convert_wall
from adjcrystal.walls import WallCrystal, path_from_wall

WORD = [0, 2, 1] + [1, 2, 3, 0] * 3


def test_ground_path_is_highest_weight():
    for name in ("B1", "Bn", "Bad"):
        P = PathCrystal(name, 3, 0)
        u = P.highest_weight
        assert all(P.epsilon(i, u) == 0 for i in range(4))
        assert [P.phi(i, u) for i in range(4)] == [1, 0, 0, 0]
        assert path_e(0, u) is None
        assert P.weight(u) == fundamental_cl(3, 0)


def test_first_step_from_ground():
    assert path_f(0, Path("B1", 3, 0)).tail == (B1Elem(1),)
    assert path_f(0, Path("Bn", 3, 0)).tail == (BnElem(4),)
    assert path_f(0, Path("Bad", 3, 0)).tail == (AdjointElem.root(1, 1, 3),)
    assert replay_word([1], Path("B1", 3, 0)) is None


def test_normalize_drops_ground_letters():
    p = Path("B1", 3, 0, (B1Elem(3), B1Elem(4)))
    assert normalize(p).tail == ()
    q = Path("B1", 3, 0, (B1Elem(3), B1Elem(2), B1Elem(3), B1Elem(4)))
    assert normalize(q).tail == (B1Elem(3), B1Elem(2), B1Elem(3), B1Elem(4))
    r = Path("B1", 3, 0, (B1Elem(2), B1Elem(3), B1Elem(4)))
    assert normalize(r).tail == ()


def test_example_replays():
    p1 = replay_word(WORD, Path("B1", 3, 0))
    assert [b.idx for b in reversed(p1.tail)] == [3, 4, 3, 2, 1, 4, 3, 2, 1, 4, 3, 2, 1]
    pn = replay_word(WORD, Path("Bn", 3, 0))
    assert [b.idx for b in reversed(pn.tail)] == [1, 2, 4, 1, 4]
    pad = replay_word(WORD, Path("Bad", 3, 0))
    assert list(reversed(pad.tail)) == [AdjointElem.root(-1, 1, 2), AdjointElem.h(1),
                                        AdjointElem.h(1), AdjointElem.root(1, 1, 3)]


def test_canonical_word_reconstructs_element():
    P = PathCrystal("Bad", 3, 0)
    x = replay_word(WORD, P.highest_weight)
    w = canonical_word(P, x)
    assert len(w) == len(WORD)
    assert apply_word(P, w, P.highest_weight) == x
    assert canonical_word(P, path_f(0, P.highest_weight)) == [0]
    assert canonical_word(P, P.highest_weight) == []


def test_canonical_word_step_guard():
    P = PathCrystal("B1", 3, 0)
    x = replay_word(WORD, P.highest_weight)
    with pytest.raises(DomainError):
        canonical_word(P, x, max_steps=3)


def test_foreign_path_rejected():
    with pytest.raises(DomainError):
        PathCrystal("B1", 3, 0).f(0, Path("Bn", 3, 0))
    with pytest.raises(DomainError):
        Path("B2", 3, 0)


@pytest.mark.parametrize("name", ["B1", "Bn", "Bad"])
@pytest.mark.parametrize("n", [2, 3])
def test_truncation_stable_and_axioms(name, n):
    # every operator call recomputes with one extra period and raises on mismatch
    for k in range(n + 1):
        P = PathCrystal(name, n, k)
        g = generate_graph(P, [P.highest_weight], 12 if k == 0 else 6)
        rep = check_axioms(g)
        assert rep.passed, rep.violations[:5]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["B1", "Bn", "Bad"]), st.integers(2, 4), st.data())
def test_e_inverts_f(name, n, data):
    k = data.draw(st.integers(0, n))
    P = PathCrystal(name, n, k)
    x = P.highest_weight
    for i in data.draw(st.lists(st.integers(0, n), max_size=10)):
        y = P.f(i, x)
        if y is None:
            assert P.phi(i, x) == 0
            continue
        assert P.e(i, y) == x
        assert P.epsilon(i, y) == P.epsilon(i, x) + 1
        x = y


@pytest.mark.parametrize("n", [2, 3])
def test_conversions_commute(n):
    walls = WallCrystal("Yn", n, 0)
    names = ["B1", "Bn", "Bad"]
    crystals = {nm: PathCrystal(nm, n, 0) for nm in names}
    g = generate_graph(walls, [walls.highest_weight], 7)
    for Y in g.vertices.values():
        images = {nm: convert(Y, walls, C) for nm, C in crystals.items()}
        for a in names:
            for b in names:
                assert convert(images[a], crystals[a], crystals[b]) == images[b]
        assert convert(images["Bad"], crystals["Bad"], walls) == Y


def test_conversion_coherence_depth_ten():
    # wall -> word -> adjoint path agrees with stepping through both wall patterns
    walls = WallCrystal("Y1", 3, 0)
    pad = PathCrystal("Bad", 3, 0)
    p1 = PathCrystal("B1", 3, 0)
    g = generate_graph(walls, [walls.highest_weight], 10)
    for Y in g.vertices.values():
        word = canonical_word(walls, Y)
        assert apply_word(pad, word, pad.highest_weight) == convert(Y, walls, pad)
        assert convert(Y, walls, p1) == path_from_wall(Y)
        assert adjoint_path_by_steps(convert_wall(Y, "Yn")) == convert(Y, walls, pad)


def test_json_roundtrip():
    pad = replay_word(WORD, Path("Bad", 3, 0))
    assert Path.from_json(pad.to_json()) == pad
    p1 = replay_word(WORD, Path("B1", 3, 0))
    assert Path.from_json(p1.to_json()) == p1
