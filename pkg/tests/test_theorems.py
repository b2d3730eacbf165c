from __future__ import annotations

import pytest

from adjcrystal.errors import DomainError, GenericityError
from adjcrystal.paths import PathCrystal, replay_word
from adjcrystal.perfect import AdjointElem, B1Elem, BnElem
from adjcrystal.quiver import KernelProfile, generic_profile, x_of_wall, xbar_of_wall
from adjcrystal.theorems import (adjoint_letter, adjoint_path_by_steps, adjoint_path_from_kernels,
                                 combinatorial_paths, convert_wall, crosscheck,
                                 geometric_adjoint_step, path1_from_kernels, pathn_from_kernels,
                                 psi1_step, psi_ad_step, psin_step, random_walls, sweep,
                                 sweep_walls)
from adjcrystal.walls import WallPattern, YoungWall, enumerate_reduced_walls

WORD = [0, 2, 1] + [1, 2, 3, 0] * 3
Y1 = YoungWall(WallPattern("Y1", 3, 0), (3,) + (1,) * 12)
YN = YoungWall(WallPattern("Yn", 3, 0), (4, 4, 3, 3, 1))


@pytest.fixture(scope="module")
def example_profile() -> KernelProfile:
    return generic_profile(xbar_of_wall(YN), seed=0).profile


def test_paths_from_example_kernels(example_profile):
    p1 = path1_from_kernels(example_profile)
    assert [b.idx for b in reversed(p1.tail)] == [3, 4, 3, 2, 1, 4, 3, 2, 1, 4, 3, 2, 1]
    pn = pathn_from_kernels(example_profile)
    assert [b.idx for b in reversed(pn.tail)] == [1, 2, 4, 1, 4]
    pad = adjoint_path_from_kernels(example_profile)
    assert pad == replay_word(WORD, PathCrystal("Bad", 3, 0).highest_weight)


def test_adjoint_extraction_needs_flag_off_lambda0(example_profile):
    with pytest.raises(DomainError):
        adjoint_path_from_kernels(example_profile, k=1)
    assert adjoint_path_from_kernels(example_profile, k=1, experimental=True).k == 1


def test_adjoint_letter_cases():
    # theta = alpha_0 has cl(theta) = -(alpha_1 + alpha_2 + alpha_3)
    assert adjoint_letter((1, 0, 0, 0), 0, 3) == AdjointElem.root(1, 1, 3)
    assert adjoint_letter((0, 1, 1, 0), 0, 3) == AdjointElem.root(-1, 1, 2)
    assert adjoint_letter((1, 1, 1, 1), 1, 3) == AdjointElem.h(1)
    assert adjoint_letter((1, 1, 1, 1), 4, 3) == AdjointElem.empty()
    with pytest.raises(GenericityError):
        adjoint_letter((0, 2, 0, 0), 0, 3)


def test_psi_steps_on_example():
    s1 = psi1_step(Y1)
    assert s1.letter == B1Elem(3) and s1.wall.heights == (1,) * 12 and s1.wall.pattern.k == 3
    assert s1.weight_ok(0)
    sn = psin_step(YN)
    assert sn.letter == BnElem(1) and sn.wall.heights == (4, 3, 3, 1) and sn.wall.pattern.k == 1
    assert sn.weight_ok(0)
    with pytest.raises(DomainError):
        psi1_step(YN)
    with pytest.raises(DomainError):
        psin_step(Y1)


def test_psi_ad_step_on_example():
    st = psi_ad_step(YN)
    assert st.letter == AdjointElem.root(-1, 1, 2)
    assert st.wall.heights == (3, 3, 3)
    assert st.wall.color_counts == (3, 2, 2, 2)
    assert adjoint_path_by_steps(YN) == replay_word(WORD, PathCrystal("Bad", 3, 0).highest_weight)


@pytest.mark.parametrize("n", [2, 3])
def test_steps_respect_weights(n):
    for k in range(n + 1):
        for Y in enumerate_reduced_walls("Yn", n, k, 8)[1:]:
            assert psin_step(Y).weight_ok(k)
            assert psi1_step(convert_wall(Y, "Y1")).weight_ok(k)


def test_convert_wall_example():
    assert convert_wall(YN, "Y1") == Y1
    assert convert_wall(Y1, "Yn") == YN
    assert convert_wall(YN, "Yn") is YN


@pytest.mark.parametrize("n", [2, 3])
def test_first_kernel_step_reads_first_column(n):
    # dim ker x and dim ker xbar of a generic point give the letters of column 0
    for Yn in random_walls(n, 9, 25, seed=n):
        if not Yn.heights:
            continue
        Y1w = convert_wall(Yn, "Y1")
        p = generic_profile(xbar_of_wall(Yn), seed=1).profile
        assert B1Elem(psi1_step(Y1w).letter.idx) == path1_from_kernels(p).letter(0)
        assert psin_step(Yn).letter == pathn_from_kernels(p).letter(0)
        assert geometric_adjoint_step(p) == psi_ad_step(Yn).letter


def test_crosscheck_example_and_empty():
    cert = crosscheck(YN, seed=0)
    assert cert.passed, cert.diffs
    assert cert.seeds == [0, 1, 2, 3, 4]
    assert cert.to_json()["verdict"] == "pass"
    empty = crosscheck(YoungWall.empty("Yn", 3, 0))
    assert empty.passed and empty.combinatorial.pad.tail == ()


def test_crosscheck_rejects_bad_input():
    with pytest.raises(DomainError):
        crosscheck(Y1)


def test_dual_direction_agrees():
    cert = crosscheck(YN, seed=5, dual=True)
    assert cert.dual_geometric is not None
    assert cert.dual_geometric.to_json() == cert.geometric.to_json()
    assert cert.dual_profile.up_totals == cert.profile.up_totals


def test_combinatorial_paths_consistent():
    cp = combinatorial_paths(YN)
    for name, p in (("B1", cp.p1), ("Bn", cp.pn), ("Bad", cp.pad)):
        assert p == replay_word(WORD, PathCrystal(name, 3, 0).highest_weight)


def test_small_sweep():
    res = sweep(sweep_walls(2, 5), seed=0)
    assert res.passed, [c.diffs for c in res.failures]


def test_adjoint_side_needs_rank_two():
    with pytest.raises(DomainError):
        crosscheck(YoungWall(WallPattern("Yn", 1, 0), (1,)))


def test_random_walls_deterministic():
    a = random_walls(3, 10, 20, seed=4)
    assert a == random_walls(3, 10, 20, seed=4)
    assert len({Y.heights for Y in a}) == 20
    assert len(random_walls(3, 10, 200, seed=4)) == 105
