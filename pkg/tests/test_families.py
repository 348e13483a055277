import random
from itertools import product

import pytest

from immaculate.cohomology import is_immaculate
from immaculate.errors import InvalidParameters
from immaculate.families import (
    PicThreeData,
    PicTwoData,
    Slab,
    SplittingData,
    build_pic2,
    build_pic3,
    build_splitting,
    c_hull,
    hirzebruch,
    pic2_immaculate,
    pic3_candidates,
    pic3_immaculate_closed_form,
    pic3_labelled_subsets,
    pic3_projected_vertices,
    splitting_immaculate_general,
    splitting_seed,
    splitting_witness,
)
from immaculate.fan import mask_of
from immaculate.locus import immaculate_locus, is_really_immaculate, maculate_region


def random_splitting(rng, kmax=3):
    k = rng.randint(2, kmax)
    ell = tuple(rng.randint(2, 3) for _ in range(k))
    c = {}
    for i in range(k):
        for j in range(i + 1, k):
            v = [rng.randint(-4, 0) for _ in range(ell[j])]
            v[rng.randrange(ell[j])] = 0
            c[(i, j)] = tuple(v)
    return SplittingData(ell, c)


def test_pic2_examples():
    F1 = PicTwoData(2, 2, (0, -1))
    assert pic2_immaculate(F1, (0, -2))
    assert all(pic2_immaculate(F1, (x, -1)) for x in range(-10, 10))
    assert pic2_immaculate(PicTwoData(2, 2, (0, 0)), (-1, 5))
    assert not pic2_immaculate(F1, (0, 0))
    F = build_pic2(PicTwoData(4, 3, (0, -1, -1)))
    assert F.dim == 5 and F.nrays == 7


def test_pic2_bad_parameters():
    for l1, l2, c in [(1, 2, (0, 0)), (2, 2, (0, 1)), (2, 2, (-1, -1)), (2, 3, (0, -1))]:
        with pytest.raises(InvalidParameters):
            PicTwoData(l1, l2, c)


@pytest.mark.parametrize("data", [PicTwoData(2, 2, (0, -3)), PicTwoData(3, 2, (0, -2)), PicTwoData(2, 3, (0, 0, -1))])
def test_pic2_builds(data):
    F = build_pic2(data)
    v = F.validate()
    assert v["smooth"] and v["complete"]
    assert len(F.primitive_collections) == 2
    assert F.dim == data.dim


@pytest.mark.parametrize("data", [PicTwoData(2, 2, (0, -2)), PicTwoData(2, 3, (0, -1, -2)), PicTwoData(3, 2, (0, 0))])
def test_pic2_integral_equals_real(data):
    F = build_pic2(data)
    for c in product(range(-6, 5), repeat=2):
        a = is_immaculate(F, c, method="fan")
        assert a == is_really_immaculate(F, c) == pic2_immaculate(data, c), c


def test_splitting_k2_is_pic2():
    p = PicTwoData(3, 2, (0, -2))
    a, b = build_pic2(p), build_splitting(p.as_splitting())
    assert a.pi.tolist() == b.pi.tolist()
    assert a.primitive_collections == b.primitive_collections


def test_splitting_witness():
    F = build_splitting(splitting_witness())
    assert F.pi.tolist() == [[1, 1, 0, 0, -2, 0], [0, 0, 1, 1, 0, -2], [0, 0, 0, 0, 1, 1]]
    assert F.dim == 3


@pytest.mark.parametrize("seed", range(6))
def test_random_splitting_builds(seed):
    data = random_splitting(random.Random(seed))
    F = build_splitting(data)
    v = F.validate()
    assert v["smooth"] and v["complete"] and v["semiprojective"]
    assert len(F.primitive_collections) == data.k


def test_splitting_products():
    F = build_splitting(SplittingData((3, 2)))
    assert F.dim == 3 and F.validate()["smooth"]
    assert sorted(len(c) for c in F.primitive_collections) == [2, 3]


def test_seed_shapes():
    assert splitting_seed((4,)).points_in_box(-9, 9) == {(-1,), (-2,), (-3,)}
    s = splitting_seed((2, 2))
    pts = s.points_in_box(-3, 3)
    assert pts == {(-1, 0)} | {(x, -1) for x in range(-3, 4)}
    assert c_hull(splitting_seed((4,)), SplittingData((4,))) == splitting_seed((4,))


@pytest.mark.parametrize("a", [1, 2, 4])
def test_hull_hirzebruch(a):
    data = SplittingData((2, 2), {(0, 1): (0, -a)})
    hull = c_hull(splitting_seed((2, 2)), data)
    pts = hull.points_in_box(-8, 8)
    assert pts == {(-1, 0), (a - 1, -2)} | {(x, -1) for x in range(-8, 9)}
    assert Slab(0, (a - 1, -2)) in set(hull)
    res = splitting_immaculate_general(data)
    assert res.lower_bound_only == (a <= 2)
    for c in product(range(-8, 9), repeat=2):
        assert (c in pts) == pic2_immaculate(PicTwoData(2, 2, (0, -a)), c)


def test_hull_lower_bound_when_not_general():
    data = SplittingData((2, 2))
    res = splitting_immaculate_general(data)
    assert res.lower_bound_only
    L = immaculate_locus(build_splitting(data))
    pts = res.slabs.points_in_box(-6, 6)
    assert pts < L.points_in_box((-6, -6), (6, 6))


@pytest.mark.parametrize("seed", range(4))
def test_seed_is_really_immaculate(seed):
    data = random_splitting(random.Random(50 + seed))
    F = build_splitting(data)
    for x in splitting_seed(data.ell).points_in_box(-4, 4):
        assert is_really_immaculate(F, x), x


@pytest.mark.parametrize("seed", [1, 2])
def test_hull_step_closure(seed):
    data = random_splitting(random.Random(80 + seed))
    F = build_splitting(data)
    L = immaculate_locus(F)
    k = data.k
    for x in L.points_in_box((-5,) * k, (5,) * k):
        for j in range(k):
            if all(v == 0 for v in x[j:]):
                for jj in range(j, k):
                    y = tuple(a - b for a, b in zip(x, data.v(jj)))
                    assert L.contains(y), (x, jj)


def test_pic3_builds():
    d = PicThreeData((1, 4, 3, 2, 5), (0, 0), (0, 0, 0))
    F = build_pic3(d)
    v = F.validate()
    assert v["smooth"] and v["complete"]
    J = d.blocks()
    expected = sorted(tuple(sorted(set(J[a]) | set(J[(a + 1) % 5]))) for a in range(5))
    assert sorted(F.primitive_collections) == expected


def test_pic3_bad_parameters():
    with pytest.raises(InvalidParameters):
        PicThreeData((1, 1, 1, 1), (0,), (0,))
    with pytest.raises(InvalidParameters):
        PicThreeData((1, 1, 1, 1, 1), (0,), (1,))
    with pytest.raises(InvalidParameters):
        PicThreeData((1, 1, 2, 1, 1), (0,), (0, -1))


@pytest.mark.parametrize("p", [(1, 4, 3, 2, 5), (2, 1, 2, 3, 1), (1, 2, 1, 1, 2)])
def test_pic3_projected_vertices(p):
    d = PicThreeData(p, (0,) * p[3], (0,) + (1,) * (p[2] - 1))
    F = build_pic3(d)
    closed = pic3_projected_vertices(d)
    for label, subset in pic3_labelled_subsets(d).items():
        v = maculate_region(F, mask_of(subset)).vertex
        assert tuple(v[1:]) == closed[label], label


def test_pic3_figure_values():
    v = pic3_projected_vertices(PicThreeData((1, 4, 3, 2, 5), (0, 0), (0, 0, 0)))
    assert v["Sigma(1)"] == (-2, -3) and v["empty"] == (0, 0) and v["1c"] == (5, -7)


def test_pic3_type_a_row_count():
    d = PicThreeData((2, 1, 1, 2, 4), (0, 0), (0,))
    cand = pic3_candidates(d)
    p0, p1, p2, p3, p4 = d.p
    for y in range(-p3 - p4 + 1, -p4 + 1):
        x0, x1 = cand.type_a[y]
        assert x1 - x0 + 1 == p0 + p4 - 1
    assert min(cand.type_a) == -p3 - p4 + 1 and max(cand.type_a) == p1 + p2 - 1


def test_pic3_p2_one_nests():
    d = PicThreeData((1, 2, 1, 2, 2), (0, 1), (0,))
    P1, P2 = pic3_candidates(d).type_f
    assert set(P2.lattice_points()) <= set(P1.lattice_points())


@pytest.mark.parametrize("data", [
    PicThreeData((1, 2, 1, 1, 2), (0,), (0,)),
    PicThreeData((1, 1, 1, 1, 1), (1,), (0,)),
    PicThreeData((2, 1, 2, 1, 1), (0,), (0, 2)),
])
def test_pic3_closed_form_against_engine(data):
    F = build_pic3(data)
    L = immaculate_locus(F)
    cand = pic3_candidates(data)
    for c in product(range(-6, 6), repeat=3):
        ans = pic3_immaculate_closed_form(data, c, fan=F, candidates=cand)
        assert ans.status == ("immaculate" if L.contains(c) else "maculate"), c
        if ans.status == "maculate":
            assert ans.via in ("enumeration", "large-parameters")


def test_pic3_integral_equals_real():
    d = PicThreeData((1, 1, 1, 1, 1), (1,), (0,))
    F = build_pic3(d)
    for c in product(range(-3, 3), repeat=3):
        assert is_immaculate(F, c, method="fan") == is_really_immaculate(F, c), c
