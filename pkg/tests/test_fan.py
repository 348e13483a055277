from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA, random_smooth_fan, small_fans
from immaculate.errors import MalformedFan, NotQCartier
from immaculate.families import (
    blowup_plane,
    hexagon,
    hirzebruch,
    plane_minus_point,
    product_of_lines,
    projective_space,
    weighted_p235,
)
from immaculate.fan import (
    Fan,
    ToricDivisor,
    act_on_class,
    canonical_class,
    class_is_nef,
    fan_automorphisms,
    gale_smoothness_check,
    is_cartier,
    is_nef,
    is_q_cartier,
    nef_cone,
    nef_decompose,
    section_polyhedron,
    serre_dual,
    support_function,
)

HEX_PI = [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1], [1, -1, 1, 0, 0, 0]]


def test_validate_named_fans():
    assert hexagon().validate() == {"complete": True, "simplicial": True, "smooth": True, "semiprojective": True}
    v = weighted_p235().validate()
    assert v["complete"] and v["simplicial"] and not v["smooth"]
    v = blowup_plane().validate()
    assert not v["complete"] and v["semiprojective"]
    v = plane_minus_point().validate()
    assert not v["complete"]
    # the support is the union of two quadrant-like cones: not convex
    assert not v["semiprojective"]


def test_malformed_fans():
    with pytest.raises(MalformedFan, match="common face"):
        Fan.from_json(DATA / "broken.json").validate()
    with pytest.raises(MalformedFan, match="primitive"):
        Fan([(2, 0), (0, 1)], [[0, 1]])
    with pytest.raises(MalformedFan, match="repeated ray"):
        Fan([(1, 0), (1, 0)], [[0], [1]])
    with pytest.raises(MalformedFan):
        Fan.from_dict({"rays": [[1, 0]]})


def test_json_round_trip():
    F = hexagon()
    G = Fan.from_dict(F.to_dict())
    assert G.rays == F.rays and G.cones == F.cones and G.pi.tolist() == F.pi.tolist()


def test_class_maps():
    assert hexagon().pi.tolist() == HEX_PI
    for a in range(4):
        assert hirzebruch(a).pi.tolist() == [[1, 1, 0, -a], [0, 0, 1, 1]]
    P1 = projective_space(1)
    assert [abs(x) for x in P1.pi.tolist()[0]] == [1, 1]


@pytest.mark.parametrize("fan", small_fans(), ids=lambda f: f.name or f"{f.nrays}rays")
def test_exact_sequence(fan):
    # pi kills the image of M and every class lifts
    P = fan.pi.tolist()
    for j in range(fan.dim):
        col = [r[j] for r in fan.rays]
        assert all(sum(a * b for a, b in zip(row, col)) == 0 for row in P[: fan.class_rank])
    for c in product(range(-2, 3), repeat=min(fan.class_rank, 3)):
        c = tuple(c) + (0,) * (fan.class_rank - len(c))
        assert fan.class_of(fan.lift(c)) == c
    assert gale_smoothness_check(fan) == fan.is_smooth


def test_primitive_collections():
    assert hexagon().primitive_collections == [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 5)]
    assert hirzebruch(2).primitive_collections == [(0, 1), (2, 3)]
    assert projective_space(2).primitive_collections == [(0, 1, 2)]


def _brute_automorphisms(fan):
    """Ray permutations induced by a unimodular map, by direct search (dimension 2)."""
    a, b = next((i, j) for i in range(fan.nrays) for j in range(i + 1, fan.nrays)
                if fan.rays[i][0] * fan.rays[j][1] != fan.rays[i][1] * fan.rays[j][0])
    r0, r1 = fan.rays[a], fan.rays[b]
    det = r0[0] * r1[1] - r0[1] * r1[0]
    cones = {frozenset(c) for c in fan.cones}
    count = 0
    for perm in permutations(range(fan.nrays)):
        s0, s1 = fan.rays[perm[a]], fan.rays[perm[b]]
        # g maps r0 -> s0, r1 -> s1
        g = [[Fraction(s0[i] * r1[1] - s1[i] * r0[1], det), Fraction(s1[i] * r0[0] - s0[i] * r1[0], det)]
             for i in range(2)]
        if any(x.denominator != 1 for row in g for x in row):
            continue
        if abs(g[0][0] * g[1][1] - g[0][1] * g[1][0]) != 1:
            continue
        ok = all(
            tuple(g[i][0] * r[0] + g[i][1] * r[1] for i in range(2)) == fan.rays[perm[k]]
            for k, r in enumerate(fan.rays)
        )
        if ok and {frozenset(perm[i] for i in c) for c in fan.cones} == cones:
            count += 1
    return count


@pytest.mark.parametrize("fan,order", [(hexagon(), 12), (product_of_lines(), 8), (projective_space(2), 6)])
def test_automorphism_groups(fan, order):
    auts = fan_automorphisms(fan)
    assert len(auts) == order == _brute_automorphisms(fan)


def test_automorphisms_act_on_classes():
    F = hexagon()
    for g in fan_automorphisms(F):
        for lam in [(1, 0, 0, 0, 0, 0), (0, -2, 1, 0, 3, 0)]:
            moved = [0] * 6
            for i, v in enumerate(lam):
                moved[g.permutation[i]] = v
            assert act_on_class(g, F, F.class_of(lam)) == F.class_of(moved)


def test_canonical_and_serre():
    F = hexagon()
    K = canonical_class(F)
    assert K == F.class_of([-1] * 6) == (-2, -2, -2, -1)
    assert serre_dual(F, (0, 0, 0, 0)) == K
    assert canonical_class(projective_space(2)) == (-3,)


def test_nef_examples():
    F = hexagon()
    assert class_is_nef(F, (1, 1, 1, 1))
    assert not class_is_nef(F, (-1, 0, 0, 0))
    assert class_is_nef(F, (0, 0, 0, 0))


@pytest.mark.parametrize("seed", range(4))
def test_nef_cone_agrees_with_concavity(seed):
    import random

    rng = random.Random(seed)
    fan = random_smooth_fan(rng)
    N = nef_cone(fan)
    for _ in range(40):
        lam = [rng.randint(-2, 3) for _ in range(fan.nrays)]
        D = ToricDivisor(fan, lam)
        assert is_nef(D) == N.contains(D.class_[: fan.class_rank])


def test_section_polyhedron_extremes():
    F = hexagon()
    assert section_polyhedron(ToricDivisor(F, [0] * 6)).lattice_points() == [(0, 0)]
    amp = ToricDivisor.from_class(F, (2, 2, 2, 1))
    assert section_polyhedron(-amp) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_nef_decomposition(cls_):
    F = hexagon()
    D = ToricDivisor.from_class(F, cls_)
    pair = nef_decompose(D)
    assert is_nef(ToricDivisor(F, pair.d_plus)) and is_nef(ToricDivisor(F, pair.d_minus))
    assert F.class_of(pair.divisor) == tuple(cls_)


def test_cartier_on_weighted_plane():
    F = weighted_p235()
    O1 = ToricDivisor.from_class(F, (1,))
    assert is_q_cartier(O1) and not is_cartier(O1)
    assert is_cartier(ToricDivisor.from_class(F, (30,)))
    for k in range(1, 30):
        assert not is_cartier(ToricDivisor.from_class(F, (k,)))


def test_non_q_cartier():
    # a cone over a square is not simplicial; a divisor can fail to be linear on it
    F = Fan([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], [[0, 1, 2, 3]])
    D = ToricDivisor(F, [1, 0, 0, 0])
    assert not is_q_cartier(D)
    with pytest.raises(NotQCartier):
        support_function(D)
    assert is_q_cartier(ToricDivisor(F, [1, 1, 1, 1]))
