"""The twelve acceptance criteria, one test each.

Every test records PASS or FAIL in ``RESULTS``; conftest prints the lines
at the end of the session.  Run ``pytest tests/test_acceptance.py -s`` to
also see them as they happen.
"""
import functools
import random
from collections import Counter
from itertools import product

import pytest

from conftest import random_smooth_fan, small_fans
from immaculate.cohomology import cohomology, is_immaculate, line_of_immaculates_test
from immaculate.exceptional import orbit_classes
from immaculate.families import (
    PicThreeData,
    PicTwoData,
    SplittingData,
    build_pic2,
    build_pic3,
    build_splitting,
    hirzebruch,
    pic2_immaculate,
    pic3_candidates,
    pic3_immaculate_closed_form,
    pic3_labelled_subsets,
    pic3_projected_vertices,
    splitting_immaculate_general,
    splitting_seed,
    splitting_witness,
    weighted_p235,
)
from immaculate.fan import ToricDivisor, is_nef, mask_of, section_polyhedron
from immaculate.locus import (
    cube_analysis,
    immaculate_locus,
    is_really_immaculate,
    is_tempting,
    maculate_region,
    normalise_line,
    tempting_subsets,
)

RESULTS: dict = {}


def _record(n, title, ok):
    # parametrized criteria pass only if every case passes
    ok = ok and RESULTS.get(n, (True, title))[0]
    RESULTS[n] = (ok, title)
    print(f"\ncriterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")


def criterion(n, title):
    def deco(f):
        @functools.wraps(f)
        def run(*args, **kwargs):
            try:
                f(*args, **kwargs)
            except BaseException:
                _record(n, title, False)
                raise
            _record(n, title, True)

        return run

    return deco


HEX_TEMPTING = [
    (), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 5), (0, 1, 3), (0, 1, 4),
    (0, 2, 3), (0, 2, 4), (0, 2, 5), (0, 3, 4), (0, 3, 5), (1, 2, 4), (1, 2, 5), (1, 3, 4),
    (1, 3, 5), (1, 4, 5), (2, 3, 5), (2, 4, 5), (0, 1, 2, 4), (0, 1, 3, 4), (0, 1, 3, 5), (0, 2, 3, 4),
    (0, 2, 3, 5), (0, 2, 4, 5), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (0, 1, 2, 3, 4, 5),
]

HEX_LINES = {
    (1, 1, 0, 0): [(0, 0, -1, -1), (1, 0, -1, 0), (0, 0, -1, 0), (-1, 0, -1, -1)],
    (1, 0, 1, 1): [(0, -1, -1, 0), (0, -1, 0, 0), (-1, -1, 0, 0), (-1, -1, -1, 0)],
    (0, 1, 1, 0): [(-1, 0, 0, 0), (-1, 0, 1, 0), (-1, 0, 0, -1), (-1, 0, -1, -1)],
}
HEX_ISOLATED = [(-2, -2, -2, -2), (-2, -2, -2, 0), (0, 0, 0, -1), (0, 0, 0, 1)]

# one representative per orbit, D^1..D^5 after D^0 = 0
HEX_SEQUENCES = """
-2 -1 -1 -1 | -1 -2 -1 0 | -2 -2 -1 -1 | -2 -2 -1 0 | -1 -1 -2 -1
-1 -1 -1 -1 | -2 -2 -1 -1 | -1 -1 -2 -1 | -2 -1 -2 -2 | -1 -2 -2 -1
-1 -1 -1 -1 | -2 -1 -1 -1 | -2 -2 -1 -1 | -1 -1 -2 -1 | -2 -1 -2 -2
-1 -1 -1 -1 | -2 -1 -1 -1 | -1 -2 -1 0 | -2 -2 -1 -1 | -1 -1 -2 -1
-1 -1 -1 -1 | -1 -1 -1 0 | -2 -1 -1 -1 | -1 -2 -1 0 | -1 -1 -2 -1
-1 -1 0 0 | -2 -1 -1 -1 | -1 -2 -1 0 | -2 -2 -1 -1 | -2 -2 -1 0
-1 -1 0 0 | -1 -1 -1 -1 | -2 -1 -1 -1 | -1 -2 -1 0 | -2 -2 -1 -1
-1 -1 0 0 | -1 -1 -1 -1 | -1 -1 -1 0 | -2 -1 -1 -1 | -1 -2 -1 0
-1 -1 0 0 | -1 0 -1 -1 | -1 -1 -1 -1 | -1 -1 -1 0 | -2 -1 -1 -1
-1 -1 0 0 | -1 0 -1 -1 | 0 -1 -1 0 | -1 -1 -1 -1 | -1 -1 -1 0
-1 -1 0 0 | 0 0 -1 -1 | -1 0 -1 -1 | 0 -1 -1 0 | -1 -1 -1 -1
-1 -1 0 0 | 0 0 -1 -1 | 0 0 -1 0 | -1 0 -1 -1 | 0 -1 -1 0
-1 0 0 -1 | -1 -1 -1 -1 | -2 -1 -1 -1 | -2 -2 -1 -1 | -2 -1 -2 -2
-1 0 0 -1 | -1 -1 0 0 | -1 -1 -1 -1 | -2 -1 -1 -1 | -2 -2 -1 -1
-1 0 0 -1 | -1 -1 0 0 | -1 0 -1 -1 | -1 -1 -1 -1 | -2 -1 -1 -1
-1 0 0 -1 | -1 -1 0 0 | 0 0 -1 -1 | -1 0 -1 -1 | -1 -1 -1 -1
-1 0 0 -1 | -1 0 0 0 | -1 -1 0 0 | -1 0 -1 -1 | -2 -1 -1 -1
-1 0 0 -1 | 0 -1 0 0 | -1 -1 0 0 | -1 -1 -1 -1 | -2 -2 -1 -1
-1 0 0 -1 | 0 -1 0 0 | -1 -1 0 0 | 0 0 -1 -1 | -1 -1 -1 -1
"""


def _table_sequences():
    out = []
    for line in HEX_SEQUENCES.strip().splitlines():
        cells = [tuple(int(x) for x in c.split()) for c in line.split("|")]
        out.append(((0, 0, 0, 0),) + tuple(cells))
    return out


@criterion(1, "hexagon tempting subsets")
def test_c01_hexagon_tempting(hex_fan):
    assert sorted(tempting_subsets(hex_fan).subsets()) == sorted(HEX_TEMPTING)


@criterion(2, "hexagon cohomology of (-4,-4,-2,1) by both methods")
def test_c02_hexagon_cohomology(hex_fan):
    D = ToricDivisor.from_class(hex_fan, (-4, -4, -2, 1))
    assert cohomology(D, method="polytope").totals == (0, 2, 1)
    assert cohomology(D, method="fan").totals == (0, 2, 1)


@criterion(3, "hexagon immaculate locus: 12 lines and 4 isolated classes")
def test_c03_hexagon_locus(hex_locus):
    expected = {normalise_line(b, d) for d, bases in HEX_LINES.items() for b in bases}
    assert len(expected) == 12
    assert set(hex_locus.lines) == expected and len(hex_locus.lines) == 12
    assert hex_locus.isolated == sorted(HEX_ISOLATED)
    assert not hex_locus.others


@criterion(4, "hexagon cube: 46 vertices, 54 lattice points, 20 immaculate classes")
def test_c04_hexagon_cube(hex_fan):
    s = cube_analysis(hex_fan).summary()
    assert (s["vertices"], s["lattice_points"], s["immaculate_classes"]) == (46, 54, 20)


@criterion(5, "hexagon exceptional sequences: 228 in 19 orbits of size 12")
def test_c05_hexagon_exceptional(hex_fan, hex_sequences):
    assert len(hex_sequences) == 228
    orbits = orbit_classes(hex_sequences, hex_fan)
    assert Counter(len(o) for o in orbits) == {12: 19}
    # the tabulated representatives hit every orbit once
    where = {s.classes: i for i, o in enumerate(orbits) for s in o}
    assert sorted(where[t] for t in _table_sequences()) == list(range(19))


@criterion(6, "Hirzebruch surfaces: engine locus equals the closed form")
@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_c06_hirzebruch(a):
    L = immaculate_locus(hirzebruch(a))
    lines = {normalise_line((0, -1), (1, 0))}
    if a == 0:
        lines.add(normalise_line((-1, 0), (0, 1)))
        assert L.isolated == []
    else:
        assert L.isolated == sorted([(-1, 0), (a - 1, -2)])
    assert set(L.lines) == lines and not L.others


PIC2_CASES = [
    (l1, l2, c)
    for (l1, l2), cs in {
        (2, 2): [(0, 0), (0, -1), (0, -3)],
        (2, 3): [(0, 0, 0), (0, -1, -2), (0, 0, -3)],
        (3, 2): [(0, 0), (0, -2), (0, -5)],
        (4, 3): [(0, 0, 0), (0, -1, -1), (0, -2, -4)],
    }.items()
    for c in cs
]


@criterion(7, "Picard rank 2 closed form against the engine on [-8,8]^2")
@pytest.mark.parametrize("l1,l2,c", PIC2_CASES)
def test_c07_pic2(l1, l2, c):
    data = PicTwoData(l1, l2, c)
    L = immaculate_locus(build_pic2(data))
    pts = L.points_in_box((-8, -8), (8, 8))
    for x in product(range(-8, 9), repeat=2):
        assert (x in pts) == pic2_immaculate(data, x), x


def _random_splitting(rng):
    k = rng.randint(2, 3)
    ell = tuple(rng.randint(2, 3) for _ in range(k))
    c = {}
    for i in range(k):
        for j in range(i + 1, k):
            v = [rng.randint(-4, 0) for _ in range(ell[j])]
            v[rng.randrange(ell[j])] = 0
            c[(i, j)] = tuple(v)
    return SplittingData(ell, c)


GENERAL_SPLITTING = SplittingData((2, 3, 2), {(0, 1): (0, -4, -4), (0, 2): (0, -2), (1, 2): (0, -5)})


@criterion(8, "splitting fans: seeds, hull closure, hull equals the engine for general c")
def test_c08_splitting():
    rng = random.Random(2024)
    R = 10
    for _ in range(10):
        data = _random_splitting(rng)
        F = build_splitting(data)
        k = data.k
        for x in splitting_seed(data.ell).points_in_box(-R, R):
            assert is_really_immaculate(F, x), (data, x)
        L = immaculate_locus(F)
        for x in L.points_in_box((-R,) * k, (R,) * k):
            for j in range(k):
                if all(v == 0 for v in x[j:]):
                    y = tuple(a - b for a, b in zip(x, data.v(j)))
                    assert L.contains(y), (data, x, j)
    assert GENERAL_SPLITTING.is_general()
    res = splitting_immaculate_general(GENERAL_SPLITTING)
    assert not res.lower_bound_only
    L = immaculate_locus(build_splitting(GENERAL_SPLITTING))
    assert res.slabs.points_in_box(-R, R) == L.points_in_box((-R,) * 3, (R,) * 3)


PIC3_DATA = PicThreeData((1, 4, 3, 2, 5), (0, 2), (0, 6, 13))
# (p1, p2, p3, p4) = (4, 3, 2, 5)
PIC3_TABLE = {
    "Sigma(1)": (-2, -3), "empty": (0, 0),
    "0c": (2, -7), "0": (-4, 4),
    "1c": (5, -7), "1": (-7, 4),
    "3": (5, -7), "3c": (-7, 4),
    "2c": (1, -1), "2": (-3, -2),
    "4c": (-7, 2), "4": (5, -5),
}


@criterion(9, "Picard rank 3: types F/A/B and duals are exactly the immaculate classes in [-12,12]^3")
def test_c09_pic3():
    d = PIC3_DATA
    assert d.is_large()
    F = build_pic3(d)
    assert pic3_projected_vertices(d) == PIC3_TABLE
    for label, subset in pic3_labelled_subsets(d).items():
        assert tuple(maculate_region(F, mask_of(subset)).vertex[1:]) == PIC3_TABLE[label], label
    cand = pic3_candidates(d)
    R = 12
    for x in product(range(-R, R + 1), repeat=3):
        listed = cand.kind_of(x) is not None or cand.kind_of(d.serre_dual(x)) is not None
        assert is_really_immaculate(F, x) == listed, x
        assert pic3_immaculate_closed_form(d, x, fan=F, candidates=cand).status == (
            "immaculate" if listed else "maculate")


@criterion(10, "immaculate but not really immaculate witnesses")
def test_c10_witnesses():
    P = weighted_p235()
    assert is_immaculate(P, (1,)) and not is_really_immaculate(P, (1,))
    S = build_splitting(splitting_witness())
    assert is_immaculate(S, (-1, -1, 1)) and not is_really_immaculate(S, (-1, -1, 1))


def _serre(D):
    return ToricDivisor(D.fan, tuple(-1 - x for x in D.coeffs))


@criterion(11, "property suites: methods, Serre duality, nef vanishing, tempting criteria")
def test_c11_properties():
    rng = random.Random(11)
    fans = [random_smooth_fan(rng) for _ in range(5)]
    assert all(F.dim <= 3 and F.is_smooth and F.is_complete for F in fans)
    for F in fans:
        for _ in range(10):
            D = ToricDivisor(F, [rng.randint(-3, 3) for _ in range(F.nrays)])
            a = cohomology(D, method="polytope")
            assert a == cohomology(D, method="fan")
            assert a.totals == tuple(reversed(cohomology(_serre(D)).totals))
        nef = 0
        for _ in range(40):
            D = ToricDivisor(F, [rng.randint(0, 3) for _ in range(F.nrays)])
            if is_nef(D):
                nef += 1
                h = cohomology(D).totals
                assert h[0] == len(section_polyhedron(D).lattice_points()) and not any(h[1:])
        assert nef
    for F in small_fans():
        assert F.nrays <= 8
        for mask, e in tempting_subsets(F).entries.items():
            assert e.tempting == is_tempting(F, mask), (F.name, mask)


@criterion(12, "line test on the hexagon and the line of immaculates")
def test_c12_line_test(hex_fan):
    Dp = ToricDivisor.from_class(hex_fan, (1, 1, 0, 0))
    Dm = ToricDivisor.from_class(hex_fan, (1, 1, 1, 0))
    assert line_of_immaculates_test(Dm, Dp, hex_fan)
    for a in range(-6, 7):
        assert is_immaculate(hex_fan, (a - 1, a - 1, -1, 0)), a
