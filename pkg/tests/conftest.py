import random
import sys
from pathlib import Path

import pytest

from immaculate.exceptional import SequenceQuery, find_exceptional_sequences
from immaculate.families import (
    PicThreeData,
    SplittingData,
    build_pic3,
    build_splitting,
    hexagon,
    hirzebruch,
    product_of_lines,
    projective_space,
)
from immaculate.fan import Fan
from immaculate.locus import immaculate_locus

DATA = Path(__file__).parent / "data"


def star_subdivide(fan: Fan, face) -> Fan:
    """Star subdivision at the sum of the rays of ``face`` (keeps smoothness)."""
    face = frozenset(face)
    new = tuple(sum(fan.rays[i][k] for i in face) for k in range(fan.dim))
    rays = list(fan.rays) + [new]
    j = len(rays) - 1
    cones = []
    for c in fan.cones:
        if face <= c:
            for r in face:
                cones.append(sorted((c - {r}) | {j}))
        else:
            cones.append(sorted(c))
    return Fan(rays, cones)


def random_smooth_fan(rng: random.Random, max_rays: int = 8, max_dim: int = 3) -> Fan:
    """A smooth complete fan: a small base fan blown up at random faces."""
    bases = [
        lambda: projective_space(2),
        product_of_lines,
        lambda: hirzebruch(rng.randint(1, 3)),
    ]
    if max_dim >= 3:
        bases += [
            lambda: projective_space(3),
            lambda: build_splitting(SplittingData((2, 2, 2))),
        ]
    fan = rng.choice(bases)()
    for _ in range(rng.randint(0, 2)):
        if fan.nrays >= max_rays:
            break
        faces = sorted({tuple(sorted(x)) for c in fan.cones for x in _pairs(c)})
        fan = star_subdivide(fan, rng.choice(faces))
    return fan


def _pairs(c):
    c = sorted(c)
    return [(a, b) for i, a in enumerate(c) for b in c[i + 1:]]


def small_fans() -> list[Fan]:
    """Fans with at most 8 rays used by the exhaustive subset checks."""
    rng = random.Random(20240611)
    fans = [
        projective_space(2),
        projective_space(3),
        product_of_lines(),
        hirzebruch(1),
        hirzebruch(3),
        hexagon(),
        build_splitting(SplittingData((2, 2, 2), {(0, 2): (-2, 0), (1, 2): (0, -2)})),
        build_pic3(PicThreeData((1, 1, 1, 1, 1), (0,), (0,))),
        build_pic3(PicThreeData((1, 2, 1, 1, 2), (1,), (0,))),
    ]
    fans += [random_smooth_fan(rng) for _ in range(4)]
    return [f for f in fans if f.nrays <= 8]


@pytest.fixture(scope="session")
def hex_fan():
    return hexagon()


@pytest.fixture(scope="session")
def hex_locus(hex_fan):
    return immaculate_locus(hex_fan)


@pytest.fixture(scope="session")
def hex_sequences(hex_fan):
    return find_exceptional_sequences(SequenceQuery(hex_fan, 6))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, title = results[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")
