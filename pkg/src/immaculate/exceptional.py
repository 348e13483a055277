"""Exceptional sequences of line bundles inside a finite search region.

With the default convention ("sums") a sequence L_0, ..., L_{n-1} is
accepted when L_i - L_j is immaculate for every i > j, i.e. every sum of
consecutive increments is immaculate.  The "hom" convention asks for
L_j - L_i instead; it is the same search on the negated classes.
Sequences are pinned at L_0 = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _backend
from .cohomology import is_immaculate
from .errors import InvalidParameters, NotComplete, RegionEmpty
from .fan import Fan, act_on_class, fan_automorphisms
from .homology import Field
from .locus import cube_analysis


@dataclass(frozen=True)
class SequenceQuery:
    fan: Fan
    length: int
    region: str = "cube"  # "cube" or "box:R"
    pin_zero: bool = True
    field: Field | None = None
    convention: str = "sums"

    def __post_init__(self):
        if self.convention not in ("sums", "hom"):
            raise InvalidParameters(f"unknown convention {self.convention!r}")
        if self.length < 1:
            raise InvalidParameters("length must be positive")
        if not (self.region == "cube" or self.region.startswith("box:")):
            raise InvalidParameters(f"unknown region {self.region!r}")


@dataclass(frozen=True, order=True)
class ExceptionalSequence:
    classes: tuple

    def increments(self) -> tuple:
        """Differences of consecutive classes, with the first class in front."""
        out = [self.classes[0]]
        for a, b in zip(self.classes, self.classes[1:]):
            out.append(tuple(y - x for x, y in zip(a, b)))
        return tuple(out)

    def __len__(self):
        return len(self.classes)


def region_points(fan: Fan, region: str = "cube") -> list[tuple]:
    if region == "cube":
        pts = cube_analysis(fan, check_immaculacy=False).image_lattice_points
    elif region.startswith("box:"):
        R = int(region[4:])
        if R < 0:
            raise InvalidParameters("box radius must be nonnegative")
        from itertools import product

        pts = list(product(range(-R, R + 1), repeat=fan.class_rank))
    else:
        raise InvalidParameters(f"unknown region {region!r}")
    pts = sorted({tuple(int(v) for v in p) for p in pts})
    if not pts:
        raise RegionEmpty("search region has no lattice points")
    return pts


class ImmaculacyTable:
    """is_immaculate on the difference set of a point list, computed once."""

    def __init__(self, fan: Fan, points: Sequence[tuple], field: Field | str | None = None):
        self.fan = fan
        self.points = list(points)
        self.field = field
        diffs = {tuple(a - b for a, b in zip(p, q)) for p in self.points for q in self.points if p != q}
        self.table = {d: is_immaculate(fan, d, field=field) for d in sorted(diffs)}

    def __getitem__(self, d) -> bool:
        return self.table[tuple(d)]

    def successors(self, convention: str = "sums") -> list[int]:
        """Bitset per point: the points that may follow it."""
        pts = self.points
        sign = 1 if convention == "sums" else -1
        out = []
        for p in pts:
            m = 0
            for j, q in enumerate(pts):
                if p != q and self.table[tuple(sign * (b - a) for a, b in zip(p, q))]:
                    m |= 1 << j
            out.append(m)
        return out


def _check_fan(fan: Fan):
    v = fan.validate()
    if not v["complete"]:
        raise NotComplete("exceptional sequences need a complete fan")
    if not v["smooth"]:
        raise InvalidParameters("exceptional sequences need a smooth fan")


def find_exceptional_sequences(q: SequenceQuery, order_seed: int | None = None) -> list[ExceptionalSequence]:
    """All exceptional sequences of the requested length inside the region.

    ``order_seed`` shuffles the point order before the search; the result
    is sorted, so it must not change.
    """
    fan = q.fan
    _check_fan(fan)
    pts = region_points(fan, q.region)
    if order_seed is not None:
        random.Random(order_seed).shuffle(pts)
    table = ImmaculacyTable(fan, pts, q.field)
    succ = table.successors(q.convention)
    zero = (0,) * fan.class_rank
    starts = [pts.index(zero)] if q.pin_zero else list(range(len(pts)))
    if q.pin_zero and zero not in pts:
        raise RegionEmpty("the region does not contain 0")
    found = []
    for s in starts:
        for idx in _backend.extend_sequences(succ, s, q.length):
            found.append(ExceptionalSequence(tuple(pts[i] for i in idx)))
    return sorted(found)


def is_exceptional(fan: Fan, classes: Sequence[Sequence[int]], field: Field | str | None = None,
                   convention: str = "sums") -> bool:
    """Direct check of the pairwise condition, no table."""
    cls_ = [tuple(c) for c in classes]
    sign = 1 if convention == "sums" else -1
    for j in range(len(cls_)):
        for i in range(j + 1, len(cls_)):
            d = tuple(sign * (a - b) for a, b in zip(cls_[i], cls_[j]))
            if not is_immaculate(fan, d, field=field):
                return False
    return True


def consecutive_sums_condition(fan: Fan, increments: Sequence[Sequence[int]], field: Field | str | None = None) -> bool:
    """Increment form: every sum of consecutive increments is immaculate."""
    inc = [tuple(x) for x in increments]
    r = fan.class_rank
    for a in range(1, len(inc)):
        s = (0,) * r
        for b in range(a, len(inc)):
            s = tuple(x + y for x, y in zip(s, inc[b]))
            if not is_immaculate(fan, s, field=field):
                return False
    return True


def _normalise(classes: Iterable[tuple]) -> tuple:
    cls_ = list(classes)
    base = cls_[0]
    return tuple(tuple(a - b for a, b in zip(c, base)) for c in cls_)


def orbit_classes(seqs: Sequence[ExceptionalSequence], fan: Fan, automorphisms=None) -> list[list[ExceptionalSequence]]:
    """Orbits under the automorphism group acting class by class, then re-pinned at 0.

    Each orbit is sorted and the list of orbits is sorted by representative.
    Images that leave the given sequence set are ignored.
    """
    auts = fan_automorphisms(fan) if automorphisms is None else list(automorphisms)
    pool = {s.classes for s in seqs}
    seen: set = set()
    orbits = []
    for s in sorted(seqs):
        if s.classes in seen:
            continue
        orb = {s.classes}
        for g in auts:
            img = _normalise(act_on_class(g, fan, c) for c in s.classes)
            if img in pool:
                orb.add(img)
        seen |= orb
        orbits.append(sorted(ExceptionalSequence(c) for c in orb))
    return sorted(orbits, key=lambda o: o[0])
