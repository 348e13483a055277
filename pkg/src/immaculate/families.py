"""Constructors and closed-form immaculate loci for three classified families.

* Picard rank two: smooth complete fans with d + 2 rays.
* Splitting fans: pairwise disjoint primitive collections.
* Picard rank three with five primitive collections.

Every fan is built from its class map pi; the rays are a lattice basis of
ker(pi) read row by row, and the maximal cones are the complements of the
minimal transversals of the primitive collections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import InvalidParameters
from .fan import Fan
from .linalg import kernel_basis
from .polyhedra import Polyhedron


def fan_from_class_map(pi: Sequence[Sequence[int]], collections: Sequence[Sequence[int]], name: str = "") -> Fan:
    """Fan with class map ``pi`` and the given primitive collections.

    A maximal cone is the complement of a set that meets every collection
    and has exactly rank(Cl) elements.
    """
    pi = [list(map(int, row)) for row in pi]
    r, n = len(pi), len(pi[0])
    basis = kernel_basis(pi)
    rays = [tuple(int(b[i]) for b in basis) for i in range(n)]
    colls = [frozenset(c) for c in collections]
    cones = []
    for T in combinations(range(n), r):
        if all(c & set(T) for c in colls):
            cones.append([i for i in range(n) if i not in T])
    return Fan(rays, cones, pi=pi, name=name)


# Picard rank two


@dataclass(frozen=True)
class PicTwoData:
    l1: int
    l2: int
    c: tuple  # 0 = c^1 >= ... >= c^{l2}

    def __post_init__(self):
        c = tuple(int(x) for x in self.c)
        object.__setattr__(self, "c", c)
        if self.l1 < 2 or self.l2 < 2:
            raise InvalidParameters("block sizes must be at least 2")
        if len(c) != self.l2:
            raise InvalidParameters(f"c needs {self.l2} entries")
        if c[0] != 0 or any(a < b for a, b in zip(c, c[1:])) or c[-1] > 0:
            raise InvalidParameters("c must start with 0 and weakly decrease")

    @property
    def c_bar(self) -> int:
        return sum(self.c)

    @property
    def dim(self) -> int:
        return self.l1 + self.l2 - 2

    def class_map(self) -> list[list[int]]:
        return [[1] * self.l1 + list(self.c), [0] * self.l1 + [1] * self.l2]

    def as_splitting(self) -> "SplittingData":
        return SplittingData((self.l1, self.l2), {(0, 1): self.c})


def build_pic2(data: PicTwoData) -> Fan:
    U = range(data.l1)
    V = range(data.l1, data.l1 + data.l2)
    return fan_from_class_map(data.class_map(), [U, V], name=f"pic2 l=({data.l1},{data.l2}) c={list(data.c)}")


def pic2_immaculate(data: PicTwoData, cls_: Sequence[int]) -> bool:
    x, y = (int(v) for v in cls_)
    l1, l2, cl = data.l1, data.l2, data.c[-1]
    if -l2 < y < 0:
        return True
    if y >= 0 and -l1 < x < cl * y:
        return True
    if y <= -l2 and 0 > x + data.c_bar > cl * (y + l2) - l1:
        return True
    return False


def hirzebruch(a: int) -> Fan:
    return build_pic2(PicTwoData(2, 2, (0, -a)))


# splitting fans


@dataclass(frozen=True)
class SplittingData:
    """Block sizes and the blocks c_ij (i < j, zero-based) of the class map."""

    ell: tuple
    c: dict = field(default_factory=dict)

    def __post_init__(self):
        ell = tuple(int(x) for x in self.ell)
        object.__setattr__(self, "ell", ell)
        if not ell or any(l < 2 for l in ell):
            raise InvalidParameters("block sizes must be at least 2")
        k = len(ell)
        blocks = {}
        for (i, j), v in dict(self.c).items():
            if not 0 <= i < j < k:
                raise InvalidParameters(f"block ({i},{j}) is not above the diagonal")
            blocks[(i, j)] = tuple(int(x) for x in v)
        for i in range(k):
            for j in range(i + 1, k):
                v = blocks.setdefault((i, j), (0,) * ell[j])
                if len(v) != ell[j]:
                    raise InvalidParameters(f"block ({i},{j}) needs {ell[j]} entries")
                if any(x > 0 for x in v):
                    raise InvalidParameters(f"block ({i},{j}) has a positive entry")
                if 0 not in v:
                    raise InvalidParameters(f"block ({i},{j}) needs a zero entry")
        object.__setattr__(self, "c", blocks)

    @property
    def k(self) -> int:
        return len(self.ell)

    def c_bar(self, i: int, j: int) -> int:
        return sum(self.c[(i, j)])

    def offsets(self) -> list[int]:
        out, s = [], 0
        for l in self.ell:
            out.append(s)
            s += l
        return out

    def class_map(self) -> list[list[int]]:
        k = self.k
        rows = []
        for i in range(k):
            row = []
            for j in range(k):
                if j < i:
                    row += [0] * self.ell[j]
                elif j == i:
                    row += [1] * self.ell[j]
                else:
                    row += list(self.c[(i, j)])
            rows.append(row)
        return rows

    def v(self, j: int) -> tuple:
        """v_j for zero-based j: (c_bar_0j, ..., c_bar_{j-1,j}, l_j, 0, ...)."""
        return tuple(self.c_bar(i, j) for i in range(j)) + (self.ell[j],) + (0,) * (self.k - j - 1)

    def cone_generators(self, j: int) -> list[tuple]:
        """Generators of C_j: the columns of block j."""
        return [
            tuple(self.c[(i, j)][nu] for i in range(j)) + (1,) + (0,) * (self.k - j - 1)
            for nu in range(self.ell[j])
        ]

    def is_general(self) -> bool:
        for j in range(self.k - 1):
            v = self.c[(j, j + 1)]
            if max(v) - min(v) <= self.ell[j]:
                return False
        return True

    def to_dict(self) -> dict:
        return {"l": list(self.ell), "c_blocks": {f"{i},{j}": list(v) for (i, j), v in sorted(self.c.items())}}

    @classmethod
    def from_dict(cls, d: dict) -> "SplittingData":
        blocks = {}
        for key, v in dict(d.get("c_blocks", d.get("c", {}))).items():
            i, j = (int(s) for s in str(key).split(","))
            blocks[(i, j)] = tuple(v)
        return cls(tuple(d["l"]), blocks)


def build_splitting(data: SplittingData) -> Fan:
    off = data.offsets()
    colls = [range(o, o + l) for o, l in zip(off, data.ell)]
    return fan_from_class_map(data.class_map(), colls, name=f"splitting l={list(data.ell)}")


@dataclass(frozen=True, order=True)
class Slab:
    """Points whose first ``free`` coordinates are arbitrary and whose rest equal ``tail``."""

    free: int
    tail: tuple

    def contains(self, x: Sequence[int]) -> bool:
        return tuple(x[self.free:]) == self.tail

    def points_in_box(self, lo: int, hi: int) -> list[tuple]:
        if any(not lo <= t <= hi for t in self.tail):
            return []
        return [p + self.tail for p in product(range(lo, hi + 1), repeat=self.free)]


class SlabSet:
    """Finite union of slabs, kept sorted and without repeats."""

    def __init__(self, k: int, slabs: Iterable[Slab] = ()):
        self.k = k
        self.slabs = tuple(sorted(set(slabs)))
        for s in self.slabs:
            if s.free + len(s.tail) != k:
                raise ValueError("slab of the wrong length")

    def __contains__(self, x) -> bool:
        return any(s.contains(x) for s in self.slabs)

    def __iter__(self):
        return iter(self.slabs)

    def __len__(self):
        return len(self.slabs)

    def __eq__(self, other):
        return isinstance(other, SlabSet) and (self.k, self.slabs) == (other.k, other.slabs)

    def points_in_box(self, lo: int, hi: int) -> set:
        out = set()
        for s in self.slabs:
            out.update(s.points_in_box(lo, hi))
        return out

    def to_list(self) -> list:
        return [{"free": s.free, "tail": list(s.tail)} for s in self.slabs]


def splitting_seed(ell: Sequence[int]) -> SlabSet:
    k = len(ell)
    slabs = []
    for j in range(k):
        for t in range(1, ell[j]):
            slabs.append(Slab(j, (-t,) + (0,) * (k - j - 1)))
    return SlabSet(k, slabs)


def c_hull(seed: SlabSet, data: SplittingData) -> SlabSet:
    """Close the seed under a -> a - v_{j+1} for a with zero coordinates from j on."""
    k = data.k
    done = set(seed.slabs)
    todo = list(seed.slabs)
    while todo:
        s = todo.pop()
        x = (None,) * s.free + s.tail
        last = max((i for i in range(s.free, k) if x[i] != 0), default=s.free - 1)
        for j in range(max(s.free, last + 1), k):
            v = data.v(j)
            tail = tuple(t - v[s.free + i] for i, t in enumerate(s.tail))
            t = Slab(s.free, tail)
            if t not in done:
                done.add(t)
                todo.append(t)
    return SlabSet(k, done)


@dataclass(frozen=True)
class SplittingLocus:
    slabs: SlabSet
    lower_bound_only: bool


def splitting_immaculate_general(data: SplittingData) -> SplittingLocus:
    """Hull of the seed; exact under the generality condition, a lower bound otherwise."""
    return SplittingLocus(c_hull(splitting_seed(data.ell), data), not data.is_general())


# Picard rank three


@dataclass(frozen=True)
class PicThreeData:
    p: tuple  # p_0, ..., p_4
    b: tuple
    c: tuple  # c_1 = 0

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        b = tuple(int(x) for x in self.b)
        c = tuple(int(x) for x in self.c)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if len(p) != 5 or any(x < 1 for x in p):
            raise InvalidParameters("need five block sizes, each at least 1")
        if sum(p) < 5 or sum(p) - 3 < 2:
            raise InvalidParameters("dimension must be at least 2")
        if len(c) != p[2] or len(b) != p[3]:
            raise InvalidParameters("c needs p_2 entries and b needs p_3 entries")
        if c[0] != 0:
            raise InvalidParameters("c_1 must be 0")
        if any(x < 0 for x in b + c):
            raise InvalidParameters("b and c must be nonnegative")

    @property
    def dim(self) -> int:
        return sum(self.p) - 3

    @property
    def c_bar(self) -> int:
        return sum(self.c)

    @property
    def b_bar(self) -> int:
        return sum(self.b)

    def blocks(self) -> list[range]:
        out, s = [], 0
        for q in self.p:
            out.append(range(s, s + q))
            s += q
        return out

    def class_map(self) -> list[list[int]]:
        p0, p1, p2, p3, p4 = self.p
        return [
            [1] * p0 + [1] * p1 + [-x for x in self.c] + [-(x + 1) for x in self.b] + [0] * p4,
            [0] * p0 + [1] * p1 + [1] * p2 + [0] * p3 + [-1] * p4,
            [0] * p0 + [-1] * p1 + [0] * p2 + [1] * p3 + [1] * p4,
        ]

    def canonical_class(self) -> tuple:
        p0, p1, p2, p3, p4 = self.p
        return (-p0 - p1 + p3 + self.c_bar + self.b_bar, -p1 - p2 + p4, p1 - p3 - p4)

    def serre_dual(self, cls_: Sequence[int]) -> tuple:
        return tuple(k - x for k, x in zip(self.canonical_class(), cls_))

    def is_large(self) -> bool:
        p0, p1, p2, p3, p4 = self.p
        if max(self.b[-1], self.c[-1]) < p0 + p1 + max(p2, p3) + p4:
            return False
        if p2 != 1 and self.c[-1] < p0 - 1:
            return False
        if p3 != 1 and self.b[-1] - self.b[0] < p0 - 1:
            return False
        return True

    def to_dict(self) -> dict:
        return {"p": list(self.p), "b": list(self.b), "c": list(self.c)}


def pic3_collections(data: PicThreeData) -> list[frozenset]:
    J = data.blocks()
    return [frozenset(J[a]) | frozenset(J[(a + 1) % 5]) for a in range(5)]


def build_pic3(data: PicThreeData) -> Fan:
    return fan_from_class_map(data.class_map(), pic3_collections(data), name=f"pic3 p={list(data.p)}")


def pic3_parallelograms(data: PicThreeData) -> tuple[Polyhedron, Polyhedron]:
    _, p1, p2, p3, p4 = data.p
    # first vertex has -p1, not +p1: only then is P1 a parallelogram
    P1 = Polyhedron.from_vrep(
        [(-p1 - p2 - p3 + 2, p1 - 1), (-p1, p1 - 1), (-p2 + p4, -p3 - p4 + 1), (p3 + p4 - 2, -p3 - p4 + 1)]
    )
    P2 = Polyhedron.from_vrep(
        [(-p1 - p2 + 1, p1 + p2 - 2), (p4 - 1, -p4), (-p1 - p2 + 1, p1 - p3), (p4 - 1, -p2 - p3 - p4 + 2)]
    )
    return P1, P2


def _type_a_rows(data: PicThreeData) -> list[tuple]:
    """(y_lo, y_hi, x0, x1) with x0, x1 functions of y."""
    p0, p1, p2, p3, p4 = data.p

    def lo_y(y):
        return -p0 - p4 - y + 1

    def lo_c(y):
        return -p0 - p1 + 1

    def hi_y(y):
        return -y - 1

    def hi_c(y):
        return -1

    if p1 < p4:
        return [
            (-p3 - p4 + 1, -p4, lo_y, hi_y),
            (-p4 + 1, p1 - p4, lo_c, hi_y),
            (p1 - p4 + 1, 0, lo_y, hi_y),
            (1, p1 - 1, lo_y, hi_c),
            (p1, p1 + p2 - 1, lo_c, hi_c),
        ]
    if p1 > p4:
        return [
            (-p3 - p4 + 1, -p4, lo_y, hi_y),
            (-p4 + 1, 0, lo_c, hi_y),
            (1, p1 - p4, lo_c, hi_c),
            (p1 - p4 + 1, p1 - 1, lo_y, hi_c),
            (p1, p1 + p2 - 1, lo_c, hi_c),
        ]
    return [
        (-p3 - p4 + 1, -p4, lo_y, hi_y),
        (-p4 + 1, 0, lo_c, hi_y),
        (1, p1 - 1, lo_y, hi_c),
        (p1, p1 + p2 - 1, lo_c, hi_c),
    ]


def pic3_type_a(data: PicThreeData) -> dict:
    """y -> (x0, x1); the segment I_y holds the classes (x, -y, y) with x0 <= x <= x1."""
    out = {}
    for ylo, yhi, f0, f1 in _type_a_rows(data):
        for y in range(ylo, yhi + 1):
            out[y] = (f0(y), f1(y))
    return out


def pic3_type_b(data: PicThreeData) -> list[tuple]:
    """Segments (x0, x1, y, z): classes (x, y, z) with x0 <= x <= x1."""
    p0, p1, p2, p3, p4 = data.p
    cb, bb = data.c_bar, data.b_bar
    if p2 == 1:
        return [(-p0 - p1 + 1, -p1 - 1, -p1 - p2 - t, p1) for t in range(p3)]
    if p3 == 1:
        return [
            (-p0 - p1 + cb - t * (bb + 1) + 1, -p1 + cb - t * (bb + 1) - 1, -p1 - p2, p1 + t)
            for t in range(p2)
        ]
    return [(-p0 - p1 + cb + 1, -p1 + cb - 1, -p1 - p2, p1)]


@dataclass
class PicThreeCandidates:
    type_f: tuple  # (P1, P2)
    type_a: dict
    type_b: list

    def f_projections(self) -> set:
        pts = set()
        for P in self.type_f:
            pts.update(tuple(int(v) for v in q) for q in P.lattice_points())
        return pts

    def kind_of(self, cls_: Sequence[int]) -> str | None:
        x, y, z = (int(v) for v in cls_)
        if (y, z) in self._fproj:
            return "F"
        if y == -z and z in self.type_a:
            x0, x1 = self.type_a[z]
            if x0 <= x <= x1:
                return "A"
        for x0, x1, yy, zz in self.type_b:
            if (y, z) == (yy, zz) and x0 <= x <= x1:
                return "B"
        return None

    def __post_init__(self):
        self._fproj = self.f_projections()


def pic3_candidates(data: PicThreeData) -> PicThreeCandidates:
    return PicThreeCandidates(pic3_parallelograms(data), pic3_type_a(data), pic3_type_b(data))


def pic3_projected_vertices(data: PicThreeData) -> dict:
    """Closed-form (y, z) of the projected maculate vertices, keyed by label."""
    _, p1, p2, p3, p4 = data.p
    return {
        "Sigma(1)": (-p1 - p2 + p4, p1 - p3 - p4),
        "empty": (0, 0),
        "0c": (-p2 + p4, -p3 - p4),
        "0": (-p1, p1),
        "1c": (p4, -p3 - p4),
        "1": (-p1 - p2, p1),
        "2c": (-p1 + p4, p1 - p4),
        "2": (-p2, -p3),
        "3c": (-p1 - p2, p1),
        "3": (p4, -p3 - p4),
        "4c": (-p1 - p2, p1 - p3),
        "4": (p4, -p4),
    }


def pic3_labelled_subsets(data: PicThreeData) -> dict:
    """Label -> ray subset, matching the keys of pic3_projected_vertices."""
    n = sum(data.p)
    full = frozenset(range(n))
    out = {"Sigma(1)": full, "empty": frozenset()}
    for a, J in enumerate(pic3_collections(data)):
        out[str(a)] = J
        out[f"{a}c"] = full - J
    return out


@dataclass(frozen=True)
class ClosedFormAnswer:
    status: str  # immaculate | maculate | unknown
    via: str  # F | A | B | Serre-dual | large-parameters | enumeration


def pic3_immaculate_closed_form(data: PicThreeData, cls_: Sequence[int], fan: Fan | None = None,
                                candidates: PicThreeCandidates | None = None) -> ClosedFormAnswer:
    """Closed form first; outside the large-parameter regime the engine decides.

    Pass ``fan`` to reuse a built fan for the fallback.
    """
    cand = candidates or pic3_candidates(data)
    kind = cand.kind_of(cls_)
    if kind:
        return ClosedFormAnswer("immaculate", kind)
    if cand.kind_of(data.serre_dual(cls_)):
        return ClosedFormAnswer("immaculate", "Serre-dual")
    if data.is_large():
        return ClosedFormAnswer("maculate", "large-parameters")
    from .locus import is_really_immaculate

    fan = fan if fan is not None else build_pic3(data)
    ok = is_really_immaculate(fan, cls_)
    return ClosedFormAnswer("immaculate" if ok else "maculate", "enumeration")


# small named fans


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    cones = [[j for j in range(n + 1) if j != i] for i in range(n + 1)]
    return Fan(rays, cones, name=f"P^{n}")


def product_of_lines() -> Fan:
    return build_pic2(PicTwoData(2, 2, (0, 0)))


def weighted_p235() -> Fan:
    """P(2,3,5) with class map [2 3 5]."""
    return Fan([(-1, -1), (4, -1), (-2, 1)], [[0, 1], [1, 2], [0, 2]], pi=[[2, 3, 5]], name="P(2,3,5)")


def hexagon() -> Fan:
    from importlib import resources

    return Fan.from_json(resources.files("immaculate") / "data" / "hexagon.json")


def plane_minus_point() -> Fan:
    """P^2 without one fixed point: complete minus a maximal cone."""
    return Fan([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2]], name="P^2 minus a point")


def blowup_plane() -> Fan:
    """Blow-up of A^2 at the origin."""
    return Fan([(1, 0), (1, 1), (0, 1)], [[0, 1], [1, 2]], name="Bl A^2")


def splitting_witness() -> SplittingData:
    """P(O(-2,0) + O(0,-2)) over P^1 x P^1."""
    return SplittingData((2, 2, 2), {(0, 1): (0, 0), (0, 2): (-2, 0), (1, 2): (0, -2)})


NAMED = {
    "hexagon": hexagon,
    "P2": lambda: projective_space(2),
    "P1": lambda: projective_space(1),
    "P1xP1": product_of_lines,
    "F1": lambda: hirzebruch(1),
    "F2": lambda: hirzebruch(2),
    "P(2,3,5)": weighted_p235,
    "P2-pt": plane_minus_point,
    "BlA2": blowup_plane,
}
