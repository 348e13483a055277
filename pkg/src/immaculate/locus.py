"""Tempting subsets, maculate regions and the immaculate locus.

A subset R of rays is tempting when the subcomplex it spans is not
acyclic.  Every tempting R cuts out the region pi(orthant that is >= 0
off R and <= -1 on R) of classes that may carry cohomology; the
immaculate locus is what lies outside all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

import numpy as np

from . import lp
from .cohomology import is_immaculate, subset_betti, subset_profile
from .errors import EmptyPolyhedron, NotComplete, TorsionUnsupported
from .fan import Fan, indices_of, mask_of
from .homology import Field, HomologyProfile
from .linalg import primitive, smith_normal_form
from .polyhedra import Polyhedron


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


CRITERION_1 = "criterion-1"
CRITERION_2 = "criterion-2"
CRITERION_3 = "criterion-3"
HOMOLOGY = "homology"


@dataclass(frozen=True)
class TemptingEntry:
    mask: int
    tempting: bool
    decided_by: str
    profile: HomologyProfile | None = None


@dataclass
class TemptingReport:
    nrays: int
    entries: dict = field(default_factory=dict)  # mask -> TemptingEntry

    @property
    def tempting(self) -> list[int]:
        return sorted(m for m, e in self.entries.items() if e.tempting)

    def subsets(self) -> list[tuple]:
        return [indices_of(m) for m in self.tempting]

    def is_tempting(self, mask: int) -> bool:
        return self.entries[mask].tempting

    def torsion_masks(self) -> list[int]:
        """Subsets whose complex has integral torsion; only there can the field matter."""
        full = (1 << self.nrays) - 1
        out = set()
        for m, e in self.entries.items():
            if e.profile is not None and any(e.profile.torsion):
                out.update((m, full ^ m))
        return sorted(out)

    def counts(self) -> dict:
        out: dict = {}
        for e in self.entries.values():
            out[e.decided_by] = out.get(e.decided_by, 0) + 1
        return out


def monomial_cone_nonzero(fan: Fan, mask: int) -> bool:
    """Exact LP: does rho*(M_R) meet the orthant (>= 0 off R, <= 0 on R) away from 0?"""
    rows = []
    for i, r in enumerate(fan.rays):
        s = -1 if mask >> i & 1 else 1
        rows.append([s * x for x in r])
    total = [sum(col) for col in zip(*rows)]
    if not any(total):
        # the normalisation row vanishes; fall back to testing each coordinate
        for i in range(len(rows)):
            if lp.feasible(rows, [0] * len(rows), [rows[i]], [1], nvars=fan.dim):
                return True
        return False
    return lp.feasible(rows, [0] * len(rows), [total], [1], nvars=fan.dim)


def tempting_subsets(fan: Fan, field: Field | str | None = None, use_criteria: bool = True) -> TemptingReport:
    """Classify every subset of rays.

    Order of tests: primitive collections (and their complements, the empty
    set and all rays) are tempting; faces and their complements are not;
    a nonzero monomial cone rules temptation out; everything left goes to
    homology.  Complements share their status.
    """
    if not fan.is_complete:
        raise NotComplete("tempting subsets are defined for complete fans")
    field = Field.parse(field)
    key = ("_tempting", field.p, use_criteria)
    cached = fan.__dict__.get(key)
    if cached is not None:
        return cached
    n = fan.nrays
    full = fan.full_mask
    prim = {mask_of(p) for p in fan.primitive_collections} if fan.is_simplicial else set()
    report = TemptingReport(n)
    for mask in range(1 << n):
        if mask in report.entries:
            continue
        comp = full ^ mask
        entry = None
        if use_criteria:
            if mask in (0, full) or (fan.is_simplicial and (mask in prim or comp in prim)):
                entry = TemptingEntry(mask, True, CRITERION_3)
            elif fan.is_face(mask) or fan.is_face(comp):
                entry = TemptingEntry(mask, False, CRITERION_2)
            elif monomial_cone_nonzero(fan, mask):
                entry = TemptingEntry(mask, False, CRITERION_1)
        if entry is None:
            prof = subset_profile(fan, mask)
            entry = TemptingEntry(mask, not prof.is_acyclic(field), HOMOLOGY, prof)
        report.entries[mask] = entry
        report.entries[comp] = TemptingEntry(comp, entry.tempting, entry.decided_by)
    fan.__dict__[key] = report
    return report


def is_tempting(fan: Fan, mask: int, field: Field | str | None = None) -> bool:
    """Direct homology test (no shortcuts)."""
    return any(subset_betti(fan, mask, field))


# maculate regions


@dataclass(frozen=True)
class MaculateRegion:
    mask: int
    vertex: tuple  # rational class coordinates
    rays: tuple  # primitive generators
    polyhedron: Polyhedron

    def contains(self, x: Sequence) -> bool:
        return self.polyhedron.contains(x)

    def lattice_complement(self) -> list[tuple]:
        """Halfspaces (a, b) meaning a.x >= b whose union holds the lattice points outside."""
        out = []
        for a, b in self.polyhedron.ineqs:
            # a.x < b  <=>  a.x <= ceil(b) - 1 for integral x
            out.append((tuple(-x for x in a), Fraction(1 - ceil(b))))
        return out


def _free_pi_columns(fan: Fan) -> list[tuple]:
    r = fan.class_rank
    P = fan.pi.tolist()[:r]
    return [tuple(P[k][i] for k in range(r)) for i in range(fan.nrays)]


def maculate_region(fan: Fan, R: int | Iterable[int]) -> MaculateRegion:
    mask = R if isinstance(R, int) else mask_of(R)
    cache = fan.__dict__.setdefault("_regions", {})
    if mask in cache:
        return cache[mask]
    cols = _free_pi_columns(fan)
    r = fan.class_rank
    vertex = tuple(Fraction(-sum(cols[i][k] for i in indices_of(mask))) for k in range(r))
    gens = set()
    for i, c in enumerate(cols):
        if not any(c):
            continue
        g = primitive(c)
        gens.add(tuple(-x for x in g) if mask >> i & 1 else g)
    P = Polyhedron.from_vrep([vertex], sorted(gens), dim=r)
    reg = MaculateRegion(mask, vertex, tuple(sorted(gens)), P)
    cache[mask] = reg
    return reg


def tempting_regions(fan: Fan, field: Field | str | None = None) -> list[MaculateRegion]:
    return [maculate_region(fan, m) for m in tempting_subsets(fan, field).tempting]


def _require_free(fan: Fan):
    if fan.has_torsion:
        raise TorsionUnsupported("class groups with torsion are not supported here")


def is_really_immaculate(fan: Fan, cls_: Sequence[int], field: Field | str | None = None) -> bool:
    """The class avoids every tempting maculate region."""
    _require_free(fan)
    x = tuple(Fraction(v) for v in cls_)
    return not any(reg.contains(x) for reg in tempting_regions(fan, field))


# the locus


def _sup(P: Polyhedron, a) -> Fraction | None:
    """max <a, P>, None when unbounded."""
    if any(_dot(a, r) > 0 for r in P.rays) or any(_dot(a, l) != 0 for l in P.lineality):
        return None
    return max(_dot(a, v) for v in P.vertices)


class _Piece:
    """A polyhedron with integer-scaled data for fast containment tests."""

    __slots__ = ("P", "den", "verts", "V", "Rr", "Ll", "A", "bn", "bd", "E", "en", "ed", "exact")

    def __init__(self, P: Polyhedron):
        self.P = P
        den = 1
        for v in P.vertices:
            for x in v:
                q = Fraction(x).denominator
                den = den * q // _gcd(den, q)
        self.den = den
        self.verts = [tuple(int(x * den) for x in v) for v in P.vertices]
        d = P.dim
        self.V = np.array(self.verts, dtype=object).reshape(-1, d)
        self.Rr = np.array(P.rays, dtype=object).reshape(-1, d)
        self.Ll = np.array(P.lineality, dtype=object).reshape(-1, d)
        self.A = np.array([a for a, _ in P.ineqs], dtype=object).reshape(-1, d)
        self.bn = np.array([Fraction(b).numerator for _, b in P.ineqs], dtype=object)
        self.bd = np.array([Fraction(b).denominator for _, b in P.ineqs], dtype=object)
        self.E = np.array([a for a, _ in P.eqs], dtype=object).reshape(-1, d)
        self.en = np.array([Fraction(b).numerator for _, b in P.eqs], dtype=object)
        self.ed = np.array([Fraction(b).denominator for _, b in P.eqs], dtype=object)
        big = max((abs(int(x)) for arr in (self.V, self.A, self.bn, self.bd) for x in arr.flat), default=0)
        self.exact = big > 1 << 20
        if not self.exact:
            for name in ("V", "Rr", "Ll", "A", "bn", "bd", "E", "en", "ed"):
                setattr(self, name, getattr(self, name).astype(np.int64))

    def inside(self, a, b) -> bool:
        P = self.P
        if any(_idot(a, r) < 0 for r in P.rays) or any(_idot(a, l) != 0 for l in P.lineality):
            return False
        bd = -((-b * self.den) // 1)  # integer ceiling
        return all(_idot(a, v) >= bd for v in self.verts)

    def subset_of(self, other: "_Piece") -> bool:
        if self.exact or other.exact:
            Q = other.P
            return all(self.inside(a, b) for a, b in Q.ineqs) and all(
                self.inside(a, b) and self.inside(tuple(-x for x in a), -b) for a, b in Q.eqs
            )
        if len(self.Ll) and (len(other.A) and (other.A @ self.Ll.T).any() or len(other.E) and (other.E @ self.Ll.T).any()):
            return False
        if len(self.Rr) and (len(other.A) and ((other.A @ self.Rr.T) < 0).any() or len(other.E) and (other.E @ self.Rr.T).any()):
            return False
        if len(other.A):
            lhs = (other.A @ self.V.T) * other.bd[:, None]
            if (lhs < other.bn[:, None] * self.den).any():
                return False
        if len(other.E):
            lhs = (other.E @ self.V.T) * other.ed[:, None]
            if (lhs != other.en[:, None] * self.den).any():
                return False
        return True


def _idot(a, v) -> int:
    return sum(x * y for x, y in zip(a, v))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _line_quotient(d):
    snf = smith_normal_form([[x] for x in d])
    return snf.U, snf.U_inv


def _integer_hull(P: Polyhedron) -> Polyhedron | None:
    """Convex hull of the lattice points, for bounded pieces and bundles of lines."""
    if P.is_bounded:
        pts = P.lattice_points()
        return Polyhedron.from_vrep(pts, dim=P.dim) if pts else None
    if P.rays or len(P.lineality) != 1:
        return P
    (d,) = P.lineality
    U, Uinv = _line_quotient(d)
    rows = U.tolist()[1:]
    verts = sorted({tuple(sum(Fraction(a) * x for a, x in zip(row, v)) for row in rows) for v in P.vertices})
    if P.dim == 1:
        return P
    qs = Polyhedron.from_vrep(verts, dim=P.dim - 1).lattice_points()
    if not qs:
        return None
    bases = [Uinv @ ((0,) + tuple(q)) for q in qs]
    return Polyhedron.from_vrep(bases, (), [d], dim=P.dim)


def _prune(pieces: list[Polyhedron], memo: dict | None = None) -> list[Polyhedron]:
    memo = {} if memo is None else memo
    uniq = {}
    for P in pieces:
        k = P.key()
        if k not in memo:
            memo[k] = _integer_hull(P)
        H = memo[k]
        if H is None:
            continue
        uniq.setdefault(H.key(), H)
    items = [_Piece(P) for P in sorted(uniq.values(), key=lambda P: P.key())]
    keep = []
    for i, A in enumerate(items):
        if any(j != i and A.subset_of(B) for j, B in enumerate(items)):
            continue
        keep.append(A.P)
    return keep


def locus_pieces(fan: Fan, regions: list[MaculateRegion]) -> list[Polyhedron]:
    """Intersect the lattice complements of the regions one at a time.

    After each step every piece is replaced by the hull of its lattice
    points where that is cheap, and pieces inside another piece are dropped.
    """
    r = fan.class_rank
    pieces: list[Polyhedron | None] = [None]
    hulls: dict = {}
    cuts: dict = {}
    for reg in regions:
        halves = reg.lattice_complement()
        new = []
        for P in pieces:
            for a, b in halves:
                if P is None:
                    new.append(Polyhedron.from_hrep([(a, b)], dim=r))
                    continue
                s = _sup(P, a)
                if s is not None and s < b:
                    continue
                key = (P.key(), a, b)
                if key not in cuts:
                    inside = _Piece(P).inside(a, b)
                    cuts[key] = P if inside else P.intersection(Polyhedron.from_hrep([(a, b)], dim=r))
                new.append(cuts[key])
        pieces = _prune(new, hulls)
        if not pieces:
            break
    if pieces == [None]:
        return [Polyhedron.from_hrep([], [], r)] if r else []
    return pieces


@dataclass(frozen=True)
class LatticeLine:
    direction: tuple
    base: tuple  # normalised representative

    def contains(self, x) -> bool:
        diff = [a - b for a, b in zip(x, self.base)]
        k = next(i for i, v in enumerate(self.direction) if v)
        if diff[k] % self.direction[k]:
            return False
        t = diff[k] // self.direction[k]
        return all(d == t * v for d, v in zip(diff, self.direction))


def normalise_line(base: Sequence[int], direction: Sequence[int]) -> LatticeLine:
    d = primitive(direction)
    k = next(i for i, v in enumerate(d) if v)
    if d[k] < 0:
        d = tuple(-x for x in d)
    t = floor(Fraction(base[k], d[k]))
    return LatticeLine(d, tuple(int(b - t * v) for b, v in zip(base, d)))


def _lines_of(P: Polyhedron) -> list[LatticeLine]:
    (d,) = P.lineality
    r = len(d)
    U, Uinv = _line_quotient(d)
    rows = U.tolist()[1:]
    verts = sorted({tuple(sum(Fraction(a) * x for a, x in zip(row, v)) for row in rows) for v in P.vertices})
    Q = Polyhedron.from_vrep(verts, dim=r - 1) if r > 1 else None
    qs = Q.lattice_points() if Q is not None else [()]
    out = []
    for q in qs:
        x = Uinv @ ((0,) + tuple(q))
        out.append(normalise_line(x, d))
    return out


@dataclass
class LocusDescription:
    rank: int
    polyhedra: list
    lines: list  # LatticeLine, sorted
    isolated: list  # integer points, sorted
    others: list  # unbounded pieces that are not unions of lattice lines
    tempting: list

    def contains(self, x: Sequence[int]) -> bool:
        return any(P.contains(x) for P in self.polyhedra)

    def points_in_box(self, lo: Sequence[int], hi: Sequence[int]) -> set:
        box = Polyhedron.box(lo, hi)
        out = set()
        for P in self.polyhedra:
            try:
                Q = P.intersection(box)
            except EmptyPolyhedron:
                continue
            out.update(Q.lattice_points())
        return out

    def line_groups(self) -> dict:
        groups: dict = {}
        for L in self.lines:
            groups.setdefault(L.direction, []).append(L.base)
        return {d: sorted(b) for d, b in sorted(groups.items())}

    def to_dict(self) -> dict:
        pieces = []
        for d, bases in self.line_groups().items():
            pieces.append({"kind": "lines", "direction": list(d), "base_points": [list(b) for b in bases]})
        if self.isolated:
            pieces.append({"kind": "points", "points": [list(p) for p in self.isolated]})
        for P in self.others:
            pieces.append({
                "kind": "polyhedron",
                "inequalities": [[list(a), str(b)] for a, b in P.ineqs],
                "equations": [[list(a), str(b)] for a, b in P.eqs],
            })
        return {"rank": self.rank, "pieces": pieces, "tempting": list(self.tempting)}

    @classmethod
    def from_dict(cls, data: dict) -> "LocusDescription":
        r = data["rank"]
        lines, isolated, others, polys = [], [], [], []
        for piece in data["pieces"]:
            if piece["kind"] == "lines":
                d = tuple(piece["direction"])
                for b in piece["base_points"]:
                    L = LatticeLine(d, tuple(b))
                    lines.append(L)
                    polys.append(Polyhedron.from_vrep([L.base], (), [d], dim=r))
            elif piece["kind"] == "points":
                for p in piece["points"]:
                    isolated.append(tuple(p))
                    polys.append(Polyhedron.point(p))
            else:
                P = Polyhedron.from_hrep(
                    [(tuple(a), Fraction(b)) for a, b in piece["inequalities"]],
                    [(tuple(a), Fraction(b)) for a, b in piece["equations"]],
                    r,
                )
                others.append(P)
                polys.append(P)
        return cls(r, polys, sorted(lines, key=lambda L: (L.direction, L.base)), sorted(isolated), others,
                   list(data["tempting"]))


def immaculate_locus(fan: Fan, field: Field | str | None = None, order: Sequence[int] | None = None) -> LocusDescription:
    """Classes outside every tempting maculate region, as lines, points and polyhedra."""
    _require_free(fan)
    ckey = (Field.parse(field), None if order is None else tuple(order))
    cache = fan.__dict__.setdefault("_locus", {})
    if ckey in cache:
        return cache[ckey]
    report = tempting_subsets(fan, field)
    masks = report.tempting if order is None else list(order)
    regions = [maculate_region(fan, m) for m in masks]
    pieces = locus_pieces(fan, regions)
    lines, others, bounded = [], [], []
    for P in pieces:
        if P.is_bounded:
            bounded.append(P)
        elif len(P.lineality) == 1 and not P.rays:
            lines.extend(_lines_of(P))
        else:
            others.append(P)
    uniq_lines = sorted({(L.direction, L.base): L for L in lines}.values(), key=lambda L: (L.direction, L.base))
    isolated = set()
    for P in bounded:
        for x in P.lattice_points():
            xi = tuple(int(v) for v in x)
            if any(L.contains(xi) for L in uniq_lines) or any(Q.contains(xi) for Q in others):
                continue
            isolated.add(xi)
    cache[ckey] = LocusDescription(fan.class_rank, pieces, uniq_lines, sorted(isolated), others, report.tempting)
    return cache[ckey]


# the cube


@dataclass
class CubeReport:
    vertex_classes: dict  # mask -> class
    image_vertices: list
    image_lattice_points: list
    tempting: list
    immaculate_classes: list  # distinct classes of non-tempting vertices
    injective_on_maculate: bool
    maculate_nonimmaculate_tempting: bool  # non-immaculate vertex class => tempting R

    def summary(self) -> dict:
        return {
            "vertices": len(self.image_vertices),
            "lattice_points": len(self.image_lattice_points),
            "tempting_vertices": len(self.tempting),
            "immaculate_classes": len(self.immaculate_classes),
            "injective_on_maculate_vertices": self.injective_on_maculate,
            "non_immaculate_implies_tempting": self.maculate_nonimmaculate_tempting,
        }


def cube_analysis(fan: Fan, field: Field | str | None = None, check_immaculacy: bool = True) -> CubeReport:
    if not fan.is_simplicial:
        from .errors import NonSimplicialFan

        raise NonSimplicialFan("the cube analysis needs a simplicial fan")
    _require_free(fan)
    report = tempting_subsets(fan, field)
    cols = _free_pi_columns(fan)
    r = fan.class_rank
    classes = {}
    for mask in range(1 << fan.nrays):
        classes[mask] = tuple(-sum(cols[i][k] for i in indices_of(mask)) for k in range(r))
    P = Polyhedron.from_vrep(sorted(set(classes.values())), dim=r)
    pts = P.lattice_points()
    tempting = report.tempting
    by_class: dict = {}
    for mask, c in classes.items():
        by_class.setdefault(c, []).append(mask)
    injective = all(len(by_class[classes[m]]) == 1 for m in tempting)
    imm = sorted({classes[m] for m in classes if not report.is_tempting(m)})
    implication = True
    if check_immaculacy:
        for c, masks in by_class.items():
            if not is_immaculate(fan, c, field=field):
                if not all(report.is_tempting(m) for m in masks):
                    implication = False
    return CubeReport(classes, [tuple(int(x) for x in v) for v in P.vertices], pts, tempting, imm, injective,
                      implication)
