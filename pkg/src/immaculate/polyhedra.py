"""Exact rational cones, polyhedra, face lattices and polytopal complexes.

Representation conversion uses the double description method on
homogenised integer data.  Lineality is split off first so the pointed
part has unique extreme rays, which makes every representation canonical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Iterable, Sequence

import numpy as np

from . import lp
from .errors import BoxTooSmall, EmptyPolyhedron, TailMismatch, UnboundedInput
from .linalg import primitive, rank, rational_nullspace


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _prim_int(v) -> tuple:
    return primitive(v)


def double_description(ineqs: Sequence[Sequence[int]], eqs: Sequence[Sequence[int]], n: int):
    """Generators of {x in Q^n : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}.

    Returns ``(rays, lineality)``.  Rays are primitive integer vectors lying
    in the orthogonal complement of the lineality space, hence unique.
    """
    ineqs = [tuple(int(x) for x in a) for a in ineqs]
    eqs = [tuple(int(x) for x in e) for e in eqs]
    lineality = rational_nullspace(ineqs + eqs, n)
    L = rational_nullspace(eqs + lineality, n)
    R: list[tuple] = []
    processed: list[tuple] = []
    zmask: list[int] = []  # bitmask of processed constraints tight at each ray

    for a in ineqs:
        if not any(a):
            continue
        vals = [_dot(a, l) for l in L]
        k = next((i for i, v in enumerate(vals) if v != 0), None)
        bit = 1 << len(processed)
        if k is not None:
            l0 = L[k] if vals[k] > 0 else tuple(-x for x in L[k])
            al0 = abs(vals[k])
            newL = []
            for i, l in enumerate(L):
                if i == k:
                    continue
                newL.append(_prim_int([al0 * x - vals[i] * y for x, y in zip(l, l0)]) if vals[i] else l)
            newR = []
            for r in R:
                ar = _dot(a, r)
                newR.append(_prim_int([al0 * x - ar * y for x, y in zip(r, l0)]) if ar else r)
            # every old ray is now tight on a; the new ray l0 is not
            zmask = [z | bit for z in zmask] + [_tight_mask(processed, l0)]
            R = newR + [l0]
            L = newL
            processed.append(a)
            continue
        sgn = [_dot(a, r) for r in R]
        pos = [i for i, s in enumerate(sgn) if s > 0]
        neg = [i for i, s in enumerate(sgn) if s < 0]
        zer = [i for i, s in enumerate(sgn) if s == 0]
        newR = [R[i] for i in pos] + [R[i] for i in zer]
        newZ = [zmask[i] for i in pos] + [zmask[i] | bit for i in zer]
        for i in pos:
            for j in neg:
                common = zmask[i] & zmask[j]
                if _adjacent(common, i, j, zmask):
                    v = _prim_int([sgn[i] * y - sgn[j] * x for x, y in zip(R[i], R[j])])
                    newR.append(v)
                    newZ.append(common | bit)
        R, zmask = newR, newZ
        processed.append(a)
    assert not L, "lineality should have been split off"
    return sorted(set(R)), sorted(lineality)


def _tight_mask(processed, r):
    m = 0
    for i, a in enumerate(processed):
        if _dot(a, r) == 0:
            m |= 1 << i
    return m


def _adjacent(common, i, j, zmask):
    for k, z in enumerate(zmask):
        if k != i and k != j and (z & common) == common:
            return False
    return True


def _scale_row(a, b):
    """Integer homogeneous row for ``a.x >= b`` / ``a.x = b``."""
    b = Fraction(b)
    a = [Fraction(x) for x in a]
    den = b.denominator
    for x in a:
        den = den * x.denominator // gcd(den, x.denominator)
    return tuple(int(x * den) for x in a) + (int(-b * den),)


def _rref_eqs(eqs):
    """Canonical equation system: reduced row echelon form, rows made primitive."""
    if not eqs:
        return ()
    n = len(eqs[0][0])
    M = [[Fraction(x) for x in a] + [Fraction(b)] for a, b in eqs]
    r = 0
    for c in range(n + 1):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    out = []
    for row in M[:r]:
        a = row[:n]
        if not any(a):
            raise EmptyPolyhedron("inconsistent equations")
        p = primitive(a)
        # scale so that a becomes p
        k = next(i for i, x in enumerate(a) if x != 0)
        s = Fraction(p[k]) / a[k]
        out.append((p, row[n] * s))
    return tuple(sorted(out))


def _frac_point(v) -> tuple:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class Polyhedron:
    """A nonempty rational polyhedron with matching H- and V-representations.

    ``ineqs`` holds facet inequalities ``a.x >= b`` and ``eqs`` the affine
    hull ``a.x = b``; ``a`` is always a primitive integer vector.
    """

    dim: int
    vertices: tuple
    rays: tuple = ()
    lineality: tuple = ()
    ineqs: tuple = ()
    eqs: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    # construction

    @classmethod
    def from_hrep(cls, ineqs: Iterable = (), eqs: Iterable = (), dim: int | None = None) -> "Polyhedron":
        ineqs = [(tuple(a), Fraction(b)) for a, b in ineqs]
        eqs = [(tuple(a), Fraction(b)) for a, b in eqs]
        if dim is None:
            dim = len((ineqs or eqs)[0][0])
        rows = [_scale_row(a, b) for a, b in ineqs] + [(0,) * dim + (1,)]
        erows = [_scale_row(a, b) for a, b in eqs]
        gens, lin = double_description(rows, erows, dim + 1)
        verts = [tuple(Fraction(x, g[dim]) for x in g[:dim]) for g in gens if g[dim] > 0]
        if not verts:
            raise EmptyPolyhedron("infeasible inequality system")
        rays = [g[:dim] for g in gens if g[dim] == 0]
        lin_x = [l[:dim] for l in lin]
        H, E = _facets_of(verts, rays, lin_x, dim)
        return cls(dim, tuple(sorted(set(verts))), tuple(sorted(set(rays))), _canonical_lineality(lin_x), H, E)

    @classmethod
    def from_vrep(cls, vertices: Iterable, rays: Iterable = (), lineality: Iterable = (), dim: int | None = None) -> "Polyhedron":
        verts = [_frac_point(v) for v in vertices]
        if not verts:
            raise EmptyPolyhedron("no vertices given")
        dim = len(verts[0]) if dim is None else dim
        rays = [primitive(r) for r in rays if any(r)]
        lin = [primitive(l) for l in lineality if any(l)]
        H, E = _facets_of(verts, rays, lin, dim)
        if lin:
            return cls.from_hrep(H, E, dim)
        eq_normals = [a for a, _ in E]
        keep_v = set()
        for v in verts:
            tight = [a for a, b in H if _dot(a, v) == b]
            rows = tight + eq_normals
            if (rank(_int_rows(rows)) if rows else 0) == dim:
                keep_v.add(v)
        keep_r = set()
        for r in rays:
            tight = [a for a, _ in H if _dot(a, r) == 0]
            if rank(_int_rows(tight + eq_normals)) == dim - 1:
                keep_r.add(tuple(r))
        return cls(dim, tuple(sorted(keep_v)), tuple(sorted(keep_r)), (), H, E)

    @classmethod
    def point(cls, p) -> "Polyhedron":
        return cls.from_vrep([p])

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence) -> "Polyhedron":
        n = len(lo)
        ineqs = []
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            ineqs.append((e, Fraction(lo[i])))
            ineqs.append((tuple(-x for x in e), -Fraction(hi[i])))
        return cls.from_hrep(ineqs, dim=n)

    # basic queries

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    @property
    def affine_dim(self) -> int:
        return self.dim - len(self.eqs)

    def contains(self, x) -> bool:
        return all(_dot(a, x) >= b for a, b in self.ineqs) and all(_dot(a, x) == b for a, b in self.eqs)

    def integer_hrep(self, strict: bool = False) -> tuple[list, list]:
        """Integer rows (a, c) with a.x >= c, plus equations (a, c), valid on lattice points.

        ``strict`` gives the relative interior.  An equation with no integer
        solution comes back as the row ((0,...), 1), which no point meets.
        """
        key = ("int_hrep", strict)
        if key not in self._cache:
            ineqs = []
            for a, b in self.ineqs:
                a, b = _int_scaled(a, b)
                ineqs.append((a, floor(b) + 1 if strict else ceil(b)))
            eqs = []
            for a, b in self.eqs:
                a, b = _int_scaled(a, b)
                if b.denominator != 1:
                    ineqs.append(((0,) * self.dim, 1))
                else:
                    eqs.append((a, int(b)))
            self._cache[key] = (ineqs, eqs)
        return self._cache[key]

    def contains_many(self, points) -> np.ndarray:
        """Membership of each row of an integer array of lattice points."""
        X = np.asarray(points, dtype=object if _too_big(points) else np.int64).reshape(-1, self.dim)
        ineqs, eqs = self.integer_hrep()
        ok = np.ones(len(X), dtype=bool)
        for a, c in ineqs:
            ok &= X @ np.asarray(a, dtype=X.dtype) >= c
        for a, c in eqs:
            ok &= X @ np.asarray(a, dtype=X.dtype) == c
        return ok

    def contains_relint(self, x) -> bool:
        return all(_dot(a, x) > b for a, b in self.ineqs) and all(_dot(a, x) == b for a, b in self.eqs)

    def key(self) -> tuple:
        return (self.vertices, self.rays, self.lineality)

    def same_set(self, other: "Polyhedron") -> bool:
        return self.key() == other.key()

    def tail_key(self) -> tuple:
        return (self.rays, self.lineality)

    def support(self, a) -> Fraction:
        """min <a, P>; raises UnboundedInput when -infinity."""
        for r in self.rays:
            if _dot(a, r) < 0:
                raise UnboundedInput("support function unbounded")
        for l in self.lineality:
            if _dot(a, l) != 0:
                raise UnboundedInput("support function unbounded")
        return min(_dot(a, v) for v in self.vertices)

    def translate(self, t) -> "Polyhedron":
        t = _frac_point(t)
        verts = tuple(sorted(tuple(x + y for x, y in zip(v, t)) for v in self.vertices))
        H = tuple(sorted((a, b + _dot(a, t)) for a, b in self.ineqs))
        E = tuple(sorted((a, b + _dot(a, t)) for a, b in self.eqs))
        return Polyhedron(self.dim, verts, self.rays, self.lineality, H, E)

    def negate(self) -> "Polyhedron":
        verts = tuple(sorted(tuple(-x for x in v) for v in self.vertices))
        rays = tuple(sorted(tuple(-x for x in r) for r in self.rays))
        H = tuple(sorted((tuple(-x for x in a), b) for a, b in self.ineqs))
        E = _rref_eqs([(tuple(-x for x in a), b) for a, b in self.eqs])
        return Polyhedron(self.dim, verts, rays, self.lineality, H, E)

    def scale(self, k) -> "Polyhedron":
        k = Fraction(k)
        if k < 0:
            return self.negate().scale(-k)
        if k == 0:
            return Polyhedron.point((0,) * self.dim) if self.is_bounded else Polyhedron.from_vrep(
                [(0,) * self.dim], self.rays, self.lineality
            )
        verts = tuple(sorted(tuple(x * k for x in v) for v in self.vertices))
        H = tuple(sorted((a, b * k) for a, b in self.ineqs))
        E = tuple(sorted((a, b * k) for a, b in self.eqs))
        return Polyhedron(self.dim, verts, self.rays, self.lineality, H, E)

    def intersection(self, other: "Polyhedron") -> "Polyhedron":
        return Polyhedron.from_hrep(self.ineqs + other.ineqs, self.eqs + other.eqs, self.dim)

    def intersects(self, other: "Polyhedron") -> bool:
        A = [a for a, _ in self.ineqs + other.ineqs]
        b = [b for _, b in self.ineqs + other.ineqs]
        E = [a for a, _ in self.eqs + other.eqs]
        f = [b for _, b in self.eqs + other.eqs]
        return lp.feasible(A, b, E, f, nvars=self.dim)

    def lattice_points(self) -> list[tuple]:
        if not self.is_bounded:
            raise UnboundedInput("lattice points of an unbounded polyhedron")
        if "lattice_points" not in self._cache:
            self._cache["lattice_points"] = _enumerate(self, strict=False)
        return list(self._cache["lattice_points"])

    def interior_lattice_points(self) -> list[tuple]:
        if not self.is_bounded:
            raise UnboundedInput("lattice points of an unbounded polyhedron")
        return _enumerate(self, strict=True)

    def face_lattice(self) -> "FaceLattice":
        if not self.is_bounded:
            raise UnboundedInput("face lattice of an unbounded polyhedron")
        if "faces" not in self._cache:
            self._cache["faces"] = FaceLattice.of(self)
        return self._cache["faces"]


def _int_scaled(a, b):
    den = Fraction(b).denominator
    for x in a:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return tuple(int(x * den) for x in a), Fraction(b) * den


def _too_big(points) -> bool:
    return any(abs(int(x)) > 1 << 24 for p in points for x in p)


def _int_rows(rows):
    return [[int(x) for x in r] for r in rows]


def _canonical_lineality(lin):
    if not lin:
        return ()
    # rational row space in reduced echelon form, rows made primitive
    basis = rational_nullspace(rational_nullspace(lin, len(lin[0])), len(lin[0]))
    eqs = _rref_eqs([(l, 0) for l in basis])
    return tuple(a for a, _ in eqs)


def _facets_of(verts, rays, lin, dim):
    """Facet inequalities and equations of conv(verts) + cone(rays) + span(lin)."""
    gens = []
    for v in verts:
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        gens.append(tuple(int(x * den) for x in v) + (den,))
    for r in rays:
        gens.append(tuple(int(x) for x in r) + (0,))
    lrows = [tuple(int(x) for x in l) + (0,) for l in lin]
    drays, dlin = double_description(gens, lrows, dim + 1)
    vgens = gens[: len(verts)]
    H = []
    for y in drays:
        a = y[:dim]
        # dual rays tight on no vertex are the empty face or the face at infinity
        if not any(a) or not any(_dot(y, g) == 0 for g in vgens):
            continue
        g = 0
        for x in a:
            g = gcd(g, x)
        H.append((tuple(x // g for x in a), Fraction(-y[dim], g)))
    E = _rref_eqs([(y[:dim], Fraction(-y[dim])) for y in dlin])
    return tuple(sorted(H)), E


def _enumerate(P: Polyhedron, strict: bool) -> list[tuple]:
    n = P.dim
    if n == 0:
        return [()]
    lo = [ceil(min(v[i] for v in P.vertices)) for i in range(n)]
    hi = [floor(max(v[i] for v in P.vertices)) for i in range(n)]
    if any(l > h for l, h in zip(lo, hi)):
        return []
    ineqs, eqs = P.integer_hrep(strict)
    if not eqs:
        return list(_scan_last(lo, hi, ineqs))

    def test(p):
        return all(_dot(a, p) >= c for a, c in ineqs) and all(_dot(a, p) == c for a, c in eqs)

    # solve equations for the pivot coordinates to avoid scanning them
    return [p for p in _box_points(lo, hi, P.eqs) if test(p)]


def _scan_last(lo, hi, ineqs):
    """Box scan that solves each integer inequality for the last coordinate."""
    n = len(lo)
    for head in itertools.product(*(range(l, h + 1) for l, h in zip(lo[:-1], hi[:-1]))):
        a_lo, a_hi = lo[-1], hi[-1]
        for a, c in ineqs:
            rest = c - _dot(a[:-1], head)
            t = a[n - 1]
            if t > 0:
                a_lo = max(a_lo, -((-rest) // t))
            elif t < 0:
                a_hi = min(a_hi, rest // t)
            elif rest > 0:
                a_hi = a_lo - 1
            if a_lo > a_hi:
                break
        for v in range(a_lo, a_hi + 1):
            yield head + (v,)


def _box_points(lo, hi, eqs):
    n = len(lo)
    # eqs are in reduced echelon form; the leading coordinate of each row is
    # determined by the remaining ones
    lead = {}
    for a, b in eqs:
        k = next(i for i, x in enumerate(a) if x)
        lead[k] = (a, b)
    free = [i for i in range(n) if i not in lead]
    for vals in itertools.product(*(range(lo[i], hi[i] + 1) for i in free)):
        x = [0] * n
        for i, v in zip(free, vals):
            x[i] = v
        ok = True
        for k in sorted(lead, reverse=True):
            a, b = lead[k]
            rest = sum(a[j] * x[j] for j in range(n) if j != k)
            val = (b - rest) / a[k]
            if val.denominator != 1 or not lo[k] <= val <= hi[k]:
                ok = False
                break
            x[k] = int(val)
        if ok:
            yield tuple(x)


def hrep_from_vrep(vertices, tail_rays=(), lineality=()) -> Polyhedron:
    return Polyhedron.from_vrep(vertices, tail_rays, lineality)


def vrep_from_hrep(inequalities, equations=(), dim=None) -> Polyhedron:
    return Polyhedron.from_hrep(inequalities, equations, dim)


def minkowski_sum(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    if P.tail_key() != Q.tail_key():
        P_cone = Polyhedron.from_vrep([(0,) * P.dim], P.rays, P.lineality)
        Q_cone = Polyhedron.from_vrep([(0,) * Q.dim], Q.rays, Q.lineality)
        if not P_cone.same_set(Q_cone):
            raise TailMismatch("Minkowski sum of polyhedra with different tail cones")
    sums = {tuple(x + y for x, y in zip(u, v)) for u in P.vertices for v in Q.vertices}
    return Polyhedron.from_vrep(sorted(sums), P.rays, P.lineality, P.dim)


def truncate(P: Polyhedron, box: Polyhedron | None = None) -> Polyhedron:
    """Cut an unbounded polyhedron down to a polytope with a large box."""
    if box is None:
        box = default_truncation_box(P)
    if not box.is_bounded:
        raise UnboundedInput("truncation box must be bounded")
    for v in P.vertices:
        if not box.contains(v):
            raise BoxTooSmall(f"vertex {tuple(str(x) for x in v)} outside truncation box")
    return P.intersection(box)


def default_truncation_box(P: Polyhedron, factor: int = 2) -> Polyhedron:
    m = max((abs(x) for v in P.vertices for x in v), default=Fraction(0))
    R = factor * (ceil(m) + 1)
    return Polyhedron.box([-R] * P.dim, [R] * P.dim)


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone given by rays/lineality and by facet normals/equations."""

    dim: int
    rays: tuple
    lineality: tuple = ()
    facets: tuple = ()
    equations: tuple = ()

    @classmethod
    def from_rays(cls, rays, lineality=(), dim=None) -> "Cone":
        rays = [tuple(int(x) for x in r) for r in rays]
        lin = [tuple(int(x) for x in l) for l in lineality]
        dim = dim if dim is not None else len((rays or lin)[0])
        facets, eqs = double_description(rays, lin, dim)
        r2, l2 = double_description(facets, eqs, dim)
        return cls(dim, tuple(r2), tuple(l2), tuple(facets), tuple(eqs))

    @classmethod
    def from_inequalities(cls, facets, equations=(), dim=None) -> "Cone":
        facets = [tuple(int(x) for x in a) for a in facets]
        eqs = [tuple(int(x) for x in e) for e in equations]
        if dim is None:
            dim = len((facets or eqs)[0])
        rays, lin = double_description(facets, eqs, dim)
        f2, e2 = double_description(rays, lin, dim)
        return cls(dim, tuple(rays), tuple(lin), tuple(f2), tuple(e2))

    def contains(self, x) -> bool:
        return all(_dot(a, x) >= 0 for a in self.facets) and all(_dot(e, x) == 0 for e in self.equations)

    def contains_interior(self, x) -> bool:
        return all(_dot(a, x) > 0 for a in self.facets) and all(_dot(e, x) == 0 for e in self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def same_set(self, other: "Cone") -> bool:
        return (self.rays, _canonical_lineality(list(self.lineality))) == (
            other.rays,
            _canonical_lineality(list(other.lineality)),
        )


def dual_cone(c: Cone) -> Cone:
    return Cone(c.dim, c.facets, c.equations, c.rays, c.lineality)


@dataclass(frozen=True)
class FaceLattice:
    """All faces of a polytope as frozensets of vertex indices, with dimensions."""

    vertices: tuple
    faces: tuple  # frozensets, sorted by (dim, sorted indices); includes empty face
    dims: tuple
    facets: tuple  # vertex sets of facets

    @classmethod
    def of(cls, P: Polyhedron) -> "FaceLattice":
        verts = P.vertices
        full = frozenset(range(len(verts)))
        facet_sets = []
        for a, b in P.ineqs:
            facet_sets.append(frozenset(i for i, v in enumerate(verts) if _dot(a, v) == b))
        found = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for F in frontier:
                for G in facet_sets:
                    H = F & G
                    if H not in found:
                        found.add(H)
                        nxt.append(H)
            frontier = nxt
        found.add(frozenset())
        dims = {F: _affine_dim([verts[i] for i in F]) for F in found}
        order = sorted(found, key=lambda F: (dims[F], sorted(F)))
        return cls(verts, tuple(order), tuple(dims[F] for F in order), tuple(sorted(set(facet_sets), key=sorted)))

    def faces_of_dim(self, k: int) -> list[frozenset]:
        return [F for F, d in zip(self.faces, self.dims) if d == k]

    def f_vector(self) -> tuple:
        top = max(self.dims)
        return tuple(len(self.faces_of_dim(k)) for k in range(top + 1))

    def incidences(self) -> list[tuple[int, int]]:
        """Cover relations (i, j): face i is a facet of face j."""
        out = []
        for i, F in enumerate(self.faces):
            for j, G in enumerate(self.faces):
                if self.dims[j] == self.dims[i] + 1 and F < G:
                    out.append((i, j))
        return out


def _affine_dim(points) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    if not diffs:
        return 0
    den = 1
    for r in diffs:
        for x in r:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return rank([[int(x * den) for x in r] for r in diffs])


class PolytopalComplex:
    """A finite polytopal complex; each cell is the frozenset of its vertices."""

    def __init__(self, cells: Iterable[frozenset], dims: dict | None = None):
        cells = set(cells)
        cells.discard(frozenset())
        self.cells = frozenset(cells)
        self.dims = dims if dims is not None else {c: _affine_dim(sorted(c)) for c in self.cells}
        self.dims = {c: self.dims[c] for c in self.cells}

    @classmethod
    def from_polytope(cls, P: Polyhedron, boundary_only: bool = False) -> "PolytopalComplex":
        FL = P.face_lattice()
        top = max(FL.dims)
        cells, dims = [], {}
        for F, d in zip(FL.faces, FL.dims):
            if not F or (boundary_only and d == top):
                continue
            c = frozenset(FL.vertices[i] for i in F)
            cells.append(c)
            dims[c] = d
        return cls(cells, dims)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells, key=lambda c: (self.dims[c], sorted(c))))

    def __eq__(self, other):
        return isinstance(other, PolytopalComplex) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    @property
    def is_empty(self) -> bool:
        return not self.cells

    def is_closed(self) -> bool:
        """Every face of every cell is a cell (checked through vertex-set faces)."""
        for c in self.cells:
            if self.dims[c] <= 0:
                continue
            P = Polyhedron.from_vrep(sorted(c))
            for F in P.face_lattice().faces:
                if F and frozenset(P.vertices[i] for i in F) not in self.cells:
                    return False
        return True

    def support_contains(self, x) -> bool:
        for c in self.cells:
            if Polyhedron.from_vrep(sorted(c)).contains(x):
                return True
        return False

    def maximal_cells(self) -> list[frozenset]:
        return [c for c in self if not any(c < d for d in self.cells)]


def cell_meets(cell: frozenset, Q: Polyhedron) -> bool:
    """Exact LP: does conv(cell) intersect Q?"""
    pts = sorted(cell)
    k = len(pts)
    n = Q.dim
    A, b, E, f = [], [], [], []
    for a, beta in Q.ineqs:
        A.append([_dot(a, p) for p in pts])
        b.append(beta)
    for a, beta in Q.eqs:
        E.append([_dot(a, p) for p in pts])
        f.append(beta)
    E.append([1] * k)
    f.append(1)
    return lp.feasible(A, b, E, f, nvars=k, nonneg=True)


def disjoint_face_subcomplex(Xi: PolytopalComplex, Q: Polyhedron) -> PolytopalComplex:
    """Subcomplex of the cells of ``Xi`` that do not meet ``Q``."""
    meets = {}
    for c in sorted(Xi.cells, key=lambda c: (Xi.dims[c], sorted(c))):
        if Xi.dims[c] == 0:
            meets[c] = Q.contains(next(iter(c)))
            continue
        # a cell meets Q if any of its cells already does
        if any(meets.get(d) for d in meets if d < c):
            meets[c] = True
        else:
            meets[c] = cell_meets(c, Q)
    return PolytopalComplex([c for c in Xi.cells if not meets[c]], Xi.dims)
