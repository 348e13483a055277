"""Fans, torus-invariant divisors and the class map.

A fan is stored as a list of primitive ray generators plus its maximal
cones (sets of ray indices).  Subsets of rays are handled as bitmasks over
the ray order whenever speed matters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from math import ceil, gcd
from pathlib import Path
from typing import Iterable, Sequence

from . import lp
from .errors import (
    EmptyPolyhedron,
    InvalidParameters,
    MalformedFan,
    NotQCartier,
    NotSemiprojective,
    TorusFactor,
)
from .linalg import (
    IntMatrix,
    QuotientLattice,
    cokernel,
    determinant,
    elementary_divisors,
    lattice_from_projection,
    primitive,
    rank,
    rational_nullspace,
    solve_integral,
    solve_rational,
)
from .polyhedra import Cone, Polyhedron, double_description


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class Fan:
    """A rational polyhedral fan given by rays and maximal cones.

    ``pi`` optionally fixes the coordinates of the class group: its rows
    are used verbatim as the projection from divisors to classes.
    """

    def __init__(self, rays: Sequence[Sequence[int]], maximal_cones: Sequence[Iterable[int]],
                 pi: Sequence[Sequence[int]] | None = None, name: str = ""):
        rays = [tuple(int(x) for x in r) for r in rays]
        if not rays:
            raise MalformedFan("fan has no rays")
        d = len(rays[0])
        for r in rays:
            if len(r) != d:
                raise MalformedFan("rays have different lengths")
            if not any(r):
                raise MalformedFan("zero ray")
            if primitive(r) != r:
                raise MalformedFan(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise MalformedFan("repeated ray")
        cones = []
        for c in maximal_cones:
            c = frozenset(int(i) for i in c)
            if not c or any(i < 0 or i >= len(rays) for i in c):
                raise MalformedFan(f"cone {sorted(c)} has bad ray indices")
            cones.append(c)
        if len(set(cones)) != len(cones):
            raise MalformedFan("repeated maximal cone")
        for a, b in combinations(cones, 2):
            if a <= b or b <= a:
                raise MalformedFan("a listed maximal cone is contained in another")
        used = set().union(*cones) if cones else set()
        if used != set(range(len(rays))):
            raise MalformedFan("every ray must lie in some maximal cone")
        self.rays = tuple(rays)
        self.dim = d
        self.cones = tuple(sorted(cones, key=lambda c: sorted(c)))
        self.name = name
        self._pi_override = None if pi is None else IntMatrix(pi)
        self.cone_masks = tuple(mask_of(c) for c in self.cones)
        for c in self.cones:
            self._check_strictly_convex(c)

    # construction helpers

    @classmethod
    def from_dict(cls, data: dict) -> "Fan":
        try:
            rays = data["rays"]
            cones = data["maximal_cones"]
        except (KeyError, TypeError) as exc:
            raise MalformedFan(f"fan description lacks {exc}") from None
        return cls(rays, cones, data.get("pi"), data.get("name", ""))

    @classmethod
    def from_json(cls, path: str | Path) -> "Fan":
        with open(path) as fh:
            data = json.load(fh)
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {"rays": [list(r) for r in self.rays], "maximal_cones": [sorted(c) for c in self.cones]}
        if self._pi_override is not None:
            out["pi"] = self._pi_override.tolist()
        if self.name:
            out["name"] = self.name
        return out

    def __repr__(self):
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, cones={len(self.cones)}{', ' + self.name if self.name else ''})"

    @property
    def nrays(self) -> int:
        return len(self.rays)

    @property
    def full_mask(self) -> int:
        return (1 << self.nrays) - 1

    def _check_strictly_convex(self, cone: frozenset):
        gens = [self.rays[i] for i in sorted(cone)]
        if rank(gens) == len(gens):
            return
        C = Cone.from_rays(gens, dim=self.dim)
        if C.lineality:
            raise MalformedFan(f"cone {sorted(cone)} is not strictly convex")
        if len(C.rays) != len(gens):
            raise MalformedFan(f"cone {sorted(cone)} lists a ray that is not extremal")

    # cone structure

    @cached_property
    def is_simplicial(self) -> bool:
        return all(rank([self.rays[i] for i in c]) == len(c) for c in self.cones)

    @cached_property
    def full_dimensional(self) -> bool:
        return all(rank([self.rays[i] for i in c]) == self.dim for c in self.cones)

    def _cone_facets(self, cone: frozenset) -> list[tuple[frozenset, tuple]]:
        """Facets of a full-dimensional cone as (ray subset, inner normal)."""
        idx = sorted(cone)
        gens = [self.rays[i] for i in idx]
        normals, _ = double_description(gens, (), self.dim)
        out = []
        for a in normals:
            out.append((frozenset(i for i in idx if _dot(a, self.rays[i]) == 0), tuple(a)))
        return out

    @cached_property
    def _facets(self) -> dict:
        return {c: self._cone_facets(c) for c in self.cones}

    @cached_property
    def face_masks(self) -> frozenset:
        """Bitmasks of the ray sets of all cones of the fan (including {0})."""
        out = {0}
        for c in self.cones:
            if rank([self.rays[i] for i in c]) == len(c):
                for k in range(len(c) + 1):
                    for S in combinations(sorted(c), k):
                        out.add(mask_of(S))
                continue
            Cn = Cone.from_rays([self.rays[i] for i in sorted(c)], dim=self.dim)
            tight = [mask_of(i for i in c if _dot(a, self.rays[i]) == 0) for a in Cn.facets]
            found = {mask_of(c)}
            frontier = [mask_of(c)]
            while frontier:
                nxt = []
                for F in frontier:
                    for G in tight:
                        H = F & G
                        if H not in found:
                            found.add(H)
                            nxt.append(H)
                frontier = nxt
            out |= found
        return frozenset(out)

    def is_face(self, mask: int) -> bool:
        """Whether the rays in ``mask`` are exactly the rays of some cone."""
        if self.is_simplicial:
            return any(mask & c == mask for c in self.cone_masks)
        return mask in self.face_masks

    def in_some_cone(self, mask: int) -> bool:
        return any(mask & c == mask for c in self.cone_masks)

    def _walls(self):
        """Map each wall (facet of a maximal cone) to the maximal cones containing it."""
        walls: dict[frozenset, list] = {}
        for c in self.cones:
            if self.is_simplicial:
                facets = [c - {i} for i in c]
            else:
                facets = [F for F, _ in self._facets[c]]
            for F in facets:
                walls.setdefault(F, []).append(c)
        return walls

    # validation

    def _pair_is_compatible(self, s: frozenset, t: frozenset) -> bool:
        common = s & t
        A, b, E, f = [], [], [], []
        for i in common:
            E.append(self.rays[i])
            f.append(0)
        for i in s - common:
            A.append(self.rays[i])
            b.append(1)
        for i in t - common:
            A.append([-x for x in self.rays[i]])
            b.append(1)
        return lp.feasible(A, b, E, f, nvars=self.dim)

    def _opposite_sides(self, wall: frozenset, s: frozenset, t: frozenset) -> bool:
        normals = rational_nullspace([self.rays[i] for i in wall], self.dim)
        if len(normals) != 1:
            return False
        n = normals[0]
        (a,) = s - wall
        (b,) = t - wall
        return _dot(n, self.rays[a]) * _dot(n, self.rays[b]) < 0

    def _generic_degree(self) -> int:
        """Number of maximal cones containing a generic interior point of the first cone."""
        c0 = sorted(self.cones[0])
        for shift in range(1, 50):
            p = [sum(Fraction(1, k + shift + 1) * self.rays[i][j] for k, i in enumerate(c0)) for j in range(self.dim)]
            count, ok = 0, True
            for c in self.cones:
                gens = [self.rays[i] for i in sorted(c)]
                x = solve_rational([[g[j] for g in gens] for j in range(self.dim)], p)
                if x is None:
                    continue
                if all(v > 0 for v in x):
                    count += 1
                elif all(v >= 0 for v in x):
                    ok = False
                    break
            if ok:
                return count
        raise MalformedFan("no generic point found")

    @cached_property
    def _validation(self) -> dict:
        walls = self._walls()
        pseudo = self.full_dimensional and all(len(v) == 2 for v in walls.values())
        if self.is_simplicial and pseudo and len(self.cones) > 30:
            for F, (s, t) in walls.items():
                if not self._opposite_sides(F, s, t):
                    raise MalformedFan("two maximal cones overlap across a wall")
            if self._generic_degree() != 1:
                raise MalformedFan("maximal cones overlap (covering degree is not 1)")
        else:
            for s, t in combinations(self.cones, 2):
                if not self._pair_is_compatible(s, t):
                    raise MalformedFan(
                        f"cones {sorted(s)} and {sorted(t)} do not meet in a common face"
                    )
        complete = pseudo
        simplicial = self.is_simplicial
        smooth = simplicial and all(
            set(elementary_divisors([self.rays[i] for i in sorted(c)])) <= {1} for c in self.cones
        )
        return {
            "complete": complete,
            "simplicial": simplicial,
            "smooth": smooth,
            "semiprojective": self._semiprojective(complete),
        }

    def validate(self) -> dict:
        """Check the fan axioms and report completeness, smoothness and so on.

        Raises MalformedFan when two cones fail to meet in a common face.
        """
        return dict(self._validation)

    @property
    def is_complete(self) -> bool:
        return self._validation["complete"]

    @property
    def is_smooth(self) -> bool:
        return self._validation["smooth"]

    @property
    def is_semiprojective(self) -> bool:
        return self._validation["semiprojective"]

    def _support_convex(self) -> bool:
        if not self.full_dimensional:
            return False
        walls = self._walls()
        for c in self.cones:
            for F, a in self._facets[c]:
                if len(walls.get(F, ())) == 1:
                    # boundary wall: every ray must lie on the inner side
                    if any(_dot(a, r) < 0 for r in self.rays):
                        return False
        return True

    def _semiprojective(self, complete: bool) -> bool:
        if rank(self.rays) < self.dim:
            return False
        if not complete and not self._support_convex():
            return False
        n = self.nrays
        if self.is_simplicial and self.full_dimensional:
            # strict convexity across every interior wall, phrased in lambda only
            A, b = [], []
            for F, cs in self._walls().items():
                if len(cs) != 2:
                    continue
                s, t = cs
                (extra,) = t - F
                idx = sorted(s) + [extra]
                (rel,) = rational_nullspace([[self.rays[i][j] for i in idx] for j in range(self.dim)], len(idx))
                row = [Fraction(0)] * n
                for i, v in zip(idx, rel):
                    row[i] = Fraction(v, rel[-1])
                A.append(row)
                b.append(1)
            if not A:
                return True
            if not self.has_torsion:
                # each wall functional kills the image of M, so it factors through pi
                r = self.class_rank
                lifts = [self.lift(tuple(int(i == k) for i in range(r))) for k in range(r)]
                rows = {tuple(sum(a * x for a, x in zip(row, l)) for l in lifts) for row in A}
                return lp.feasible(sorted(rows), [1] * len(rows), nvars=r)
            return lp.feasible(A, b, nvars=n)
        # general case: variables lambda then one u per maximal cone
        k = len(self.cones)
        nv = n + k * self.dim
        A, b, E, f = [], [], [], []
        for ci, c in enumerate(self.cones):
            for i, r in enumerate(self.rays):
                row = [0] * nv
                row[i] = 1
                for j in range(self.dim):
                    row[n + ci * self.dim + j] = r[j]
                if i in c:
                    E.append(row)
                    f.append(0)
                else:
                    A.append(row)
                    b.append(1)
        return lp.feasible(A, b, E, f, nvars=nv)

    # class group

    @cached_property
    def ray_matrix(self) -> IntMatrix:
        """rho^*: M -> Z^{Sigma(1)}, one row per ray."""
        return IntMatrix(self.rays)

    @cached_property
    def class_group(self) -> QuotientLattice:
        if rank(self.rays) < self.dim:
            raise TorusFactor("rays do not span N_R")
        rho = self.ray_matrix
        if self._pi_override is not None:
            pi = self._pi_override
            if pi.cols != self.nrays:
                raise MalformedFan("pi has the wrong number of columns")
            if any(any(row) for row in (pi @ rho).tolist()):
                raise MalformedFan("supplied pi does not annihilate the rays")
            if pi.rows != self.nrays - self.dim:
                raise MalformedFan("supplied pi has the wrong rank")
            if elementary_divisors(rho) != (1,) * self.dim:
                raise MalformedFan("supplied pi needs a torsion-free class group")
            try:
                return lattice_from_projection(pi, rho)
            except ValueError as exc:
                raise MalformedFan(str(exc)) from None
        return cokernel(rho)

    @property
    def pi(self) -> IntMatrix:
        return self.class_group.projection

    @property
    def class_rank(self) -> int:
        return self.class_group.free_rank

    @property
    def has_torsion(self) -> bool:
        return bool(self.class_group.torsion)

    def class_of(self, coeffs: Sequence[int]) -> tuple:
        if len(coeffs) != self.nrays:
            raise InvalidParameters("divisor needs one coefficient per ray")
        return self.class_group.class_of(coeffs)

    def lift(self, cls_: Sequence[int]) -> tuple:
        return self.class_group.lift(cls_)

    def pi_real(self, v: Sequence) -> tuple:
        """pi applied to a rational vector, free coordinates only."""
        P = self.pi.tolist()[: self.class_rank]
        return tuple(sum(Fraction(a) * Fraction(x) for a, x in zip(row, v)) for row in P)

    @cached_property
    def canonical_class(self) -> tuple:
        return self.class_of([-1] * self.nrays)

    def serre_dual(self, cls_: Sequence[int]) -> tuple:
        """K_X minus the class."""
        K = self.canonical_class
        out = [k - c for k, c in zip(K, cls_)]
        tors = self.class_group.torsion
        r = self.class_rank
        for i, m in enumerate(tors):
            out[r + i] %= m
        return tuple(out)

    # primitive collections

    @cached_property
    def primitive_collections(self) -> list[tuple]:
        n = self.nrays
        out = []
        # minimal subsets lying in no cone; sizes are at most dim + 1 for simplicial fans
        nonfaces_small: list[int] = []
        for k in range(1, n + 1):
            level = []
            for S in combinations(range(n), k):
                m = mask_of(S)
                if any(p & m == p for p in nonfaces_small):
                    continue
                if not self.in_some_cone(m):
                    level.append(m)
            nonfaces_small.extend(level)
            out.extend(level)
            if k > self.dim + 1 and self.is_simplicial:
                break
        return sorted((indices_of(m) for m in out), key=lambda t: (len(t), t))

    # automorphisms

    @cached_property
    def automorphisms(self) -> list[tuple]:
        return fan_automorphisms(self)


def primitive_collections(fan: Fan) -> list[tuple]:
    return list(fan.primitive_collections)


def validate(fan: Fan) -> dict:
    return fan.validate()


def class_map(fan: Fan) -> tuple[IntMatrix, QuotientLattice]:
    return fan.pi, fan.class_group


def serre_dual(fan: Fan, cls_: Sequence[int]) -> tuple:
    return fan.serre_dual(cls_)


def canonical_class(fan: Fan) -> tuple:
    return fan.canonical_class


# divisors


@dataclass(frozen=True)
class ToricDivisor:
    fan: Fan = field(compare=False)
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(x) for x in self.coeffs))
        if len(self.coeffs) != self.fan.nrays:
            raise InvalidParameters("divisor needs one coefficient per ray")

    @classmethod
    def from_class(cls, fan: Fan, cls_: Sequence[int]) -> "ToricDivisor":
        return cls(fan, fan.lift(cls_))

    @property
    def class_(self) -> tuple:
        return self.fan.class_of(self.coeffs)

    def __add__(self, other: "ToricDivisor") -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ToricDivisor") -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__


def _as_divisor(fan: Fan, D) -> ToricDivisor:
    if isinstance(D, ToricDivisor):
        return D
    return ToricDivisor(fan, tuple(D))


@dataclass(frozen=True)
class SupportFunction:
    """One rational vector u_sigma per maximal cone with <rho, u_sigma> = -lambda_rho."""

    fan: Fan = field(compare=False)
    values: tuple  # aligned with fan.cones

    def at(self, a: Sequence) -> Fraction:
        """Evaluate at a point of the support (uses any cone containing it)."""
        for c, u in zip(self.fan.cones, self.values):
            gens = [self.fan.rays[i] for i in sorted(c)]
            x = solve_rational([[g[j] for g in gens] for j in range(self.fan.dim)], a)
            if x is not None and all(v >= 0 for v in x):
                return _dot(a, u)
        raise ValueError("point outside the support of the fan")


def support_function(D, fan: Fan | None = None) -> SupportFunction:
    if fan is None:
        fan = D.fan
    D = _as_divisor(fan, D)
    vals = []
    for c in fan.cones:
        idx = sorted(c)
        u = solve_rational([fan.rays[i] for i in idx], [-D.coeffs[i] for i in idx])
        if u is None:
            raise NotQCartier(f"no linear function on cone {idx}")
        vals.append(u)
    return SupportFunction(fan, tuple(vals))


def is_q_cartier(D, fan: Fan | None = None) -> bool:
    try:
        support_function(D, fan)
    except NotQCartier:
        return False
    return True


def is_cartier(D, fan: Fan | None = None) -> bool:
    if fan is None:
        fan = D.fan
    D = _as_divisor(fan, D)
    support_function(D, fan)
    for c in fan.cones:
        idx = sorted(c)
        if solve_integral([fan.rays[i] for i in idx], [-D.coeffs[i] for i in idx]) is None:
            return False
    return True


def section_polyhedron(D, fan: Fan | None = None) -> Polyhedron | None:
    """{r : <rho, r> >= -lambda_rho for all rho}, or None when empty."""
    if fan is None:
        fan = D.fan
    D = _as_divisor(fan, D)
    try:
        return Polyhedron.from_hrep([(r, -l) for r, l in zip(fan.rays, D.coeffs)], dim=fan.dim)
    except EmptyPolyhedron:
        return None


def is_nef(D, fan: Fan | None = None) -> bool:
    """Every u_sigma lies in the section polyhedron (concave support function)."""
    if fan is None:
        fan = D.fan
    D = _as_divisor(fan, D)
    sf = support_function(D, fan)
    for c, u in zip(fan.cones, sf.values):
        if len(c) == fan.dim and rank([fan.rays[i] for i in c]) == fan.dim:
            if any(_dot(r, u) < -l for r, l in zip(fan.rays, D.coeffs)):
                return False
            continue
        # u_sigma is not unique on lower-dimensional cones; ask for any good choice
        A = [r for i, r in enumerate(fan.rays) if i not in c]
        b = [-D.coeffs[i] for i in range(fan.nrays) if i not in c]
        E = [fan.rays[i] for i in sorted(c)]
        f = [-D.coeffs[i] for i in sorted(c)]
        if not lp.feasible(A, b, E, f, nvars=fan.dim):
            return False
    return True


# nef cone and decompositions


def _cone_hrep(rays: list, dim: int):
    facets, eqs = double_description(rays, (), dim)
    return facets, eqs


@dataclass(frozen=True)
class NefCone:
    rays: tuple  # primitive generators in free class coordinates
    facets: tuple
    equations: tuple

    def contains(self, x) -> bool:
        return all(_dot(a, x) >= 0 for a in self.facets) and all(_dot(e, x) == 0 for e in self.equations)


def nef_cone(fan: Fan) -> NefCone:
    """Intersection over maximal cones of cone{pi(e_rho) : rho not in sigma}."""
    if "nef" in fan.__dict__:
        return fan.__dict__["nef"]
    r = fan.class_rank
    cols = [fan.pi_real([int(i == j) for j in range(fan.nrays)]) for i in range(fan.nrays)]
    cols = [tuple(int(x) for x in c) for c in cols]
    ineqs, eqs = [], []
    for c in fan.cones:
        gens = [cols[i] for i in range(fan.nrays) if i not in c]
        if not gens:
            f, e = [], [tuple(int(i == j) for j in range(r)) for i in range(r)]
        else:
            f, e = _cone_hrep(gens, r)
        ineqs.extend(f)
        eqs.extend(e)
    rays, lin = double_description(ineqs, eqs, r)
    if lin:
        raise NotSemiprojective("nef cone contains a line")
    facets, equations = double_description(rays, (), r) if rays else ((), tuple(
        tuple(int(i == j) for j in range(r)) for i in range(r)))
    out = NefCone(tuple(sorted(rays)), tuple(facets), tuple(equations))
    fan.__dict__["nef"] = out
    return out


def ample_class(fan: Fan) -> tuple:
    """Sum of the primitive generators of the nef cone."""
    N = nef_cone(fan)
    if N.equations:
        raise NotSemiprojective("nef cone is not full-dimensional")
    s = [sum(r[i] for r in N.rays) for i in range(fan.class_rank)]
    return tuple(s) + (0,) * len(fan.class_group.torsion)


def class_is_nef(fan: Fan, cls_: Sequence[int]) -> bool:
    return is_nef(ToricDivisor.from_class(fan, cls_))


@dataclass(frozen=True)
class NefPair:
    """D = D_plus - D_minus (as divisors) with both nef, plus their polyhedra."""

    plus: Polyhedron
    minus: Polyhedron
    d_plus: tuple
    d_minus: tuple

    @property
    def divisor(self) -> tuple:
        return tuple(a - b for a, b in zip(self.d_plus, self.d_minus))


def nef_decompose(D, fan: Fan | None = None) -> NefPair:
    """Split D as D+ - D- with D- = c * A for the fixed ample class A.

    c is the least non-negative integer making D + c * A nef.
    """
    if fan is None:
        fan = D.fan
    D = _as_divisor(fan, D)
    if not fan.is_semiprojective:
        raise NotSemiprojective("nef decompositions need a semiprojective fan")
    support_function(D, fan)
    A = ample_class(fan)
    N = nef_cone(fan)
    x = D.class_[: fan.class_rank]
    a = A[: fan.class_rank]
    c = 0
    for f in N.facets:
        fa = _dot(f, a)
        fx = _dot(f, x)
        if fx < 0:
            c = max(c, ceil(Fraction(-fx, fa)))
    while not class_is_nef(fan, tuple(xi + c * ai for xi, ai in zip(D.class_, A))):
        # only reachable for torsion classes or Q-Cartier subtleties
        c += 1
    minus = fan.lift(tuple(c * ai for ai in A))
    plus = tuple(p + m for p, m in zip(D.coeffs, minus))
    return make_pair(fan, plus, minus)


def make_pair(fan: Fan, d_plus: Sequence[int], d_minus: Sequence[int]) -> NefPair:
    P = section_polyhedron(d_plus, fan)
    Q = section_polyhedron(d_minus, fan)
    assert P is not None and Q is not None, "nef divisors have nonempty polyhedra"
    return NefPair(P, Q, tuple(d_plus), tuple(d_minus))


# automorphisms


@dataclass(frozen=True)
class FanAutomorphism:
    matrix: tuple  # rows of g acting on N (column vectors)
    permutation: tuple  # ray i goes to ray permutation[i]
    class_action: IntMatrix


def fan_automorphisms(fan: Fan) -> list[FanAutomorphism]:
    """All lattice automorphisms permuting rays and maximal cones.

    Images of a basis drawn from the rays are tried exhaustively.
    """
    d = fan.dim
    basis = None
    for S in combinations(range(fan.nrays), d):
        if determinant([fan.rays[i] for i in S]) != 0:
            basis = S
            break
    if basis is None:
        return []
    B = [fan.rays[i] for i in basis]  # rows
    ray_index = {r: i for i, r in enumerate(fan.rays)}
    cone_set = set(fan.cone_masks)
    out = []
    for images in permutations(range(fan.nrays), d):
        C = [fan.rays[i] for i in images]
        # g with g(B_k) = C_k: g = C^T (B^T)^{-1}, solve row by row
        g = []
        ok = True
        for j in range(d):
            row = solve_rational(B, [c[j] for c in C])
            if row is None or any(x.denominator != 1 for x in row):
                ok = False
                break
            g.append(tuple(int(x) for x in row))
        if not ok or abs(determinant(g)) != 1:
            continue
        perm = []
        for r in fan.rays:
            img = tuple(_dot(row, r) for row in g)
            if img not in ray_index:
                ok = False
                break
            perm.append(ray_index[img])
        if not ok:
            continue
        if {mask_of(perm[i] for i in c) for c in fan.cones} != cone_set:
            continue
        out.append(FanAutomorphism(tuple(g), tuple(perm), _class_action(fan, perm)))
    out.sort(key=lambda a: a.permutation)
    return out


def _class_action(fan: Fan, perm: Sequence[int]) -> IntMatrix:
    QL = fan.class_group
    k = QL.free_rank + len(QL.torsion)
    cols = []
    for j in range(k):
        e = [int(i == j) for i in range(k)]
        lam = QL.lift(e)
        moved = [0] * fan.nrays
        for i, v in enumerate(lam):
            moved[perm[i]] = v
        cols.append(QL.class_of(moved))
    return IntMatrix.from_columns(cols, k)


def act_on_class(aut: FanAutomorphism, fan: Fan, cls_: Sequence[int]) -> tuple:
    out = aut.class_action @ tuple(cls_)
    tors = fan.class_group.torsion
    r = fan.class_rank
    return tuple(v if i < r else v % tors[i - r] for i, v in enumerate(out))


def gale_smoothness_check(fan: Fan) -> bool:
    """|det| of each maximal cone equals |det| of the complementary pi columns."""
    P = fan.pi.tolist()[: fan.class_rank]
    for c in fan.cones:
        comp = [i for i in range(fan.nrays) if i not in c]
        a = abs(determinant([fan.rays[i] for i in sorted(c)]))
        b = abs(determinant([[row[i] for i in comp] for row in P]))
        if a != b:
            return False
    return True
