"""Graded cohomology of torus-invariant divisors.

Two independent routes:

* fan side: the degree-m piece of H^i is the reduced cohomology in degree
  i - 1 of the subcomplex of the fan induced on the rays with
  <rho, m> < -lambda_rho (simplicial fans only);
* polytope side: D = D+ - D- with both nef, and the degree-m piece is the
  reduced cohomology of the faces of Delta- that miss Delta+ - m.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    IncompatibleFans,
    NonSimplicialFan,
    NotCartier,
    NotComplete,
    NotNef,
    UnboundedInput,
)
from .fan import (
    Fan,
    NefPair,
    ToricDivisor,
    _as_divisor,
    indices_of,
    is_cartier,
    is_nef,
    nef_decompose,
    section_polyhedron,
    support_function,
)
from .homology import Field, HomologyProfile, homology_of_facets, nerve_homology
from .linalg import kernel_basis, solve_rational
from .polyhedra import PolytopalComplex, Polyhedron, default_truncation_box


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class GradedCohomology:
    """Nonzero graded pieces (m, (h^0_m, ..., h^d_m)) in lexicographic order."""

    dim: int
    pieces: tuple

    @property
    def totals(self) -> tuple:
        return tuple(sum(h[i] for _, h in self.pieces) for i in range(self.dim + 1))

    def h(self, i: int) -> int:
        return self.totals[i] if 0 <= i <= self.dim else 0

    def at(self, m: Sequence[int]) -> tuple:
        m = tuple(m)
        for mm, h in self.pieces:
            if mm == m:
                return h
        return (0,) * (self.dim + 1)

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.totals))

    def as_dict(self) -> dict:
        return {
            "totals": list(self.totals),
            "degrees": [{"m": list(m), "h": list(h)} for m, h in self.pieces],
        }


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("IMMACULATE_THREADS", "1")))
    except ValueError:
        return 1


def _graded(dim: int, results: Iterable) -> GradedCohomology:
    pieces = sorted((m, h) for m, h in results if any(h))
    return GradedCohomology(dim, tuple(pieces))


def _h_from_profile(prof: HomologyProfile, dim: int, field: Field) -> tuple:
    # H^i_m = reduced H^{i-1}, i = 0..dim
    return tuple(prof.b(i - 1, field) for i in range(dim + 1))


# fan side


def _fan_cache(fan: Fan, key: str) -> dict:
    return fan.__dict__.setdefault(key, {})


def subset_profile(fan: Fan, mask: int) -> HomologyProfile:
    """Homology of the subcomplex spanned by the rays in ``mask``.

    The subcomplex has the subsets of ``mask`` lying in a common cone as
    faces.  For simplicial fans that is the induced subcomplex; in general
    it has the homotopy type of V^>(R) by the nerve theorem.
    """
    cache = _fan_cache(fan, "_subset_profiles")
    prof = cache.get(mask)
    if prof is None:
        prof = homology_of_facets(mask & c for c in fan.cone_masks)
        cache[mask] = prof
    return prof


def subset_betti(fan: Fan, mask: int, field: Field | str | None = None) -> tuple:
    """Reduced Betti numbers (dims -1 .. d-1) of the subcomplex on ``mask``.

    On a complete simplicial fan the complex is a (d-1)-sphere, so Alexander
    duality lets the smaller of ``mask`` and its complement do the work.
    """
    field = Field.parse(field)
    d = fan.dim
    comp = fan.full_mask ^ mask
    if fan.is_simplicial and fan.is_complete and bin(comp).count("1") < bin(mask).count("1"):
        dual = subset_profile(fan, comp)
        # b_k(R) = b_{d-2-k}(complement) over a field
        return tuple(dual.b(d - 2 - k, field) for k in range(-1, d))
    prof = subset_profile(fan, mask)
    return tuple(prof.b(k, field) for k in range(-1, d))


def negative_mask(fan: Fan, coeffs: Sequence[int], m: Sequence[int]) -> int:
    mask = 0
    for i, (r, l) in enumerate(zip(fan.rays, coeffs)):
        if _dot(r, m) < -l:
            mask |= 1 << i
    return mask


def cohomology_fan_side(D, fan: Fan | None = None, degrees: Iterable | None = None,
                        field: Field | str | None = None) -> GradedCohomology:
    if fan is None:
        fan = D.fan
    D = _as_divisor(fan, D)
    if not fan.is_simplicial:
        raise NonSimplicialFan("the fan-side method needs a simplicial fan")
    field = Field.parse(field)
    if degrees is None:
        degrees = degree_search_box(nef_decompose(D, fan)).lattice_points()
    d = fan.dim

    def piece(m):
        b = subset_betti(fan, negative_mask(fan, D.coeffs, m), field)
        # b[k + 1] is the reduced Betti number in dimension k
        return tuple(m), tuple(b[i] for i in range(d + 1))

    return _graded(d, _map(piece, [tuple(int(x) for x in m) for m in degrees]))


def _map(fn, items):
    n = _workers()
    if n == 1 or len(items) < 16:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# polytope side


def degree_search_box(pair: NefPair) -> Polyhedron:
    """Delta+ - Delta- with every facet pushed out by one lattice step."""
    P, Q = pair.plus, pair.minus
    if not (P.is_bounded and Q.is_bounded):
        raise UnboundedInput("degree box needs bounded polyhedra; pass degrees explicitly")
    sums = {tuple(x - y for x, y in zip(u, v)) for u in P.vertices for v in Q.vertices}
    S = Polyhedron.from_vrep(sorted(sums), dim=P.dim)
    if not S.ineqs:
        # a single point (or its affine span): thicken to a unit box
        c = S.vertices[0]
        return Polyhedron.box([x - 1 for x in c], [x + 1 for x in c])
    ineqs = [(a, b - 1) for a, b in S.ineqs]
    eqs_as_ineqs = []
    for a, b in S.eqs:
        eqs_as_ineqs.append((a, b - 1))
        eqs_as_ineqs.append((tuple(-x for x in a), -b - 1))
    return Polyhedron.from_hrep(ineqs + eqs_as_ineqs, dim=P.dim)


_CHUNK = 4096


class _PolytopeSide:
    """Precomputed data for one nef pair: cells of Delta- and Delta+ - cell."""

    def __init__(self, pair: NefPair, degrees: list | None):
        self.pair = pair
        plus, minus = pair.plus, pair.minus
        if plus.tail_key() != minus.tail_key():
            P_cone = Polyhedron.from_vrep([(0,) * plus.dim], plus.rays, plus.lineality)
            Q_cone = Polyhedron.from_vrep([(0,) * minus.dim], minus.rays, minus.lineality)
            if not P_cone.same_set(Q_cone):
                from .errors import TailMismatch

                raise TailMismatch("nef pair polyhedra have different tail cones")
        if not minus.is_bounded:
            if degrees is None:
                raise UnboundedInput("unbounded pair: pass the degrees to examine")
            minus = self._truncated(plus, minus, degrees)
        self.minus = minus
        self.X = PolytopalComplex.from_polytope(minus)
        self.cells = sorted(self.X.cells, key=lambda c: (self.X.dims[c], sorted(c)))
        self.meet_regions = []
        for c in self.cells:
            sums = {tuple(x - y for x, y in zip(u, v)) for u in plus.vertices for v in c}
            self.meet_regions.append(Polyhedron.from_vrep(sorted(sums), plus.rays, plus.lineality, plus.dim))
        self._cache: dict = {}

    @staticmethod
    def _truncated(plus, minus, degrees):
        pts = list(minus.vertices)
        for m in degrees:
            pts.extend(tuple(x - y for x, y in zip(v, m)) for v in plus.vertices)
        box = default_truncation_box(Polyhedron.from_vrep(pts))
        return minus.intersection(box)

    def profile(self, m) -> HomologyProfile:
        kept = frozenset(c for c, S in zip(self.cells, self.meet_regions) if not S.contains(m))
        return self._profile_of(kept)

    def _profile_of(self, kept: frozenset) -> HomologyProfile:
        prof = self._cache.get(kept)
        if prof is None:
            prof = nerve_homology(PolytopalComplex(kept, self.X.dims))
            self._cache[kept] = prof
        return prof

    def profiles(self, degrees: list) -> Iterator[HomologyProfile]:
        """profile(m) for every degree, with one integer membership pass per cell."""
        for start in range(0, len(degrees), _CHUNK):
            block = degrees[start:start + _CHUNK]
            hit = np.stack([S.contains_many(block) for S in self.meet_regions], axis=1)
            patterns, inverse = np.unique(hit, axis=0, return_inverse=True)
            profs = [self._profile_of(frozenset(c for c, h in zip(self.cells, row) if not h)) for row in patterns]
            for k in inverse.reshape(-1):
                yield profs[k]


def cohomology_polytope_side(pair: NefPair, degrees: Iterable | None = None,
                             field: Field | str | None = None) -> GradedCohomology:
    field = Field.parse(field)
    deg_list = None if degrees is None else [tuple(int(x) for x in m) for m in degrees]
    side = _PolytopeSide(pair, deg_list)
    if deg_list is None:
        deg_list = degree_search_box(pair).lattice_points()
    d = pair.plus.dim
    return _graded(d, [(m, _h_from_profile(prof, d, field)) for m, prof in zip(deg_list, side.profiles(deg_list))])


def cohomology(D, fan: Fan | None = None, method: str = "polytope", degrees=None,
               field: Field | str | None = None) -> GradedCohomology:
    if fan is None:
        fan = D.fan
    D = _as_divisor(fan, D)
    if method == "fan":
        return cohomology_fan_side(D, fan, degrees, field)
    return cohomology_polytope_side(nef_decompose(D, fan), degrees, field)


# immaculacy


def is_immaculate(fan: Fan, cls_: Sequence[int], method: str = "polytope",
                  field: Field | str | None = None) -> bool:
    """All cohomology of the class vanishes (complete fans only)."""
    if not fan.is_complete:
        raise NotComplete("immaculacy needs finite-dimensional cohomology")
    field = Field.parse(field)
    cls_ = tuple(int(x) for x in cls_)
    cache = _fan_cache(fan, "_immaculate")
    key = (cls_, method, field.p)
    if key in cache:
        return cache[key]
    D = ToricDivisor.from_class(fan, cls_)
    pair = nef_decompose(D, fan)
    degrees = degree_search_box(pair).lattice_points()
    result = True
    if method == "fan":
        for m in degrees:
            if any(subset_betti(fan, negative_mask(fan, D.coeffs, m), field)):
                result = False
                break
    else:
        side = _PolytopeSide(pair, None)
        for prof in side.profiles(degrees):
            if any(prof.betti(field)):
                result = False
                break
    cache[key] = result
    return result


# lines of immaculate classes


def _quotient_map(diffs: list, dim: int) -> list[tuple]:
    """Integer rows a_j with M / M' = Z^{rows} via m -> (<a_j, m>)."""
    if not diffs:
        return [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    den = 1
    for v in diffs:
        for x in v:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
    rows = [[int(Fraction(x) * den) for x in v] for v in diffs]
    return kernel_basis(rows)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def line_of_immaculates_test(d_minus, d_prime, fan: Fan) -> bool:
    """No relative-interior lattice point in the image of Delta- in M / M'.

    M' is the saturated span of the section polytope of D'.  For nef D-
    and nef Cartier D' this decides whether a*D' - D- is immaculate for
    every integer a.
    """
    Dm = _as_divisor(fan, d_minus)
    Dp = _as_divisor(fan, d_prime)
    if not is_nef(Dm, fan) or not is_nef(Dp, fan):
        raise NotNef("both divisors must be nef")
    if not is_cartier(Dp, fan):
        raise NotCartier("D' must be Cartier")
    Pp = section_polyhedron(Dp, fan)
    Pm = section_polyhedron(Dm, fan)
    v0 = Pp.vertices[0]
    diffs = [tuple(x - y for x, y in zip(v, v0)) for v in Pp.vertices[1:]]
    A = _quotient_map(diffs, fan.dim)
    if not A:
        # the quotient is zero; the image is the lattice point 0
        return False
    image = sorted({tuple(_dot(a, v) for a in A) for v in Pm.vertices})
    return not Polyhedron.from_vrep(image).interior_lattice_points()


# pullbacks


def pullback_class(p: Sequence[Sequence[int]], fan_x: Fan, fan_y: Fan, cls_y: Sequence[int]) -> tuple:
    """Class on X of the pullback of a class on Y along a compatible lattice map.

    ``p`` is the matrix of N_X -> N_Y (rows indexed by N_Y coordinates).
    """
    p = [tuple(int(x) for x in row) for row in p]
    images = [tuple(_dot(row, r) for row in p) for r in fan_x.rays]
    cone_of = []
    for c in fan_x.cones:
        gen_imgs = [images[i] for i in c]
        host = None
        for t, tc in zip(range(len(fan_y.cones)), fan_y.cones):
            gens = [fan_y.rays[i] for i in sorted(tc)]
            ok = True
            for v in gen_imgs:
                if not any(v):
                    continue
                x = solve_rational([[g[j] for g in gens] for j in range(fan_y.dim)], v)
                if x is None or any(xx < 0 for xx in x):
                    ok = False
                    break
            if ok:
                host = t
                break
        if host is None:
            raise IncompatibleFans(f"cone {sorted(c)} maps into no cone of the target")
        cone_of.append(host)
    D = ToricDivisor.from_class(fan_y, cls_y)
    sf = support_function(D, fan_y)
    lam = [None] * fan_x.nrays
    for c, t in zip(fan_x.cones, cone_of):
        u = sf.values[t]
        for i in c:
            lam[i] = -_dot(images[i], u)
    if any(Fraction(x).denominator != 1 for x in lam):
        raise NotCartier("pullback of a non-Cartier class is not integral")
    return fan_x.class_of([int(x) for x in lam])


def subset_label(mask: int) -> str:
    return "{" + ",".join(str(i) for i in indices_of(mask)) + "}"
