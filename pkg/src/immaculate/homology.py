"""Reduced simplicial homology with integral torsion bookkeeping.

Ranks over Q come from the elementary divisors of the boundary maps, and
ranks over GF(p) follow from the same divisors (drop those divisible by
p), so one integral computation answers every coefficient field.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import _backend
from .linalg import elementary_divisors
from .polyhedra import PolytopalComplex


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``p == 0`` means the rationals."""

    p: int = 0

    @classmethod
    def parse(cls, text: str | "Field" | None) -> "Field":
        if text is None:
            return cls(0)
        if isinstance(text, Field):
            return text
        t = str(text).strip().lower()
        if t in ("q", "qq", "rational", "0"):
            return cls(0)
        if t.startswith("gf:") or t.startswith("gf"):
            p = int(t.split(":", 1)[1] if ":" in t else t[2:])
            if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise ValueError(f"GF({p}) is not a prime field")
            return cls(p)
        raise ValueError(f"unknown field {text!r}")

    def __str__(self):
        return "Q" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers over Q for dimensions -1, 0, ..., top.

    ``divisors[k + 1]`` lists the nonzero elementary divisors of the
    boundary map out of dimension ``k``; ``torsion[k + 1]`` holds the
    divisors above 1 of the map into dimension ``k``, i.e. the torsion of
    the integral reduced homology in dimension ``k``.
    """

    sizes: tuple
    divisors: tuple

    @property
    def top(self) -> int:
        return len(self.sizes) - 2

    def _rank(self, k: int, p: int) -> int:
        # rank of boundary map C_k -> C_{k-1}
        if k < 0 or k + 1 >= len(self.divisors):
            return 0
        ds = self.divisors[k + 1]
        return len(ds) if p == 0 else sum(1 for d in ds if d % p)

    def betti(self, field: Field | str | None = None) -> tuple:
        p = Field.parse(field).p
        return tuple(
            self.sizes[k + 1] - self._rank(k, p) - self._rank(k + 1, p) for k in range(-1, self.top + 1)
        )

    def b(self, k: int, field: Field | str | None = None) -> int:
        if k < -1 or k > self.top:
            return 0
        return self.betti(field)[k + 1]

    @property
    def torsion(self) -> tuple:
        return tuple(
            tuple(d for d in (self.divisors[k + 2] if k + 2 < len(self.divisors) else ()) if d > 1)
            for k in range(-1, self.top + 1)
        )

    def is_acyclic(self, field: Field | str | None = None) -> bool:
        return not any(self.betti(field))

    def as_dict(self, field: Field | str | None = None) -> dict:
        bet = self.betti(field)
        return {
            "field": str(Field.parse(field)),
            "betti": {str(k): bet[k + 1] for k in range(-1, self.top + 1) if bet[k + 1]},
            "torsion": {str(k): list(t) for k, t in zip(range(-1, self.top + 1), self.torsion) if t},
        }


class SimplicialComplex:
    """Abstract simplicial complex given by its faces (sorted vertex tuples)."""

    def __init__(self, faces: Iterable[Sequence[int]]):
        fs = {tuple(sorted(f)) for f in faces}
        fs.discard(())
        self.faces = frozenset(fs)

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]]) -> "SimplicialComplex":
        fs = set()
        for F in facets:
            F = tuple(sorted(F))
            if F in fs:
                continue
            for k in range(1, len(F) + 1):
                fs.update(combinations(F, k))
        return cls(fs)

    @property
    def vertices(self) -> list[int]:
        return sorted({v for f in self.faces for v in f})

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    def is_empty(self) -> bool:
        return not self.faces

    def induced(self, vertices: Iterable[int]) -> "SimplicialComplex":
        vs = set(vertices)
        return SimplicialComplex(f for f in self.faces if vs.issuperset(f))

    def facets(self) -> list[tuple]:
        out = []
        for f in sorted(self.faces, key=len, reverse=True):
            if not any(set(f) < set(g) for g in out):
                out.append(f)
        return sorted(out)


def order_complex(X: PolytopalComplex) -> SimplicialComplex:
    """Barycentric subdivision: chains of cells ordered by inclusion."""
    cells = list(X)
    index = {c: i for i, c in enumerate(cells)}
    above = {i: [index[d] for d in cells if c < d] for i, c in enumerate(cells)}
    chains = []

    def grow(chain):
        chains.append(tuple(chain))
        for j in above[chain[-1]]:
            chain.append(j)
            grow(chain)
            chain.pop()

    for i in range(len(cells)):
        grow([i])
    return SimplicialComplex(chains)


def _boundary_divisors(lower: list, upper: list) -> tuple:
    """Elementary divisors of the boundary map from ``upper`` faces to ``lower``."""
    if not upper or not lower:
        return ()
    idx = {f: i for i, f in enumerate(lower)}
    rows = []
    for f in upper:
        if len(f) == 1:
            rows.append({0: 1})
            continue
        r = {}
        for i in range(len(f)):
            r[idx[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
        rows.append(r)
    count, rest = _backend.unit_eliminate(rows, len(lower))
    if not rest:
        return (1,) * count
    cols = sorted({c for r in rest for c in r})
    cpos = {c: j for j, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for c, v in r.items():
            dense[i][cpos[c]] = v
    return (1,) * count + tuple(sorted(elementary_divisors(dense)))


def simplicial_homology(K: SimplicialComplex) -> HomologyProfile:
    by_dim: dict[int, list] = {}
    for f in K.faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    top = max(by_dim, default=-1)
    layers = [[()]] + [sorted(by_dim.get(k, [])) for k in range(top + 1)]
    sizes = tuple(len(layer) for layer in layers)
    divisors = [()]  # nothing leaves dimension -1
    for k in range(top + 1):
        divisors.append(_boundary_divisors(layers[k], layers[k + 1]))
    return HomologyProfile(sizes, tuple(divisors))


def reduced_homology(complex_, field: Field | str | None = None, method: str = "order") -> HomologyProfile:
    """Reduced homology of a polytopal or simplicial complex.

    Polytopal complexes are replaced by their order complex (``method``
    "order") or by the vertex complex of their maximal cells ("nerve").
    The result carries integral data; ask it for Betti numbers over any
    field.
    """
    if isinstance(complex_, PolytopalComplex):
        if method == "nerve":
            return nerve_homology(complex_)
        if complex_.is_empty:
            return _EMPTY
        return simplicial_homology(order_complex(complex_))
    return simplicial_homology(complex_)


def is_k_acyclic(complex_, field: Field | str | None = None) -> bool:
    return reduced_homology(complex_).is_acyclic(field)


_POINT = HomologyProfile((1, 1), ((), (1,)))
_EMPTY = HomologyProfile((1,), ((),))


def _maximal(masks: Iterable[int]) -> list[int]:
    ms = sorted(set(masks), key=lambda m: -bin(m).count("1"))
    out: list[int] = []
    for m in ms:
        if not any(m & o == m for o in out):
            out.append(m)
    return out


def strong_core(facets: Iterable[int]) -> list[int]:
    """Remove dominated vertices until none is left (a strong collapse).

    Facets are vertex bitmasks.  A vertex v is dominated when all facets
    through v share another vertex w; deleting v keeps the homotopy type.
    """
    F = _maximal(m for m in facets if m)
    changed = True
    while changed and len(F) > 1:
        changed = False
        verts = 0
        for m in F:
            verts |= m
        v = verts
        while v:
            low = v & -v
            v ^= low
            common = -1
            for m in F:
                if m & low:
                    common &= m
            if common & ~low:
                F = _maximal(m & ~low for m in F)
                changed = True
                break
    return F


def homology_of_facets(facets: Iterable[int]) -> HomologyProfile:
    """Reduced homology of the complex generated by bitmask facets."""
    core = strong_core(facets)
    if not core:
        return _EMPTY
    if len(core) == 1:
        return _POINT
    return simplicial_homology(SimplicialComplex.from_facets(_bits(m) for m in core))


def _bits(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def nerve_homology(X: PolytopalComplex) -> HomologyProfile:
    """Same homotopy type as the complex, via its vertex sets of maximal cells.

    Cells of a polytopal complex meet in common faces, so a set of maximal
    cells has a common point exactly when it has a common vertex.
    """
    if X.is_empty:
        return _EMPTY
    index: dict = {}
    facets = []
    for c in X.maximal_cells():
        m = 0
        for v in c:
            m |= 1 << index.setdefault(v, len(index))
        facets.append(m)
    return homology_of_facets(facets)
