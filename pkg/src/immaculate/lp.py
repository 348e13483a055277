"""Exact rational linear programming (two-phase simplex, Bland's rule).

Problems are small (tens of variables), so a dense tableau over
``Fraction`` is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    value: Fraction | None = None


def _pivot(T, obj, basis, r, c):
    row = T[r]
    p = row[c]
    if p != 1:
        inv = 1 / p
        row = [v * inv for v in row]
        T[r] = row
    nz = [j for j, v in enumerate(row) if v != 0]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f != 0:
                for j in nz:
                    other[j] -= f * row[j]
    f = obj[c]
    if f != 0:
        for j in nz:
            obj[j] -= f * row[j]
    basis[r] = c


def _simplex(T, obj, basis, allowed):
    """Maximise; ``obj`` holds reduced costs and ``-z`` in its last slot."""
    ncols = len(obj) - 1
    while True:
        enter = next((j for j in range(ncols) if allowed[j] and obj[j] > 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, obj, basis, best[1], enter)


def solve(
    A: Sequence[Sequence] = (),
    b: Sequence = (),
    E: Sequence[Sequence] = (),
    f: Sequence = (),
    c: Sequence | None = None,
    nvars: int | None = None,
    nonneg: bool = False,
) -> LPResult:
    """Maximise ``c.x`` subject to ``A x >= b`` and ``E x = f``.

    Variables are free unless ``nonneg`` is set.  With ``c`` omitted only
    feasibility is decided and some feasible point is returned.
    """
    if nvars is None:
        nvars = len(A[0]) if A else (len(E[0]) if E else (len(c) if c is not None else 0))
    nx = nvars if nonneg else 2 * nvars

    def expand(row):
        row = [Fraction(v) for v in row]
        return row if nonneg else row + [-v for v in row]

    rows = []
    for i, a in enumerate(A):
        rows.append((expand(a), Fraction(b[i]), True))
    for i, e in enumerate(E):
        rows.append((expand(e), Fraction(f[i]), False))
    m = len(rows)
    nslack = len(A)
    ncols = nx + nslack + m
    T = []
    s = 0
    for i, (coef, rhs, is_ineq) in enumerate(rows):
        line = coef + [Fraction(0)] * (nslack + m) + [rhs]
        if is_ineq:
            line[nx + s] = Fraction(-1)
            s += 1
        if rhs < 0:
            line = [-v for v in line]
        line[nx + nslack + i] = Fraction(1)
        T.append(line)
    basis = [nx + nslack + i for i in range(m)]
    obj = [Fraction(0)] * (ncols + 1)
    for line in T:
        for j in range(nx + nslack):
            obj[j] += line[j]
        obj[-1] += line[-1]
    allowed = [True] * ncols
    _simplex(T, obj, basis, allowed)
    if obj[-1] != 0:
        return LPResult(INFEASIBLE)
    # drive remaining artificials out of the basis
    art0 = nx + nslack
    keep = []
    for i in range(m):
        if basis[i] >= art0:
            col = next((j for j in range(art0) if T[i][j] != 0), None)
            if col is None:
                continue
            _pivot(T, obj, basis, i, col)
        keep.append(i)
    T = [T[i] for i in keep]
    basis = [basis[i] for i in keep]
    for j in range(art0, ncols):
        allowed[j] = False
    status = OPTIMAL
    value = None
    if c is not None:
        cc = expand(c) + [Fraction(0)] * (ncols - nx)
        obj = cc + [Fraction(0)]
        for i, bj in enumerate(basis):
            f_ = obj[bj]
            if f_ != 0:
                obj = [o - f_ * t for o, t in zip(obj, T[i])]
        status = _simplex(T, obj, basis, allowed)
        if status == UNBOUNDED:
            return LPResult(UNBOUNDED)
        value = -obj[-1]
    xs = [Fraction(0)] * ncols
    for i, bj in enumerate(basis):
        xs[bj] = T[i][-1]
    x = tuple(xs[:nvars]) if nonneg else tuple(xs[j] - xs[j + nvars] for j in range(nvars))
    return LPResult(status, x, value)


def feasible(A=(), b=(), E=(), f=(), nvars=None, nonneg=False) -> bool:
    return solve(A, b, E, f, nvars=nvars, nonneg=nonneg).status != INFEASIBLE
