"""Exact integer and rational linear algebra.

All arithmetic is on Python ``int`` and ``fractions.Fraction``, so there is
no overflow anywhere.  Matrices are small dense row-major tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        table = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            cols = len(table[0]) if table else 0
        for row in table:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(table)
        self.cols = cols
        self._data = table

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(([0] * cols for _ in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(zip(*columns), len(columns))

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self._data for x in row)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.cols == other.cols and self._data == other._data

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self._data), self.rows) if self.cols else IntMatrix.zeros(0, self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ocols = [other.column(j) for j in range(other.cols)]
            return IntMatrix(([sum(a * b for a, b in zip(row, c)) for c in ocols] for row in self._data), other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self._data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(([self._data[i][j] for j in cols] for i in rows), len(cols))


def as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    divisors: tuple
    U_inv: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.divisors)


def _smallest_pivot(S, t, m, n):
    best = None
    for i in range(t, m):
        row = S[i]
        for j in range(t, n):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(A) -> SmithDecomposition:
    """Return U, S, V with ``U @ A @ V == S`` in Smith normal form.

    Pivot rule: smallest nonzero absolute value in the remaining block,
    ties broken by lowest row then lowest column.  This keeps outputs
    reproducible across runs.
    """
    A = as_matrix(A)
    m, n = A.rows, A.cols
    S = A.tolist()
    U = IntMatrix.identity(m).tolist()
    Ui = IntMatrix.identity(m).tolist()  # inverse of U, updated by column ops
    V = IntMatrix.identity(n).tolist()

    def row_swap(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]
        for r in Ui:
            r[i], r[k] = r[k], r[i]

    def col_swap(j, k):
        for r in S:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def row_addmul(i, k, q):
        # row_i -= q * row_k
        Si, Sk = S[i], S[k]
        for c in range(n):
            if Sk[c]:
                Si[c] -= q * Sk[c]
        Ui_, Uk = U[i], U[k]
        for c in range(m):
            if Uk[c]:
                Ui_[c] -= q * Uk[c]
        for r in Ui:
            if r[i]:
                r[k] += q * r[i]

    def col_addmul(j, k, q):
        # col_j -= q * col_k
        for r in S:
            if r[k]:
                r[j] -= q * r[k]
        for r in V:
            if r[k]:
                r[j] -= q * r[k]

    t = 0
    divisors = []
    while t < min(m, n):
        piv = _smallest_pivot(S, t, m, n)
        if piv is None:
            break
        while True:
            _, pi, pj = piv
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    row_addmul(i, t, S[i][t] // p)
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    col_addmul(j, t, S[t][j] // p)
                    dirty = dirty or S[t][j] != 0
            if dirty:
                piv = _smallest_pivot(S, t, m, n)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and redo the block
            row_addmul(t, bad, -1)
            piv = _smallest_pivot(S, t, m, n)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
            for r in Ui:
                r[t] = -r[t]
        divisors.append(S[t][t])
        t += 1
    return SmithDecomposition(
        IntMatrix(U, m), IntMatrix(S, n), IntMatrix(V, n), tuple(divisors), IntMatrix(Ui, m)
    )


def elementary_divisors(A) -> tuple:
    return smith_normal_form(A).divisors


def rank(A) -> int:
    """Rank over the rationals by fraction-free elimination."""
    A = as_matrix(A)
    return len(_echelon_rows(A.tolist()))


def _echelon_rows(M):
    """Bareiss-style integer echelon form; returns the nonzero rows."""
    M = [list(r) for r in M]
    if not M:
        return []
    ncols = len(M[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                a, b = M[r][c], M[i][c]
                M[i] = [(a * x - b * y) // prev for x, y in zip(M[i], M[r])]
            else:
                M[i] = [(M[r][c] * x) // prev for x in M[i]]
        prev = M[r][c]
        r += 1
        if r == len(M):
            break
    return [row for row in M[:r]]


def determinant(A) -> int:
    A = as_matrix(A)
    if A.rows != A.cols:
        raise ValueError("determinant of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def primitive(v: Sequence) -> tuple:
    """Scale a rational vector to the primitive integer vector on its ray."""
    if all(type(x) is int for x in v):
        w = v
    else:
        v = [Fraction(x) for x in v]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return tuple(w)
    return tuple(x // g for x in w)


def kernel_basis(A) -> list[tuple]:
    """Integer basis of the lattice {x in Z^cols : A x = 0}."""
    A = as_matrix(A)
    if A.rows == 0:
        return [tuple(int(i == j) for j in range(A.cols)) for i in range(A.cols)]
    snf = smith_normal_form(A)
    r = snf.rank
    return [snf.V.column(j) for j in range(r, A.cols)]


def rational_nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Primitive integer vectors spanning the rational kernel of ``rows``."""
    # fraction-free elimination; each row is kept primitive
    M = []
    for r in rows:
        w = primitive(r) if any(isinstance(x, Fraction) for x in r) else tuple(int(x) for x in r)
        if any(w):
            M.append(list(w))
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        p = pr[c]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                row = [p * x - f * y for x, y in zip(M[i], pr)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                M[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        L = 1
        for i, pc in enumerate(pivots):
            if M[i][f]:
                d = abs(M[i][pc])
                L = L * d // gcd(L, d)
        v = [0] * ncols
        v[f] = L
        for i, pc in enumerate(pivots):
            if M[i][f]:
                v[pc] = -M[i][f] * L // M[i][pc]
        basis.append(primitive(v))
    return basis


def solve_rational(A: Sequence[Sequence], b: Sequence) -> tuple | None:
    """One rational solution of A x = b, or None when inconsistent."""
    rows = len(A)
    ncols = len(A[0]) if rows else 0
    M = []
    for i in range(rows):
        row = list(A[i]) + [b[i]]
        M.append(list(primitive(row)) if any(not isinstance(x, int) for x in row) else [int(x) for x in row])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        p = pr[c]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                row = [p * x - f * y for x, y in zip(M[i], pr)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                M[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
    if any(M[i][ncols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = Fraction(M[i][ncols], M[i][c])
    return tuple(x)


def solve_integral(A, b: Sequence[int]) -> tuple | None:
    """One integer solution of A x = b, or None if there is none."""
    A = as_matrix(A)
    b = tuple(int(x) for x in b)
    if len(b) != A.rows:
        raise ValueError("shape mismatch")
    snf = smith_normal_form(A)
    c = snf.U @ b
    y = [0] * A.cols
    for i, s in enumerate(snf.divisors):
        if c[i] % s:
            return None
        y[i] = c[i] // s
    if any(c[i] for i in range(snf.rank, A.rows)):
        return None
    return snf.V @ y


@dataclass(frozen=True)
class QuotientLattice:
    """The group Z^ambient / im(relations) with canonical coordinates.

    Coordinates of a class are the free part first, then one residue per
    torsion summand reduced into ``[0, modulus)``.
    """

    ambient: int
    relations: IntMatrix
    projection: IntMatrix  # rows: free coordinates, then torsion coordinates
    section: IntMatrix  # columns lift each coordinate back to Z^ambient
    free_rank: int
    torsion: tuple

    @property
    def rank(self) -> int:
        return self.free_rank

    def class_of(self, x: Sequence[int]) -> tuple:
        raw = self.projection @ tuple(x)
        free = raw[: self.free_rank]
        tors = tuple(v % m for v, m in zip(raw[self.free_rank:], self.torsion))
        return tuple(free) + tors

    def lift(self, c: Sequence[int]) -> tuple:
        c = tuple(int(v) for v in c)
        if len(c) != self.free_rank + len(self.torsion):
            raise ValueError("class has wrong number of coordinates")
        return self.section @ c

    def contains_zero(self, x: Sequence[int]) -> bool:
        return not any(self.class_of(x))


def cokernel(A) -> QuotientLattice:
    """Return Z^rows / im(A)."""
    A = as_matrix(A)
    m = A.rows
    snf = smith_normal_form(A)
    r = snf.rank
    free_idx = list(range(r, m))
    tors_idx = [i for i, s in enumerate(snf.divisors) if s > 1]
    order = free_idx + tors_idx
    projection = IntMatrix((snf.U.row(i) for i in order), m)
    section = IntMatrix.from_columns([snf.U_inv.column(i) for i in order], m) if order else IntMatrix.zeros(m, 0)
    return QuotientLattice(
        ambient=m,
        relations=A,
        projection=projection,
        section=section,
        free_rank=len(free_idx),
        torsion=tuple(snf.divisors[i] for i in tors_idx),
    )


def lattice_from_projection(pi, relations) -> QuotientLattice:
    """Quotient lattice whose coordinates are given by a fixed matrix ``pi``.

    ``pi`` must be surjective onto Z^rows with kernel exactly im(relations);
    the caller checks exactness.
    """
    pi = as_matrix(pi)
    relations = as_matrix(relations)
    snf = smith_normal_form(pi)
    if snf.divisors != (1,) * pi.rows:
        raise ValueError("class map is not surjective")
    # x = V[:, :k] e solves pi x = e because U pi V = [I 0] and U is unimodular
    cols = []
    for i in range(pi.rows):
        e = [int(i == j) for j in range(pi.rows)]
        cols.append(solve_integral(pi, e))
    section = IntMatrix.from_columns(cols, pi.cols)
    return QuotientLattice(pi.cols, relations, pi, section, pi.rows, ())


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[tuple]:
    """Row-style Hermite normal form (nonzero rows only), used for canonical spans."""
    M = [list(r) for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(M[i][c]), i))
            M[r], M[piv] = M[piv], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < len(M) and M[r][c]:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [x - q * y for x, y in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    return [tuple(row) for row in M[:r]]
