from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from immaculate.linalg import (
    IntMatrix,
    cokernel,
    determinant,
    elementary_divisors,
    hermite_rows,
    kernel_basis,
    primitive,
    rank,
    rational_nullspace,
    smith_normal_form,
    solve_integral,
    solve_rational,
)

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def _det(M):
    # Laplace expansion, independent of the library
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def divisors_by_minors(A):
    """Elementary divisors from the gcds of k x k minors."""
    m, n = len(A), len(A[0])
    dets = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, _det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        dets.append(g)
    return tuple(dets[k] // dets[k - 1] for k in range(1, len(dets)))


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_snf_identity():
    snf = smith_normal_form([[1, 0], [0, 1]])
    assert snf.S.tolist() == [[1, 0], [0, 1]]
    assert snf.divisors == (1, 1)


def test_snf_small_example():
    assert elementary_divisors([[2, 4], [6, 8]]) == (2, 4)


def test_snf_zero_matrix():
    snf = smith_normal_form([[0, 0], [0, 0]])
    assert snf.divisors == ()
    assert snf.S.tolist() == [[0, 0], [0, 0]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_matches_minor_oracle(A):
    assert elementary_divisors(A) == divisors_by_minors(A)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_snf_transform_identity(A):
    snf = smith_normal_form(A)
    U, S, V = snf.U.tolist(), snf.S.tolist(), snf.V.tolist()
    assert matmul(matmul(U, A), V) == S
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    assert matmul(snf.U_inv.tolist(), U) == [[int(i == j) for j in range(len(U))] for i in range(len(U))]
    d = snf.divisors
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert all(x > 0 for x in d)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                      min_size=n, max_size=n)))
def test_determinant_and_rank(A):
    assert determinant(A) == _det(A)
    assert rank(A) == len(divisors_by_minors(A))


def test_hexagon_class_group():
    rays = [[1, 0], [0, 1], [-1, 1], [-1, 0], [0, -1], [1, -1]]
    Q = cokernel(rays)
    assert Q.free_rank == 4 and Q.torsion == ()


def test_cyclic_cokernel():
    Q = cokernel([[2]])
    assert Q.free_rank == 0 and Q.torsion == (2,)
    assert Q.class_of([3]) == (1,)


def test_p235_class_group_brute_force():
    rays = [[-1, -1], [4, -1], [-2, 1]]
    Q = cokernel(rays)
    assert Q.free_rank == 1 and Q.torsion == ()
    # the image of Z^2 has index 1 in its saturation: all 2x2 minors are coprime
    assert divisors_by_minors(rays) == (1, 1)


def test_solve_integral_cases():
    assert solve_integral([[1, 0], [0, 1]], [3, -2]) == (3, -2)
    assert solve_integral([[2]], [3]) is None


def test_solve_integral_hexagon_lift():
    pi = [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1], [1, -1, 1, 0, 0, 0]]
    x = solve_integral(pi, [-4, -4, -2, 1])
    assert x is not None
    assert [sum(a * b for a, b in zip(row, x)) for row in pi] == [-4, -4, -2, 1]


def test_solve_rational():
    assert solve_rational([[2, 1], [1, 3]], [1, 2]) == (Fraction(1, 5), Fraction(3, 5))
    assert solve_rational([[1, 1], [1, 1]], [0, 1]) is None


@settings(max_examples=80, deadline=None)
@given(matrices(3, 5))
def test_nullspace_and_kernel(A):
    n = len(A[0])
    ns = rational_nullspace(A, n)
    for v in ns:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    assert len(ns) == n - rank(A)
    kb = kernel_basis(A)
    assert len(kb) == n - rank(A)
    for v in kb:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    if kb:
        # a lattice basis of the kernel is saturated: maximal minors coprime
        assert divisors_by_minors([list(v) for v in kb])[-1] == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(small_ints, min_size=1, max_size=5).filter(any))
def test_primitive(v):
    p = primitive(v)
    g = 0
    for x in p:
        g = gcd(g, x)
    assert g == 1
    k = next(i for i, x in enumerate(v) if x)
    assert Fraction(v[k], p[k]) > 0
    assert all(Fraction(a) * p[k] == Fraction(b) * v[k] for a, b in zip(v, p))


@settings(max_examples=50, deadline=None)
@given(matrices(3, 3))
def test_hermite_rows_same_lattice(A):
    H = hermite_rows(A)
    # same row lattice: the stacked matrix has the same elementary divisors as either part
    assert len(H) == rank(A)
    if H:
        assert elementary_divisors([list(r) for r in H]) == elementary_divisors(A + [list(r) for r in H])


def test_intmatrix_ops():
    M = IntMatrix([[1, 2], [3, 4]])
    assert (M @ (1, 1)) == (3, 7)
    assert M.tolist() == [[1, 2], [3, 4]]


@pytest.mark.parametrize("A", [[[0]], [[0, 0, 0]]])
def test_zero_rank(A):
    assert rank(A) == 0
    assert elementary_divisors(A) == ()
