from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from immaculate import lp
from immaculate.errors import EmptyPolyhedron, UnboundedInput
from immaculate.polyhedra import Polyhedron

c3 = st.integers(-3, 3)


def systems(dim):
    row = st.tuples(st.tuples(*([c3] * dim)), st.integers(-4, 4))
    return st.lists(row, min_size=1, max_size=6)


def _dot(a, x):
    return sum(Fraction(u) * v for u, v in zip(a, x))


def test_simple_optimum():
    # max x + y with x, y <= 1 and x, y >= 0
    res = lp.solve([[-1, 0], [0, -1], [1, 0], [0, 1]], [-1, -1, 0, 0], c=[1, 1])
    assert res.status == lp.OPTIMAL and res.value == 2


def test_unbounded_and_infeasible():
    assert lp.solve([[1, 0]], [0], c=[1, 0]).status == lp.UNBOUNDED
    assert lp.solve([[1], [-1]], [1, 0]).status == lp.INFEASIBLE


def test_equalities_and_nonneg():
    res = lp.solve(E=[[1, 1]], f=[3], c=[1, 0], nonneg=True)
    assert res.status == lp.OPTIMAL and res.value == 3 and res.x == (3, 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(systems), st.data())
def test_against_double_description(rows, data):
    dim = len(rows[0][0])
    A = [list(a) for a, _ in rows]
    b = [v for _, v in rows]
    c = data.draw(st.tuples(*([c3] * dim)))
    try:
        P = Polyhedron.from_hrep([(a, v) for a, v in rows], dim=dim)
    except EmptyPolyhedron:
        P = None
    res = lp.solve(A, b, c=list(c), nvars=dim)
    if P is None:
        assert res.status == lp.INFEASIBLE
        return
    assert res.status != lp.INFEASIBLE
    try:
        best = -P.support(tuple(-x for x in c))
    except UnboundedInput:
        best = None
    if best is None:
        assert res.status == lp.UNBOUNDED
        return
    assert res.status == lp.OPTIMAL
    assert all(_dot(a, res.x) >= v for a, v in zip(A, b))
    assert res.value == _dot(c, res.x)
    assert res.value == best
