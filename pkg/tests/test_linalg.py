from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from oracles import to_fraction, to_sympy
from sklyanin4.linalg import Subspace, det, identity, matmul, nullspace, rank, rref
from sklyanin4.sklyanin import make_params

entry = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows=(1, 5), cols=(1, 5)):
    return st.integers(*rows).flatmap(lambda r: st.integers(*cols).flatmap(
        lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r)))


def sym(m):
    return sympy.Matrix([[to_sympy(x) for x in row] for row in m])


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sym(m).rank()


@given(matrices(rows=(1, 5), cols=(1, 5)))
def test_nullspace_is_kernel(m):
    ker = nullspace(m, len(m[0]))
    assert len(ker) == len(m[0]) - rank(m)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(m):
    assert det(m) == to_fraction(sym(m).det())


def test_rref_pivots():
    r, piv = rref([[0, 2, 4], [1, 1, 1], [1, 2, 3]])
    assert piv == [0, 1]
    assert r[0] == [1, 0, -1] and r[1] == [0, 1, 2]


def test_tower_det():
    p = make_params()
    m = [[p.i, 1], [1, p.i]]
    assert det(m) == -2
    assert rank([[p.a, p.a * p.a], [1, p.a]]) == 1


@given(st.lists(st.lists(entry, min_size=4, max_size=4), max_size=6),
       st.lists(entry, min_size=4, max_size=4))
def test_subspace_membership(vectors, v):
    S = Subspace(4, vectors)
    assert S.dim == rank(vectors) if vectors else S.dim == 0
    for w in vectors:
        assert S.contains({k: x for k, x in enumerate(w) if x})
    bigger = Subspace(4, vectors + [v])
    assert S.issubspace(bigger)
    assert (bigger.dim == S.dim) == S.contains({k: x for k, x in enumerate(v) if x})


def test_subspace_equality_ignores_basis():
    a = Subspace(3, [[1, 1, 0], [0, 1, 1]])
    b = Subspace(3, [[1, 2, 1], [1, 0, -1]])
    assert a == b
    assert a != Subspace(3, [[1, 0, 0]])


def test_matmul_identity():
    m = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    assert matmul(m, identity(2)) == m == matmul(identity(2), m)
