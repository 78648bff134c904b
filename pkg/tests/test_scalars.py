from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import sym_equal, to_sympy
from sklyanin4.scalars import (QQ, FieldElem, TowerMismatch, ZeroDivisor, ZeroInput,
                               adjoin_root, inv, lower, parse_rat, rational_sqrt,
                               sqrt_adjoin, sqrt_in)
from sklyanin4.sklyanin import make_params

P = make_params()
TOWER = P.tower

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def elems(draw, tower=TOWER, max_terms=4):
    basis = tower.basis()
    idx = draw(st.lists(st.integers(0, len(basis) - 1), min_size=0, max_size=max_terms))
    return FieldElem(tower, {basis[k]: draw(small) for k in idx})


nonzero = elems().filter(bool)


def test_default_tower_shape():
    assert TOWER.dim == 16
    assert TOWER.labels[0] == "i"
    assert P.itower.is_prefix_of(TOWER)
    assert not TOWER.is_prefix_of(P.itower)


@given(elems(), elems(), elems())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y * z) == (x * y) * z
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0


@given(nonzero)
def test_inverse(x):
    assert x * inv(x) == 1
    assert (1 / x) * x == 1


@given(elems(), elems())
def test_product_matches_sympy(x, y):
    assert sym_equal(to_sympy(x * y), to_sympy(x) * to_sympy(y))
    assert sym_equal(to_sympy(x + y), to_sympy(x) + to_sympy(y))


@given(nonzero)
def test_inverse_matches_sympy(x):
    assert sym_equal(to_sympy(inv(x)) * to_sympy(x), sympy.Integer(1))


@given(elems(P.itower), elems(P.itower))
def test_prefix_embedding_is_a_homomorphism(x, y):
    lift = lambda v: v.lift(TOWER)  # noqa: E731
    assert lift(x + y) == lift(x) + lift(y)
    assert lift(x * y) == lift(x) * lift(y)
    assert x * TOWER(1) == lift(x)


def test_generators_square_to_radicands():
    assert P.i * P.i == -1
    assert P.a * P.a == 2 and P.b * P.b == 3 and P.c * P.c == Fraction(-5, 7)


def test_zero_divisor_surfaces():
    t = adjoin_root(QQ, [-4, 0, 1], "x")
    x = t.gen()
    assert (x - 2) * (x + 2) == 0
    with pytest.raises(ZeroDivisor):
        inv(x - 2)
    with pytest.raises(ZeroDivisor):
        1 / (x + 2)
    assert inv(x + 1) * (x + 1) == 1


def test_zero_input():
    with pytest.raises(ZeroInput):
        inv(TOWER(0))
    with pytest.raises(ZeroInput):
        inv(0)
    with pytest.raises(ZeroInput):
        sqrt_adjoin(QQ, 0)


def test_unrelated_towers_do_not_mix():
    t1, r1 = sqrt_adjoin(QQ, 2)
    t2, r2 = sqrt_adjoin(QQ, 2)
    with pytest.raises(TowerMismatch):
        r1 + r2
    assert r1 != r2


def test_sqrt_adjoin_reuses_square_classes():
    t, r2 = sqrt_adjoin(QQ, 2)
    t, r3 = sqrt_adjoin(t, 3)
    t6, r6 = sqrt_adjoin(t, 6)
    assert t6 is t and r6 * r6 == 6
    assert sqrt_in(t, Fraction(3, 8)) * sqrt_in(t, Fraction(3, 8)) == Fraction(3, 8)
    assert sqrt_in(t, 5) is None
    same, four = sqrt_adjoin(QQ, 4)
    assert same is QQ and four == 2


def test_sqrt_of_irrational_element():
    t, r = sqrt_adjoin(QQ, 2)
    t2, s = sqrt_adjoin(t, 1 + r)
    assert s * s == 1 + r
    assert t2.dim == 4


@given(st.fractions(min_value=0, max_value=1000, max_denominator=50))
def test_rational_sqrt(q):
    r = rational_sqrt(q * q)
    assert r == q
    s = rational_sqrt(q)
    assert s is None or s * s == q


def test_parse_rat():
    assert parse_rat("3/5") == Fraction(3, 5)
    assert parse_rat(" -2 ") == -2
    assert parse_rat(Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(ValueError):
        parse_rat("abc")


def test_lower_and_rational_detection():
    assert isinstance(lower(TOWER(Fraction(3, 2))), Fraction)
    assert lower(P.i) is P.i
    assert TOWER(5).is_rational() and not P.a.is_rational()
    assert len(P.a.coeffs()) == 16 and sum(P.a.coeffs()) == 1


def test_hash_consistent_with_equality():
    x = P.i0.lift(TOWER)
    assert x == P.i0 and hash(x) == hash(P.i0)
    assert hash(TOWER(3)) == hash(Fraction(3))
