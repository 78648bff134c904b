import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from oracles import sympy_params, to_fraction, to_sympy
from sklyanin4.geometry import CurveE, ProjPoint, gamma_act, on_curve, sample_point
from sklyanin4.linalg import det
from sklyanin4.ncalg import multilinearize
from sklyanin4.pointscheme import (GROUPS, NotInFamily, RankDegenerate, VerificationFailed,
                                   build_point_family, four_quadrics_independence,
                                   four_quadrics_matrix, minors, minors_check,
                                   random_rational_point, reorganized_quartics, sigma, theta,
                                   verify_point_scheme)
from sklyanin4.sklyanin import q_relations, qtilde_relations


@pytest.fixture(scope="module")
def family(p):
    return build_point_family(p)


def sympy_relation_matrix(A, u):
    """M(u) from the relations directly: row k, column j is sum_i c_(i,j) u_i."""
    rows = []
    for r in A.relations:
        row = [sympy.Integer(0)] * 4
        for (i, j), c in r.terms.items():
            row[j] += to_sympy(c) * u[i]
        rows.append(row)
    return sympy.Matrix(rows)


def test_family_shape(family):
    assert len(family) == 20
    assert len({u for _, _, u in family.points()}) == 20
    assert [g for g, _, _ in family.points()][::4] == list(GROUPS)


def test_family_rows_are_klein_orbits(family):
    for g in GROUPS[1:]:
        rows = family.groups[g]
        for k in (1, 2, 3):
            assert gamma_act(k, rows[0]) == rows[k]
    for u in family.groups["inf"]:
        assert all(gamma_act(k, u) == u for k in (1, 2, 3))


def test_point_scheme(T, family):
    rep = verify_point_scheme(T, family)
    assert rep.ok and rep.distinct == 20
    assert all(r == 4 for r in rep.random_ranks)


def test_point_scheme_sympy_oracle(T, family):
    for g, r, u in family.points():
        us = [to_sympy(c) for c in u.coords]
        m = sympy_relation_matrix(T, us).applyfunc(sympy.expand)
        assert m.rank(simplify=True) == 3
        t = [to_sympy(c) for c in theta(family, u).coords]
        assert all(sympy.expand(x) == 0 for x in m * sympy.Matrix(t))


def test_theta_is_an_involution_commuting_with_gamma(family):
    for _, _, u in family.points():
        assert theta(family, theta(family, u)) == u
        for k in (1, 2, 3):
            assert theta(family, gamma_act(k, u)) == gamma_act(k, theta(family, u))
    fixed = [u for g, _, u in family.points() if theta(family, u) == u]
    assert len(fixed) == 8


def test_locate(family):
    assert family.locate(ProjPoint([2, 2, 2, 2])) == ("0", 0)
    with pytest.raises(NotInFamily):
        family.locate(ProjPoint([1, 2, 3, 4]))


def test_q_does_not_have_this_point_scheme(Q, family):
    with pytest.raises(VerificationFailed):
        verify_point_scheme(Q, family)


def test_minors(T, family, p):
    rep = minors_check(T, family)
    assert rep.count == 15 and rep.minors_rank == rep.reference_rank == 15
    assert rep.spans_equal and rep.vanish_on_family and rep.nonzero_at_random


def test_minors_sympy_oracle(T):
    y = sympy.symbols("y0:4")
    M = sympy_relation_matrix(T, y)
    ours = minors(T)
    for rows in list(combinations(range(6), 4))[:4]:
        ref = sympy.expand(M.extract(list(rows), list(range(4))).det())
        mine = sum(to_sympy(c) * sympy.Mul(*[v ** e for v, e in zip(y, mono)])
                   for mono, c in ours[rows].terms.items())
        assert sympy.expand(ref - mine) == 0


def test_reorganized_quartics_vanish_on_family(p, family):
    for q in reorganized_quartics(p):
        assert all(not q(u.coords) for _, _, u in family.points())


@pytest.mark.parametrize("ab", [(2, 3), (3, 5)])
def test_four_quadrics_determinant(ab):
    from sklyanin4.sklyanin import make_params
    p = make_params(*ab)
    assert four_quadrics_independence(p)
    ref = sympy_params(*ab)
    al, be, ga = ref["alpha"], ref["beta"], ref["gamma"]
    m = sympy.Matrix([[1, be * ga, al * ga, al * be], [1, -1, -al, al],
                      [1, be, -1, -be], [1, -ga, ga, -1]])
    assert det(four_quadrics_matrix(p)) == to_fraction(m.det())


def test_default_determinant(p):
    assert det(four_quadrics_matrix(p)) == Fraction(-576, 49)


def test_sigma_on_curve(Q, p):
    E = CurveE(p)
    for s in (1, 2, 3, Fraction(1, 2)):
        pt, _ = sample_point(E, s)
        img = sigma(Q, pt, E)
        assert on_curve(E, img)
        for g in (1, 2, 3):
            assert sigma(Q, gamma_act(g, pt)) == gamma_act(g, img)


def test_sigma_at_coordinate_points(Q):
    M = multilinearize(Q)
    from sklyanin4.linalg import rank
    for k in range(4):
        e = [int(j == k) for j in range(4)]
        assert rank(M.evaluate(e)) == 3
        assert sigma(Q, ProjPoint(e)) == ProjPoint(e)


def test_sigma_off_curve(Q):
    rng = random.Random(3)
    with pytest.raises((VerificationFailed, RankDegenerate)):
        sigma(Q, random_rational_point(rng))


def test_second_preset(p35):
    T = qtilde_relations(p35)
    f = build_point_family(p35)
    assert verify_point_scheme(T, f).ok
    assert minors_check(T, f).spans_equal
    Q = q_relations(p35)
    E = CurveE(p35)
    pt, _ = sample_point(E, 2)
    assert on_curve(E, sigma(Q, pt, E))
