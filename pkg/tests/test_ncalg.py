from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, strategies as st

from oracles import polynomial_ring_dims, series_coeffs
from sklyanin4.linalg import Subspace
from sklyanin4.ncalg import (DegreeMismatch, DegreeTooSmall, GradedQuotient, NcTensor,
                             NotCentral, QuadAlgebra, commutative_algebra,
                             evaluate_bilinear, exterior_algebra, free_algebra,
                             hilbert_dims, is_central, is_zero_in_quotient, koszul_dual,
                             left_quotient_dims, multilinearize, relation_space,
                             two_sided_quotient_dims)

coef = st.integers(-3, 3).map(Fraction)


def tensors(g, degree, max_terms=6):
    words = st.tuples(*[st.integers(0, g - 1)] * degree)
    return st.dictionaries(words, coef, max_size=max_terms).map(lambda d: NcTensor(degree, d))


@st.composite
def quad_algebras(draw, g=3, max_rels=4):
    rels, span = [], Subspace(g * g)
    for _ in range(draw(st.integers(0, max_rels))):
        r = draw(tensors(g, 2))
        if r and span.add(r.vector(g)):
            rels.append(r)
    return QuadAlgebra([f"z{j}" for j in range(g)], rels)


def brute_left_dims(A, W, nmax):
    """Dimensions of T / (T R T + T W) by spanning sets in the full tensor power."""
    g = A.ngens
    out = [1]
    for n in range(1, nmax + 1):
        S = relation_space(A, n) if n >= 2 else Subspace(g)
        for w in W:
            for pre in product(range(g), repeat=n - 1):
                S.add((NcTensor.word(*pre) * w).vector(g))
        out.append(g ** n - S.dim)
    return out


def test_presets():
    assert hilbert_dims(free_algebra(), 4) == [1, 4, 16, 64, 256]
    assert hilbert_dims(commutative_algebra(), 5) == polynomial_ring_dims(5)
    assert hilbert_dims(exterior_algebra(), 5) == [1, 4, 6, 4, 1, 0]


def test_polynomial_ring_series_oracle():
    assert polynomial_ring_dims(6) == series_coeffs(lambda t: (1 - t) ** -4, 6)


@given(quad_algebras())
def test_incremental_engine_matches_brute_force(A):
    dims = hilbert_dims(A, 4)
    brute = [1, 3] + [3 ** n - relation_space(A, n).dim for n in (2, 3, 4)]
    assert dims == brute


@given(quad_algebras(), st.lists(st.lists(coef, min_size=3, max_size=3), min_size=1, max_size=2))
def test_left_quotient_matches_brute_force(A, forms):
    W = [NcTensor.linear(f) for f in forms]
    assume(Subspace(3, [f for f in forms]).dim == len(forms))
    assert left_quotient_dims(A, W, 3) == brute_left_dims(A, W, 3)


@given(quad_algebras(), st.lists(st.lists(coef, min_size=3, max_size=3), min_size=2, max_size=2))
def test_left_quotient_monotone(A, forms):
    assume(Subspace(3, forms).dim == 2)
    W = [NcTensor.linear(f) for f in forms]
    small = left_quotient_dims(A, W[:1], 3)
    big = left_quotient_dims(A, W, 3)
    full = hilbert_dims(A, 3)
    assert all(b <= s <= f for b, s, f in zip(big, small, full))


@given(quad_algebras())
def test_relation_space_contains_padded_relations(A):
    R3 = relation_space(A, 3)
    for r in A.relations:
        for j in range(A.ngens):
            x = NcTensor.gen(j)
            assert R3.contains((x * r).vector(3))
            assert R3.contains((r * x).vector(3))


@given(quad_algebras())
def test_koszul_dual_is_an_involution(A):
    D = koszul_dual(A)
    assert len(D.relations) == 9 - len(A.relations)
    assert koszul_dual(D).same_relations(A)


def test_koszul_dual_of_polynomial_ring_is_exterior():
    assert koszul_dual(commutative_algebra()).same_relations(exterior_algebra())


@given(tensors(3, 1), tensors(3, 2), tensors(3, 1))
def test_tensor_product_is_associative_and_bilinear(x, y, z):
    assert (x * y) * z == x * (y * z)
    w = NcTensor.linear([1, 2, 3])
    assert (x + w) * y == x * y + w * y


@given(tensors(3, 2))
def test_substitution_is_multiplicative(t):
    images = [NcTensor.linear([1, 1, 0]), NcTensor.linear([0, -1, 2]), NcTensor.gen(0)]
    xs = [NcTensor.gen(j) for j in range(3)]
    expected = NcTensor.zero(2)
    for (i, j), c in t.terms.items():
        expected = expected + (images[i] * images[j]).scale(c)
    assert t.substitute(images) == expected
    assert t.substitute(xs) == t


@given(tensors(3, 2), st.lists(coef, min_size=3, max_size=3),
       st.lists(coef, min_size=3, max_size=3))
def test_multilinearization(r, u, v):
    if not r:
        return
    A = QuadAlgebra(["a", "b", "c"], [r])
    M = multilinearize(A)
    expected = sum(c * u[i] * v[j] for (i, j), c in r.terms.items())
    assert M.apply(u, v) == [expected] == [evaluate_bilinear(r, u, v)]
    assert M.shape == (1, 3)


def test_vector_round_trip():
    t = NcTensor(3, {(0, 1, 2): Fraction(2), (2, 2, 0): Fraction(-1)})
    assert NcTensor.from_vector(t.vector(3), 3, 3) == t


def test_degree_errors():
    with pytest.raises(DegreeMismatch):
        NcTensor.gen(0) + NcTensor.word(0, 1)
    with pytest.raises(DegreeMismatch):
        QuadAlgebra(["x"], [NcTensor.gen(0)])
    with pytest.raises(DegreeTooSmall):
        relation_space(commutative_algebra(), 1)
    with pytest.raises(ValueError):
        QuadAlgebra(["x", "y"], [NcTensor.word(0, 1), NcTensor.word(0, 1).scale(2)])
    with pytest.raises(ValueError):
        left_quotient_dims(free_algebra(2), [NcTensor.gen(0), NcTensor.gen(0)], 2)


def test_centrality(Q, T, p):
    from sklyanin4.sklyanin import central_elements
    assert is_central(Q, central_elements(p, "Omega"))
    assert not is_central(Q, NcTensor.gen(0))
    with pytest.raises(NotCentral):
        two_sided_quotient_dims(Q, [NcTensor.word(0, 0)], 3)
    assert is_central(commutative_algebra(), NcTensor.word(0, 1))


def test_zero_in_quotient():
    C = commutative_algebra()
    assert is_zero_in_quotient(C, NcTensor.word(0, 1) - NcTensor.word(1, 0))
    assert not is_zero_in_quotient(C, NcTensor.word(0, 1))
    assert is_zero_in_quotient(C, NcTensor.word(0, 1, 1), [NcTensor.word(1, 1)])
    with pytest.raises(DegreeMismatch):
        is_zero_in_quotient(C, NcTensor.gen(0), [NcTensor.word(1, 1)])


def test_graded_quotient_normal_words():
    q = GradedQuotient(2, [NcTensor.word(1, 0) - NcTensor.word(0, 1)])
    assert q.dims(3) == [1, 2, 3, 4]
    assert len(q.normal_words(3)) == 4
