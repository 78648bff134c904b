"""Independent reference computations used by the tests (sympy and closed forms)."""

from fractions import Fraction
from math import comb

import sympy

from sklyanin4.scalars import FieldElem


def to_sympy(x):
    """Map a rational or an element of a tower of square roots of rationals to sympy."""
    if not isinstance(x, FieldElem):
        q = Fraction(x)
        return sympy.Rational(q.numerator, q.denominator)
    roots = []
    for step in x.tower.steps:
        if step.radicand is None:
            raise ValueError("only towers of square roots have a sympy image here")
        r = step.radicand
        roots.append(sympy.sqrt(sympy.Rational(r.numerator, r.denominator)))
    out = sympy.Integer(0)
    for e, c in x.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for root, k in zip(roots, e):
            term *= root ** k
        out += term
    return out


def sym_equal(a, b) -> bool:
    return sympy.expand(sympy.radsimp(a - b)) == 0


def series_coeffs(expr, n):
    """Taylor coefficients of a rational function of t, degrees 0..n."""
    t = sympy.Symbol("t")
    s = sympy.series(expr(t), t, 0, n + 1).removeO()
    return [int(s.coeff(t, k)) for k in range(n + 1)]


def polynomial_ring_dims(n):
    return [comb(k + 3, 3) for k in range(n + 1)]


def sympy_params(alpha, beta):
    a, b = sympy.Rational(alpha), sympy.Rational(beta)
    g = -(a + b) / (1 + a * b)
    mu = (1 - g) / (1 + a)
    nu = (1 + g) / (1 - b)
    lam = (nu - mu * nu) / (nu - mu)
    return {"alpha": a, "beta": b, "gamma": g, "mu": mu, "nu": nu, "lambda": lam}


def to_fraction(x):
    x = sympy.nsimplify(x)
    return Fraction(int(x.p), int(x.q))
