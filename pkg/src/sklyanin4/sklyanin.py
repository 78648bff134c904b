"""Parameters, the algebras Q and Q~, their central elements and derived constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ncalg import NcTensor, QuadAlgebra
from .scalars import QQ, Tower, parse_rat, sqrt_adjoin

__all__ = [
    "ConstraintViolation",
    "Params",
    "DerivedConstants",
    "make_params",
    "q_relations",
    "qtilde_relations",
    "central_elements",
    "derived_constants",
    "CYCLIC",
    "GAMMA_SIGNS",
    "gamma_substitution",
    "antipode",
    "DEFAULT_ALPHA",
    "DEFAULT_BETA",
]

DEFAULT_ALPHA = Fraction(2)
DEFAULT_BETA = Fraction(3)

# (i, j, k) over the cyclic permutations of (1, 2, 3)
CYCLIC = ((1, 2, 3), (2, 3, 1), (3, 1, 2))

# signs of gamma_1, gamma_2, gamma_3 on the four coordinates / generators
GAMMA_SIGNS = {
    0: (1, 1, 1, 1),
    1: (1, 1, -1, -1),
    2: (1, -1, 1, -1),
    3: (1, -1, -1, 1),
}


class ConstraintViolation(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    a: object
    b: object
    c: object
    i: object
    tower: Tower
    itower: Tower

    @property
    def i0(self):
        """``i`` in the two-dimensional prefix ``Q(i)`` of :attr:`tower`."""
        return self.itower.gen()

    @property
    def alphas(self) -> tuple[Fraction, Fraction, Fraction]:
        """``(alpha_1, alpha_2, alpha_3)``, indexed from 1 via ``alphas[i - 1]``."""
        return (self.alpha, self.beta, self.gamma)

    def as_config(self) -> dict:
        return {"alpha": str(self.alpha), "beta": str(self.beta)}


@dataclass(frozen=True)
class DerivedConstants:
    mu: Fraction
    nu: Fraction
    lam: Fraction


def make_params(alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA) -> Params:
    """Solve for ``gamma`` and build the tower ``Q(i, sqrt alpha, sqrt beta, sqrt gamma)``."""
    alpha, beta = parse_rat(alpha), parse_rat(beta)
    if 1 + alpha * beta == 0:
        raise ConstraintViolation("1 + alpha*beta = 0")
    gamma = -(alpha + beta) / (1 + alpha * beta)
    bad = {Fraction(0), Fraction(1), Fraction(-1)}
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if v in bad:
            raise ConstraintViolation(f"{name} = {v} lies in {{0, 1, -1}}")
    tower, i = sqrt_adjoin(QQ, -1, "i")
    itower = tower
    tower, a = sqrt_adjoin(tower, alpha)
    tower, b = sqrt_adjoin(tower, beta)
    tower, c = sqrt_adjoin(tower, gamma)
    return Params(alpha, beta, gamma, tower(a), tower(b), tower(c), tower(i), tower, itower)


def _w(*letters: int) -> NcTensor:
    return NcTensor.word(*letters)


def q_relations(p: Params) -> QuadAlgebra:
    """The four-dimensional Sklyanin algebra Q on ``x_0..x_3``."""
    al = p.alphas
    diff, summ = [], []
    for i, j, k in CYCLIC:
        diff.append(_w(0, i) - _w(i, 0) - (_w(j, k) + _w(k, j)).scale(al[i - 1]))
        summ.append(_w(0, i) + _w(i, 0) - (_w(j, k) - _w(k, j)))
    return QuadAlgebra(["x0", "x1", "x2", "x3"], diff + summ, name="Q")


def qtilde_relations(p: Params) -> QuadAlgebra:
    """The twisted algebra Q~ on ``y_0..y_3``; rows ordered as in ``M_1``."""
    al = p.alphas
    diff, summ = [], []
    for i, j, k in CYCLIC:
        diff.append(_w(0, i) - _w(i, 0) - (_w(j, k) - _w(k, j)).scale(al[i - 1]))
        summ.append(_w(0, i) + _w(i, 0) - (_w(j, k) + _w(k, j)))
    return QuadAlgebra(["y0", "y1", "y2", "y3"], diff + summ, name="Q~")


def _diag(coeffs) -> NcTensor:
    return NcTensor(2, {(j, j): c for j, c in enumerate(coeffs)})


def central_elements(p: Params, which: str) -> NcTensor:
    """One of ``Omega``, ``OmegaPrime``, ``Theta``, ``ThetaPrime``."""
    al, be, ga = p.alphas
    if 1 - be == 0 or 1 + ga == 0:
        raise ConstraintViolation("primed coefficient has a vanishing denominator")
    prime = (Fraction(0), Fraction(1), (1 + al) / (1 - be), (1 - al) / (1 + ga))
    table = {
        "Omega": (-1, 1, 1, 1),
        "Theta": (1, 1, 1, 1),
        "OmegaPrime": prime,
        "ThetaPrime": prime,
    }
    if which not in table:
        raise KeyError(f"unknown central element {which!r}")
    return _diag(table[which])


def derived_constants(p: Params) -> DerivedConstants:
    al, be, ga = p.alphas
    if 1 + al == 0 or 1 - be == 0:
        raise ConstraintViolation("mu or nu has a vanishing denominator")
    mu = (1 - ga) / (1 + al)
    nu = (1 + ga) / (1 - be)
    if nu == mu:
        raise ConstraintViolation("nu = mu")
    lam = (nu - mu * nu) / (nu - mu)
    return DerivedConstants(mu, nu, lam)


def gamma_substitution(g: int) -> list[NcTensor]:
    """Images of the generators under ``gamma_g`` (``g = 0`` is the identity)."""
    return [NcTensor.gen(j).scale(s) for j, s in enumerate(GAMMA_SIGNS[g])]


def antipode(t: NcTensor) -> NcTensor:
    """``y_j -> -y_j`` extended as an anti-homomorphism."""
    sign = -1 if t.degree % 2 else 1
    return t.reversed().scale(sign)
