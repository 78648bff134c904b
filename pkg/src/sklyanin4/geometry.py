"""Points, forms and the elliptic curve E in P^3 over a number-field tower."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence

from .linalg import Subspace, det, nullspace, rank
from .scalars import FieldElem, QQ, Tower, lower, parse_rat, sqrt_adjoin
from .sklyanin import GAMMA_SIGNS, Params, derived_constants

__all__ = [
    "ProjPoint",
    "MultiPoly",
    "Quadric",
    "CurveE",
    "TwoTorsion",
    "WeierstrassCurve",
    "DegenerateSample",
    "DegenerateLine",
    "NotOnCurve",
    "deepest_tower",
    "gamma_act",
    "on_curve",
    "sample_point",
    "sample_points",
    "neg",
    "two_torsion",
    "quadric_in_pencil",
    "monomials",
    "singular_quadrics",
    "coplanar",
    "line_on_quadric",
    "cross_ratio",
    "cross_ratio_orbit",
    "lambda_orbit",
    "branch_images",
    "branch_cross_ratio_check",
    "weierstrass_add",
    "weierstrass_double",
]


class DegenerateSample(ValueError):
    pass


class DegenerateLine(ValueError):
    pass


class NotOnCurve(ValueError):
    pass


def deepest_tower(values: Iterable) -> Tower:
    best = QQ
    for v in values:
        if isinstance(v, FieldElem) and v.tower.depth > best.depth:
            best = v.tower
    return best


class ProjPoint:
    """A point of projective space; equality is up to a non-zero scalar."""

    __slots__ = ("coords", "_norm")

    def __init__(self, coords: Sequence):
        coords = tuple(lower(c) for c in coords)
        if not any(coords):
            raise ValueError("projective point with all coordinates zero")
        self.coords = coords
        self._norm = None

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __iter__(self):
        return iter(self.coords)

    @property
    def tower(self) -> Tower:
        return deepest_tower(self.coords)

    def normalized(self) -> tuple:
        """Coordinates scaled so the first non-zero entry is 1."""
        if self._norm is None:
            lead = next(c for c in self.coords if c)
            scale = 1 / lead
            self._norm = tuple(lower(c * scale) for c in self.coords)
        return self._norm

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return len(self) == len(other) and self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def scaled(self, s) -> "ProjPoint":
        return ProjPoint([s * c for c in self.coords])

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class MultiPoly:
    """A commutative polynomial in ``nvars`` variables: ``{exponent tuple: coeff}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            c = lower(c)
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def var(cls, j: int, nvars: int = 4) -> "MultiPoly":
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def const(cls, c, nvars: int = 4) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        out = {}
        for j, c in enumerate(coeffs):
            e = [0] * n
            e[j] = 1
            out[tuple(e)] = c
        return cls(n, out)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __call__(self, point: Sequence):
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            acc = acc + t
        return lower(acc)

    def vector(self, monomials: Sequence[tuple]) -> list:
        index = {m: k for k, m in enumerate(monomials)}
        v = [Fraction(0)] * len(monomials)
        for e, c in self.terms.items():
            v[index[e]] = c
        return v

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{j}^{k}" if k > 1 else f"x{j}" for j, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})*{mono}" if mono else f"({self.terms[e]})")
        return " + ".join(parts)


def monomials(nvars: int, degree: int) -> list[tuple]:
    return [e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree]


class Quadric:
    """A quadratic form ``v^T G v`` given by its symmetric Gram matrix."""

    def __init__(self, gram: Sequence[Sequence]):
        self.gram = [[lower(x) for x in row] for row in gram]
        n = len(self.gram)
        for r in range(n):
            for c in range(n):
                if self.gram[r][c] != self.gram[c][r]:
                    raise ValueError("Gram matrix must be symmetric")

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Quadric":
        n = len(entries)
        return cls([[entries[r] if r == c else Fraction(0) for c in range(n)] for r in range(n)])

    def __call__(self, v: Sequence):
        return self.bilinear(v, v)

    def bilinear(self, u: Sequence, v: Sequence):
        acc = Fraction(0)
        for r, row in enumerate(self.gram):
            if not u[r]:
                continue
            for c, g in enumerate(row):
                if g and v[c]:
                    acc = acc + u[r] * g * v[c]
        return lower(acc)

    def rank(self) -> int:
        return rank(self.gram)

    def kernel(self) -> list[list]:
        return nullspace(self.gram, len(self.gram))

    def poly(self) -> MultiPoly:
        n = len(self.gram)
        out = MultiPoly(n)
        for r in range(n):
            for c in range(n):
                if self.gram[r][c]:
                    out = out + MultiPoly.var(r, n) * MultiPoly.var(c, n) * self.gram[r][c]
        return out

    def vector(self) -> list:
        """Coefficients on the monomials ``x_r x_c`` with ``r <= c``."""
        n = len(self.gram)
        return [self.gram[r][c] * (1 if r == c else 2) for r in range(n) for c in range(r, n)]

    def __repr__(self):
        return f"Quadric({self.gram})"


class CurveE:
    """``E``: common zeros of ``sum x_j^2`` and ``(1-g)x1^2 + (1+ag)x2^2 + (1+a)x3^2``."""

    def __init__(self, params: Params):
        self.params = params
        al, ga = params.alpha, params.gamma
        self.quadrics = (
            Quadric.diagonal([1, 1, 1, 1]),
            Quadric.diagonal([0, 1 - ga, 1 + al * ga, 1 + al]),
        )

    @property
    def forms(self) -> tuple[MultiPoly, MultiPoly]:
        return tuple(q.poly() for q in self.quadrics)


def gamma_act(g: int, p: ProjPoint) -> ProjPoint:
    """``gamma_g`` flips coordinate signs; ``g = 0`` is the identity."""
    return ProjPoint([s * c for s, c in zip(GAMMA_SIGNS[g], p.coords)])


def on_curve(E: CurveE, p: ProjPoint) -> bool:
    return all(not q(p.coords) for q in E.quadrics)


def neg(p: ProjPoint) -> ProjPoint:
    return ProjPoint((-p[0],) + tuple(p.coords[1:]))


def sample_point(E: CurveE, s, tower: Tower | None = None) -> tuple[ProjPoint, Tower]:
    """The point ``(s, sqrt u, sqrt v, 1)`` of ``E``, adjoining square roots as needed."""
    s = parse_rat(s)
    al, ga = E.params.alpha, E.params.gamma
    # u + v = -(s^2+1),  (1-g) u + (1+ag) v = -(1+a)
    det2 = (1 + al * ga) - (1 - ga)
    u = (-(s * s + 1) * (1 + al * ga) + (1 + al)) / det2
    v = -(s * s + 1) - u
    if u == 0 or v == 0:
        raise DegenerateSample(f"s = {s} gives x1^2 = {u}, x2^2 = {v}")
    tower = QQ if tower is None else tower
    tower, x1 = sqrt_adjoin(tower, u)
    tower, x2 = sqrt_adjoin(tower, v)
    return ProjPoint([s, x1, x2, Fraction(1)]), tower


def sample_points(E: CurveE, seeds: Iterable, tower: Tower | None = None):
    """Sample one point per seed in a single shared tower, skipping degenerate seeds."""
    pts = []
    for s in seeds:
        try:
            p, tower = sample_point(E, s, tower)
        except DegenerateSample:
            continue
        pts.append(p)
    return pts, tower


@dataclass(frozen=True)
class TwoTorsion:
    o: ProjPoint
    xi: tuple  # (xi_1, xi_2, xi_3)
    tower: Tower

    def points(self) -> list[ProjPoint]:
        return [self.o, *self.xi]


def two_torsion(p: Params, tower: Tower | None = None) -> TwoTorsion:
    d = derived_constants(p)
    tower = QQ if tower is None else tower
    tower, r1 = sqrt_adjoin(tower, d.nu - 1)
    tower, r2 = sqrt_adjoin(tower, 1 - d.mu)
    tower, r3 = sqrt_adjoin(tower, d.mu - d.nu)
    o = ProjPoint([Fraction(0), r1, r2, r3])
    return TwoTorsion(o, tuple(gamma_act(g, o) for g in (1, 2, 3)), tower)


def singular_quadrics(p: Params) -> list[Quadric]:
    d = derived_constants(p)
    mu, nu = d.mu, d.nu
    return [
        Quadric.diagonal([0, mu, nu, 1]),
        Quadric.diagonal([mu, 0, mu - nu, mu - 1]),
        Quadric.diagonal([nu, nu - mu, 0, nu - 1]),
        Quadric.diagonal([1, 1 - mu, 1 - nu, 0]),
    ]


def quadric_in_pencil(E: CurveE, Q: Quadric) -> bool:
    """Is ``Q`` a linear combination of the two forms defining ``E``?"""
    span = Subspace(10, [q.vector() for q in E.quadrics])
    return span.contains(Q.vector())


def coplanar(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, p4: ProjPoint) -> bool:
    return not det([list(p.coords) for p in (p1, p2, p3, p4)])


def line_on_quadric(p: ProjPoint, q: ProjPoint, Q: Quadric) -> bool:
    if p == q:
        raise DegenerateLine("a line needs two distinct points")
    mid = [a + b for a, b in zip(p.coords, q.coords)]
    return not Q(p.coords) and not Q(q.coords) and not Q(mid)


# -- branch points and cross-ratios -------------------------------------------

def cross_ratio(z1, z2, z3, z4):
    return lower((z1 - z3) * (z2 - z4) / ((z2 - z3) * (z1 - z4)))


def cross_ratio_orbit(zs: Sequence) -> set:
    return {cross_ratio(*[zs[k] for k in perm]) for perm in permutations(range(4))}


def lambda_orbit(lam) -> set:
    return {lower(x) for x in (lam, 1 / lam, 1 - lam, 1 / (1 - lam),
                               lam / (lam - 1), (lam - 1) / lam)}


@dataclass(frozen=True)
class BranchData:
    images: tuple  # affine coordinates s/t of h(o), h(xi_1), h(xi_2), h(xi_3)
    formula: tuple  # the four values (+-sqrt(mu nu - nu) +- sqrt(mu nu - mu)) / sqrt(mu - nu)
    tower: Tower


def branch_images(p: Params) -> BranchData:
    """Images of ``o, xi_1, xi_2, xi_3`` under ``(x0..x3) -> (sqrt(-nu) x2 + sqrt(mu) x1 : x3)``."""
    d = derived_constants(p)
    tt = two_torsion(p)
    tower, rn = sqrt_adjoin(tt.tower, -d.nu)
    tower, rm = sqrt_adjoin(tower, d.mu)
    images = []
    for pt in tt.points():
        _, x1, x2, x3 = pt.coords
        images.append(lower((rn * x2 + rm * x1) / x3))
    tower, s1 = sqrt_adjoin(tower, d.mu * d.nu - d.nu)
    tower, s2 = sqrt_adjoin(tower, d.mu * d.nu - d.mu)
    tower, s3 = sqrt_adjoin(tower, d.mu - d.nu)
    formula = tuple(lower((e1 * s1 + e2 * s2) / s3) for e1, e2 in product((1, -1), repeat=2))
    return BranchData(tuple(images), formula, tower)


def branch_cross_ratio_check(p: Params) -> bool:
    """Do the branch points of ``E -> P^1`` have cross-ratio orbit equal to that of lambda?"""
    data = branch_images(p)
    zs = data.images
    if len(set(zs)) != 4:
        return False
    if set(zs) != set(data.formula):
        return False
    return cross_ratio_orbit(zs) == lambda_orbit(derived_constants(p).lam)


# -- the Weierstrass model ----------------------------------------------------

@dataclass(frozen=True)
class WeierstrassCurve:
    """``y^2 z = x (x - z)(x - lam z)`` with identity ``(0, 1, 0)``."""

    lam: object

    def __post_init__(self):
        if self.lam in (0, 1):
            raise ValueError("lambda must avoid 0 and 1")

    @property
    def identity(self) -> ProjPoint:
        return ProjPoint([0, 1, 0])

    def contains(self, P: ProjPoint) -> bool:
        x, y, z = P.coords
        return not lower(y * y * z - x * (x - z) * (x - self.lam * z))

    def two_torsion(self) -> list[ProjPoint]:
        return [ProjPoint(c) for c in ((0, 1, 0), (0, 0, 1), (1, 0, 1), (self.lam, 0, 1))]


def weierstrass_add(W: WeierstrassCurve, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    for pt in (P, Q):
        if len(pt) != 3 or not W.contains(pt):
            raise NotOnCurve(repr(pt))
    if not P[2]:
        return Q
    if not Q[2]:
        return P
    x1, y1 = lower(P[0] / P[2]), lower(P[1] / P[2])
    x2, y2 = lower(Q[0] / Q[2]), lower(Q[1] / Q[2])
    a2, a4 = -(1 + W.lam), W.lam
    if x1 == x2:
        if not lower(y1 + y2):
            return W.identity
        m = (3 * x1 * x1 + 2 * a2 * x1 + a4) / (2 * y1)
    else:
        m = (y2 - y1) / (x2 - x1)
    x3 = lower(m * m - a2 - x1 - x2)
    y3 = lower(-(y1 + m * (x3 - x1)))
    return ProjPoint([x3, y3, Fraction(1)])


def weierstrass_double(W: WeierstrassCurve, P: ProjPoint) -> ProjPoint:
    return weierstrass_add(W, P, P)
