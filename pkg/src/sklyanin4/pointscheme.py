"""The twenty points of the point scheme of Q~, the involution theta, and the map sigma for Q."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .geometry import CurveE, MultiPoly, ProjPoint, gamma_act, monomials, on_curve
from .linalg import Subspace, det, nullspace, rank
from .ncalg import QuadAlgebra, RelationMatrix, multilinearize
from .sklyanin import Params, qtilde_relations

__all__ = [
    "PointFamily",
    "NotInFamily",
    "VerificationFailed",
    "SpanMismatch",
    "RankDegenerate",
    "GROUPS",
    "build_point_family",
    "theta",
    "verify_point_scheme",
    "relation_matrix_polys",
    "minors",
    "reorganized_quartics",
    "minors_check",
    "four_quadrics_matrix",
    "four_quadrics_independence",
    "sigma",
    "random_rational_point",
]

GROUPS = ("inf", "0", "1", "2", "3")


class NotInFamily(KeyError):
    pass


class VerificationFailed(AssertionError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SpanMismatch(AssertionError):
    pass


class RankDegenerate(ValueError):
    pass


@dataclass
class PointFamily:
    """Table rows ``u, gamma_1 u, gamma_2 u, gamma_3 u`` for each group."""

    params: Params
    groups: dict = field(default_factory=dict)

    def points(self) -> list[tuple[str, int, ProjPoint]]:
        return [(g, r, pt) for g in GROUPS for r, pt in enumerate(self.groups[g])]

    def locate(self, u: ProjPoint) -> tuple[str, int]:
        for g, r, pt in self.points():
            if pt == u:
                return g, r
        raise NotInFamily(repr(u))

    def __len__(self):
        return sum(len(v) for v in self.groups.values())


def build_point_family(p: Params) -> PointFamily:
    a, b, c, i = p.a, p.b, p.c, p.i
    one, zero = Fraction(1), Fraction(0)
    rows = {
        "inf": [(one, zero, zero, zero), (zero, one, zero, zero),
                (zero, zero, one, zero), (zero, zero, zero, one)],
        "0": [(1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1)],
        "1": [(b * c, -i, -i * b, -c), (b * c, -i, i * b, c),
              (b * c, i, -i * b, c), (b * c, i, i * b, -c)],
        "2": [(a * c, -a, -i, -i * c), (a * c, -a, i, i * c),
              (a * c, a, -i, i * c), (a * c, a, i, -i * c)],
        "3": [(a * b, -i * a, -b, -i), (a * b, -i * a, b, i),
              (a * b, i * a, -b, i), (a * b, i * a, b, -i)],
    }
    return PointFamily(p, {g: [ProjPoint(r) for r in rs] for g, rs in rows.items()})


def theta(f: PointFamily, u: ProjPoint) -> ProjPoint:
    """Identity on the first two groups; ``gamma_i`` on group ``i``.

    The returned point is the stored table representative.
    """
    g, r = f.locate(u)
    if g in ("inf", "0"):
        return f.groups[g][r]
    # rows are the Klein orbit in order e, g1, g2, g3; gamma_i permutes rows by xor
    return f.groups[g][r ^ int(g)]


def _kernel_point(m) -> ProjPoint | None:
    ker = nullspace(m, len(m[0]))
    if len(ker) != 1:
        return None
    return ProjPoint(ker[0])


@dataclass
class PointSchemeReport:
    ranks: dict
    kernel_ok: dict
    residuals_ok: dict
    symmetric_ok: dict
    theta_involution: bool
    theta_gamma_commute: bool
    distinct: int
    random_ranks: list

    @property
    def ok(self) -> bool:
        return (all(r == 3 for r in self.ranks.values())
                and all(self.kernel_ok.values()) and all(self.residuals_ok.values())
                and all(self.symmetric_ok.values()) and self.theta_involution
                and self.theta_gamma_commute and self.distinct == 20
                and all(r == 4 for r in self.random_ranks))


def random_rational_point(rng: random.Random, height: int = 9) -> ProjPoint:
    while True:
        coords = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(4)]
        if any(coords):
            return ProjPoint(coords)


def verify_point_scheme(A: QuadAlgebra, f: PointFamily, n_random: int = 20,
                        seed: int = 0) -> PointSchemeReport:
    M = multilinearize(A)
    ranks, kernel_ok, residuals_ok, symmetric_ok = {}, {}, {}, {}
    for g, r, u in f.points():
        key = f"{g}.{r}"
        m = M.evaluate(u.coords)
        ranks[key] = rank(m)
        t = theta(f, u)
        kernel_ok[key] = ranks[key] == 3 and _kernel_point(m) == t
        residuals_ok[key] = not any(M.apply(u.coords, t.coords))
        symmetric_ok[key] = not any(M.apply(t.coords, u.coords))
        if ranks[key] != 3 or not kernel_ok[key] or not residuals_ok[key]:
            raise VerificationFailed(f"point {key} fails the rank/kernel test",
                                     witness={"point": u, "rank": ranks[key],
                                              "residual": M.apply(u.coords, t.coords)})
    pts = [u for _, _, u in f.points()]
    involution = all(theta(f, theta(f, u)) == u for u in pts)
    commute = all(theta(f, gamma_act(k, u)) == gamma_act(k, theta(f, u))
                  for u in pts for k in (1, 2, 3))
    rng = random.Random(seed)
    random_ranks = []
    while len(random_ranks) < n_random:
        v = random_rational_point(rng)
        if v in set(pts):
            continue
        random_ranks.append(rank(M.evaluate(v.coords)))
    report = PointSchemeReport(ranks, kernel_ok, residuals_ok, symmetric_ok,
                               involution, commute, len(set(pts)), random_ranks)
    if not report.ok:
        raise VerificationFailed("point scheme verification failed", witness=report)
    return report


# -- minors -------------------------------------------------------------------

def relation_matrix_polys(M: RelationMatrix) -> list[list[MultiPoly]]:
    return [[MultiPoly.linear([form.get(i, 0) for i in range(M.ngens)]) for form in row]
            for row in M.forms]


def _poly_det(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    out = MultiPoly(m[0][0].nvars)
    for c in range(n):
        if not m[0][c]:
            continue
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        term = m[0][c] * _poly_det(minor)
        out = out + term if c % 2 == 0 else out - term
    return out


def minors(A: QuadAlgebra) -> dict[tuple, MultiPoly]:
    """All maximal (4 x 4) minors of the multilinearized relation matrix, by row set."""
    polys = relation_matrix_polys(multilinearize(A))
    return {rows: _poly_det([polys[r] for r in rows])
            for rows in combinations(range(len(polys)), A.ngens)}


def reorganized_quartics(p: Params) -> list[MultiPoly]:
    """Fifteen factored quartics whose span should equal the span of the minors."""
    al, be, ga = p.alphas
    y = [MultiPoly.var(j) for j in range(4)]

    def sq(c0, c1, c2, c3):
        return y[0] * y[0] * c0 + y[1] * y[1] * c1 + y[2] * y[2] * c2 + y[3] * y[3] * c3

    def mono(*e):
        return MultiPoly(4, {tuple(e): Fraction(1)})

    big = sq(1, be * ga, al * ga, al * be)
    qa = sq(1, -1, -al, al)
    qb = sq(1, be, -1, -be)
    qc = sq(1, -ga, ga, -1)
    out = [
        (y[2] * y[3] - y[0] * y[1]) * big,
        (y[1] * y[3] - y[0] * y[2]) * big,
        (y[1] * y[2] - y[0] * y[3]) * big,
        (y[0] * y[1] + y[2] * y[3]) * qa,
        (y[0] * y[2] + y[1] * y[3] * be) * qa,
        (y[0] * y[3] - y[1] * y[2] * ga) * qa,
        (y[0] * y[1] - y[2] * y[3] * al) * qb,
        (y[0] * y[2] + y[1] * y[3]) * qb,
        (y[0] * y[3] + y[1] * y[2] * ga) * qb,
        (y[0] * y[1] + y[2] * y[3] * al) * qc,
        (y[0] * y[2] - y[1] * y[3] * be) * qc,
        (y[0] * y[3] + y[1] * y[2]) * qc,
    ]
    e = {  # squares-only quartics, written on exponent vectors
        "1133": mono(0, 2, 0, 2), "2233": mono(0, 0, 2, 2), "0011": mono(2, 2, 0, 0),
        "0022": mono(2, 0, 2, 0), "1122": mono(0, 2, 2, 0), "0033": mono(2, 0, 0, 2),
    }
    out.append(e["1133"] * (al * be) - e["2233"] * (al * be) + e["0011"] * be
               - e["1133"] * be + e["0022"] * al - e["2233"] * al + e["0011"] - e["0022"])
    out.append(e["1122"] * (be * ga) - e["1133"] * (be * ga) + e["0022"] * ga
               - e["1122"] * ga + e["0033"] * be - e["1133"] * be + e["0022"] - e["0033"])
    out.append(e["1122"] * (al * ga) - e["2233"] * (al * ga) + e["2233"] * al
               - e["0011"] * ga + e["1122"] * ga - e["0033"] * al + e["0011"] - e["0033"])
    return out


@dataclass
class MinorsReport:
    count: int
    vanish_on_family: bool
    minors_rank: int
    reference_rank: int
    spans_equal: bool
    nonzero_at_random: bool


def minors_check(A: QuadAlgebra, f: PointFamily, seed: int = 0) -> MinorsReport:
    ms = list(minors(A).values())
    pts = [u for _, _, u in f.points()]
    vanish = all(not m(u.coords) for m in ms for u in pts)
    mons = monomials(4, 4)
    span_m = Subspace(len(mons), [m.vector(mons) for m in ms])
    span_r = Subspace(len(mons), [q.vector(mons) for q in reorganized_quartics(f.params)])
    rng = random.Random(seed)
    v = random_rational_point(rng)
    nonzero = any(m(v.coords) for m in ms)
    report = MinorsReport(len(ms), vanish, span_m.dim, span_r.dim, span_m == span_r, nonzero)
    if not (vanish and report.spans_equal):
        raise SpanMismatch(f"minors check failed: {report}")
    return report


def four_quadrics_matrix(p: Params) -> list[list[Fraction]]:
    """Coefficients on ``y_0^2..y_3^2`` of the four quadric factors above."""
    al, be, ga = p.alphas
    return [
        [Fraction(1), be * ga, al * ga, al * be],
        [Fraction(1), Fraction(-1), -al, al],
        [Fraction(1), be, Fraction(-1), -be],
        [Fraction(1), -ga, ga, Fraction(-1)],
    ]


def four_quadrics_independence(p: Params) -> bool:
    al, be, ga = p.alphas
    d = det(four_quadrics_matrix(p))
    s = 1 + al * be + be * ga + ga * al
    return d == -(s * s) and s == (1 + al) * (1 + be) * (1 + ga) and d != 0


# -- sigma for Q ------------------------------------------------------------------

def sigma(Qalg: QuadAlgebra, p: ProjPoint, E: CurveE | None = None) -> ProjPoint:
    """The kernel direction of ``M_Q(p)``; checks the image lies on ``E`` when given."""
    m = multilinearize(Qalg).evaluate(p.coords)
    r = rank(m)
    if r < 3:
        raise RankDegenerate(f"rank {r} at {p!r}")
    if r == 4:
        raise VerificationFailed(f"M_Q has trivial kernel at {p!r}", witness=p)
    image = _kernel_point(m)
    if E is not None and not on_curve(E, image):
        raise VerificationFailed(f"sigma({p!r}) = {image!r} is off E", witness=image)
    return image


def qtilde_point_family(p: Params) -> tuple[QuadAlgebra, PointFamily]:
    return qtilde_relations(p), build_point_family(p)
