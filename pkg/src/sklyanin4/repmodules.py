"""Point modules, the Theta constants, fat points, line modules and the equivariant frame."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .geometry import CurveE, ProjPoint, gamma_act, on_curve
from .linalg import Subspace, identity, matmul, rank
from .ncalg import NcTensor, QuadAlgebra, left_quotient_dims, multilinearize
from .pointscheme import (
    PointFamily,
    VerificationFailed,
    sigma,
    theta,
)
from .scalars import lower
from .twist import quaternion_basis

__all__ = [
    "PointModuleWitness",
    "LineForms",
    "DegenerateSecant",
    "NoValidPattern",
    "LINE_DIMS",
    "point_module_witness",
    "constant_sequence_is_point_module",
    "theta_constant",
    "expected_theta_constants",
    "fat_point_span_check",
    "secant_pairs",
    "line_forms_q",
    "line_forms_qtilde",
    "passing_patterns",
    "verify_line_module",
    "degree_one_annihilation",
    "equivariant_frame",
    "verify_equivariant_table",
]

LINE_DIMS = (1, 2, 3, 4, 5)


class DegenerateSecant(ValueError):
    pass


class NoValidPattern(LookupError):
    pass


# -- point modules ------------------------------------------------------------

@dataclass
class PointModuleWitness:
    algebra: QuadAlgebra
    points: list

    def period(self) -> int:
        for k in range(1, len(self.points)):
            if self.points[k] == self.points[0]:
                return k
        return len(self.points)


def point_module_witness(f: PointFamily, u: ProjPoint, N: int,
                         A: QuadAlgebra | None = None) -> PointModuleWitness:
    """The sequence ``theta^n(u)`` with every relation vanishing on ``(p_{n+1}, p_n)``."""
    from .sklyanin import qtilde_relations

    A = A or qtilde_relations(f.params)
    M = multilinearize(A)
    seq = [u]
    for _ in range(N):
        seq.append(theta(f, seq[-1]))
    for n in range(N):
        res = M.apply(seq[n + 1].coords, seq[n].coords)
        if any(res):
            raise VerificationFailed(f"relations do not vanish at step {n}",
                                     witness={"pair": (seq[n + 1], seq[n]), "residual": res})
    return PointModuleWitness(A, seq)


def constant_sequence_is_point_module(A: QuadAlgebra, v: ProjPoint) -> bool:
    return not any(multilinearize(A).apply(v.coords, v.coords))


def theta_constant(f: PointFamily, u: ProjPoint):
    """``sum_j u_j theta(u)_j`` on the stored table representatives."""
    t = theta(f, u)
    rep = f.groups[f.locate(u)[0]][f.locate(u)[1]]
    return lower(sum((x * y for x, y in zip(rep.coords, t.coords)), Fraction(0)))


def expected_theta_constants(p) -> dict:
    al, be, ga = p.alphas
    return {"inf": Fraction(1), "0": Fraction(4), "1": (be - 1) * (ga + 1),
            "2": (al + 1) * (ga - 1), "3": (al - 1) * (be + 1)}


# -- fat points -----------------------------------------------------------------

def fat_point_span_check(Qalg: QuadAlgebra, p: ProjPoint, steps: int, v: Sequence, i,
                         E: CurveE | None = None) -> bool:
    """Do the vectors ``x_j(p_n) q_j v`` span ``k^2`` for ``p_n = sigma^n(p)``, ``n <= steps``?"""
    if not any(v):
        raise ValueError("v must be non-zero")
    q = quaternion_basis(i)
    mats = [q[(0, 0)], q[(1, 0)], q[(0, 1)], q[(1, 1)]]
    pn = p
    for n in range(steps + 1):
        if n:
            pn = sigma(Qalg, pn, E)
        cols = []
        for j in range(4):
            qv = [lower(mats[j][r][0] * v[0] + mats[j][r][1] * v[1]) for r in range(2)]
            cols.append([lower(pn[j] * x) for x in qv])
        if rank(cols) != 2:
            return False
    return True


# -- line modules -------------------------------------------------------------

def secant_pairs(i: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Coordinate pairs on which ``gamma_i`` acts by a common sign: ``(0, i)`` and the rest."""
    rest = tuple(k for k in (1, 2, 3) if k != i)
    return (0, i), rest


def _pair_coeffs(p: ProjPoint, i: int) -> list[tuple[int, int, object, object]]:
    out = []
    for a, b in secant_pairs(i):
        out.append((a, b, p[b], -p[a]))
    return out


def line_forms_q(p: ProjPoint, i: int, flipped: bool = False) -> tuple[NcTensor, NcTensor]:
    """Two forms cutting out the secant through ``p`` and ``gamma_i(p)``.

    With ``flipped`` the second coefficient of each pair changes sign, which
    gives the secant through ``gamma_j(p)`` and ``gamma_k(p)``.
    """
    if i not in (1, 2, 3):
        raise ValueError("i must be 1, 2 or 3")
    if p == gamma_act(i, p):
        raise DegenerateSecant(f"{p!r} is fixed by gamma_{i}")
    forms = []
    for a, b, ca, cb in _pair_coeffs(p, i):
        if not ca and not cb:
            raise DegenerateSecant(f"coordinates {a}, {b} of {p!r} both vanish")
        forms.append(NcTensor(1, {(a,): ca, (b,): -cb if flipped else cb}))
    return forms[0], forms[1]


@dataclass
class LineForms:
    forms: tuple
    point: ProjPoint
    i: int
    pattern: tuple  # per pair, the multipliers (eps_a, eps_b)

    def conjugate(self, imag) -> "LineForms":
        """Replace ``i`` by ``-i`` in the pattern."""
        swap = {"i": "-i", "-i": "i"}
        pat = tuple(tuple(swap.get(e, e) for e in pair) for pair in self.pattern)
        return _build_line_forms(self.point, self.i, pat, imag)


_PATTERNS = (1, "i", -1, "-i")


def _mult(e, imag):
    if e == "i":
        return imag
    if e == "-i":
        return -imag
    return Fraction(e)


def _build_line_forms(p: ProjPoint, i: int, pattern, imag) -> LineForms:
    forms = []
    for (a, b, ca, cb), (ea, eb) in zip(_pair_coeffs(p, i), pattern):
        forms.append(NcTensor(1, {(a,): _mult(ea, imag) * ca, (b,): _mult(eb, imag) * cb}))
    return LineForms(tuple(forms), p, i, tuple(pattern))


def _candidate_patterns(i: int):
    if i == 1:
        yield ((1, "i"), ("i", 1))
    for ra, rb in product(_PATTERNS, repeat=2):
        yield ((1, ra), (1, rb))


def verify_line_module(A: QuadAlgebra, lf: LineForms, nmax: int = 4) -> bool:
    span = Subspace(A.ngens, [f.vector(A.ngens) for f in lf.forms])
    if span.dim != 2:
        return False
    return tuple(left_quotient_dims(A, list(lf.forms), nmax)) == LINE_DIMS[:nmax + 1]


def line_forms_qtilde(A: QuadAlgebra, p: ProjPoint, i: int, imag, nmax: int = 4) -> LineForms:
    """Q~ line forms for the secant through ``p`` and ``gamma_i(p)``.

    For ``i = 1`` this is ``b0 y0 + i b1 y1, i b2 y2 + b3 y3``.  Otherwise the
    multipliers are found by searching the patterns that pass Hilbert-function
    verification.
    """
    line_forms_q(p, i)  # degeneracy checks
    for pat in _candidate_patterns(i):
        lf = _build_line_forms(p, i, pat, imag)
        if verify_line_module(A, lf, nmax):
            return lf
    raise NoValidPattern(f"no pattern gives a line module for gamma_{i} at {p!r}")


def passing_patterns(A: QuadAlgebra, p: ProjPoint, i: int, imag, nmax: int = 4) -> list:
    return [pat for pat in _candidate_patterns(i)
            if verify_line_module(A, _build_line_forms(p, i, pat, imag), nmax)]


def degree_one_annihilation(p: ProjPoint, forms: Sequence[NcTensor], imag,
                            conjugate: bool = False) -> bool:
    """Do the forms kill ``e (x) u + e' (x) v`` in degree one?

    ``e`` lives on the secant through ``p, gamma_1(p)`` and ``e'`` on the one
    through ``gamma_2(p), gamma_3(p)``; ``y_j`` acts by ``x_j (x) q_j``.  The
    degree-one part of each factor is ``V`` modulo its two secant forms.
    With ``conjugate`` the generator is ``e (x) v + e' (x) u``.
    """
    q = quaternion_basis(imag)
    mats = [q[(0, 0)], q[(1, 0)], q[(0, 1)], q[(1, 1)]]
    u, v = (Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))
    if conjugate:
        u, v = v, u
    parts = ((line_forms_q(p, 1), u), (line_forms_q(p, 1, flipped=True), v))
    for secant, w in parts:
        # W (x) k^2 inside V (x) k^2, coordinates (j, s) -> 2j + s
        rel = Subspace(8)
        for form in secant:
            for s in (0, 1):
                rel.add({2 * j + s: c for (j,), c in form.terms.items()})
        for form in forms:
            vec: dict = {}
            for (j,), c in form.terms.items():
                for s in (0, 1):
                    x = lower(c * (mats[j][s][0] * w[0] + mats[j][s][1] * w[1]))
                    if x:
                        vec[2 * j + s] = lower(vec.get(2 * j + s, 0) + x)
            if not rel.contains(vec):
                return False
    return True


# -- the equivariant frame ----------------------------------------------------

def equivariant_frame() -> dict[int, list[list[Fraction]]]:
    """``phi_0..phi_3`` on the basis ``(e u, e v, e' u, e' v)``; ``phi_3 = phi_1 phi_2``."""
    z, o = Fraction(0), Fraction(1)
    phi1 = [[o, z, z, z], [z, -o, z, z], [z, z, -o, z], [z, z, z, o]]
    # columns are images: e u -> e' v, e v -> e' u, e' u -> e v, e' v -> e u
    phi2 = [[z, z, z, o], [z, z, o, z], [z, o, z, z], [o, z, z, z]]
    return {0: identity(4), 1: phi1, 2: phi2, 3: matmul(phi1, phi2)}


def _on_frame(qm, u, v):
    """Matrix of ``1 (x) q`` on ``(e u, e v, e' u, e' v)``."""
    def coords(w):
        # w = a u + b v with u = (0,1), v = (1,0)
        return (w[1], w[0])

    def apply(w):
        return (lower(qm[0][0] * w[0] + qm[0][1] * w[1]), lower(qm[1][0] * w[0] + qm[1][1] * w[1]))

    cu, cv = coords(apply(u)), coords(apply(v))
    block = [[cu[0], cv[0]], [cu[1], cv[1]]]
    z = Fraction(0)
    return [block[0] + [z, z], block[1] + [z, z], [z, z] + block[0], [z, z] + block[1]]


def verify_equivariant_table(imag) -> bool:
    """``phi_w (q m) = (q_w q q_w^{-1}) phi_w(m)`` and ``{phi_w}`` is a Klein four-group."""
    q = quaternion_basis(imag)
    keys = [(0, 0), (1, 0), (0, 1), (1, 1)]
    mats = [q[k] for k in keys]
    u, v = (Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))
    phis = equivariant_frame()
    for w in (1, 2, 3):
        qw = mats[w]
        qw_inv = _inverse2(qw)
        for qq in mats:
            conj = matmul(matmul(qw, qq), qw_inv)
            lhs = matmul(phis[w], _on_frame(qq, u, v))
            rhs = matmul(_on_frame(conj, u, v), phis[w])
            if lhs != rhs:
                raise VerificationFailed(f"phi_{w} is not equivariant", witness=(w, qq))
    ident = identity(4)
    for a in range(4):
        for b in range(4):
            if matmul(phis[a], phis[b]) != phis[a ^ b]:
                return False
    return all(matmul(phis[a], phis[a]) == ident for a in range(4))


def _inverse2(m):
    d = lower(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    inv_d = 1 / d
    return [[lower(m[1][1] * inv_d), lower(-m[0][1] * inv_d)],
            [lower(-m[1][0] * inv_d), lower(m[0][0] * inv_d)]]
