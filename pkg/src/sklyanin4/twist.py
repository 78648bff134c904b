"""Gradings by finite abelian groups, 2-cocycles and cocycle twists.

Twisting acts on presentations only: a word ``x_i x_j`` of bidegree
``(chi_i, chi_j)`` is rescaled by ``mu(chi_i, chi_j)^{-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Mapping, Sequence

from .linalg import det, identity, matmul, nullspace
from .ncalg import NcTensor, QuadAlgebra
from .scalars import QQ, Tower, adjoin_root, lower

__all__ = [
    "GradingGroup",
    "Cocycle2",
    "MatrixBasis",
    "NotProjectiveBasis",
    "UnsupportedDegree",
    "UnsupportedGroup",
    "TowerExtensionFailed",
    "KLEIN",
    "SKLYANIN_CHARS",
    "quaternion_basis",
    "clock_shift_basis",
    "cyclotomic_poly",
    "root_of_unity",
    "cocycle_from_matrix_basis",
    "trivial_cocycle",
    "twist_algebra",
    "twist_element",
    "torsor_strong_grading_check",
    "Mu2Cohomology",
    "mu2_cohomology",
]


class NotProjectiveBasis(ValueError):
    pass


class UnsupportedDegree(ValueError):
    pass


class UnsupportedGroup(ValueError):
    pass


class TowerExtensionFailed(ArithmeticError):
    pass


@dataclass(frozen=True)
class GradingGroup:
    """``Z/n_1 x ... x Z/n_r`` with elements as exponent tuples."""

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if any(n < 1 for n in self.orders):
            raise ValueError("cyclic factor orders must be positive")

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        return list(product(*(range(n) for n in self.orders)))

    def add(self, g, h) -> tuple[int, ...]:
        return tuple((x + y) % n for x, y, n in zip(g, h, self.orders))

    def neg(self, g) -> tuple[int, ...]:
        return tuple((-x) % n for x, n in zip(g, self.orders))

    def __len__(self):
        out = 1
        for n in self.orders:
            out *= n
        return out


KLEIN = GradingGroup((2, 2))

# degree of y_j (equivalently x_j) for the Klein-four grading
SKLYANIN_CHARS = ((0, 0), (1, 0), (0, 1), (1, 1))


@dataclass
class Cocycle2:
    group: GradingGroup
    table: dict = field(default_factory=dict)

    def __call__(self, g, h):
        return self.table[(tuple(g), tuple(h))]

    def is_normalized(self) -> bool:
        e = self.group.zero
        return all(self(e, g) == 1 and self(g, e) == 1 for g in self.group.elements())

    def satisfies_identity(self) -> bool:
        G = self.group
        els = G.elements()
        for g, h, k in product(els, repeat=3):
            if self(g, h) * self(G.add(g, h), k) != self(h, k) * self(g, G.add(h, k)):
                return False
        return True

    def is_valid(self) -> bool:
        return (all(v for v in self.table.values()) and self.is_normalized()
                and self.satisfies_identity())

    def inverse(self) -> "Cocycle2":
        return Cocycle2(self.group, {k: lower(1 / v) for k, v in self.table.items()})


def trivial_cocycle(G: GradingGroup) -> Cocycle2:
    return Cocycle2(G, {(g, h): Fraction(1) for g in G.elements() for h in G.elements()})


@dataclass
class MatrixBasis:
    group: GradingGroup
    mats: dict
    tower: Tower = QQ

    def __getitem__(self, g):
        return self.mats[tuple(g)]


def quaternion_basis(i) -> MatrixBasis:
    """``q_0 = 1, q_1 = diag(i,-i), q_2 = [[0,i],[i,0]], q_3 = [[0,-1],[1,0]]``."""
    z, one = Fraction(0), Fraction(1)
    mats = {
        (0, 0): [[one, z], [z, one]],
        (1, 0): [[i, z], [z, -i]],
        (0, 1): [[z, i], [i, z]],
        (1, 1): [[z, -one], [one, z]],
    }
    tower = getattr(i, "tower", QQ)
    return MatrixBasis(KLEIN, mats, tower)




def _poly_exact_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


def cyclotomic_poly(n: int) -> list[int]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_poly(d))
    return poly


def root_of_unity(n: int, tower: Tower = QQ):
    """``(tower', zeta)`` with ``zeta`` a primitive n-th root of unity."""
    if n == 1:
        return tower, Fraction(1)
    if n == 2:
        return tower, Fraction(-1)
    new = adjoin_root(tower, cyclotomic_poly(n), f"zeta{n}")
    zeta = new.gen()
    power = new(1)
    for k in range(1, n + 1):
        power = power * zeta
        if (power == 1) != (k == n):
            raise TowerExtensionFailed(f"adjoined root is not a primitive {n}-th root")
    return new, zeta


def clock_shift_basis(n: int, tower: Tower = QQ) -> MatrixBasis:
    """``T_{(a,b)} = C^a S^b`` with clock ``C = diag(zeta^k)`` and cyclic shift ``S``."""
    tower, zeta = root_of_unity(n, tower)
    clock = [[zeta ** r if r == c else Fraction(0) for c in range(n)] for r in range(n)]
    shift = [[Fraction(int(r == (c + 1) % n)) for c in range(n)] for r in range(n)]
    G = GradingGroup((n, n))
    mats = {}
    for a, b in G.elements():
        m = identity(n)
        for _ in range(a):
            m = matmul(m, clock)
        for _ in range(b):
            m = matmul(m, shift)
        mats[(a, b)] = m
    return MatrixBasis(G, mats, tower)


def _proportionality(m, target):
    """The scalar ``s`` with ``m == s * target``, or None."""
    n = len(target)
    piv = next(((r, c) for r in range(n) for c in range(n) if target[r][c]), None)
    if piv is None:
        return None
    s = lower(m[piv[0]][piv[1]] / target[piv[0]][piv[1]])
    for r in range(n):
        for c in range(n):
            if m[r][c] != s * target[r][c]:
                return None
    return s


def cocycle_from_matrix_basis(basis: MatrixBasis) -> Cocycle2:
    G = basis.group
    table = {}
    for g in G.elements():
        for h in G.elements():
            s = _proportionality(matmul(basis[g], basis[h]), basis[G.add(g, h)])
            if not s:
                raise NotProjectiveBasis(f"q_{g} q_{h} is not a multiple of q_{G.add(g, h)}")
            table[(g, h)] = s
    return Cocycle2(G, table)


def _check_chars(A_or_n, chars: Sequence):
    n = A_or_n if isinstance(A_or_n, int) else A_or_n.ngens
    if len(chars) != n:
        raise ValueError("one character per generator required")


def _twist_tensor(t: NcTensor, chars: Sequence, mu: Cocycle2) -> NcTensor:
    return NcTensor(t.degree, {
        w: c / mu(chars[w[0]], chars[w[1]]) for w, c in t.terms.items()
    })


def twist_algebra(A: QuadAlgebra, chars: Sequence, mu: Cocycle2,
                  gens: Sequence[str] | None = None) -> QuadAlgebra:
    """Rescale each word ``x_i x_j`` of every relation by ``mu(chi_i, chi_j)^{-1}``."""
    _check_chars(A, chars)
    rels = [_twist_tensor(r, chars, mu) for r in A.relations]
    return QuadAlgebra(gens or A.gens, rels, name=(A.name + "~") if A.name else "")


def twist_element(z: NcTensor, chars: Sequence, mu: Cocycle2) -> NcTensor:
    if z.degree != 2:
        raise UnsupportedDegree(f"twisting is implemented in degree 2, got {z.degree}")
    return _twist_tensor(z, chars, mu)


# -- matrix torsor ------------------------------------------------------------

def _conj_operator(g, ginv, n):
    """Matrix of ``X -> g X g^{-1}`` on row-major vectorized ``n x n`` matrices."""
    out = [[Fraction(0)] * (n * n) for _ in range(n * n)]
    for r in range(n):
        for c in range(n):
            # image of the matrix unit E_rc is (column r of g)(row c of g^{-1})
            for rr in range(n):
                if not g[rr][r]:
                    continue
                for cc in range(n):
                    if ginv[c][cc]:
                        out[rr * n + cc][r * n + c] = lower(
                            out[rr * n + cc][r * n + c] + g[rr][r] * ginv[c][cc])
    return out


def torsor_strong_grading_check(n: int) -> bool:
    """Is ``M_n`` strongly graded by the characters of the clock/shift conjugation action?"""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return True
    basis = clock_shift_basis(n)
    clock, shift = basis[(1, 0)], basis[(0, 1)]
    zeta = clock[1][1]
    clock_inv = [[lower(1 / clock[r][c]) if r == c else Fraction(0) for c in range(n)]
                 for r in range(n)]
    shift_inv = [list(row) for row in zip(*shift)]
    ops = [_conj_operator(clock, clock_inv, n), _conj_operator(shift, shift_inv, n)]
    N = n * n
    pieces = {}
    total = 0
    for s, t in product(range(n), repeat=2):
        rows = []
        for op, e in zip(ops, (s, t)):
            ev = zeta ** e if e else Fraction(1)
            rows += [[lower(op[r][c] - (ev if r == c else 0)) for c in range(N)]
                     for r in range(N)]
        space = nullspace(rows, N)
        if len(space) != 1:
            return False
        m = [space[0][r * n:(r + 1) * n] for r in range(n)]
        if not det(m):
            return False
        pieces[(s, t)] = m
        total += 1
    if total != N:
        return False
    G = basis.group
    for g in G.elements():
        for h in G.elements():
            prod = matmul(pieces[g], pieces[h])
            if not _proportionality(prod, pieces[G.add(g, h)]):
                return False
    return True


# -- mu_2-valued cohomology of the Klein four-group ---------------------------

def _gf2_rank(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


@dataclass
class Mu2Cohomology:
    """Cocycle data for ``(Z/2)^2`` acting on ``mu_2 x mu_2``, written additively."""

    action: str
    z1: frozenset
    b1: frozenset
    h2_dim: int

    @property
    def z1_size(self) -> int:
        return len(self.z1)

    @property
    def b1_size(self) -> int:
        return len(self.b1)

    @property
    def h1_size(self) -> int:
        return self.z1_size // self.b1_size

    @property
    def h2_size(self) -> int:
        return 2 ** self.h2_dim

    @staticmethod
    def encode(f: Mapping) -> tuple:
        """Turn ``{g: (+-1, +-1)}`` into the additive key used for ``z1``/``b1``."""
        return tuple(tuple(int(v == -1) for v in f[g]) for g in KLEIN.elements())

    def is_cocycle(self, f: Mapping) -> bool:
        return self.encode(f) in self.z1

    def is_coboundary(self, f: Mapping) -> bool:
        return self.encode(f) in self.b1


def _act(action: str) -> Callable:
    def act(g, m):
        if action == "swap" and g[1]:
            return (m[1], m[0])
        return m
    return act


def mu2_cohomology(G: GradingGroup, action: str = "swap") -> Mu2Cohomology:
    """Enumerate 1-cocycles and 1-coboundaries; compute ``H^2`` by GF(2) rank.

    ``(1, 0)`` acts trivially; ``(0, 1)`` swaps the factors when
    ``action == "swap"`` and acts trivially when ``action == "trivial"``.
    """
    if tuple(G.orders) != (2, 2) or action not in ("swap", "trivial"):
        raise UnsupportedGroup(f"only (Z/2)^2 with swap/trivial action, got {G.orders}, {action}")
    act = _act(action)
    els = G.elements()
    M = [(0, 0), (0, 1), (1, 0), (1, 1)]

    def madd(x, y):
        return (x[0] ^ y[0], x[1] ^ y[1])

    z1 = set()
    for values in product(M, repeat=len(els)):
        f = dict(zip(els, values))
        if all(f[G.add(g, h)] == madd(f[g], act(g, f[h])) for g in els for h in els):
            z1.add(values)
    b1 = set()
    for m in M:
        b1.add(tuple(madd(act(g, m), m) for g in els))

    # cochains C^n = maps G^n -> F_2^2, coordinates indexed by (tuple, slot)
    def cochain_index(n):
        keys = [(gs, s) for gs in product(els, repeat=n) for s in (0, 1)]
        return {k: i for i, k in enumerate(keys)}

    def coboundary(n):
        """Rows of d: C^n -> C^{n+1} as bitmasks over C^n coordinates, one per target."""
        src, dst = cochain_index(n), cochain_index(n + 1)
        rows = [0] * len(dst)
        for gs in product(els, repeat=n + 1):
            for s in (0, 1):
                row = 0
                # g_1 . f(g_2..g_{n+1})
                g1 = gs[0]
                ss = (1 - s) if (action == "swap" and g1[1]) else s
                row ^= 1 << src[(gs[1:], ss)]
                for k in range(n):
                    merged = gs[:k] + (G.add(gs[k], gs[k + 1]),) + gs[k + 2:]
                    row ^= 1 << src[(merged, s)]
                row ^= 1 << src[(gs[:-1], s)]
                rows[dst[(gs, s)]] = row
        return rows, len(src)

    d1, _ = coboundary(1)
    d2, n2 = coboundary(2)
    rank_d1 = _gf2_rank(d1)
    rank_d2 = _gf2_rank(d2)
    h2_dim = (n2 - rank_d2) - rank_d1
    return Mu2Cohomology(action, frozenset(z1), frozenset(b1), h2_dim)
