"""Exact arithmetic over Q and over towers of algebraic extensions of Q.

A :class:`Tower` is a chain of simple extensions ``Q(t_0)(t_1)...(t_{n-1})``
where ``t_k`` is a root of a monic polynomial whose coefficients live in the
previous level.  A :class:`FieldElem` stores its coordinates over the monomial
basis ``t_0^e_0 ... t_{n-1}^e_{n-1}`` (``0 <= e_k < deg_k``) as a sparse map.

Rationals are plain :class:`fractions.Fraction` objects; every operation on
``FieldElem`` accepts ints and Fractions as well.

Irreducibility of adjoined polynomials is never checked up front.  If a step
polynomial turns out to be reducible, inverting a zero divisor raises
:class:`ZeroDivisor`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Sequence, Union

Rat = Fraction

__all__ = [
    "Rat",
    "Tower",
    "FieldElem",
    "QQ",
    "ZeroDivisor",
    "ZeroInput",
    "TowerMismatch",
    "adjoin_root",
    "sqrt_adjoin",
    "inv",
    "lower",
    "parse_rat",
    "rational_sqrt",
    "is_rational",
    "to_fraction",
    "sqrt_in",
]


class ZeroDivisor(ArithmeticError):
    """A non-zero element turned out not to be invertible."""


class ZeroInput(ZeroDivisionError):
    """Inversion (or a square root adjunction) was requested for zero."""


class TowerMismatch(ValueError):
    """Two elements live in towers neither of which extends the other."""


def parse_rat(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p/q"``, ``"-3"`` or ``"0.5"`` into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Return the non-negative rational square root of ``q`` or None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class Tower:
    """An immutable chain of simple algebraic extensions of Q.

    Use :data:`QQ` for the base and :func:`adjoin_root` / :func:`sqrt_adjoin`
    to extend.  A tower shares its prefix with every tower built on top of
    it, so elements of a prefix embed by zero padding.
    """

    def __init__(self, parent: "Tower | None" = None, label: str | None = None,
                 lowcoeffs: Sequence = ()):
        self.parent = parent
        self.label = label
        if parent is None:
            self.depth = 0
            self.degrees: tuple[int, ...] = ()
            self.labels: tuple[str, ...] = ()
            self.steps: tuple[Tower, ...] = ()
        else:
            self.depth = parent.depth + 1
            self.degrees = parent.degrees + (len(lowcoeffs),)
            self.labels = parent.labels + (label,)
            self.steps = parent.steps + (self,)
        # minpoly of this step: t^d + sum_j lowcoeffs[j] t^j, coefficients in parent
        self.lowcoeffs: tuple[dict, ...] = tuple(
            _terms_in(parent, c) for c in lowcoeffs) if parent is not None else ()
        self.radicand: Fraction | None = None
        if parent is not None and len(lowcoeffs) == 2:
            c0, c1 = self.lowcoeffs
            if not c1 and set(c0) <= {(0,) * parent.depth}:
                self.radicand = -c0.get((0,) * parent.depth, Fraction(0))
        self._mulcache: dict[tuple[int, ...], dict] = {}

    @property
    def dim(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out

    def is_prefix_of(self, other: "Tower") -> bool:
        t = other
        while t is not None:
            if t is self:
                return True
            if t.depth < self.depth:
                return False
            t = t.parent
        return False

    def basis(self) -> list[tuple[int, ...]]:
        """Exponent tuples of the monomial basis, lexicographic."""
        out: list[tuple[int, ...]] = [()]
        for d in self.degrees:
            out = [e + (j,) for e in out for j in range(d)]
        return out

    def gen(self, k: int | None = None) -> "FieldElem":
        """The adjoined root of step ``k`` (default: the top step)."""
        if self.depth == 0:
            raise ValueError("Q has no generators")
        k = self.depth - 1 if k is None else k
        e = [0] * self.depth
        e[k] = 1
        return FieldElem(self, {tuple(e): Fraction(1)})

    def __call__(self, value) -> "FieldElem":
        return FieldElem(self, _terms_in(self, value))

    def __repr__(self) -> str:
        if self.depth == 0:
            return "QQ"
        return "QQ(" + ",".join(self.labels) + ")"

    # -- monomial reduction -------------------------------------------------

    def _reduce_monomial(self, e: tuple[int, ...]) -> dict:
        """Rewrite ``t^e`` (exponents possibly >= degree) over the basis."""
        cached = self._mulcache.get(e)
        if cached is not None:
            return cached
        out: dict = {}
        for k in range(self.depth - 1, -1, -1):
            d = self.degrees[k]
            if e[k] >= d:
                step = self.steps[k]
                base = list(e)
                base[k] -= d
                for j, c in enumerate(step.lowcoeffs):
                    if not c:
                        continue
                    for ce, cv in c.items():
                        new = list(base)
                        new[k] += j
                        for pos in range(k):
                            new[pos] += ce[pos]
                        for m, v in self._reduce_monomial(tuple(new)).items():
                            acc = out.get(m, 0) - cv * v
                            if acc:
                                out[m] = acc
                            else:
                                out.pop(m, None)
                break
        else:
            out = {e: Fraction(1)}
        self._mulcache[e] = out
        return out


QQ = Tower()


def _pad(e: tuple[int, ...], depth: int) -> tuple[int, ...]:
    return e + (0,) * (depth - len(e))


def _terms_in(tower: Tower, value) -> dict:
    """Coerce ``value`` (int, Fraction or FieldElem) to a terms dict of ``tower``."""
    if isinstance(value, FieldElem):
        if value.tower is tower:
            return dict(value.terms)
        if not value.tower.is_prefix_of(tower):
            raise TowerMismatch(f"{value.tower!r} does not embed in {tower!r}")
        return {_pad(e, tower.depth): v for e, v in value.terms.items()}
    q = Fraction(value)
    return {(0,) * tower.depth: q} if q else {}


def _common(x: "FieldElem", y) -> Tower:
    if not isinstance(y, FieldElem):
        return x.tower
    a, b = x.tower, y.tower
    if a is b or a.is_prefix_of(b):
        return b
    if b.is_prefix_of(a):
        return a
    raise TowerMismatch(f"{a!r} and {b!r} are incompatible")


class FieldElem:
    """An element of a :class:`Tower`; immutable."""

    __slots__ = ("tower", "terms")

    def __init__(self, tower: Tower, terms: dict | None = None):
        self.tower = tower
        self.terms = {e: Fraction(v) for e, v in (terms or {}).items() if v}

    @classmethod
    def _raw(cls, tower: Tower, terms: dict) -> "FieldElem":
        obj = cls.__new__(cls)
        obj.tower = tower
        obj.terms = terms
        return obj

    # -- inspection -----------------------------------------------------------

    def is_rational(self) -> bool:
        return all(not any(e) for e in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return next(iter(self.terms.values()), Fraction(0))

    def coeffs(self) -> list[Fraction]:
        """Dense coordinate vector over ``tower.basis()``."""
        return [self.terms.get(e, Fraction(0)) for e in self.tower.basis()]

    def lift(self, tower: Tower) -> "FieldElem":
        return FieldElem._raw(tower, _terms_in(tower, self))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        t = _common(self, other)
        out = _terms_in(t, self)
        for e, v in _terms_in(t, other).items():
            acc = out.get(e, 0) + v
            if acc:
                out[e] = acc
            else:
                out.pop(e, None)
        return FieldElem._raw(t, out)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem._raw(self.tower, {e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, FieldElem) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            q = Fraction(other)
            if not q:
                return FieldElem._raw(self.tower, {})
            return FieldElem._raw(self.tower, {e: v * q for e, v in self.terms.items()})
        t = _common(self, other)
        a = _terms_in(t, self) if self.tower is not t else self.terms
        b = _terms_in(t, other) if other.tower is not t else other.terms
        out: dict = {}
        reduce = t._reduce_monomial
        for ea, va in a.items():
            for eb, vb in b.items():
                s = tuple(x + y for x, y in zip(ea, eb))
                red = reduce(s)
                c = va * vb
                for m, v in red.items():
                    acc = out.get(m, 0) + c * v
                    if acc:
                        out[m] = acc
                    else:
                        out.pop(m, None)
        return FieldElem._raw(t, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return inv(self) ** (-n)
        result = self.tower(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, FieldElem):
            return self * inv(other)
        q = Fraction(other)
        if not q:
            raise ZeroInput("division by zero")
        return self * (1 / q)

    def __rtruediv__(self, other):
        return inv(self) * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other if self.terms \
                else other == 0
        if not isinstance(other, FieldElem):
            return NotImplemented
        try:
            t = _common(self, other)
        except TowerMismatch:
            return False
        return _terms_in(t, self) == _terms_in(t, other)

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        key = []
        for e, v in self.terms.items():
            e = list(e)
            while e and e[-1] == 0:
                e.pop()
            key.append((tuple(e), v))
        return hash(frozenset(key))

    def __repr__(self):
        return f"FieldElem({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            v = self.terms[e]
            mono = "*".join(
                lab if k == 1 else f"{lab}^{k}"
                for lab, k in zip(self.tower.labels, e) if k)
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def is_rational(x) -> bool:
    return not isinstance(x, FieldElem) or x.is_rational()


def to_fraction(x) -> Fraction:
    return x.rational_value() if isinstance(x, FieldElem) else Fraction(x)


def lower(x):
    """Return ``x`` as a Fraction when it is rational, otherwise unchanged."""
    if isinstance(x, FieldElem) and x.is_rational():
        return x.rational_value()
    if isinstance(x, int):
        return Fraction(x)
    return x


# -- inversion --------------------------------------------------------------

def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    """Quotient and remainder of polynomials with coefficients in a field."""
    a = list(a)
    lead_inv = inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * lead_inv
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - c * bj
        a.pop()
    return q, a


def _poly_sub_mul(a: list, q: list, b: list) -> list:
    """``a - q*b``."""
    out = list(a) + [0] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if not qi:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] - qi * bj
    return _poly_trim(out)


def inv(x):
    """Multiplicative inverse; raises ZeroInput for 0, ZeroDivisor for zero divisors."""
    if not isinstance(x, FieldElem):
        q = Fraction(x)
        if not q:
            raise ZeroInput("inverse of zero")
        return 1 / q
    if not x.terms:
        raise ZeroInput("inverse of zero")
    t = x.tower
    if t.depth == 0:
        return FieldElem._raw(t, {(): 1 / x.terms[()]})
    k = t.depth - 1
    parent = t.parent
    d = t.degrees[k]
    poly = [FieldElem._raw(parent, {}) for _ in range(d)]
    for e, v in x.terms.items():
        c = poly[e[k]]
        c.terms[e[:k]] = v
    _poly_trim(poly)
    if len(poly) == 1:
        return inv(poly[0]).lift(t)
    modulus = [FieldElem._raw(parent, dict(c)) for c in t.lowcoeffs] + [parent(1)]
    # extended Euclid: track s with s*x == r (mod modulus)
    r0, r1 = modulus, poly
    s0, s1 = [], [parent(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if len(r0) != 1:
        raise ZeroDivisor(f"{x} is a zero divisor in {t!r}")
    scale = inv(r0[0])
    out: dict = {}
    for j, c in enumerate(s0):
        if not c:
            continue
        for e, v in (c * scale).terms.items():
            out[e + (j,)] = v
    return FieldElem._raw(t, out)


# -- extensions ---------------------------------------------------------------

def adjoin_root(tower: Tower, minpoly: Sequence, label: str | None = None) -> Tower:
    """Adjoin a root of ``minpoly`` (coefficients low to high, monic).

    Existing elements of ``tower`` embed in the result by padding.
    """
    coeffs = list(minpoly)
    if len(coeffs) < 3:
        raise ValueError("minimal polynomial must have degree >= 2")
    if Fraction(lower(coeffs[-1])) != 1:
        raise ValueError("minimal polynomial must be monic")
    label = label or f"t{tower.depth}"
    return Tower(tower, label, coeffs[:-1])


def _radicand_steps(tower: Tower) -> list[tuple[int, Fraction]]:
    return [(k, s.radicand) for k, s in enumerate(tower.steps) if s.radicand is not None]


def sqrt_adjoin(tower: Tower, s, label: str | None = None) -> tuple[Tower, object]:
    """Return ``(tower', r)`` with ``r*r == s`` and ``tower'`` extending ``tower``.

    For rational ``s`` the existing pure square-root steps are searched first:
    if ``s`` times a product of their radicands is a rational square, the
    root is expressed in the existing tower and nothing is adjoined.  This
    keeps towers of square roots of rationals genuine fields.
    """
    s = lower(s)
    if isinstance(s, FieldElem):
        s = s.lift(tower) if s.tower is not tower else s
    if not s:
        raise ZeroInput("square root of zero requested")
    if is_rational(s):
        q = to_fraction(s)
        root = rational_sqrt(q)
        if root is not None:
            return tower, root
        steps = _radicand_steps(tower)
        for size in range(1, len(steps) + 1):
            for subset in combinations(steps, size):
                prod = Fraction(1)
                for _, r in subset:
                    prod *= r
                root = rational_sqrt(q * prod)
                if root is not None:
                    e = [0] * tower.depth
                    for k, _ in subset:
                        e[k] = 1
                    # (root * prod t_k / prod r_k)^2 == root^2 / prod r_k == q
                    elem = FieldElem._raw(tower, {tuple(e): root / prod})
                    return tower, elem
        new = adjoin_root(tower, [-q, 0, 1], label or _sqrt_label(q))
        return new, new.gen()
    new = adjoin_root(tower, [-s, 0, 1], label or f"sqrt{tower.depth}")
    return new, new.gen()


def _sqrt_label(q: Fraction) -> str:
    return f"sqrt({q})"


def sqrt_in(tower: Tower, s) -> object | None:
    """Square root of rational ``s`` inside ``tower`` if the search finds one."""
    new, r = sqrt_adjoin(tower, s)
    return r if new is tower else None
