"""Degree-truncated linear algebra in free algebras and quadratic quotients.

Two independent routes compute the same numbers:

* :func:`relation_space` builds ``R_n = sum_i V^i R V^(n-2-i)`` inside the full
  tensor power ``V^n`` (dimension ``g**n``).  It is simple and slow.
* :class:`GradedQuotient` works one degree at a time.  For an ideal ``I``
  that is a left ideal containing the two-sided ideal of the generators, the
  degree-``n`` part satisfies ``I_n = V I_{n-1} + sum_s s T_{n-deg s}`` so

      (T/I)_n = (V (x) (T/I)_{n-1}) / span{ s (x) w : w a normal word }

  and every matrix has at most ``g * dim (T/I)_{n-1}`` columns.

All Hilbert functions, centrality tests and quotient dimensions go through
:class:`GradedQuotient`; :func:`relation_space` is kept as the brute-force
cross-check.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .linalg import Subspace, nullspace
from .scalars import lower

__all__ = [
    "NcTensor",
    "QuadAlgebra",
    "RelationMatrix",
    "GradedQuotient",
    "DegreeTooSmall",
    "DegreeMismatch",
    "NotCentral",
    "relation_space",
    "hilbert_dim",
    "hilbert_dims",
    "is_zero_in_quotient",
    "is_central",
    "left_quotient_dims",
    "two_sided_quotient_dims",
    "koszul_dual",
    "multilinearize",
    "evaluate_bilinear",
    "free_algebra",
    "commutative_algebra",
    "exterior_algebra",
]


class DegreeTooSmall(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class NotCentral(ValueError):
    pass


class NcTensor:
    """A homogeneous element of the free algebra ``k<x_0..x_{g-1}>``.

    ``terms`` maps words (tuples of generator indices, all of length
    ``degree``) to non-zero coefficients.  Products are concatenation.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple, object] | None = None):
        self.degree = degree
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if len(w) != degree:
                raise DegreeMismatch(f"word {w} has length != {degree}")
            c = lower(c)
            if c:
                clean[w] = clean.get(w, 0) + c
                if not clean[w]:
                    del clean[w]
        self.terms = clean

    @classmethod
    def gen(cls, i: int) -> "NcTensor":
        return cls(1, {(i,): Fraction(1)})

    @classmethod
    def word(cls, *w: int) -> "NcTensor":
        return cls(len(w), {tuple(w): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "NcTensor":
        """The degree-1 element ``sum_j coeffs[j] x_j``."""
        return cls(1, {(j,): c for j, c in enumerate(coeffs)})

    @classmethod
    def zero(cls, degree: int) -> "NcTensor":
        return cls(degree, {})

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "NcTensor"):
        if self.degree != other.degree and self.terms and other.terms:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")

    def __add__(self, other: "NcTensor") -> "NcTensor":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NcTensor(max(self.degree, other.degree) if not self.terms or not other.terms
                        else self.degree, out)

    def __neg__(self) -> "NcTensor":
        return NcTensor(self.degree, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NcTensor") -> "NcTensor":
        return self + (-other)

    def scale(self, c) -> "NcTensor":
        return NcTensor(self.degree, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NcTensor):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
            return NcTensor(self.degree + other.degree, out)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, NcTensor):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def coeff(self, *w: int):
        return self.terms.get(tuple(w), Fraction(0))

    def vector(self, ngens: int) -> dict:
        """Sparse coordinates in ``V^{(x) degree}`` with base-``ngens`` word index."""
        out = {}
        for w, c in self.terms.items():
            idx = 0
            for letter in w:
                idx = idx * ngens + letter
            out[idx] = c
        return out

    @classmethod
    def from_vector(cls, vec, ngens: int, degree: int) -> "NcTensor":
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        terms = {}
        for idx, c in items:
            w = []
            for _ in range(degree):
                idx, r = divmod(idx, ngens)
                w.append(r)
            terms[tuple(reversed(w))] = c
        return cls(degree, terms)

    def substitute(self, images: Sequence["NcTensor"]) -> "NcTensor":
        """Apply the algebra map sending ``x_j`` to the degree-1 element ``images[j]``."""
        out = NcTensor.zero(self.degree)
        for w, c in self.terms.items():
            t = NcTensor(0, {(): c})
            for letter in w:
                t = t * images[letter]
            out = out + t
        return NcTensor(self.degree, out.terms)

    def reversed(self) -> "NcTensor":
        return NcTensor(self.degree, {tuple(reversed(w)): c for w, c in self.terms.items()})

    def map_coeffs(self, f) -> "NcTensor":
        return NcTensor(self.degree, {w: f(c) for w, c in self.terms.items()})

    def format(self, labels: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            mono = "".join(labels[j] if labels else f"x{j}" for j in w)
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NcTensor({self.format()})"


class QuadAlgebra:
    """A quadratic algebra ``k<gens> / (relations)``."""

    def __init__(self, gens: Sequence[str], relations: Iterable[NcTensor], name: str = ""):
        self.gens = tuple(gens)
        self.relations = [r for r in relations]
        self.name = name
        for r in self.relations:
            if r.degree != 2:
                raise DegreeMismatch("quadratic algebras need degree-2 relations")
        span = Subspace(self.ngens ** 2)
        for r in self.relations:
            if not span.add(r.vector(self.ngens)):
                raise ValueError(f"relations of {name or 'algebra'} are linearly dependent")
        self._span = span
        self._lock = threading.Lock()
        self._quotient: GradedQuotient | None = None

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def relation_span(self) -> Subspace:
        return Subspace(self.ngens ** 2, self._span.basis())

    def same_relations(self, other: "QuadAlgebra") -> bool:
        return self.ngens == other.ngens and self._span == other._span

    def quotient(self) -> "GradedQuotient":
        with self._lock:
            if self._quotient is None:
                self._quotient = GradedQuotient(self.ngens, self.relations)
            return self._quotient

    def gen(self, i: int) -> NcTensor:
        return NcTensor.gen(i)

    def __repr__(self):
        return f"QuadAlgebra({self.name or '?'}, gens={self.gens}, {len(self.relations)} relations)"


class GradedQuotient:
    """Truncated graded quotient ``T(V) / I`` computed degree by degree.

    ``two_sided`` generate a two-sided ideal; ``left`` are additional
    left-ideal generators.  All generators must have degree >= 1.
    """

    def __init__(self, ngens: int, two_sided: Iterable[NcTensor] = (),
                 left: Iterable[NcTensor] = ()):
        self.ngens = ngens
        self.two_sided = [t for t in two_sided if t]
        self.left = [t for t in left if t]
        for t in self.two_sided + self.left:
            if t.degree < 1:
                raise DegreeMismatch("ideal generators must have positive degree")
        self.words: dict[int, list[tuple]] = {0: [()]}
        self.index: dict[int, dict[int, int]] = {0: {0: 0}}
        self.spaces: dict[int, Subspace] = {}
        self._proj: dict[tuple, dict] = {(): {0: Fraction(1)}}

    def _ensure(self, n: int):
        top = max(self.words)
        for m in range(top + 1, n + 1):
            self._extend(m)

    def _lift(self, t: NcTensor, w: tuple, n: int) -> dict:
        """Coordinates of ``t (x) w`` in ``V (x) N_{n-1}``."""
        dprev = len(self.words[n - 1])
        out: dict = {}
        for word, c in t.terms.items():
            full = word + w
            for b, x in self._project_word(full[1:]).items():
                col = full[0] * dprev + b
                acc = out.get(col, 0) + c * x
                if acc:
                    out[col] = acc
                else:
                    out.pop(col, None)
        return out

    def _extend(self, n: int):
        dprev = len(self.words[n - 1])
        space = Subspace(self.ngens * dprev)
        for s in self.two_sided:
            if s.degree <= n:
                for w in self.words[n - s.degree]:
                    space.add(self._lift(s, w, n))
        for s in self.left:
            if s.degree == n:
                space.add(self._lift(s, (), n))
        normal = [c for c in range(self.ngens * dprev) if c not in space.rows]
        prev = self.words[n - 1]
        self.spaces[n] = space
        self.words[n] = [(c // dprev,) + prev[c % dprev] for c in normal]
        self.index[n] = {c: k for k, c in enumerate(normal)}

    def _project_word(self, word: tuple) -> dict:
        cached = self._proj.get(word)
        if cached is not None:
            return cached
        n = len(word)
        self._ensure(n)
        dprev = len(self.words[n - 1])
        vec = {word[0] * dprev + b: x for b, x in self._project_word(word[1:]).items()}
        red = self.spaces[n].reduce(vec)
        idx = self.index[n]
        out = {idx[c]: x for c, x in red.items()}
        self._proj[word] = out
        return out

    def project(self, t: NcTensor) -> dict:
        """Coordinates of the class of ``t`` over the normal words of its degree."""
        out: dict = {}
        for w, c in t.terms.items():
            for b, x in self._project_word(w).items():
                acc = out.get(b, 0) + c * x
                if acc:
                    out[b] = acc
                else:
                    out.pop(b, None)
        return out

    def is_zero(self, t: NcTensor) -> bool:
        return not self.project(t)

    def dim(self, n: int) -> int:
        self._ensure(n)
        return len(self.words[n])

    def dims(self, nmax: int) -> list[int]:
        return [self.dim(n) for n in range(nmax + 1)]

    def normal_words(self, n: int) -> list[tuple]:
        self._ensure(n)
        return list(self.words[n])


def _padded_relations(A: QuadAlgebra, n: int):
    g = A.ngens
    for i in range(n - 1):
        for left in product(range(g), repeat=i):
            for right in product(range(g), repeat=n - 2 - i):
                for r in A.relations:
                    yield NcTensor.word(*left) * r * NcTensor.word(*right) if (left or right) \
                        else r


def relation_space(A: QuadAlgebra, n: int) -> Subspace:
    """``R_n`` inside the full tensor power ``V^{(x) n}`` (brute force)."""
    if n < 2:
        raise DegreeTooSmall("relation spaces start in degree 2")
    g = A.ngens
    sub = Subspace(g ** n)
    for t in _padded_relations(A, n):
        sub.add(t.vector(g))
    return sub


def hilbert_dim(A: QuadAlgebra, n: int) -> int:
    return A.quotient().dim(n)


def hilbert_dims(A: QuadAlgebra, nmax: int) -> list[int]:
    return A.quotient().dims(nmax)


def is_zero_in_quotient(A: QuadAlgebra, z: NcTensor, extras: Sequence[NcTensor] = ()) -> bool:
    """Is ``z`` zero in ``A / (extras)``, the two-sided ideal of ``extras``?"""
    for e in extras:
        if e and e.degree > z.degree:
            raise DegreeMismatch(f"extra of degree {e.degree} exceeds {z.degree}")
    if not z:
        return True
    if not extras:
        return A.quotient().is_zero(z)
    return GradedQuotient(A.ngens, list(A.relations) + list(extras)).is_zero(z)


def is_central(A: QuadAlgebra, z: NcTensor, modulo: Sequence[NcTensor] = ()) -> bool:
    """Does ``z`` commute with every generator in ``A / (modulo)``?"""
    q = A.quotient() if not modulo else GradedQuotient(A.ngens, list(A.relations) + list(modulo))
    for j in range(A.ngens):
        x = NcTensor.gen(j)
        if not q.is_zero(z * x - x * z):
            return False
    return True


def left_quotient_dims(A: QuadAlgebra, W: Sequence[NcTensor], nmax: int) -> list[int]:
    """Hilbert function of the cyclic module ``A / A W`` for degree-1 ``W``."""
    span = Subspace(A.ngens)
    for w in W:
        if w.degree != 1:
            raise DegreeMismatch("left quotient needs degree-1 forms")
        if not span.add(w.vector(A.ngens)):
            raise ValueError("forms must be linearly independent")
    return GradedQuotient(A.ngens, A.relations, left=W).dims(nmax)


def two_sided_quotient_dims(A: QuadAlgebra, Z: Sequence[NcTensor], nmax: int) -> list[int]:
    """Hilbert function of ``A / (Z)`` for central degree-2 elements ``Z``."""
    for z in Z:
        if z.degree != 2:
            raise DegreeMismatch("central elements must have degree 2")
        if not is_central(A, z):
            raise NotCentral(z.format(A.gens))
    if not Z:
        return hilbert_dims(A, nmax)
    return GradedQuotient(A.ngens, list(A.relations) + list(Z)).dims(nmax)


def koszul_dual(A: QuadAlgebra) -> QuadAlgebra:
    """``A^!``: relations ``R^perp`` under the pairing ``<x_i* x_j*, x_k x_l> = d_ik d_jl``."""
    g = A.ngens
    rows = [[r.vector(g).get(c, Fraction(0)) for c in range(g * g)] for r in A.relations]
    if rows:
        perp = nullspace(rows, g * g)
    else:
        perp = [[Fraction(int(c == k)) for c in range(g * g)] for k in range(g * g)]
    rels = [NcTensor.from_vector(v, g, 2) for v in perp]
    gens = [lab[:-1] if lab.endswith("*") else lab + "*" for lab in A.gens]
    name = A.name[:-1] if A.name.endswith("!") else (A.name + "!" if A.name else "")
    return QuadAlgebra(gens, rels, name=name)


class RelationMatrix:
    """Rows of linear forms with ``M(u) v == (r_k(u, v))_k``.

    ``forms[k][j]`` is the linear form (a dict ``{i: c}``) in the first
    argument that multiplies ``v_j`` in relation ``k``.
    """

    def __init__(self, ngens: int, forms: list[list[dict]]):
        self.ngens = ngens
        self.forms = forms

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.forms), self.ngens

    def entry(self, k: int, j: int) -> NcTensor:
        return NcTensor(1, {(i,): c for i, c in self.forms[k][j].items()})

    def evaluate(self, u: Sequence) -> list[list]:
        out = []
        for row in self.forms:
            vals = []
            for form in row:
                acc = Fraction(0)
                for i, c in form.items():
                    if u[i]:
                        acc = acc + c * u[i]
                vals.append(lower(acc))
            out.append(vals)
        return out

    def apply(self, u: Sequence, v: Sequence) -> list:
        m = self.evaluate(u)
        return [lower(sum((row[j] * v[j] for j in range(self.ngens)), Fraction(0)))
                for row in m]


def multilinearize(A: QuadAlgebra) -> RelationMatrix:
    g = A.ngens
    forms = []
    for r in A.relations:
        row = [dict() for _ in range(g)]
        for (i, j), c in r.terms.items():
            row[j][i] = row[j].get(i, 0) + c
        forms.append(row)
    return RelationMatrix(g, forms)


def evaluate_bilinear(r: NcTensor, u: Sequence, v: Sequence):
    """``r(u, v) = sum c_ij u_i v_j`` for a degree-2 tensor."""
    acc = Fraction(0)
    for (i, j), c in r.terms.items():
        if u[i] and v[j]:
            acc = acc + c * u[i] * v[j]
    return lower(acc)


# -- small presets ------------------------------------------------------------

def free_algebra(g: int = 4) -> QuadAlgebra:
    return QuadAlgebra([f"x{j}" for j in range(g)], [], name="free")


def commutative_algebra(g: int = 4) -> QuadAlgebra:
    rels = [NcTensor.word(i, j) - NcTensor.word(j, i) for i in range(g) for j in range(i + 1, g)]
    return QuadAlgebra([f"x{j}" for j in range(g)], rels, name="commutative")


def exterior_algebra(g: int = 4) -> QuadAlgebra:
    rels = [NcTensor.word(i, i) for i in range(g)]
    rels += [NcTensor.word(i, j) + NcTensor.word(j, i) for i in range(g) for j in range(i + 1, g)]
    return QuadAlgebra([f"x{j}*" for j in range(g)], rels, name="exterior")
