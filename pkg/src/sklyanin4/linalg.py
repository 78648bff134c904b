"""Exact row reduction over Q or a tower, on sparse and dense vectors.

Entries are Fractions or :class:`~sklyanin4.scalars.FieldElem`; nothing here
cares which, it only needs ``+ - * /`` and truthiness for zero tests.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import lower

__all__ = ["Subspace", "rank", "nullspace", "det", "rref", "matmul", "identity"]


class Subspace:
    """A subspace of ``k^ambient`` held in fully reduced row-echelon form.

    Rows are sparse dicts ``{column: value}`` with a leading 1 at the pivot;
    no row has a non-zero entry in another row's pivot column.
    """

    def __init__(self, ambient: int, vectors: Iterable = ()):
        self.ambient = ambient
        self.rows: dict[int, dict] = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def _sparse(self, v) -> dict:
        if isinstance(v, dict):
            return {c: lower(x) for c, x in v.items() if x}
        return {c: lower(x) for c, x in enumerate(v) if x}

    def reduce(self, v) -> dict:
        """Residual of ``v`` after eliminating every pivot column."""
        v = self._sparse(v)
        for c in [c for c in v if c in self.rows]:
            f = v.get(c)
            if not f:
                continue
            for cc, x in self.rows[c].items():
                acc = v.get(cc, 0) - f * x
                if acc:
                    v[cc] = acc
                else:
                    v.pop(cc, None)
        return v

    def add(self, v) -> bool:
        """Insert ``v``; return True iff it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        scale = 1 / r[p]
        r = {c: x * scale for c, x in r.items()}
        for row in self.rows.values():
            f = row.get(p)
            if f:
                for cc, x in r.items():
                    acc = row.get(cc, 0) - f * x
                    if acc:
                        row[cc] = acc
                    else:
                        row.pop(cc, None)
        self.rows[p] = r
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def basis(self) -> list[dict]:
        return [dict(self.rows[p]) for p in self.pivots]

    def dense_basis(self) -> list[list]:
        return [[row.get(c, Fraction(0)) for c in range(self.ambient)]
                for row in self.basis()]

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.dim == other.dim
                and self.issubspace(other))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def rref(matrix: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form of a dense matrix and its pivot columns."""
    ncols = len(matrix[0]) if matrix else 0
    sub = Subspace(ncols, matrix)
    return sub.dense_basis(), sub.pivots


def rank(matrix: Sequence[Sequence]) -> int:
    ncols = len(matrix[0]) if matrix else 0
    return Subspace(ncols, matrix).dim


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{v : matrix @ v == 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0])
    sub = Subspace(ncols, matrix)
    free = [c for c in range(ncols) if c not in sub.rows]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, row in sub.rows.items():
            x = row.get(f)
            if x:
                v[p] = -x
        out.append(v)
    return out


def det(matrix: Sequence[Sequence]):
    """Determinant by Gaussian elimination."""
    m = [[lower(x) for x in row] for row in matrix]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        p = m[col][col]
        result = result * p
        pinv = 1 / p
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f * pinv
                for c in range(col, n):
                    m[r][c] = m[r][c] - f * m[col][c]
    return lower(result)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    inner = len(b)
    return [[lower(sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)))
             for j in range(len(b[0]))] for i in range(len(a))]


def identity(n: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
