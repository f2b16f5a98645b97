"""Dense exact linear algebra over the scalar fields.

Matrices are tuples of row tuples. Everything here targets the tiny sizes
this package needs (n <= 10, derivation systems up to n^3 x n^2 rows), so
plain Gaussian elimination over the exact field is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class SingularMatrixError(ArithmeticError):
    """Inversion was requested for a singular matrix."""


def mat(rows: Iterable[Sequence]) -> tuple:
    return tuple(tuple(r) for r in rows)


def identity(field, n: int) -> tuple:
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def zero_vector(field, n: int) -> tuple:
    return (field.zero,) * n


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def mat_vec(field, m: Sequence[Sequence], v: Sequence) -> tuple:
    out = []
    for row in m:
        acc = field.zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return tuple(out)


def mat_mul(field, a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(
        tuple(_dot(field, row, col) for col in bt) for row in a
    )


def _dot(field, u, v):
    acc = field.zero
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def columns_matrix(cols: Sequence[Sequence]) -> tuple:
    """Matrix whose i-th column is cols[i]."""
    return transpose(cols)


def rref(field, rows: Iterable[Sequence]) -> tuple[tuple, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat(m), tuple(pivots)


def rank(field, rows: Iterable[Sequence]) -> int:
    return len(rref(field, rows)[1])


def nullspace(field, rows: Iterable[Sequence], ncols: int) -> tuple:
    """Basis of the right null space, one vector per free column."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return identity(field, ncols)
    reduced, pivots = rref(field, rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][free]
        basis.append(tuple(v))
    return tuple(basis)


def det(field, m: Sequence[Sequence]):
    n = len(m)
    if n == 0:
        return field.one
    a = [list(r) for r in m]
    result = field.one
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            return field.zero
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            result = -result
        piv = a[c][c]
        result = result * piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def _minor(m, i, j):
    return [
        [m[r][c] for c in range(len(m)) if c != j]
        for r in range(len(m))
        if r != i
    ]


def adjugate(field, m: Sequence[Sequence]) -> tuple:
    """Classical adjugate, adj(m) @ m = det(m) * I; exact over any field."""
    n = len(m)
    if n == 0:
        return ()
    if n == 1:
        return ((field.one,),)
    adj = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = det(field, _minor(m, i, j))
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return mat(adj)


def inverse(field, m: Sequence[Sequence]) -> tuple:
    """Gauss-Jordan inverse; raises SingularMatrixError."""
    n = len(m)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(m)]
    reduced, pivots = rref(field, aug)
    if tuple(pivots) != tuple(range(n)):
        raise SingularMatrixError("matrix is not invertible over its field")
    return mat(row[n:] for row in reduced)


def mat_pow(field, m: Sequence[Sequence], k: int) -> tuple:
    result = identity(field, len(m))
    for _ in range(k):
        result = mat_mul(field, result, m)
    return result


def scale_column(field, m: Sequence[Sequence], col: int, factor) -> tuple:
    return mat(
        tuple(x * factor if j == col else x for j, x in enumerate(row)) for row in m
    )


@dataclass(frozen=True, slots=True)
class Subspace:
    """A subspace held by its reduced-row-echelon basis.

    The canonical basis makes equality structural: two subspaces are equal
    iff their bases are identical tuples.
    """

    field: object
    ambient: int
    basis: tuple

    @classmethod
    def from_spanning(cls, field, ambient: int, vectors: Iterable[Sequence]):
        vecs = [tuple(v) for v in vectors if any(v)]
        if not vecs:
            return cls(field, ambient, ())
        reduced, pivots = rref(field, vecs)
        return cls(field, ambient, mat(reduced[: len(pivots)]))

    @classmethod
    def full(cls, field, ambient: int):
        return cls(field, ambient, identity(field, ambient))

    @classmethod
    def zero(cls, field, ambient: int):
        return cls(field, ambient, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def contains(self, v: Sequence) -> bool:
        w = list(v)
        for row in self.basis:
            p = next(i for i, x in enumerate(row) if x)
            if w[p]:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    def pivot_columns(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)
