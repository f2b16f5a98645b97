"""Algebra laws as structure-constant tensors, and everything first-order about them.

The tensor convention is mu(e_i, e_j) = sum_k constants[i][j][k] e_k with
0-based indices internally; reports and file formats are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence

from .linalg import (
    Subspace,
    columns_matrix,
    inverse,
    mat,
    mat_vec,
    nullspace,
)


class IllDefinedQuotientError(ArithmeticError):
    """The right center is not an ideal, so the quotient law is not induced."""


def _tensor(rows) -> tuple:
    return tuple(tuple(tuple(plane) for plane in row) for row in rows)


@dataclass(frozen=True, slots=True)
class AlgebraLaw:
    """A bilinear law on field^dim given by its structure constants."""

    field: object
    dim: int
    constants: tuple

    @classmethod
    def from_products(cls, field, dim: int, products: Mapping) -> "AlgebraLaw":
        """Build a law from sparse 1-based products {(i, j): {k: coeff}}.

        Unspecified products are zero.
        """
        c = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), terms in products.items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise ValueError(f"product index ({i}, {j}) out of range")
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, coeff in items:
                if not 1 <= k <= dim:
                    raise ValueError(f"basis index {k} out of range")
                c[i - 1][j - 1][k - 1] = field.coerce(coeff)
        return cls(field, dim, _tensor(c))

    @classmethod
    def zero_law(cls, field, dim: int) -> "AlgebraLaw":
        z = field.zero
        return cls(field, dim, _tensor([[[z] * dim] * dim] * dim))

    def basis_vector(self, index: int) -> tuple:
        return tuple(
            self.field.one if k == index else self.field.zero for k in range(self.dim)
        )

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length does not match the algebra dimension")
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                coeff = xi * yj
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] = out[k] + coeff * c
        return tuple(out)

    def right_mult_matrix(self, x: Sequence) -> tuple:
        """Matrix of R_x(y) = mu(y, x) acting on coordinate columns."""
        if len(x) != self.dim:
            raise ValueError("vector length does not match the algebra dimension")
        n = self.dim
        rows = [[self.field.zero] * n for _ in range(n)]
        for c, xc in enumerate(x):
            if not xc:
                continue
            for l in range(n):
                for m, a in enumerate(self.constants[l][c]):
                    if a:
                        rows[m][l] = rows[m][l] + xc * a
        return mat(rows)

    def map_scalars(self, field, convert: Callable) -> "AlgebraLaw":
        return AlgebraLaw(
            field,
            self.dim,
            _tensor(
                [[[convert(c) for c in plane] for plane in row]
                 for row in self.constants]
            ),
        )

    def nonzero_products(self) -> Iterator[tuple[int, int, tuple]]:
        """Yield (i, j, mu(e_i, e_j)) with 0-based i, j for nonzero products."""
        for i in range(self.dim):
            for j in range(self.dim):
                vec = self.constants[i][j]
                if any(vec):
                    yield i, j, vec

    def is_zero(self) -> bool:
        return next(self.nonzero_products(), None) is None


@dataclass(frozen=True, slots=True)
class LeibnizReport:
    """Outcome of the structure-constant Leibniz identity check."""

    ok: bool
    violations: tuple  # of 1-based (i, j, k, m) tuples


def check_leibniz(law: AlgebraLaw) -> LeibnizReport:
    """Verify the quadratic identities the Leibniz identity imposes on a_ij^k.

    The residual a_jk^l a_il^m - a_ij^l a_lk^m + a_ik^l a_lj^m is accumulated
    sparsely; every (i, j, k, m) with nonzero residual is reported.
    """
    n = law.dim
    products: dict[tuple[int, int], list] = {}
    for i, j, vec in law.nonzero_products():
        products[(i, j)] = [(k, c) for k, c in enumerate(vec) if c]

    res: dict[tuple[int, int, int, int], object] = {}

    def bump(key, value):
        prev = res.get(key)
        res[key] = value if prev is None else prev + value

    for (j, k), terms in products.items():
        for l, c1 in terms:
            for i in range(n):
                for m, c2 in products.get((i, l), ()):
                    bump((i, j, k, m), c1 * c2)
    for (i, j), terms in products.items():
        for l, c1 in terms:
            for k in range(n):
                for m, c2 in products.get((l, k), ()):
                    bump((i, j, k, m), -(c1 * c2))
    for (i, k), terms in products.items():
        for l, c1 in terms:
            for j in range(n):
                for m, c2 in products.get((l, j), ()):
                    bump((i, j, k, m), c1 * c2)

    violations = tuple(
        sorted((i + 1, j + 1, k + 1, m + 1) for (i, j, k, m), v in res.items() if v)
    )
    return LeibnizReport(not violations, violations)


def leibniz_residual(law: AlgebraLaw, x: Sequence, y: Sequence, z: Sequence) -> tuple:
    """mu(x, mu(y, z)) - mu(mu(x, y), z) + mu(mu(x, z), y), the trilinear form."""
    first = law.multiply(x, law.multiply(y, z))
    second = law.multiply(law.multiply(x, y), z)
    third = law.multiply(law.multiply(x, z), y)
    return tuple(a - b + c for a, b, c in zip(first, second, third))


def is_lie(law: AlgebraLaw) -> bool:
    """Anticommutativity; with the Leibniz identity this gives a Lie algebra."""
    for i in range(law.dim):
        for j in range(i, law.dim):
            for k in range(law.dim):
                if law.constants[i][j][k] != -law.constants[j][i][k]:
                    return False
    return True


def central_series(law: AlgebraLaw) -> list[Subspace]:
    """Right-decreasing central series C^1 >= C^2 >= ... until stabilization."""
    n = law.dim
    current = Subspace.full(law.field, n)
    series = [current]
    basis_vectors = [law.basis_vector(i) for i in range(n)]
    while True:
        spanning = [
            law.multiply(u, e) for u in current.basis for e in basis_vectors
        ]
        nxt = Subspace.from_spanning(law.field, n, spanning)
        if nxt == current:
            break
        series.append(nxt)
        current = nxt
        if current.dim == 0:
            break
    return series


def is_nilpotent(law: AlgebraLaw) -> bool:
    return central_series(law)[-1].dim == 0


def right_center(law: AlgebraLaw) -> Subspace:
    """Z_R = {x : mu(y, x) = 0 for all y}, as a canonical subspace."""
    n = law.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append(tuple(law.constants[j][c][k] for c in range(n)))
    basis = nullspace(law.field, rows, n)
    return Subspace.from_spanning(law.field, n, basis)


def left_annihilator(law: AlgebraLaw) -> Subspace:
    n = law.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append(tuple(law.constants[c][j][k] for c in range(n)))
    basis = nullspace(law.field, rows, n)
    return Subspace.from_spanning(law.field, n, basis)


def two_sided_center(law: AlgebraLaw) -> Subspace:
    """{x : mu(x, y) = mu(y, x) = 0 for all y}; the usual center on Lie laws."""
    n = law.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append(tuple(law.constants[j][c][k] for c in range(n)))
            rows.append(tuple(law.constants[c][j][k] for c in range(n)))
    basis = nullspace(law.field, rows, n)
    return Subspace.from_spanning(law.field, n, basis)


def derivation_dim(law: AlgebraLaw) -> int:
    """Dimension of {D : D mu(x,y) = mu(Dx,y) + mu(x,Dy)} inside gl_n."""
    n = law.dim
    a = law.constants
    rows = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                row = [law.field.zero] * (n * n)
                for k in range(n):
                    if a[i][j][k]:
                        row[m * n + k] = row[m * n + k] + a[i][j][k]
                for p in range(n):
                    if a[p][j][m]:
                        row[p * n + i] = row[p * n + i] - a[p][j][m]
                for q in range(n):
                    if a[i][q][m]:
                        row[q * n + j] = row[q * n + j] - a[i][q][m]
                rows.append(row)
    return len(nullspace(law.field, rows, n * n))


def orbit_dim(law: AlgebraLaw) -> int:
    """dim GL_n - dim Der, the stabilizer identity for the basis-change action."""
    return law.dim * law.dim - derivation_dim(law)


def transform_constants(law: AlgebraLaw, f: Sequence, f_inv: Sequence) -> AlgebraLaw:
    """Structure constants of f^-1 . mu(f x, f y) given both matrices."""
    n = law.dim
    cols = [tuple(f[p][i] for p in range(n)) for i in range(n)]
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = law.multiply(cols[i], cols[j])
            row.append(mat_vec(law.field, f_inv, prod))
        new.append(row)
    return AlgebraLaw(law.field, n, _tensor(new))


def apply_basis_change(law: AlgebraLaw, f: Sequence) -> AlgebraLaw:
    """The law in the new basis whose columns (in f) express the new basis."""
    if len(f) != law.dim:
        raise ValueError("matrix size does not match the algebra dimension")
    f_inv = inverse(law.field, f)
    return transform_constants(law, f, f_inv)


def quotient_by_right_center(law: AlgebraLaw) -> AlgebraLaw:
    """The induced law on a complement of Z_R (echelon-complement pivots).

    Raises IllDefinedQuotientError when Z_R is not an ideal, which can only
    happen for non-Leibniz input.
    """
    zr = right_center(law)
    r = zr.dim
    if r == 0:
        return law
    n = law.dim
    pivots = set(zr.pivot_columns())
    complement = [c for c in range(n) if c not in pivots]
    cols = [law.basis_vector(c) for c in complement]
    cols += [tuple(row) for row in zr.basis]
    nu = apply_basis_change(law, columns_matrix(cols))
    q = n - r
    for a in range(q, n):
        for j in range(n):
            if any(nu.constants[a][j][:q]):
                raise IllDefinedQuotientError(
                    "right center is not an ideal; quotient law is ill-defined"
                )
    quotient = [
        [[nu.constants[i][j][k] for k in range(q)] for j in range(q)]
        for i in range(q)
    ]
    return AlgebraLaw(law.field, q, _tensor(quotient))
