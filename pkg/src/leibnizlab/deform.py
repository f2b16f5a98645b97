"""Contractions as exact symbolic limits, and perturbations over a formal epsilon.

A contraction family is a matrix of rational functions in t, generically
invertible. The contracted law is computed with no specialization: the
family is inverted through its adjugate over Q(i)(t), the parametric law is
formed exactly, and the limit t -> 0 is read off entrywise. Perturbations
replace "infinitesimally small" by a formal transcendental: a property that
holds identically over Q(i)(eps) holds for all but finitely many complex
epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Sequence

from .algebra import (
    AlgebraLaw,
    check_leibniz,
    is_nilpotent,
    transform_constants,
)
from .classify import are_isomorphic_dim3, classify_nilpotent_dim2
from .invariants import CharacteristicSequence, fingerprint
from .linalg import adjugate, det, identity, mat, mat_mul
from .scalars import PoleAtZero, QI, function_field

#: The formal parameter of every contraction family.
FAMILY_VAR = "t"

#: The formal parameter used for perturbations.
PERTURBATION_VAR = "eps"


class SingularFamilyError(ArithmeticError):
    """The family matrix is singular as a rational-function matrix."""


class ContractionPoleError(ArithmeticError):
    """Some structure constant of the parametric law has a pole at t = 0."""

    def __init__(self, i: int, j: int, k: int, family_name: str | None):
        self.indices = (i, j, k)
        self.family_name = family_name
        where = f" of family {family_name}" if family_name else ""
        super().__init__(
            f"limit does not exist{where}: structure constant "
            f"a[{i}][{j}]^{k} has a pole at t = 0"
        )


@dataclass(frozen=True, slots=True)
class ContractionFamily:
    """A t-dependent basis family; columns are the images of the basis vectors."""

    dim: int
    entries: tuple
    name: str | None = None

    @property
    def field(self):
        return function_field(FAMILY_VAR)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], name: str | None = None):
        field = function_field(FAMILY_VAR)
        coerced = [[field.coerce(x) for x in col] for col in cols]
        entries = mat(zip(*coerced))
        return cls(len(coerced), entries, name)

    @classmethod
    def diagonal(cls, exponents: Sequence[int], name: str | None = None):
        field = function_field(FAMILY_VAR)
        t = field.gen
        n = len(exponents)
        rows = [
            [t ** exponents[i] if i == j else field.zero for j in range(n)]
            for i in range(n)
        ]
        return cls(n, mat(rows), name)

    def determinant(self):
        return det(self.field, self.entries)

    def is_generically_invertible(self) -> bool:
        return bool(self.determinant())

    def evaluate(self, t0) -> tuple:
        """The concrete matrix f_{t0} over Q(i)."""
        point = QI.coerce(t0)
        return mat(
            tuple(entry.evaluate(point) for entry in row) for row in self.entries
        )


def parametric_law(law: AlgebraLaw, family: ContractionFamily) -> AlgebraLaw:
    """mu_t = f_t^-1 . mu(f_t x, f_t y) over Q(i)(t), before any limit.

    The inverse is formed through the adjugate so that no specialization of t
    ever happens.
    """
    if law.dim != family.dim:
        raise ValueError("family dimension does not match the law")
    field = family.field
    lifted = law.map_scalars(field, field.coerce)
    d = family.determinant()
    if not d:
        raise SingularFamilyError("family matrix is singular over Q(i)(t)")
    adj = adjugate(field, family.entries)
    inv = mat(tuple(x / d for x in row) for row in adj)
    return transform_constants(lifted, family.entries, inv)


def contract(law: AlgebraLaw, family: ContractionFamily) -> AlgebraLaw:
    """The contraction limit lim_{t->0} mu_t, raised as an error when absent."""
    mu_t = parametric_law(law, family)
    n = law.dim
    limits = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = []
            for k in range(n):
                entry = mu_t.constants[i][j][k]
                try:
                    vec.append(entry.limit_at_zero())
                except PoleAtZero:
                    raise ContractionPoleError(
                        i + 1, j + 1, k + 1, family.name
                    ) from None
            row.append(tuple(vec))
        limits.append(tuple(row))
    result = AlgebraLaw(QI, n, tuple(limits))
    if not check_leibniz(result).ok:
        raise ArithmeticError(
            "contraction limit violates the Leibniz identity; "
            "the source law was not a Leibniz law"
        )
    return result


def specialize(law: AlgebraLaw, value) -> AlgebraLaw:
    """Evaluate a law over Q(i)(var) at a concrete parameter value."""
    point = QI.coerce(value)
    return law.map_scalars(QI, lambda c: c.evaluate(point))


@dataclass(frozen=True, slots=True)
class MonotonicityReport:
    """The three invariant inequalities a nontrivial contraction must satisfy."""

    source_orbit_dim: int
    target_orbit_dim: int
    source_right_center_dim: int
    target_right_center_dim: int
    source_char_seq: CharacteristicSequence | None
    target_char_seq: CharacteristicSequence | None

    @property
    def orbit_ok(self) -> bool:
        return self.source_orbit_dim > self.target_orbit_dim

    @property
    def right_center_ok(self) -> bool:
        return self.source_right_center_dim <= self.target_right_center_dim

    @property
    def char_seq_applicable(self) -> bool:
        return self.source_char_seq is not None and self.target_char_seq is not None

    @property
    def char_seq_ok(self) -> bool:
        if not self.char_seq_applicable:
            return True
        return self.source_char_seq >= self.target_char_seq

    @property
    def passed(self) -> bool:
        return self.orbit_ok and self.right_center_ok and self.char_seq_ok


def check_contraction_monotonicity(
    source: AlgebraLaw, target: AlgebraLaw
) -> MonotonicityReport:
    """Compare the invariants that can only move one way under contraction."""
    fs = fingerprint(source)
    ft = fingerprint(target)
    return MonotonicityReport(
        source_orbit_dim=fs.orbit_dim,
        target_orbit_dim=ft.orbit_dim,
        source_right_center_dim=fs.right_center_dim,
        target_right_center_dim=ft.right_center_dim,
        source_char_seq=fs.char_seq,
        target_char_seq=ft.char_seq,
    )


def perturb(
    law: AlgebraLaw, direction: AlgebraLaw, var: str = PERTURBATION_VAR
) -> AlgebraLaw:
    """law + eps * direction over Q(i)(eps).

    The direction is any bilinear tensor of the same dimension; validity of
    the perturbed law is for the caller to check over the function field.
    """
    if law.dim != direction.dim:
        raise ValueError("direction dimension does not match the law")
    field = function_field(var)
    eps = field.gen
    n = law.dim
    constants = tuple(
        tuple(
            tuple(
                field.coerce(law.constants[i][j][k])
                + eps * field.coerce(direction.constants[i][j][k])
                for k in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )
    return AlgebraLaw(field, n, constants)


@dataclass(frozen=True, slots=True)
class ContractionCertificate:
    """A verified contraction witness from source onto (an isomorph of) target."""

    source: AlgebraLaw
    family: ContractionFamily
    result: AlgebraLaw
    target: AlgebraLaw
    iso: tuple | None  # basis change with result -> target; None when equal
    monotonicity: MonotonicityReport


def _laws_match(result: AlgebraLaw, target: AlgebraLaw):
    """Exact or certified-isomorphic comparison, per dimension."""
    if result.dim != target.dim:
        return False, None
    if result.constants == target.constants:
        return True, None
    if result.dim == 3 and is_nilpotent(result) and is_nilpotent(target):
        return are_isomorphic_dim3(result, target)
    if result.dim == 2 and is_nilpotent(result) and is_nilpotent(target):
        cr = classify_nilpotent_dim2(result)
        ct = classify_nilpotent_dim2(target)
        if cr.label != ct.label:
            return False, None
        from .linalg import inverse  # local to avoid a wide import surface

        iso = mat_mul(result.field, cr.certificate, inverse(target.field, ct.certificate))
        return True, iso
    return False, None


def find_diagonal_contraction(
    source: AlgebraLaw,
    target: AlgebraLaw,
    exponent_bound: int,
    pre_changes: Sequence = (),
) -> ContractionCertificate | None:
    """Search families P diag(t^d1..t^dn) Q with |di| <= bound for a witness.

    The pair is first screened by the monotonicity inequalities; a refuted
    pair returns None without any search. Enumeration order is deterministic
    (P, then Q, then exponent vectors lexicographically), so the first hit is
    reproducible.
    """
    if source.dim != target.dim:
        raise ValueError("source and target dimensions differ")
    screen = check_contraction_monotonicity(source, target)
    if not screen.passed:
        return None
    n = source.dim
    field = function_field(FAMILY_VAR)
    source_print = fingerprint(source)
    changes = [identity(field, n)]
    for m in pre_changes:
        changes.append(mat(tuple(field.coerce(x) for x in row) for row in m))
    for p_mat in changes:
        for q_mat in changes:
            for exps in iter_product(
                range(-exponent_bound, exponent_bound + 1), repeat=n
            ):
                diag = ContractionFamily.diagonal(exps)
                entries = mat_mul(field, mat_mul(field, p_mat, diag.entries), q_mat)
                family = ContractionFamily(n, entries, name=f"diag{exps}")
                try:
                    result = contract(source, family)
                except ContractionPoleError:
                    continue
                if fingerprint(result) == source_print:
                    continue  # trivial: same orbit invariants as the source
                matched, iso = _laws_match(result, target)
                if matched:
                    return ContractionCertificate(
                        source=source,
                        family=family,
                        result=result,
                        target=target,
                        iso=iso,
                        monotonicity=check_contraction_monotonicity(source, result),
                    )
    return None
