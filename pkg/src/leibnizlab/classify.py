"""Certified classification of nilpotent Leibniz laws in dimensions 2 and 3.

Every returned label comes with an explicit basis-change matrix that is
checked, inside the classifier, to carry the input law onto the canonical
representative's structure constants exactly. A label is never returned
unverified; when the adapted-basis search fails, an explicit error is raised
instead of a guess.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import AlgebraLaw, apply_basis_change, check_leibniz, is_lie
from .invariants import (
    SAMPLING_SEED,
    CharacteristicSequence,
    NotNilpotentError,
    candidate_vectors,
    characteristic_sequence,
    jordan_type,
    _derived_subspace,
)
from .linalg import columns_matrix, det, identity, inverse, mat_mul, nullspace

#: Pencil coefficients tried when hunting an adapted characteristic vector.
_PENCIL_COEFFICIENTS = (2, 3, 4, 5, 6, 7)


class ClassificationError(RuntimeError):
    """The classifier could not complete; never a silently wrong label."""


class SearchExhaustedError(ClassificationError):
    """No qualifying adapted vector was found by the candidate search."""


class CertificateUnrepresentableError(ClassificationError):
    """The canonical form needs a square root that the base field lacks."""


@dataclass(frozen=True, slots=True)
class ClassLabel:
    """A canonical class name; mu2 carries its parameter b as a field element."""

    tag: str
    b: object | None = None

    def __str__(self) -> str:
        if self.tag == "mu2":
            return f"mu2(b={self.b})"
        return self.tag


@dataclass(frozen=True, slots=True)
class Classification:
    """Label plus the verified basis-change certificate onto the representative."""

    label: ClassLabel
    certificate: tuple
    representative: AlgebraLaw


def representative_law(tag: str, field, b=None) -> AlgebraLaw:
    """Canonical structure constants for each classification label."""
    if tag == "mu1":
        return AlgebraLaw.from_products(field, 3, {(1, 1): {2: 1}, (2, 1): {3: 1}})
    if tag == "mu2":
        if b is None:
            raise ValueError("mu2 requires the parameter b")
        return AlgebraLaw.from_products(
            field, 3, {(1, 1): {2: 1}, (3, 3): {2: b}, (1, 3): {2: 1}}
        )
    if tag == "mu3":
        return AlgebraLaw.from_products(field, 3, {(1, 1): {2: 1}, (3, 3): {2: 1}})
    if tag == "mu4":
        return AlgebraLaw.from_products(field, 3, {(1, 1): {2: 1}})
    if tag == "mu5":
        return AlgebraLaw.from_products(field, 3, {(1, 2): {3: -1}, (2, 1): {3: 1}})
    if tag == "mu6":
        return AlgebraLaw.zero_law(field, 3)
    if tag == "nilp2_filiform":
        return AlgebraLaw.from_products(field, 2, {(1, 1): {2: 1}})
    if tag == "nilp2_abelian":
        return AlgebraLaw.zero_law(field, 2)
    raise ValueError(f"unknown class tag {tag!r}")


def _require_domain(law: AlgebraLaw, dim: int) -> None:
    if law.dim != dim:
        raise ValueError(f"classification expects dimension {dim}, got {law.dim}")
    if not check_leibniz(law).ok:
        raise ValueError("classification expects a Leibniz law")


def _finish(law: AlgebraLaw, certificate, label: ClassLabel) -> Classification:
    rep = representative_law(label.tag, law.field, label.b)
    image = apply_basis_change(law, certificate)
    if image.constants != rep.constants:
        raise ClassificationError(
            f"certificate verification failed for class {label}"
        )
    return Classification(label, certificate, rep)


def find_characteristic_vector(law: AlgebraLaw) -> tuple:
    """A witness x with s_mu(x) equal to the computed characteristic sequence."""
    _, witness = characteristic_sequence(law)
    if witness is None:
        raise ValueError("the zero-dimensional law has no characteristic vector")
    return witness


def _mu1_case(law: AlgebraLaw, c2) -> Classification:
    target = CharacteristicSequence((3,))
    rng = random.Random(SAMPLING_SEED + 1)
    for v in candidate_vectors(law, c2, rng):
        if jordan_type(law.field, law.right_mult_matrix(v)) != target:
            continue
        u = law.multiply(v, v)
        w = law.multiply(u, v)
        cert = columns_matrix([v, u, w])
        if det(law.field, cert):
            return _finish(law, cert, ClassLabel("mu1"))
    raise SearchExhaustedError(
        "no characteristic vector with an independent multiplication chain"
    )


def _mu5_case(law: AlgebraLaw) -> Classification:
    n = law.dim
    for i in range(n):
        for j in range(i + 1, n):
            w = law.multiply(law.basis_vector(i), law.basis_vector(j))
            if not any(w):
                continue
            cert = columns_matrix(
                [law.basis_vector(i), law.basis_vector(j), tuple(-c for c in w)]
            )
            if det(law.field, cert):
                return _finish(law, cert, ClassLabel("mu5"))
    raise ClassificationError("Lie law with s=(2,1) has no nonzero basis product")


def _square_vectors(law: AlgebraLaw, rng: random.Random, samples: int):
    """Candidates for vectors with mu(x, x) != 0: basis, sums, pencils, random."""
    n = law.dim
    basis = [law.basis_vector(i) for i in range(n)]
    for v in basis:
        yield v
    for i in range(n):
        for j in range(i + 1, n):
            yield tuple(a + b for a, b in zip(basis[i], basis[j]))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for lam in _PENCIL_COEFFICIENTS:
                lam_c = law.field.coerce(lam)
                yield tuple(a + lam_c * b for a, b in zip(basis[i], basis[j]))
    produced = 0
    while produced < samples:
        v = tuple(law.field.coerce(rng.randint(-3, 3)) for _ in range(n))
        if any(v):
            produced += 1
            yield v


def _case_a_vector(law: AlgebraLaw, c2) -> tuple:
    """A characteristic vector x with mu(x, x) != 0, in deterministic order."""
    target = CharacteristicSequence((2, 1))
    rng = random.Random(SAMPLING_SEED + 2)
    for v in _square_vectors(law, rng, samples=32):
        if c2.contains(v):
            continue
        if not any(law.multiply(v, v)):
            continue
        if jordan_type(law.field, law.right_mult_matrix(v)) == target:
            return v
    raise SearchExhaustedError(
        "no characteristic vector x with mu(x, x) != 0 was found; "
        "the law resisted the case analysis"
    )


def _mu2_family_case(law: AlgebraLaw, c2) -> Classification:
    field = law.field
    x = _case_a_vector(law, c2)
    e2v = law.multiply(x, x)
    kernel = nullspace(field, law.right_mult_matrix(x), law.dim)
    e3v = None
    for k in kernel:
        if det(field, columns_matrix([x, e2v, k])):
            e3v = k
            break
    if e3v is None:
        raise ClassificationError("kernel of R_x provides no basis complement")
    cert = columns_matrix([x, e2v, e3v])
    nu = apply_basis_change(law, cert)
    a = nu.constants[0][2][1]
    b_raw = nu.constants[2][2][1]
    expected = AlgebraLaw.from_products(
        field, 3, {(1, 1): {2: 1}, (1, 3): {2: a}, (3, 3): {2: b_raw}}
    )
    if nu.constants != expected.constants:
        raise ClassificationError(
            "adapted basis did not reach the normal form mu(e1,e1)=e2, "
            "mu(e1,e3)=a e2, mu(e3,e3)=b e2"
        )
    if a:
        scaled = columns_matrix(
            [x, e2v, tuple(c / a for c in e3v)]
        )
        b_final = b_raw / (a * a)
        return _finish(law, scaled, ClassLabel("mu2", b_final))
    if b_raw:
        root = field.sqrt(field.one / b_raw)
        if root is None:
            raise CertificateUnrepresentableError(
                f"the law has type mu3 over the algebraic closure, but "
                f"sqrt(1/b) with b = {b_raw} does not lie in {field}"
            )
        scaled = columns_matrix([x, e2v, tuple(c * root for c in e3v)])
        return _finish(law, scaled, ClassLabel("mu3"))
    return _finish(law, cert, ClassLabel("mu4"))


def classify_nilpotent_dim3(law: AlgebraLaw) -> Classification:
    """Canonical-form classification over the law's exact field, with certificate."""
    _require_domain(law, 3)
    c2, nilpotent = _derived_subspace(law)
    if not nilpotent:
        raise NotNilpotentError("classification covers nilpotent laws only")
    s, _ = characteristic_sequence(law)
    if s.parts == (3,):
        return _mu1_case(law, c2)
    if s.parts == (1, 1, 1):
        if not law.is_zero():
            raise ClassificationError(
                "sequence (1,1,1) computed for a law with nonzero products"
            )
        return _finish(law, identity(law.field, 3), ClassLabel("mu6"))
    if is_lie(law):
        return _mu5_case(law)
    return _mu2_family_case(law, c2)


def classify_nilpotent_dim2(law: AlgebraLaw) -> Classification:
    """Two classes in dimension 2: the abelian law and mu(e1,e1)=e2."""
    _require_domain(law, 2)
    _, nilpotent = _derived_subspace(law)
    if not nilpotent:
        raise NotNilpotentError("classification covers nilpotent laws only")
    if law.is_zero():
        return _finish(law, identity(law.field, 2), ClassLabel("nilp2_abelian"))
    rng = random.Random(SAMPLING_SEED + 3)
    for v in _square_vectors(law, rng, samples=16):
        u = law.multiply(v, v)
        if not any(u):
            continue
        cert = columns_matrix([v, u])
        if det(law.field, cert):
            return _finish(law, cert, ClassLabel("nilp2_filiform"))
    raise SearchExhaustedError("no vector with mu(x, x) != 0 in dimension 2")


def classify(law: AlgebraLaw) -> Classification:
    """Dispatch on dimension; only 2 and 3 are covered."""
    if law.dim == 2:
        return classify_nilpotent_dim2(law)
    if law.dim == 3:
        return classify_nilpotent_dim3(law)
    raise ValueError("classification is implemented for dimensions 2 and 3 only")


def are_isomorphic_dim3(a: AlgebraLaw, b: AlgebraLaw):
    """Label comparison through classification; certificate when isomorphic.

    Returns (True, matrix) with apply_basis_change(a, matrix) == b, or
    (False, None).
    """
    ca = classify_nilpotent_dim3(a)
    cb = classify_nilpotent_dim3(b)
    if ca.label != cb.label:
        return False, None
    cert = mat_mul(a.field, ca.certificate, inverse(b.field, cb.certificate))
    if apply_basis_change(a, cert).constants != b.constants:
        raise ClassificationError("composed certificate failed verification")
    return True, cert
