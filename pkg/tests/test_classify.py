import random

import pytest

from conftest import conjugate, rand_nonzero_gauss
from leibnizlab.algebra import AlgebraLaw, apply_basis_change, is_lie
from leibnizlab.catalog import make_law, perturbation_direction
from leibnizlab.classify import (
    CertificateUnrepresentableError,
    ClassLabel,
    are_isomorphic_dim3,
    classify,
    classify_nilpotent_dim2,
    classify_nilpotent_dim3,
    find_characteristic_vector,
    representative_law,
)
from leibnizlab.deform import perturb
from leibnizlab.invariants import NotNilpotentError, char_seq_at, characteristic_sequence
from leibnizlab.linalg import identity
from leibnizlab.scalars import QI, function_field, gauss


def test_representatives_classify_to_themselves():
    for tag, b in [("mu1", None), ("mu2", gauss(3)), ("mu3", None),
                   ("mu4", None), ("mu5", None), ("mu6", None)]:
        law = representative_law(tag, QI, b=b)
        result = classify_nilpotent_dim3(law)
        assert result.label == ClassLabel(tag, b)
        assert apply_basis_change(law, result.certificate).constants == law.constants


def test_certificates_verified_on_conjugates():
    rng = random.Random(89)
    for tag, b in [("mu1", None), ("mu2", gauss(2, 1)), ("mu3", None),
                   ("mu4", None), ("mu5", None), ("mu6", None)]:
        law = representative_law(tag, QI, b=b)
        for _ in range(10):
            conj = conjugate(law, rng)
            result = classify_nilpotent_dim3(conj)
            assert result.label == ClassLabel(tag, b)
            image = apply_basis_change(conj, result.certificate)
            assert image.constants == result.representative.constants


def test_mu2_parameter_recovered_exactly():
    rng = random.Random(97)
    for _ in range(10):
        b = rand_nonzero_gauss(rng)
        conj = conjugate(make_law("mu2", b=b), rng)
        assert classify_nilpotent_dim3(conj).label == ClassLabel("mu2", b)


def test_mu2_parameters_separate_classes():
    one = make_law("mu2", b=1)
    two = make_law("mu2", b=2)
    iso, cert = are_isomorphic_dim3(one, two)
    assert not iso and cert is None


def test_lambda5_is_mu3():
    lam5 = make_law("lambda5")
    assert classify_nilpotent_dim3(lam5).label == ClassLabel("mu3")
    iso, cert = are_isomorphic_dim3(lam5, make_law("mu3"))
    assert iso
    assert apply_basis_change(lam5, cert).constants == make_law("mu3").constants


def test_are_isomorphic_reflexive():
    mu3 = make_law("mu3")
    iso, cert = are_isomorphic_dim3(mu3, mu3)
    assert iso
    assert apply_basis_change(mu3, cert).constants == mu3.constants


def test_label_consistency_on_conjugates():
    rng = random.Random(101)
    expectations = {
        "mu1": (3,),
        "mu5": (2, 1),
        "mu6": (1, 1, 1),
    }
    for tag, parts in expectations.items():
        law = make_law(tag)
        for _ in range(5):
            conj = conjugate(law, rng)
            assert characteristic_sequence(conj)[0].parts == parts
            result = classify_nilpotent_dim3(conj)
            assert result.label.tag == tag
            if tag == "mu5":
                assert is_lie(conj)


def test_characteristic_vector_witness():
    mu1 = make_law("mu1")
    x = find_characteristic_vector(mu1)
    assert char_seq_at(mu1, x).parts == (3,)

    mu3 = make_law("mu3")
    x = find_characteristic_vector(mu3)
    assert char_seq_at(mu3, x).parts == (2, 1)


def test_classification_over_eps_field():
    # the same operation instantiated over Q(i)(eps)
    eps_field = function_field("eps")
    eps = eps_field.gen
    pert = perturb(make_law("mu3"), perturbation_direction("phi3"))
    result = classify_nilpotent_dim3(pert)
    assert result.label.tag == "mu2"
    assert result.label.b == eps_field.one / (eps * eps)  # b' = 1/eps^2
    assert result.label.b


def test_classify_dim2():
    abelian = AlgebraLaw.zero_law(QI, 2)
    res = classify_nilpotent_dim2(abelian)
    assert res.label == ClassLabel("nilp2_abelian")
    assert res.certificate == identity(QI, 2)

    filiform = make_law("null_filiform", n=2)
    res = classify_nilpotent_dim2(filiform)
    assert res.label == ClassLabel("nilp2_filiform")
    assert res.certificate == identity(QI, 2)

    rng = random.Random(103)
    for _ in range(10):
        conj = conjugate(filiform, rng)
        res = classify_nilpotent_dim2(conj)
        assert res.label == ClassLabel("nilp2_filiform")
        assert apply_basis_change(conj, res.certificate).constants == filiform.constants


def test_classify_dispatch_and_preconditions():
    with pytest.raises(NotNilpotentError):
        classify(make_law("phi1_leib2"))
    with pytest.raises(ValueError):
        classify(make_law("null_filiform", n=4))
    bad = AlgebraLaw.from_products(QI, 3, {(3, 1): {1: 1}})
    with pytest.raises(ValueError):
        classify_nilpotent_dim3(bad)
    with pytest.raises(ValueError):
        classify_nilpotent_dim3(make_law("null_filiform", n=2))


def test_mu3_certificate_needs_square_root():
    # e1*e1=e2, e3*e3=2*e2 is mu3 over the closure, but 2 is not a square in
    # Q(i), so no exact certificate exists over the base field.
    law = AlgebraLaw.from_products(QI, 3, {(1, 1): {2: 1}, (3, 3): {2: 2}})
    with pytest.raises(CertificateUnrepresentableError):
        classify_nilpotent_dim3(law)


def test_mu3_certificate_with_gaussian_square_root():
    # b = -1/4 has sqrt(1/b) = 2i in Q(i), so this one classifies fine.
    from fractions import Fraction

    law = AlgebraLaw.from_products(
        QI, 3, {(1, 1): {2: 1}, (3, 3): {2: gauss(Fraction(-1, 4))}}
    )
    result = classify_nilpotent_dim3(law)
    assert result.label == ClassLabel("mu3")
