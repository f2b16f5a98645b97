import random

import pytest
import sympy as sp

from conftest import conjugate, rand_invertible, rand_vector
from leibnizlab.algebra import (
    AlgebraLaw,
    apply_basis_change,
    central_series,
    check_leibniz,
    derivation_dim,
    is_lie,
    is_nilpotent,
    leibniz_residual,
    orbit_dim,
    quotient_by_right_center,
    right_center,
    two_sided_center,
)
from leibnizlab.catalog import make_law
from leibnizlab.linalg import identity, mat_mul, mat_pow
from leibnizlab.scalars import QI


def law_from(products, dim=3):
    return AlgebraLaw.from_products(QI, dim, products)


# Frozen by the sympy elimination oracle below (see test_derivation_dims_oracle).
DERIVATION_DIMS = {
    "mu1": 3,
    "mu2_0": 4,
    "mu2_1": 4,
    "mu3": 4,
    "mu4": 5,
    "mu5": 6,
    "mu6": 9,
    "lambda5": 4,
}


def named_laws():
    return {
        "mu1": make_law("mu1"),
        "mu2_0": make_law("mu2", b=0),
        "mu2_1": make_law("mu2", b=1),
        "mu3": make_law("mu3"),
        "mu4": make_law("mu4"),
        "mu5": make_law("mu5"),
        "mu6": make_law("mu6"),
        "lambda5": make_law("lambda5"),
    }


def test_multiply_mu1():
    mu1 = make_law("mu1")
    e1, e2, e3 = (mu1.basis_vector(i) for i in range(3))
    assert mu1.multiply(e1, e1) == e2
    assert mu1.multiply(e2, e1) == e3
    zero = (QI.zero,) * 3
    assert mu1.multiply(zero, e2) == zero
    with pytest.raises(ValueError):
        mu1.multiply((QI.one,), e1)


def test_check_leibniz_cases():
    assert check_leibniz(make_law("mu1")).ok
    assert check_leibniz(AlgebraLaw.zero_law(QI, 4)).ok
    bad = AlgebraLaw.from_products(QI, 1, {(1, 1): {1: 1}})
    report = check_leibniz(bad)
    assert not report.ok
    assert report.violations == ((1, 1, 1, 1),)


def test_leibniz_forms_agree():
    # The trilinear residual vanishes on all basis triples iff the quadratic
    # structure-constant identities hold; both directions on random tensors.
    rng = random.Random(29)
    for _ in range(25):
        n = rng.choice((2, 3))
        constants = tuple(
            tuple(
                tuple(QI.coerce(rng.choice((0, 0, 0, 1, -1))) for _ in range(n))
                for _ in range(n)
            )
            for _ in range(n)
        )
        law = AlgebraLaw(QI, n, constants)
        basis = [law.basis_vector(i) for i in range(n)]
        residual_ok = all(
            not any(leibniz_residual(law, x, y, z))
            for x in basis
            for y in basis
            for z in basis
        )
        assert residual_ok == check_leibniz(law).ok


def test_is_lie():
    assert is_lie(make_law("mu5"))
    assert not is_lie(make_law("mu1"))
    assert is_lie(make_law("mu6"))


def test_right_mult_matrix():
    mu1 = make_law("mu1")
    r = mu1.right_mult_matrix(mu1.basis_vector(0))
    e1, e2, e3 = (mu1.basis_vector(i) for i in range(3))
    assert tuple(r[m][0] for m in range(3)) == e2  # e1 -> e2
    assert tuple(r[m][1] for m in range(3)) == e3  # e2 -> e3
    assert tuple(r[m][2] for m in range(3)) == (QI.zero,) * 3

    nf = make_law("null_filiform", n=6)
    assert nf.right_mult_matrix(nf.basis_vector(1)) == tuple(
        (QI.zero,) * 6 for _ in range(6)
    )
    assert mu1.right_mult_matrix((QI.zero,) * 3) == tuple((QI.zero,) * 3 for _ in range(3))


def test_central_series_dims():
    assert [s.dim for s in central_series(make_law("mu1"))] == [3, 2, 1, 0]
    assert [s.dim for s in central_series(make_law("mu6"))] == [3, 0]
    for n in range(3, 8):
        nf = make_law("null_filiform", n=n)
        assert [s.dim for s in central_series(nf)] == list(range(n, -1, -1))


def test_is_nilpotent():
    assert is_nilpotent(make_law("mu1"))
    assert is_nilpotent(AlgebraLaw.zero_law(QI, 3))
    assert not is_nilpotent(make_law("phi1_leib2"))


def test_right_center_dims():
    assert right_center(make_law("mu1")).dim == 2
    assert right_center(make_law("mu3")).dim == 1
    assert right_center(make_law("mu6")).dim == 3


def test_two_sided_center():
    mu5 = make_law("mu5")
    z = two_sided_center(mu5)
    assert z.dim == 1 and z.contains(mu5.basis_vector(2))
    assert two_sided_center(make_law("mu6")).dim == 3
    assert two_sided_center(make_law("null_filiform", n=5)).dim == 1


def sympy_derivation_dim(law):
    """Independent elimination oracle: sympy symbols, products, and rank."""
    n = law.dim

    def to_sympy(c):
        return sp.Rational(c.re) + sp.Rational(c.im) * sp.I

    def mult(x, y):
        out = [sp.S(0)] * n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    out[k] += x[i] * y[j] * to_sympy(law.constants[i][j][k])
        return out

    d = sp.symbols(f"d0:{n * n}")
    D = sp.Matrix(n, n, d)
    eqs = []
    basis = [[sp.S(1) if a == i else sp.S(0) for a in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            de_i = [D[p, i] for p in range(n)]
            de_j = [D[q, j] for q in range(n)]
            lhs = [
                sum(to_sympy(law.constants[i][j][k]) * D[m, k] for k in range(n))
                for m in range(n)
            ]
            rhs = [a + b for a, b in zip(mult(de_i, basis[j]), mult(basis[i], de_j))]
            eqs.extend(sp.expand(l - r) for l, r in zip(lhs, rhs))
    a_mat, _ = sp.linear_eq_to_matrix(eqs, list(d))
    return n * n - a_mat.rank()


def test_derivation_dims_oracle():
    laws = named_laws()
    for name, expected in DERIVATION_DIMS.items():
        assert derivation_dim(laws[name]) == expected
        assert sympy_derivation_dim(laws[name]) == expected


def test_orbit_dims():
    assert orbit_dim(make_law("mu6")) == 0
    assert orbit_dim(make_law("mu1")) == 9 - DERIVATION_DIMS["mu1"]
    assert orbit_dim(make_law("mu1")) > orbit_dim(make_law("mu4"))


def test_apply_basis_change_identity():
    mu3 = make_law("mu3")
    assert apply_basis_change(mu3, identity(QI, 3)).constants == mu3.constants


def test_lambda5_to_mu3_change_of_basis():
    # Columns express the new basis: e1 = x2, e2 = x1, e3 = -i x2 + i x3.
    lam5 = make_law("lambda5")
    i = QI.i
    matrix = (
        (QI.zero, QI.one, QI.zero),
        (QI.one, QI.zero, -i),
        (QI.zero, QI.zero, i),
    )
    assert apply_basis_change(lam5, matrix).constants == make_law("mu3").constants


def test_basis_change_composition():
    rng = random.Random(31)
    mu1 = make_law("mu1")
    for _ in range(10):
        f = rand_invertible(rng, 3)
        g = rand_invertible(rng, 3)
        lhs = apply_basis_change(apply_basis_change(mu1, f), g)
        rhs = apply_basis_change(mu1, mat_mul(QI, f, g))
        assert lhs.constants == rhs.constants


def test_basis_change_preserves_invariants():
    rng = random.Random(41)
    for name in ("mu1", "mu2_1", "mu3", "mu5"):
        law = make_law(name) if name != "mu2_1" else make_law("mu2", b=1)
        for _ in range(5):
            conj = conjugate(law, rng)
            assert check_leibniz(conj).ok
            assert is_lie(conj) == is_lie(law)
            assert [s.dim for s in central_series(conj)] == [
                s.dim for s in central_series(law)
            ]
            assert right_center(conj).dim == right_center(law).dim
            assert derivation_dim(conj) == derivation_dim(law)


def test_quotient_by_right_center():
    q1 = quotient_by_right_center(make_law("mu1"))
    assert q1.dim == 1 and q1.is_zero()

    q6 = quotient_by_right_center(make_law("mu6"))
    assert q6.dim == 0

    q2 = quotient_by_right_center(make_law("mu2", b=1))
    assert q2.dim == 2
    assert check_leibniz(q2).ok and is_lie(q2)


def test_quotient_always_lie_on_conjugates():
    rng = random.Random(43)
    for name, b in [("mu1", None), ("mu2", 2), ("mu3", None), ("mu5", None)]:
        law = make_law(name, b=b) if b is not None else make_law(name)
        for _ in range(10):
            conj = conjugate(law, rng)
            q = quotient_by_right_center(conj)
            assert check_leibniz(q).ok and is_lie(q)


def test_symmetrized_products_in_right_center():
    rng = random.Random(47)
    for name in ("mu1", "mu3", "mu5"):
        law = make_law(name)
        zr = right_center(law)
        for _ in range(20):
            x, y = rand_vector(rng, 3), rand_vector(rng, 3)
            sym = tuple(
                a + b for a, b in zip(law.multiply(x, y), law.multiply(y, x))
            )
            assert zr.contains(sym)
            assert zr.contains(law.multiply(x, x))


def test_right_mult_nilpotent_on_nilpotent_laws():
    rng = random.Random(53)
    for name in ("mu1", "mu4", "mu5"):
        law = make_law(name)
        for _ in range(10):
            x = rand_vector(rng, 3)
            r = law.right_mult_matrix(x)
            assert mat_pow(QI, r, 3) == tuple((QI.zero,) * 3 for _ in range(3))


def test_quotient_of_non_leibniz_can_fail():
    # mu(e3,e1)=e1: Z_R = span{e2,e3} but mu(e3,e1) lies outside it, so the
    # induced quotient product is ill-defined (only possible off the variety).
    law = AlgebraLaw.from_products(QI, 3, {(3, 1): {1: 1}})
    assert not check_leibniz(law).ok
    from leibnizlab.algebra import IllDefinedQuotientError

    with pytest.raises(IllDefinedQuotientError):
        quotient_by_right_center(law)
