"""Shared helpers for randomized exact-arithmetic tests."""

from __future__ import annotations

import random
from fractions import Fraction

from leibnizlab.linalg import det, mat
from leibnizlab.scalars import QI, GaussianRational


def rand_fraction(rng: random.Random, span: int = 3, denom: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, denom))


def rand_gauss(rng: random.Random, span: int = 3, denom: int = 3) -> GaussianRational:
    return GaussianRational(rand_fraction(rng, span, denom), rand_fraction(rng, span, denom))


def rand_nonzero_gauss(rng: random.Random, span: int = 3, denom: int = 3) -> GaussianRational:
    while True:
        g = rand_gauss(rng, span, denom)
        if g:
            return g


def rand_vector(rng: random.Random, n: int, span: int = 3) -> tuple:
    return tuple(QI.coerce(rng.randint(-span, span)) for _ in range(n))


def rand_invertible(rng: random.Random, n: int, span: int = 2) -> tuple:
    """Random invertible matrix over Q(i) with small integer-complex entries."""
    while True:
        m = mat(
            [
                [
                    GaussianRational(
                        Fraction(rng.randint(-span, span)),
                        Fraction(rng.randint(-span, span)),
                    )
                    for _ in range(n)
                ]
                for _ in range(n)
            ]
        )
        if det(QI, m):
            return m


def conjugate(law, rng: random.Random):
    from leibnizlab.algebra import apply_basis_change

    return apply_basis_change(law, rand_invertible(rng, law.dim))
