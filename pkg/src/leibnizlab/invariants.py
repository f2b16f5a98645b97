"""Discrete invariants of nilpotent laws: Jordan types and characteristic sequences.

The characteristic sequence is the lexicographic maximum of the Jordan-block
partition of right multiplication, taken over vectors outside C^2. The
maximum is attained on a Zariski-open set, so it is searched over a
deterministic candidate family plus seeded random samples; the winning
witness certifies the reported value as a lower bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterator, Sequence

from .algebra import (
    AlgebraLaw,
    central_series,
    check_leibniz,
    derivation_dim,
    is_lie,
    right_center,
    two_sided_center,
)
from .linalg import Subspace, mat_mul, rank

#: Seed for the random part of the candidate search; recorded in CLI output.
SAMPLING_SEED = 1729

#: Number of random vectors tried beyond the deterministic candidates.
RANDOM_SAMPLES = 32


class NotNilpotentError(ValueError):
    """An operation defined only for nilpotent laws received a non-nilpotent one."""


class InsideDerivedSubalgebraError(ValueError):
    """The probe vector lies in C^2, where s_mu(x) is undefined."""


@total_ordering
@dataclass(frozen=True, slots=True)
class CharacteristicSequence:
    """A non-increasing partition, ordered lexicographically."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("partition parts must be non-increasing")

    def total(self) -> int:
        return sum(self.parts)

    def __lt__(self, other: "CharacteristicSequence") -> bool:
        return self.parts < other.parts

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def jordan_type(field, m: Sequence[Sequence]) -> CharacteristicSequence:
    """Jordan-block partition of a nilpotent matrix, from its rank sequence."""
    n = len(m)
    if n == 0:
        return CharacteristicSequence(())
    ranks = [n]
    power = m
    for _ in range(n):
        r = rank(field, power)
        ranks.append(r)
        if r == 0:
            break
        power = mat_mul(field, power, m)
    if ranks[-1] != 0:
        raise ValueError("matrix is not nilpotent")
    ranks += [0]
    parts: list[int] = []
    for size in range(len(ranks) - 2, 0, -1):
        at_least = ranks[size - 1] - ranks[size]
        above = ranks[size] - ranks[size + 1]
        parts.extend([size] * (at_least - above))
    return CharacteristicSequence(tuple(sorted(parts, reverse=True)))


def _derived_subspace(law: AlgebraLaw) -> tuple[Subspace, bool]:
    series = central_series(law)
    nilpotent = series[-1].dim == 0
    c2 = series[1] if len(series) > 1 else Subspace.zero(law.field, law.dim)
    return c2, nilpotent


def char_seq_at(law: AlgebraLaw, x: Sequence) -> CharacteristicSequence:
    """Jordan type of R_x for a vector x outside C^2 of a nilpotent law."""
    c2, nilpotent = _derived_subspace(law)
    if not nilpotent:
        raise NotNilpotentError("characteristic sequence requires a nilpotent law")
    if c2.contains(x):
        raise InsideDerivedSubalgebraError(
            "the characteristic sequence is defined only outside C^2"
        )
    return jordan_type(law.field, law.right_mult_matrix(x))


def candidate_vectors(
    law: AlgebraLaw,
    exclude: Subspace,
    rng: random.Random,
    random_samples: int = RANDOM_SAMPLES,
) -> Iterator[tuple]:
    """Basis vectors, pairwise sums, then seeded random vectors, all outside `exclude`."""
    n = law.dim
    basis = [law.basis_vector(i) for i in range(n)]
    for v in basis:
        if not exclude.contains(v):
            yield v
    for i in range(n):
        for j in range(i + 1, n):
            v = tuple(a + b for a, b in zip(basis[i], basis[j]))
            if not exclude.contains(v):
                yield v
    produced = 0
    while produced < random_samples:
        v = tuple(law.field.coerce(rng.randint(-3, 3)) for _ in range(n))
        if not any(v) or exclude.contains(v):
            continue
        produced += 1
        yield v


def characteristic_sequence(
    law: AlgebraLaw,
) -> tuple[CharacteristicSequence, tuple | None]:
    """Lexicographic maximum of s_mu(x) over the candidate set, with its witness."""
    n = law.dim
    if n == 0:
        return CharacteristicSequence(()), None
    c2, nilpotent = _derived_subspace(law)
    if not nilpotent:
        raise NotNilpotentError("characteristic sequence requires a nilpotent law")
    # rank R_x <= dim C^2, so this partition bounds every s_mu(x) from above
    r = min(c2.dim, n - 1)
    bound = CharacteristicSequence((r + 1,) + (1,) * (n - r - 1))
    rng = random.Random(SAMPLING_SEED)
    best: CharacteristicSequence | None = None
    witness: tuple | None = None
    for v in candidate_vectors(law, c2, rng):
        s = jordan_type(law.field, law.right_mult_matrix(v))
        if best is None or s > best:
            best, witness = s, v
        if best == bound:
            break
    if best is None:
        raise NotNilpotentError("no vector outside C^2; the law has no invariant")
    return best, witness


@dataclass(frozen=True, slots=True)
class InvariantFingerprint:
    """Basis-change invariants bundled for quick isomorphism refutation."""

    dim: int
    is_lie: bool
    central_dims: tuple[int, ...]
    right_center_dim: int
    two_sided_center_dim: int
    char_seq: CharacteristicSequence | None
    derivation_dim: int

    @property
    def orbit_dim(self) -> int:
        return self.dim * self.dim - self.derivation_dim


def fingerprint(law: AlgebraLaw) -> InvariantFingerprint:
    """Invariant summary of a Leibniz law; char_seq present iff nilpotent."""
    report = check_leibniz(law)
    if not report.ok:
        raise ValueError("fingerprint is defined for Leibniz laws only")
    series = central_series(law)
    nilpotent = series[-1].dim == 0
    char_seq = characteristic_sequence(law)[0] if nilpotent else None
    return InvariantFingerprint(
        dim=law.dim,
        is_lie=is_lie(law),
        central_dims=tuple(s.dim for s in series),
        right_center_dim=right_center(law).dim,
        two_sided_center_dim=two_sided_center(law).dim,
        char_seq=char_seq,
        derivation_dim=derivation_dim(law),
    )
