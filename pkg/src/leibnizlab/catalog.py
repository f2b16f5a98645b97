"""Machine-readable constructors for every named law, family and direction.

Names are stable CLI identifiers. Laws come back over a caller-chosen exact
field (default Q(i)) so the same constructors serve classification over
Q(i)(eps) or a symbolic parameter field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraLaw
from .classify import representative_law
from .deform import ContractionFamily
from .scalars import QI, function_field


@dataclass(frozen=True, slots=True)
class CatalogEntry:
    name: str
    kind: str  # "law" | "family" | "direction"
    dim: int | None
    params: tuple[str, ...]
    summary: str


_LAW_ENTRIES = (
    CatalogEntry("mu1", "law", 3, (), "e1*e1=e2, e2*e1=e3; the rigid maximal-sequence law"),
    CatalogEntry("mu2", "law", 3, ("b",), "e1*e1=e2, e3*e3=b*e2, e1*e3=e2"),
    CatalogEntry("mu3", "law", 3, (), "e1*e1=e2, e3*e3=e2"),
    CatalogEntry("mu4", "law", 3, (), "e1*e1=e2"),
    CatalogEntry("mu5", "law", 3, (), "e1*e2=-e3, e2*e1=e3; the Heisenberg algebra"),
    CatalogEntry("mu6", "law", 3, (), "the abelian law"),
    CatalogEntry("heisenberg3", "law", 3, (), "alias of mu5"),
    CatalogEntry("lambda5", "law", 3, (), "e2*e2=e1, e3*e2=e1, e2*e3=e1; isomorphic to mu3"),
    CatalogEntry("null_filiform", "law", None, ("n",), "e_i*e1=e_{i+1} in dimension n"),
    CatalogEntry("phi1_leib2", "law", 2, (), "e1*e2=e2, e2*e1=-e2; 2-dim Lie, not nilpotent"),
    CatalogEntry("phi2_leib2", "law", 2, (), "e2*e1=e2; 2-dim Leibniz, not Lie"),
)

_FAMILY_ENTRIES = (
    CatalogEntry("f", "family", 3, (), "contracts mu1 onto mu2_0"),
    CatalogEntry("f_printed", "family", 3, (),
                 "diag(t, t^2, 1) with an extra t in column 3; contracts mu1 onto a mu4-isomorph"),
    CatalogEntry("g", "family", 3, (), "diag(t, t^2, 1); contracts mu1 onto mu4"),
    CatalogEntry("h", "family", 3, (), "t * identity; contracts everything onto the abelian law"),
)

_DIRECTION_ENTRIES = (
    CatalogEntry("phi2", "direction", 3, (), "e3*e3 -> e2; perturbs mu2_0 into the mu2 family"),
    CatalogEntry("phi3", "direction", 3, (), "e1*e3 -> e2; perturbs mu3 into the mu2 family"),
    CatalogEntry("phi4", "direction", 3, (), "e3*e3 -> e2 and e1*e3 -> e2; perturbs mu4"),
    CatalogEntry("phi5", "direction", 3, (),
                 "e1*e1 -> e1; mu5 + eps*phi5 is neither Leibniz nor nilpotent"),
    CatalogEntry("phi5_corrected", "direction", 3, (),
                 "e1*e1 -> e3 (generator squared to a central vector); perturbs mu5"),
)


def entries() -> tuple[CatalogEntry, ...]:
    return _LAW_ENTRIES + _FAMILY_ENTRIES + _DIRECTION_ENTRIES


def make_law(name: str, field=QI, **params) -> AlgebraLaw:
    """Build a catalog law by name; parameters are b (mu2) and n (null_filiform)."""
    known = {e.name: e for e in _LAW_ENTRIES}
    if name not in known:
        raise KeyError(f"unknown catalog law {name!r}")
    expected = set(known[name].params)
    if set(params) != expected:
        raise TypeError(
            f"law {name!r} takes parameters {sorted(expected) or 'none'}, "
            f"got {sorted(params) or 'none'}"
        )
    if name in ("mu1", "mu3", "mu4", "mu5", "mu6"):
        return representative_law(name, field)
    if name == "heisenberg3":
        return representative_law("mu5", field)
    if name == "mu2":
        return representative_law("mu2", field, b=field.coerce(params["b"]))
    if name == "lambda5":
        return AlgebraLaw.from_products(
            field, 3, {(2, 2): {1: 1}, (3, 2): {1: 1}, (2, 3): {1: 1}}
        )
    if name == "null_filiform":
        n = params["n"]
        if not isinstance(n, int) or n < 1:
            raise ValueError("null_filiform needs an integer dimension n >= 1")
        return AlgebraLaw.from_products(
            field, n, {(i, 1): {i + 1: 1} for i in range(1, n)}
        )
    if name == "phi1_leib2":
        return AlgebraLaw.from_products(field, 2, {(1, 2): {2: 1}, (2, 1): {2: -1}})
    if name == "phi2_leib2":
        return AlgebraLaw.from_products(field, 2, {(2, 1): {2: 1}})
    raise AssertionError(name)


def make_family(name: str) -> ContractionFamily:
    """Contraction families over Q(i)(t), as columns f_t(e_j)."""
    field = function_field("t")
    t = field.gen
    one = field.one
    zero = field.zero
    if name == "f":
        # The f_printed variant cannot reach mu2_0 (its limit is symmetric);
        # this one does, exactly, with determinant t^2:
        # f(e1)=t e1+e2, f(e2)=t^2 e2+t e3, f(e3)=t e1+t e2+e3.
        return ContractionFamily.from_columns(
            [(t, one, zero), (zero, t * t, t), (t, t, one)], name="f"
        )
    if name == "f_printed":
        return ContractionFamily.from_columns(
            [(t, zero, zero), (zero, t * t, zero), (t, zero, one)], name="f_printed"
        )
    if name == "g":
        return ContractionFamily.from_columns(
            [(t, zero, zero), (zero, t * t, zero), (zero, zero, one)], name="g"
        )
    if name == "h":
        return ContractionFamily.from_columns(
            [(t, zero, zero), (zero, t, zero), (zero, zero, t)], name="h"
        )
    raise KeyError(f"unknown catalog family {name!r}")


def perturbation_direction(name: str, field=QI) -> AlgebraLaw:
    """Bilinear perturbation directions; not required to satisfy any identity."""
    if name == "phi2":
        return AlgebraLaw.from_products(field, 3, {(3, 3): {2: 1}})
    if name == "phi3":
        return AlgebraLaw.from_products(field, 3, {(1, 3): {2: 1}})
    if name == "phi4":
        return AlgebraLaw.from_products(field, 3, {(3, 3): {2: 1}, (1, 3): {2: 1}})
    if name == "phi5":
        # mu5 + eps*phi5 fails both nilpotency and the Leibniz identity;
        # phi5_corrected is the variant that lands in the mu2 family.
        return AlgebraLaw.from_products(field, 3, {(1, 1): {1: 1}})
    if name == "phi5_corrected":
        # Square of the generator e1 mapped to the central vector e3; this is
        # the variant that lands mu5 inside the mu2 family.
        return AlgebraLaw.from_products(field, 3, {(1, 1): {3: 1}})
    raise KeyError(f"unknown perturbation direction {name!r}")
