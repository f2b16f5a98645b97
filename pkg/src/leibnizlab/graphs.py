"""The LeibN^3 degeneration graph with three-state edges and a DOT emitter.

Solid edges carry verified contraction certificates; pairs refuted by the
monotonicity inequalities are omitted; everything else is dashed. The tool
never draws an unwitnessed solid edge. Output is byte-stable: node order,
edge order and the sampling seed are all fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import catalog
from .algebra import AlgebraLaw
from .deform import (
    ContractionCertificate,
    check_contraction_monotonicity,
    contract,
    find_diagonal_contraction,
    _laws_match,
)
from .invariants import SAMPLING_SEED, fingerprint
from .scalars import QI

LEIBN3_NODES = ("mu1", "mu2_0", "mu2_1", "mu3", "mu4", "mu5", "mu6")

#: Catalog families known to witness specific edges; tried before any search.
_KNOWN_FAMILIES = {
    ("mu1", "mu2_0"): "f",
    ("mu1", "mu4"): "g",
}


def leibn3_laws(field=QI) -> dict[str, AlgebraLaw]:
    """The graph nodes: the six representatives with mu2 sampled at b=0 and b=1."""
    return {
        "mu1": catalog.make_law("mu1", field),
        "mu2_0": catalog.make_law("mu2", field, b=0),
        "mu2_1": catalog.make_law("mu2", field, b=1),
        "mu3": catalog.make_law("mu3", field),
        "mu4": catalog.make_law("mu4", field),
        "mu5": catalog.make_law("mu5", field),
        "mu6": catalog.make_law("mu6", field),
    }


@dataclass(frozen=True, slots=True)
class DegenerationEdge:
    source: str
    target: str
    status: str  # "witnessed" | "refuted" | "undecided"
    certificate: ContractionCertificate | None = None


@dataclass(frozen=True, slots=True)
class DegenerationGraph:
    nodes: tuple[str, ...]
    edges: tuple[DegenerationEdge, ...]
    exponent_bound: int


def _try_known_family(source: AlgebraLaw, target: AlgebraLaw, name: str):
    family = catalog.make_family(name)
    result = contract(source, family)
    if fingerprint(result) == fingerprint(source):
        return None
    matched, iso = _laws_match(result, target)
    if not matched:
        return None
    return ContractionCertificate(
        source=source,
        family=family,
        result=result,
        target=target,
        iso=iso,
        monotonicity=check_contraction_monotonicity(source, result),
    )


def build_degeneration_graph(exponent_bound: int = 2) -> DegenerationGraph:
    laws = leibn3_laws()
    edges = []
    for src in LEIBN3_NODES:
        for dst in LEIBN3_NODES:
            if src == dst:
                continue
            source, target = laws[src], laws[dst]
            if not check_contraction_monotonicity(source, target).passed:
                edges.append(DegenerationEdge(src, dst, "refuted"))
                continue
            cert = None
            known = _KNOWN_FAMILIES.get((src, dst))
            if known is None and dst == "mu6":
                known = "h"
            if known is not None:
                cert = _try_known_family(source, target, known)
            if cert is None:
                cert = find_diagonal_contraction(source, target, exponent_bound)
            status = "witnessed" if cert is not None else "undecided"
            edges.append(DegenerationEdge(src, dst, status, cert))
    return DegenerationGraph(LEIBN3_NODES, tuple(edges), exponent_bound)


def _reverify(edge: DegenerationEdge, laws: dict[str, AlgebraLaw]) -> None:
    cert = edge.certificate
    result = contract(laws[edge.source], cert.family)
    if result.constants != cert.result.constants:
        raise ArithmeticError(f"stored certificate for {edge.source} -> {edge.target} no longer reproduces")
    matched, _ = _laws_match(result, laws[edge.target])
    if not matched or not cert.monotonicity.passed:
        raise ArithmeticError(f"certificate for {edge.source} -> {edge.target} failed re-verification")


def emit_dot(graph: DegenerationGraph, reverify: bool = True) -> str:
    """Deterministic DOT text; witnessed edges re-verified before emission."""
    laws = leibn3_laws()
    lines = [
        "digraph degenerations {",
        "  // catalog: leibn3",
        f"  // exponent bound: {graph.exponent_bound}",
        f"  // sampling seed: {SAMPLING_SEED}",
    ]
    for node in sorted(graph.nodes):
        lines.append(f"  {node};")
    drawn = []
    for edge in graph.edges:
        if edge.status == "witnessed":
            if reverify:
                _reverify(edge, laws)
            drawn.append((edge.source, edge.target, "solid"))
        elif edge.status == "undecided":
            drawn.append((edge.source, edge.target, "dashed"))
    for src, dst, style in sorted(drawn):
        lines.append(f"  {src} -> {dst} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
