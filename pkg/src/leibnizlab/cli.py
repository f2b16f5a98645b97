"""Command-line interface; a thin client over the service layer.

Every subcommand builds a request model, dispatches it either in-process or
to a running service (--server URL), and renders the response. The CLI adds
no computation of its own.

Exit codes: 0 success, 1 check/computation failure, 2 usage or parse error.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import service
from .files import ParseError
from .service import (
    CatalogResponse,
    CheckResponse,
    ClassifyResponse,
    ContractRequest,
    ContractResponse,
    DomainError,
    GraphRequest,
    GraphResponse,
    InvariantsResponse,
    LawPayload,
    PerturbRequest,
    PerturbResponse,
)

_CATALOG_DIRECTIONS = ("phi2", "phi3", "phi4", "phi5", "phi5_corrected")


class LocalClient:
    """In-process dispatch straight to the service handlers."""

    def check(self, payload: LawPayload) -> CheckResponse:
        return service.handle_check(payload)

    def invariants(self, payload: LawPayload) -> InvariantsResponse:
        return service.handle_invariants(payload)

    def classify(self, payload: LawPayload) -> ClassifyResponse:
        return service.handle_classify(payload)

    def contract(self, request: ContractRequest) -> ContractResponse:
        return service.handle_contract(request)

    def perturb(self, request: PerturbRequest) -> PerturbResponse:
        return service.handle_perturb(request)

    def graph(self, request: GraphRequest) -> GraphResponse:
        return service.handle_graph(request)

    def catalog(self) -> CatalogResponse:
        return service.handle_catalog()


class RemoteClient:
    """HTTP dispatch to a running leibnizlab service."""

    def __init__(self, base_url: str, http_client=None):
        if http_client is None:
            import httpx

            http_client = httpx.Client(base_url=base_url, timeout=300.0)
        self._http = http_client

    def _post(self, path: str, payload, model):
        response = self._http.post(path, json=payload.model_dump())
        self._raise_for(response)
        return model.model_validate(response.json())

    @staticmethod
    def _raise_for(response) -> None:
        if response.status_code == 422:
            raise ParseError(response.json().get("detail", "invalid input"))
        if response.status_code == 400:
            raise DomainError(response.json().get("detail", "computation failed"))
        response.raise_for_status()

    def check(self, payload: LawPayload) -> CheckResponse:
        return self._post("/check", payload, CheckResponse)

    def invariants(self, payload: LawPayload) -> InvariantsResponse:
        return self._post("/invariants", payload, InvariantsResponse)

    def classify(self, payload: LawPayload) -> ClassifyResponse:
        return self._post("/classify", payload, ClassifyResponse)

    def contract(self, request: ContractRequest) -> ContractResponse:
        return self._post("/contract", request, ContractResponse)

    def perturb(self, request: PerturbRequest) -> PerturbResponse:
        return self._post("/perturb", request, PerturbResponse)

    def graph(self, request: GraphRequest) -> GraphResponse:
        return self._post("/graph", request, GraphResponse)

    def catalog(self) -> CatalogResponse:
        response = self._http.get("/catalog")
        self._raise_for(response)
        return CatalogResponse.model_validate(response.json())


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}")


def _payload(args) -> LawPayload:
    bindings = {}
    for item in args.set or []:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ParseError(f"--set expects NAME=VALUE, got {item!r}")
        bindings[name] = value
    return LawPayload(source=_read_file(args.file), bindings=bindings)


def _print_violations(violations) -> None:
    shown = violations[:20]
    for v in shown:
        print(f"  violation at (i,j,k,m) = ({v.i},{v.j},{v.k},{v.m})")
    if len(violations) > len(shown):
        print(f"  ... and {len(violations) - len(shown)} more")


def _cmd_check(args, client) -> int:
    response = client.check(_payload(args))
    if response.leibniz_ok:
        print("leibniz: ok")
        return 0
    print(f"leibniz: FAILED ({len(response.violations)} violations)")
    _print_violations(response.violations)
    return 1


def _seq_str(parts) -> str:
    return "(" + ",".join(str(p) for p in parts) + ")"


def _cmd_invariants(args, client) -> int:
    r = client.invariants(_payload(args))
    print(f"dim: {r.dim}")
    print(f"field: {r.field}")
    print(f"lie: {'yes' if r.lie else 'no'}")
    print(f"nilpotent: {'yes' if r.nilpotent else 'no'}")
    print(f"central series dims: {' '.join(str(d) for d in r.central_dims)}")
    print(f"right center dim: {r.right_center_dim}")
    print(f"two-sided center dim: {r.two_sided_center_dim}")
    if r.char_seq is not None:
        witness = ", ".join(r.char_witness or [])
        print(f"characteristic sequence: {_seq_str(r.char_seq)} at witness ({witness})")
    print(f"derivation dim: {r.derivation_dim}")
    print(f"orbit dim: {r.orbit_dim}")
    return 0


def _print_classification(r: ClassifyResponse) -> None:
    print(f"class: {r.label}")
    print("certificate (columns express the adapted basis):")
    for row in r.certificate:
        print("  [" + ", ".join(row) + "]")
    print("representative:")
    for line in r.representative.rstrip().splitlines():
        print(f"  {line}")


def _cmd_classify(args, client) -> int:
    _print_classification(client.classify(_payload(args)))
    return 0


def _cmd_contract(args, client) -> int:
    request = ContractRequest(
        law=_payload(args),
        family_source=_read_file(args.family) if args.family else None,
        catalog_family=args.catalog_family,
    )
    response = client.contract(request)
    if not response.ok:
        print(f"limit does not exist: {response.pole}")
        return 1
    print("contracted law:")
    for line in response.result.rstrip().splitlines():
        print(f"  {line}")
    mono = response.monotonicity
    print("monotonicity (source vs contraction):")
    print(f"  orbit dim: {mono.source_orbit_dim} > {mono.target_orbit_dim}: "
          f"{'ok' if mono.orbit_ok else 'VIOLATED'}")
    print(f"  right center dim: {mono.source_right_center_dim} <= "
          f"{mono.target_right_center_dim}: {'ok' if mono.right_center_ok else 'VIOLATED'}")
    if mono.source_char_seq is not None and mono.target_char_seq is not None:
        print(f"  char seq: {_seq_str(mono.source_char_seq)} >= "
              f"{_seq_str(mono.target_char_seq)}: {'ok' if mono.char_seq_ok else 'VIOLATED'}")
    print(f"  overall: {'pass' if mono.passed else 'fail'}")
    return 0


def _cmd_perturb(args, client) -> int:
    direction = args.direction
    if direction in _CATALOG_DIRECTIONS:
        request = PerturbRequest(law=_payload(args), direction_name=direction)
    elif os.path.exists(direction):
        request = PerturbRequest(
            law=_payload(args), direction_source=_read_file(direction)
        )
    else:
        raise DomainError(
            f"{direction!r} is neither a catalog direction "
            f"({', '.join(_CATALOG_DIRECTIONS)}) nor a readable file"
        )
    r = client.perturb(request)
    print("perturbed law:")
    for line in r.law.rstrip().splitlines():
        print(f"  {line}")
    print(f"leibniz: {'ok' if r.leibniz_ok else 'FAILED'}")
    if not r.leibniz_ok:
        _print_violations(r.violations)
    print(f"nilpotent: {'yes' if r.nilpotent else 'no'}")
    if r.classification is not None:
        _print_classification(r.classification)
    elif r.classification_error is not None:
        print(f"classification failed: {r.classification_error}", file=sys.stderr)
    return 0


def _cmd_graph(args, client) -> int:
    response = client.graph(
        GraphRequest(catalog=args.catalog, exponent_bound=args.bound)
    )
    if args.output == "-":
        sys.stdout.write(response.dot)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(response.dot)
        print(f"wrote {args.output}", file=sys.stderr)
    return 0


def _cmd_catalog(args, client) -> int:
    response = client.catalog()
    by_kind: dict[str, list] = {"law": [], "family": [], "direction": []}
    for entry in response.entries:
        by_kind.setdefault(entry.kind, []).append(entry)
    headings = {"law": "laws:", "family": "families:", "direction": "directions:"}
    for kind in ("law", "family", "direction"):
        print(headings[kind])
        for entry in by_kind[kind]:
            params = f"({', '.join(entry.params)})" if entry.params else ""
            dim = f" dim {entry.dim}" if entry.dim is not None else ""
            print(f"  {entry.name}{params}{dim}: {entry.summary}")
    return 0


def _cmd_serve(args, client) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leibnizlab",
        description="Exact computations with complex Leibniz algebra laws",
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        help="dispatch to a running leibnizlab service instead of in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_law_command(name: str, handler, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="algebra file")
        p.add_argument(
            "--set",
            action="append",
            metavar="NAME=VALUE",
            help="bind a declared parameter to an exact scalar",
        )
        p.set_defaults(handler=handler)
        return p

    add_law_command("check", _cmd_check, "verify the Leibniz identity")
    add_law_command("invariants", _cmd_invariants, "print the invariant fingerprint")
    add_law_command(
        "classify", _cmd_classify, "classify a nilpotent law of dimension 2 or 3"
    )

    p = add_law_command("contract", _cmd_contract, "contract a law along a family")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", metavar="FAMFILE", help="family file over t")
    group.add_argument(
        "--catalog-family", metavar="NAME", help="a catalog family: f, f_printed, g, h"
    )

    p = add_law_command("perturb", _cmd_perturb, "perturb a law along a direction")
    p.add_argument(
        "--direction",
        required=True,
        metavar="NAME|DIRFILE",
        help="catalog direction name or a direction file",
    )

    p = sub.add_parser("graph", help="emit the degeneration graph as DOT")
    p.add_argument("--catalog", default="leibn3", help="graph catalog (leibn3)")
    p.add_argument("-o", "--output", required=True, metavar="OUT.dot",
                   help="output path, or - for stdout")
    p.add_argument("--bound", type=int, default=2,
                   help="exponent bound for the witness search")
    p.set_defaults(handler=_cmd_graph)

    p = sub.add_parser("catalog", help="list catalog entries")
    p.add_argument("action", choices=["list"])
    p.set_defaults(handler=_cmd_catalog)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None, client=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if client is None:
        client = RemoteClient(args.server) if args.server else LocalClient()
    try:
        return args.handler(args, client)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
