"""Text formats: algebra files, family files, scalar expressions, and printers.

Algebra files:

    dim 3
    param b            # optional, declares a coefficient parameter
    e1*e1 = e2
    e3*e3 = b*e2
    e1*e3 = e2

Unwritten products are zero. Coefficients are Gaussian-rational expressions
(``1/2``, ``-i``, ``(1+i)``) possibly involving declared parameters. A bound
parameter is substituted; a single unbound parameter turns the law into one
over Q(i)(param).

Family files map basis vectors through rational functions in t:

    dim 3
    e1 -> t*e1
    e2 -> t^2*e2
    e3 -> e3 + t*e1

Unmapped basis vectors stay fixed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import AlgebraLaw
from .deform import ContractionCertificate, ContractionFamily, MonotonicityReport
from .scalars import QI, RationalFunctionField, function_field


class ParseError(ValueError):
    """Syntax or semantic error in a text input, with position information."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        place = ""
        if line is not None:
            place = f"line {line}"
            if column is not None:
                place += f", column {column}"
            place += ": "
        super().__init__(place + message)


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "int" | "name" | "op"
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|[*/+^()=,-])"
)

_BASIS_RE = re.compile(r"^e([0-9]+)$")

_RESERVED_NAMES = {"i", "dim", "param"}


def _tokenize(line: str, lineno: int) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:
            raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), lineno, pos + 1))
        pos = m.end()
    return tokens


class _ExprParser:
    """Recursive-descent parser for scalar expressions over one exact field."""

    def __init__(self, tokens: list[_Token], field, names: dict, lineno: int):
        self.tokens = tokens
        self.pos = 0
        self.field = field
        self.names = names
        self.lineno = lineno

    def _peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> _Token:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.lineno)
        self.pos += 1
        return tok

    def _error(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self._peek()
        col = tok.column if tok else None
        return ParseError(message, self.lineno, col)

    def parse(self):
        value = self.expr()
        if self._peek() is not None:
            raise self._error(f"unexpected token {self._peek().text!r}")
        return value

    def expr(self):
        value = self.term()
        while (tok := self._peek()) is not None and tok.text in "+-" and tok.kind == "op":
            self._next()
            rhs = self.term()
            value = value + rhs if tok.text == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while (tok := self._peek()) is not None and tok.text in "*/" and tok.kind == "op":
            self._next()
            rhs = self.unary()
            if tok.text == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except ZeroDivisionError:
                    raise self._error("division by zero", tok) from None
        return value

    def unary(self):
        sign = 1
        while (tok := self._peek()) is not None and tok.kind == "op" and tok.text in "+-":
            if tok.text == "-":
                sign = -sign
            self._next()
        value = self.power()
        return value if sign == 1 else -value

    def power(self):
        value = self.atom()
        if (tok := self._peek()) is not None and tok.text == "^":
            self._next()
            neg = False
            if (nxt := self._peek()) is not None and nxt.text == "-":
                self._next()
                neg = True
            exp_tok = self._next()
            if exp_tok.kind != "int":
                raise self._error("expected an integer exponent", exp_tok)
            exp = int(exp_tok.text)
            try:
                value = value ** (-exp if neg else exp)
            except ZeroDivisionError:
                raise self._error("zero raised to a negative power", exp_tok) from None
        return value

    def atom(self):
        tok = self._next()
        if tok.kind == "int":
            return self.field.coerce(int(tok.text))
        if tok.kind == "name":
            if tok.text == "i":
                return self.field.i
            if tok.text in self.names:
                return self.names[tok.text]
            raise self._error(f"unknown name {tok.text!r}", tok)
        if tok.text == "(":
            value = self.expr()
            closing = self._next()
            if closing.text != ")":
                raise self._error("expected ')'", closing)
            return value
        raise self._error(f"unexpected token {tok.text!r}", tok)


def parse_scalar(text: str, field=QI, names: dict | None = None):
    """Parse a standalone scalar expression (used for --set values)."""
    tokens = _tokenize(text, 1)
    if not tokens:
        raise ParseError("empty scalar expression", 1)
    return _ExprParser(tokens, field, names or {}, 1).parse()


def _split_vector_terms(tokens: list[_Token]) -> list[list[_Token]]:
    chunks: list[list[_Token]] = []
    current: list[_Token] = []
    depth = 0
    for tok in tokens:
        if tok.kind == "op" and tok.text == "(":
            depth += 1
        elif tok.kind == "op" and tok.text == ")":
            depth -= 1
        if (
            depth == 0
            and tok.kind == "op"
            and tok.text in "+-"
            and current
            and (current[-1].kind in ("int", "name") or current[-1].text == ")")
        ):
            chunks.append(current)
            current = [tok]
        else:
            current.append(tok)
    if current:
        chunks.append(current)
    return chunks


def _parse_vector(tokens: list[_Token], dim: int, field, names: dict, lineno: int) -> list:
    """Parse a sum of COEF*eK terms into a coordinate vector."""
    vec = [field.zero] * dim
    if len(tokens) == 1 and tokens[0].kind == "int" and tokens[0].text == "0":
        return vec
    for chunk in _split_vector_terms(tokens):
        sign = 1
        while chunk and chunk[0].kind == "op" and chunk[0].text in "+-":
            if chunk[0].text == "-":
                sign = -sign
            chunk = chunk[1:]
        if not chunk:
            raise ParseError("dangling sign in vector expression", lineno)
        basis_tok = chunk[-1]
        basis = _BASIS_RE.match(basis_tok.text) if basis_tok.kind == "name" else None
        if basis is None:
            raise ParseError(
                f"expected a basis vector (e1..e{dim}) at the end of the term",
                lineno,
                basis_tok.column,
            )
        k = int(basis.group(1))
        if not 1 <= k <= dim:
            raise ParseError(
                f"basis index e{k} out of range for dimension {dim}",
                lineno,
                basis_tok.column,
            )
        if len(chunk) == 1:
            coeff = field.one
        else:
            star = chunk[-2]
            if star.kind != "op" or star.text != "*":
                raise ParseError(
                    "coefficient and basis vector must be joined by '*'",
                    lineno,
                    star.column,
                )
            coeff = _ExprParser(chunk[:-2], field, names, lineno).parse()
        if sign == -1:
            coeff = -coeff
        vec[k - 1] = vec[k - 1] + coeff
    return vec


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def parse_algebra(text: str, bindings: dict | None = None) -> AlgebraLaw:
    """Parse an algebra file into a law over Q(i) or Q(i)(param).

    `bindings` substitutes declared parameters (values are scalar expressions
    or already-coerced scalars). At most one parameter may stay unbound.
    """
    bindings = dict(bindings or {})
    dim: int | None = None
    params: list[str] = []
    product_lines: list[tuple[int, list[_Token]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = _strip_comment(raw)
        if not stripped.strip():
            continue
        tokens = _tokenize(stripped, lineno)
        head = tokens[0]
        if head.kind == "name" and head.text == "dim":
            if dim is not None:
                raise ParseError("duplicate dim declaration", lineno, head.column)
            if len(tokens) != 2 or tokens[1].kind != "int":
                raise ParseError("expected 'dim N'", lineno, head.column)
            dim = int(tokens[1].text)
            if dim < 0:
                raise ParseError("dimension must be nonnegative", lineno)
        elif head.kind == "name" and head.text == "param":
            if len(tokens) != 2 or tokens[1].kind != "name":
                raise ParseError("expected 'param NAME'", lineno, head.column)
            name = tokens[1].text
            if name in _RESERVED_NAMES or _BASIS_RE.match(name):
                raise ParseError(f"{name!r} cannot be a parameter name", lineno)
            if name in params:
                raise ParseError(f"duplicate parameter {name!r}", lineno)
            params.append(name)
        else:
            if dim is None:
                raise ParseError("product line before 'dim N'", lineno, head.column)
            product_lines.append((lineno, tokens))

    if dim is None:
        raise ParseError("missing 'dim N' declaration")
    unknown = set(bindings) - set(params)
    if unknown:
        raise ParseError(f"--set for undeclared parameter(s): {sorted(unknown)}")
    unbound = [p for p in params if p not in bindings]
    if len(unbound) > 1:
        raise ParseError(
            f"at most one unbound parameter is supported, got {unbound}"
        )
    field = function_field(unbound[0]) if unbound else QI
    names = {}
    for p in params:
        if p in bindings:
            value = bindings[p]
            scalar = parse_scalar(value, QI) if isinstance(value, str) else QI.coerce(value)
            names[p] = field.coerce(scalar)
        else:
            names[p] = field.gen

    constants = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
    seen: set[tuple[int, int]] = set()
    for lineno, tokens in product_lines:
        if (
            len(tokens) < 4
            or tokens[0].kind != "name"
            or tokens[1].text != "*"
            or tokens[2].kind != "name"
            or tokens[3].text != "="
        ):
            raise ParseError("expected 'eI*eJ = ...'", lineno, tokens[0].column)
        mi = _BASIS_RE.match(tokens[0].text)
        mj = _BASIS_RE.match(tokens[2].text)
        if mi is None or mj is None:
            raise ParseError("expected basis vectors on the left side", lineno, tokens[0].column)
        i, j = int(mi.group(1)), int(mj.group(1))
        for idx, tok in ((i, tokens[0]), (j, tokens[2])):
            if not 1 <= idx <= dim:
                raise ParseError(
                    f"basis index e{idx} out of range for dimension {dim}",
                    lineno,
                    tok.column,
                )
        if (i, j) in seen:
            raise ParseError(f"duplicate product e{i}*e{j}", lineno, tokens[0].column)
        seen.add((i, j))
        vec = _parse_vector(tokens[4:], dim, field, names, lineno)
        constants[i - 1][j - 1] = vec

    return AlgebraLaw(
        field, dim, tuple(tuple(tuple(p) for p in row) for row in constants)
    )


def parse_family(text: str) -> ContractionFamily:
    """Parse a basis-image family file over Q(i)(t)."""
    field = function_field("t")
    names = {"t": field.gen}
    dim: int | None = None
    columns: dict[int, list] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = _strip_comment(raw)
        if not stripped.strip():
            continue
        tokens = _tokenize(stripped, lineno)
        head = tokens[0]
        if head.kind == "name" and head.text == "dim":
            if dim is not None:
                raise ParseError("duplicate dim declaration", lineno, head.column)
            if len(tokens) != 2 or tokens[1].kind != "int":
                raise ParseError("expected 'dim N'", lineno, head.column)
            dim = int(tokens[1].text)
            continue
        if dim is None:
            raise ParseError("family line before 'dim N'", lineno, head.column)
        if len(tokens) < 3 or tokens[0].kind != "name" or tokens[1].text != "->":
            raise ParseError("expected 'eJ -> ...'", lineno, head.column)
        mj = _BASIS_RE.match(tokens[0].text)
        if mj is None:
            raise ParseError("expected a basis vector before '->'", lineno, head.column)
        j = int(mj.group(1))
        if not 1 <= j <= dim:
            raise ParseError(
                f"basis index e{j} out of range for dimension {dim}", lineno, head.column
            )
        if j in columns:
            raise ParseError(f"duplicate image for e{j}", lineno, head.column)
        columns[j] = _parse_vector(tokens[2:], dim, field, names, lineno)
    if dim is None:
        raise ParseError("missing 'dim N' declaration")
    cols = []
    for j in range(1, dim + 1):
        if j in columns:
            cols.append(columns[j])
        else:
            cols.append([field.one if k == j - 1 else field.zero for k in range(dim)])
    return ContractionFamily.from_columns(cols)


def _needs_parens(s: str) -> bool:
    return any(ch in "+-" for ch in s[1:])


def format_scalar(x) -> str:
    return str(x)


def format_vector(field, vec) -> str:
    terms = []
    for k, c in enumerate(vec):
        if not c:
            continue
        name = f"e{k + 1}"
        if c == field.one:
            terms.append(name)
        elif c == -field.one:
            terms.append(f"-{name}")
        else:
            s = str(c)
            if _needs_parens(s):
                s = f"({s})"
            terms.append(f"{s}*{name}")
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        if term.startswith("-"):
            out += f" - {term[1:]}"
        else:
            out += f" + {term}"
    return out


def format_law(law: AlgebraLaw) -> str:
    """Text form of a law; parsing it back yields identical constants."""
    lines = [f"dim {law.dim}"]
    if isinstance(law.field, RationalFunctionField):
        lines.append(f"param {law.field.var}")
    for i, j, vec in law.nonzero_products():
        lines.append(f"e{i + 1}*e{j + 1} = {format_vector(law.field, vec)}")
    return "\n".join(lines) + "\n"


def format_matrix(m) -> str:
    rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in m]
    return "\n".join(rows)


def monotonicity_lines(report: MonotonicityReport) -> list[str]:
    def verdict(ok: bool) -> str:
        return "ok" if ok else "VIOLATED"

    lines = [
        f"orbit dim: {report.source_orbit_dim} > {report.target_orbit_dim}: "
        f"{verdict(report.orbit_ok)}",
        f"right center dim: {report.source_right_center_dim} <= "
        f"{report.target_right_center_dim}: {verdict(report.right_center_ok)}",
    ]
    if report.char_seq_applicable:
        lines.append(
            f"char seq: {report.source_char_seq} >= {report.target_char_seq}: "
            f"{verdict(report.char_seq_ok)}"
        )
    else:
        lines.append("char seq: not applicable (a law is not nilpotent)")
    lines.append(f"overall: {'pass' if report.passed else 'fail'}")
    return lines


def certificate_text(cert: ContractionCertificate) -> str:
    """Plain-text serialization of a contraction certificate."""
    parts = ["source law:", format_law(cert.source).rstrip()]
    name = f" ({cert.family.name})" if cert.family.name else ""
    parts.append(f"family matrix{name}, columns are basis images:")
    parts.append(format_matrix(cert.family.entries))
    parts.append("contracted law:")
    parts.append(format_law(cert.result).rstrip())
    parts.append("target law:")
    parts.append(format_law(cert.target).rstrip())
    if cert.iso is None:
        parts.append("result equals the target exactly")
    else:
        parts.append("isomorphism onto the target:")
        parts.append(format_matrix(cert.iso))
    parts.append("monotonicity:")
    parts.extend("  " + line for line in monotonicity_lines(cert.monotonicity))
    return "\n".join(parts) + "\n"
