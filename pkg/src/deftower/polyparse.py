"""Text grammar for polynomials and for tower/family/branch files.

Polynomial grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | IDENT | '(' expr ')'

Precedence is ``^`` > unary ``-`` > ``*`` > ``+ -``; exponents are
non-negative integer literals; ``p/q`` is a rational literal.

Files are line-oriented.  A line is either blank, a comment (``#`` starts a
comment anywhere), a ``key: value`` header, or a repeated polynomial line
(``eq:`` for tower levels, ``a<i>:`` for base-adic coefficient blocks,
``branch:`` for curve germs).  The parameter is always named ``t`` and may
not be used as a tower variable.  Rendering is canonical and bit-stable:
``parse_poly(render_poly(f)) == f``.
"""

from __future__ import annotations

from fractions import Fraction

from .deform import FamilyEquation
from .errors import ParseError, StructureError, UnknownVariable
from .polycore import Poly, VarTable
from .tower import CoveringTower

PARAM = "t"

# ------------------------------------------------------------------ renderer


def _render_monomial(mono, table: VarTable) -> list[str]:
    # The parameter prints first, then the other variables in declaration
    # order; this keeps the deformation scale visually in front.
    pieces = []
    p = table.param_index
    if mono[p]:
        pieces.append(PARAM if mono[p] == 1 else f"{PARAM}^{mono[p]}")
    for i, e in enumerate(mono):
        if i == p or not e:
            continue
        name = table.names[i]
        pieces.append(name if e == 1 else f"{name}^{e}")
    return pieces


def _render_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_poly(f: Poly) -> str:
    """Canonical rendering: descending term order, minimal coefficients."""
    if f.is_zero():
        return "0"
    chunks: list[str] = []
    for idx, (mono, coeff) in enumerate(f.sorted_terms()):
        mag = abs(coeff)
        factors = _render_monomial(mono, f.table)
        if not factors:
            body = _render_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_render_coeff(mag)] + factors)
        if idx == 0:
            chunks.append(f"-{body}" if coeff < 0 else body)
        else:
            chunks.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(chunks)


# ----------------------------------------------------------------- tokenizer

_OPS = set("+-*^/()")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str, line0: int = 1) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = line0, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _PolyParser:
    def __init__(self, tokens: list[_Token], table: VarTable):
        self.tokens = tokens
        self.pos = 0
        self.table = table

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def parse(self) -> Poly:
        poly = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            self.fail(f"unexpected {tok.text!r}")
        return poly

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.peek().kind == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Poly:
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                self.fail("exponent must be a non-negative integer literal")
            self.take()
            base = base ** int(tok.text)
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok.kind == "int":
            value = Fraction(int(tok.text))
            if self.peek().kind == "/":
                self.take()
                den = self.peek()
                if den.kind != "int":
                    self.fail("expected integer denominator")
                self.take()
                if int(den.text) == 0:
                    self.fail("zero denominator", den)
                value = Fraction(int(tok.text), int(den.text))
            return Poly.const(self.table, value)
        if tok.kind == "name":
            if tok.text not in self.table.names:
                raise UnknownVariable(tok.text, tok.line, tok.col)
            return Poly.var(self.table, tok.text)
        if tok.kind == "(":
            inner = self.expr()
            closing = self.take()
            if closing.kind != ")":
                self.fail("expected ')'", closing)
            return inner
        self.fail(f"unexpected {tok.text!r}" if tok.text else "unexpected end of input", tok)


def parse_poly(text: str, vars: VarTable, line0: int = 1) -> Poly:
    """Parse polynomial text over the given variable table."""
    return _PolyParser(_tokenize(text, line0), vars).parse()


# ---------------------------------------------------------------- file layer


class _RawFile:
    """Key/value headers plus ordered repeated lines, comments stripped."""

    def __init__(self, text: str):
        self.headers: dict[str, tuple[str, int]] = {}
        self.repeated: list[tuple[str, str, int]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ":" not in line:
                raise StructureError(
                    f"line {lineno}: expected 'key: value', got {line!r}")
            key, value = line.split(":", 1)
            key = key.strip()
            value = value.strip()
            if key in ("eq", "branch") or (key[:1] == "a" and key[1:].isdigit()):
                self.repeated.append((key, value, lineno))
            elif key in self.headers:
                raise StructureError(f"line {lineno}: duplicate key '{key}'")
            else:
                self.headers[key] = (value, lineno)

    def header(self, key: str, required: bool = False) -> tuple[str, int] | None:
        if key not in self.headers:
            if required:
                raise StructureError(f"missing required key '{key}'")
            return None
        return self.headers[key]

    def check_keys(self, allowed: set[str]):
        for key in self.headers:
            if key not in allowed:
                raise StructureError(f"unknown key '{key}'")


def _split_names(value: str, lineno: int) -> list[tuple[str, int | None]]:
    out = []
    for item in value.split():
        if ":" in item:
            name, weight = item.split(":", 1)
            if not weight.isdigit():
                raise StructureError(
                    f"line {lineno}: bad weight in {item!r}")
            out.append((name, int(weight)))
        else:
            out.append((item, None))
    return out


def _split_ints(value: str, lineno: int, what: str) -> list[int]:
    out = []
    for item in value.split():
        if not item.isdigit():
            raise StructureError(f"line {lineno}: {what} must be integers")
        out.append(int(item))
    return out


def parse_tower(text: str) -> CoveringTower:
    """Parse a tower file into a :class:`CoveringTower`.

    Structural problems raise :class:`StructureError`; semantic normal-type
    violations are left to ``tower.validate_normal_type``.
    """
    raw = _RawFile(text)
    raw.check_keys({"base", "fibers", "param", "chain", "exponents", "sigma"})
    base_value, base_line = raw.header("base", required=True)
    fiber_value, fiber_line = raw.header("fibers", required=True)
    param = raw.header("param")
    if param is not None and param[0] != PARAM:
        raise StructureError(f"parameter must be '{PARAM}'")
    chain_value, chain_line = raw.header("chain", required=True)
    chain = _split_ints(chain_value, chain_line, "chain entries")
    if len(chain) < 2:
        raise StructureError("chain needs at least two entries")

    base = _split_names(base_value, base_line)
    fibers = _split_names(fiber_value, fiber_line)
    if not base:
        raise StructureError("no base variables declared")
    levels_text = [(v, ln) for k, v, ln in raw.repeated if k == "eq"]
    for k, _, ln in raw.repeated:
        if k != "eq":
            raise StructureError(f"line {ln}: unexpected '{k}' line in tower file")
    if not levels_text:
        raise StructureError("tower file declares no levels")
    if len(chain) != len(levels_text) + 1:
        raise StructureError(
            f"chain has {len(chain)} entries but there are "
            f"{len(levels_text)} levels (expected chain = levels + 1)")
    if len(fibers) != len(levels_text):
        raise StructureError(
            f"{len(fibers)} fiber variables for {len(levels_text)} levels")

    exponents_header = raw.header("exponents")
    if exponents_header is None:
        exponents = [1] * len(levels_text)
    else:
        exponents = _split_ints(exponents_header[0], exponents_header[1],
                                "exponents")
        if len(exponents) != len(levels_text):
            raise StructureError(
                f"expected {len(levels_text)} exponents, got {len(exponents)}")
        if any(n < 1 for n in exponents):
            raise StructureError("exponents must be >= 1")

    names = [n for n, _ in base] + [n for n, _ in fibers]
    if PARAM in names:
        raise StructureError(f"'{PARAM}' is reserved for the parameter")
    names.append(PARAM)

    sigma_value, sigma_line = raw.header("sigma", required=True)
    # Weights follow the fixed convention: base 1, fiber j carries d*m_j where
    # d is sigma's total degree.  Explicit declarations override.
    probe = VarTable(names, PARAM)
    sigma = parse_poly(sigma_value, probe, sigma_line)
    if sigma.is_zero():
        raise StructureError("sigma must be nonzero")
    d = sigma.total_degree()
    weights: dict[str, int] = {}
    for name, w in base:
        weights[name] = w if w is not None else 1
    for j, (name, w) in enumerate(fibers):
        auto = max(d * chain[j], 1)
        weights[name] = w if w is not None else auto
    table = VarTable(names, PARAM, weights)
    sigma = parse_poly(sigma_value, table, sigma_line)
    levels = [parse_poly(v, table, ln) for v, ln in levels_text]
    return CoveringTower(table, sigma, levels, tuple(chain), tuple(exponents))


def parse_family(text: str) -> FamilyEquation:
    """Parse a family file: either a total equation or a base-adic block."""
    raw = _RawFile(text)
    raw.check_keys({"base", "param", "m", "sigma", "Sigma"})
    base_value, base_line = raw.header("base", required=True)
    param = raw.header("param")
    if param is not None and param[0] != PARAM:
        raise StructureError(f"parameter must be '{PARAM}'")
    base = _split_names(base_value, base_line)
    names = [n for n, _ in base]
    if PARAM in names:
        raise StructureError(f"'{PARAM}' is reserved for the parameter")
    if any(w is not None for _, w in base):
        raise StructureError("family files do not declare weights")
    table = VarTable(names + [PARAM], PARAM)

    sigma_header = raw.header("sigma")
    sigma = None
    if sigma_header is not None:
        sigma = parse_poly(sigma_header[0], table, sigma_header[1])
        if sigma.is_zero():
            raise StructureError("sigma must be nonzero")

    adic = [(k, v, ln) for k, v, ln in raw.repeated if k[:1] == "a"]
    for k, _, ln in raw.repeated:
        if k[:1] != "a":
            raise StructureError(f"line {ln}: unexpected '{k}' line in family file")
    total_header = raw.header("Sigma")
    if (total_header is None) == (not adic):
        raise StructureError(
            "exactly one of 'Sigma' or an a1..am block must be present")

    m_header = raw.header("m")
    declared_m = None
    if m_header is not None:
        if not m_header[0].isdigit() or int(m_header[0]) < 1:
            raise StructureError("m must be a positive integer")
        declared_m = int(m_header[0])

    if adic:
        if sigma is None:
            raise StructureError("an a1..am block requires 'sigma'")
        indices = [int(k[1:]) for k, _, _ in adic]
        if indices != list(range(1, len(indices) + 1)):
            raise StructureError("adic lines must be a1, a2, ... in order")
        m = len(indices)
        if declared_m is not None and declared_m != m:
            raise StructureError(
                f"declared m={declared_m} but {m} adic coefficients given")
        coeffs = [parse_poly(v, table, ln) for _, v, ln in adic]
        total = sigma ** m
        for i, a in enumerate(coeffs, start=1):
            total = total + a * sigma ** (m - i)
        return FamilyEquation(total, m, sigma)

    total = parse_poly(total_header[0], table, total_header[1])
    m = declared_m
    if sigma is not None:
        central = total.coeff_of(PARAM, 0)
        if m is None:
            sd = sigma.total_degree()
            cd = central.total_degree()
            if sd is None or sd == 0 or not isinstance(cd, int) or cd % sd:
                raise StructureError("cannot infer m from sigma and Sigma")
            m = cd // sd
        if sigma ** m != central:
            raise StructureError("Sigma(.,0) is not sigma^m")
    return FamilyEquation(total, m, sigma)


def parse_branches(text: str) -> list[list[Fraction]]:
    """Parse a branch file into coefficient lists c_1..c_N per germ."""
    raw = _RawFile(text)
    raw.check_keys(set())
    germs: list[list[Fraction]] = []
    for key, value, lineno in raw.repeated:
        if key != "branch":
            raise StructureError(
                f"line {lineno}: unexpected '{key}' line in branch file")
        coeffs = []
        for item in value.split():
            try:
                coeffs.append(Fraction(item))
            except (ValueError, ZeroDivisionError):
                raise StructureError(
                    f"line {lineno}: bad coefficient {item!r}") from None
        if not coeffs:
            raise StructureError(f"line {lineno}: empty branch")
        germs.append(coeffs)
    if not germs:
        raise StructureError("branch file declares no branches")
    return germs


# -------------------------------------------------------------- file writers


def render_family_file(fe: FamilyEquation, adic=None) -> str:
    """Canonical family-file text; pass a SigmaAdic to emit the a_i block."""
    table = fe.total.table
    base = [n for n in table.names if n != table.param]
    lines = [f"base: {' '.join(base)}", f"param: {table.param}"]
    if fe.m is not None:
        lines.append(f"m: {fe.m}")
    if fe.sigma is not None:
        lines.append(f"sigma: {render_poly(fe.sigma)}")
    if adic is not None:
        for i, a in enumerate(adic.coeffs, start=1):
            lines.append(f"a{i}: {render_poly(a)}")
    else:
        lines.append(f"Sigma: {render_poly(fe.total)}")
    return "\n".join(lines) + "\n"


def render_tower_file(tw: CoveringTower) -> str:
    """Canonical tower-file text (weights follow the fixed convention)."""
    table = tw.vars
    n_fibers = len(tw.levels)
    base = [n for n in table.names if n != table.param][:-n_fibers]
    fibers = [n for n in table.names if n != table.param][len(base):]
    lines = [
        f"base: {' '.join(base)}",
        f"fibers: {' '.join(fibers)}",
        f"param: {table.param}",
        f"chain: {' '.join(str(m) for m in tw.chain)}",
        f"exponents: {' '.join(str(n) for n in tw.exponents)}",
        f"sigma: {render_poly(tw.sigma)}",
    ]
    for level in tw.levels:
        lines.append(f"eq: {render_poly(level)}")
    return "\n".join(lines) + "\n"
