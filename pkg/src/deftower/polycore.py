"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero ``Fraction``
coefficients, tied to a :class:`VarTable` that fixes the variable order and
the designated deformation parameter ``t``.  Every operation is a pure
function; there is no floating point anywhere in this module.

The canonical term order is graded reverse-lexicographic over the table's
declaration order.  The grade of a monomial uses the table's weights when
they are declared and otherwise defaults to weight 1 for every variable
except the parameter, which always grades 0.  The parameter therefore never
dominates the ordering, which keeps rendered families readable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    MismatchedVarTable,
    MissingWeights,
    NotAPower,
    NotDivisible,
)

Rational = Fraction
Monomial = tuple  # exponent tuple aligned with a VarTable

#: Degree of the zero polynomial.  A distinct sentinel, never -1.
NEG_INFINITY = float("-inf")


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class VarTable:
    """Ordered variable declarations plus the designated parameter.

    The parameter (``t`` throughout the toolkit) must be one of the declared
    names.  Weights, when given, map every non-parameter variable to a
    positive integer; the parameter itself always weighs 0.
    """

    __slots__ = ("names", "param", "weights", "_index", "_grades")

    def __init__(self, names: Sequence[str], param: str = "t",
                 weights: Mapping[str, int] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if param not in names:
            raise ValueError(f"parameter '{param}' must be declared")
        self.names = names
        self.param = param
        self._index = {name: i for i, name in enumerate(names)}
        if weights is not None:
            missing = [n for n in names if n != param and n not in weights]
            if missing:
                raise ValueError(f"weights missing for {missing}")
            for name in names:
                if name != param and weights[name] < 1:
                    raise ValueError(f"weight of '{name}' must be positive")
            self.weights = tuple(
                0 if n == param else int(weights[n]) for n in names)
        else:
            self.weights = None
        # Grades drive the canonical order: explicit weights when present,
        # otherwise 1 per variable with the parameter always grading 0.
        if self.weights is not None:
            self._grades = self.weights
        else:
            self._grades = tuple(0 if n == param else 1 for n in names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable '{name}'") from None

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def param_index(self) -> int:
        return self._index[self.param]

    def grade(self, mono: Monomial) -> int:
        return sum(w * e for w, e in zip(self._grades, mono) if e)

    def order_key(self, mono: Monomial):
        # Graded reverse-lex: compare grade, then negated reversed exponents.
        return (self.grade(mono), tuple(-e for e in reversed(mono)))

    def insert_fibers(self, new_names: Sequence[str],
                      new_weights: Sequence[int] | None = None) -> "VarTable":
        """New table with ``new_names`` inserted just before the parameter."""
        new_names = tuple(new_names)
        for name in new_names:
            if name in self._index:
                raise ValueError(f"variable '{name}' already declared")
        p = self.param_index
        names = self.names[:p] + new_names + self.names[p:]
        weights = None
        if self.weights is not None:
            if new_weights is None or len(new_weights) != len(new_names):
                raise ValueError("weighted table extension needs weights")
            weights = {n: w for n, w in zip(self.names, self.weights)
                       if n != self.param}
            weights.update(zip(new_names, new_weights))
        return VarTable(names, self.param, weights)

    def fresh_names(self, prefix: str, count: int) -> list[str]:
        """Deterministic unused names ``prefix0, prefix1, ...``."""
        out: list[str] = []
        i = 0
        while len(out) < count:
            cand = f"{prefix}{i}"
            if cand not in self._index and cand not in out:
                out.append(cand)
            i += 1
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, VarTable)
                and self.names == other.names
                and self.param == other.param
                and self.weights == other.weights)

    def __hash__(self) -> int:
        return hash((self.names, self.param, self.weights))

    def __repr__(self) -> str:
        return f"VarTable({self.names!r}, param={self.param!r})"


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VarTable, terms: Mapping[Monomial, object]):
        clean: dict[Monomial, Fraction] = {}
        n = table.size
        for mono, coeff in terms.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError("monomial length does not match table")
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent")
            c = _as_fraction(coeff)
            if c:
                clean[mono] = c
        self.table = table
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, table: VarTable, terms: dict) -> "Poly":
        # Internal fast path: terms already canonical (Fraction, no zeros).
        self = object.__new__(cls)
        self.table = table
        self.terms = terms
        self._hash = None
        return self

    # ------------------------------------------------------------ builders

    @classmethod
    def zero(cls, table: VarTable) -> "Poly":
        return cls._make(table, {})

    @classmethod
    def const(cls, table: VarTable, value) -> "Poly":
        c = _as_fraction(value)
        if not c:
            return cls.zero(table)
        return cls._make(table, {(0,) * table.size: c})

    @classmethod
    def var(cls, table: VarTable, name: str, power: int = 1) -> "Poly":
        if power < 0:
            raise ValueError("negative exponent")
        if power == 0:
            return cls.const(table, 1)
        mono = [0] * table.size
        mono[table.index(name)] = power
        return cls._make(table, {tuple(mono): Fraction(1)})

    # ------------------------------------------------------------- queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (0 for the zero poly)."""
        if not self.terms:
            return Fraction(0)
        ((mono, coeff),) = self.terms.items()
        if any(mono):
            raise ValueError("polynomial is not constant")
        return coeff

    def total_degree(self):
        if not self.terms:
            return NEG_INFINITY
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str):
        if not self.terms:
            return NEG_INFINITY
        i = self.table.index(name)
        return max(m[i] for m in self.terms)

    def variables(self) -> set[str]:
        used: set[int] = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(i)
        return {self.table.names[i] for i in used}

    def coeff_of(self, name: str, power: int) -> "Poly":
        """Coefficient of ``name**power`` with that variable zeroed out."""
        i = self.table.index(name)
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            if mono[i] == power:
                key = mono[:i] + (0,) + mono[i + 1:]
                out[key] = coeff
        return Poly._make(self.table, out)

    def coeffs_in(self, name: str) -> dict[int, "Poly"]:
        """All coefficients, keyed by the exponent of ``name``."""
        i = self.table.index(name)
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for mono, coeff in self.terms.items():
            e = mono[i]
            key = mono[:i] + (0,) + mono[i + 1:]
            buckets.setdefault(e, {})[key] = coeff
        return {e: Poly._make(self.table, d) for e, d in buckets.items()}

    @staticmethod
    def from_coeffs(name: str, coeffs: Mapping[int, "Poly"],
                    table: VarTable) -> "Poly":
        i = table.index(name)
        out: dict[Monomial, Fraction] = {}
        for e, poly in coeffs.items():
            for mono, coeff in poly.terms.items():
                key = mono[:i] + (mono[i] + e,) + mono[i + 1:]
                out[key] = out.get(key, Fraction(0)) + coeff
        return Poly._make(table, {m: c for m, c in out.items() if c})

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending canonical order (leading term first)."""
        key = self.table.order_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]),
                      reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.table.order_key
        mono = max(self.terms, key=key)
        return mono, self.terms[mono]

    def leading_coeff_in(self, name: str) -> "Poly":
        d = self.degree_in(name)
        if d is NEG_INFINITY:
            return Poly.zero(self.table)
        return self.coeff_of(name, d)

    # ---------------------------------------------------------- arithmetic

    def _check(self, other: "Poly") -> None:
        if self.table != other.table:
            raise MismatchedVarTable(
                f"{self.table!r} vs {other.table!r}")

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.table, other)
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, Fraction(0)) + coeff
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        return Poly._make(self.table, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._make(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.table, other)
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, Fraction(0)) - coeff
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        return Poly._make(self.table, out)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _as_fraction(other)
            if not c:
                return Poly.zero(self.table)
            return Poly._make(self.table,
                              {m: k * c for m, k in self.terms.items()})
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.table)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, Fraction] = {}
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                key = tuple(x + y for x, y in zip(m1, m2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return Poly._make(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ------------------------------------------------------------ calculus

    def derivative(self, name: str) -> "Poly":
        i = self.table.index(name)
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[i]
            if e:
                key = mono[:i] + (e - 1,) + mono[i + 1:]
                out[key] = out.get(key, Fraction(0)) + coeff * e
        return Poly._make(self.table, {m: c for m, c in out.items() if c})

    def substitute(self, name: str, expr: "Poly") -> "Poly":
        """Exact substitution ``name -> expr``, fully expanded (Horner)."""
        if not isinstance(expr, Poly):
            expr = Poly.const(self.table, expr)
        self._check(expr)
        self.table.index(name)
        coeffs = self.coeffs_in(name)
        if not coeffs:
            return self
        result = Poly.zero(self.table)
        for e in range(max(coeffs), -1, -1):
            result = result * expr + coeffs.get(e, Poly.zero(self.table))
        return result

    # --------------------------------------------------------------- misc

    def lift(self, new_table: VarTable) -> "Poly":
        """Reinterpret over a table that contains this table's names."""
        if new_table == self.table:
            return self
        positions = [new_table.index(n) for n in self.table.names]
        n = new_table.size
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            key = [0] * n
            for pos, e in zip(positions, mono):
                key[pos] = e
            out[tuple(key)] = coeff
        return Poly._make(new_table, out)

    def project(self, new_table: VarTable) -> "Poly":
        """Restrict to a smaller table; dropped variables must not occur."""
        keep = set(new_table.names)
        for i, name in enumerate(self.table.names):
            if name not in keep:
                for mono in self.terms:
                    if mono[i]:
                        raise ValueError(
                            f"variable '{name}' still occurs; cannot project")
        positions = [self.table.index(n) for n in new_table.names]
        out = {}
        for mono, coeff in self.terms.items():
            out[tuple(mono[p] for p in positions)] = coeff
        return Poly._make(new_table, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly)
                and self.table == other.table
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.table,
                               tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self) -> str:
        from .polyparse import render_poly
        return f"Poly({render_poly(self)})"

    def __str__(self) -> str:
        from .polyparse import render_poly
        return render_poly(self)


# ===================================================================== ops


def exact_div(f: Poly, g: Poly) -> Poly:
    """Exact quotient ``q`` with ``q * g == f``.

    Raises :class:`NotDivisible` when no polynomial quotient exists.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    if g.is_constant():
        inv = 1 / g.constant_value()
        return f * inv
    table = f.table
    key = table.order_key
    g_mono, g_coeff = g.leading_term()
    rest = g - Poly._make(table, {g_mono: g_coeff})
    remainder = dict(f.terms)
    quotient: dict[Monomial, Fraction] = {}
    while remainder:
        mono = max(remainder, key=key)
        coeff = remainder[mono]
        qm = tuple(a - b for a, b in zip(mono, g_mono))
        if any(e < 0 for e in qm):
            raise NotDivisible("leading term not divisible")
        qc = coeff / g_coeff
        quotient[qm] = qc
        del remainder[mono]
        # remainder -= (qc * qm) * rest
        for m2, c2 in rest.terms.items():
            keym = tuple(a + b for a, b in zip(qm, m2))
            s = remainder.get(keym, Fraction(0)) - qc * c2
            if s:
                remainder[keym] = s
            elif keym in remainder:
                del remainder[keym]
    return Poly._make(table, quotient)


def divides(g: Poly, f: Poly) -> bool:
    """True when ``g`` divides ``f`` exactly."""
    try:
        exact_div(f, g)
        return True
    except NotDivisible:
        return False


def pseudo_div(f: Poly, g: Poly, main: str) -> tuple[Poly, Poly, int]:
    """Pseudo-division in ``main``: ``lc(g)^power * f == pquo*g + prem``.

    ``power`` is ``max(deg(f) - deg(g) + 1, 0)`` and the remainder has
    strictly smaller degree in ``main`` than ``g``.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("pseudo-division by zero")
    table = f.table
    dg = g.degree_in(main)
    if dg is NEG_INFINITY:
        dg = 0
    df = f.degree_in(main)
    if df is NEG_INFINITY:
        power = 0
    else:
        power = max(df - dg + 1, 0)
    lcg = g.leading_coeff_in(main)
    quo = Poly.zero(table)
    rem = f
    steps = power
    while rem and rem.degree_in(main) >= dg and steps > 0:
        dr = rem.degree_in(main)
        lcr = rem.leading_coeff_in(main)
        shift = lcr * Poly.var(table, main, dr - dg)
        quo = lcg * quo + shift
        rem = lcg * rem - shift * g
        steps -= 1
    if steps:
        scale = lcg ** steps
        quo = quo * scale
        rem = rem * scale
    return quo, rem, power


def monic_divmod(f: Poly, g: Poly, main: str) -> tuple[Poly, Poly]:
    """Ordinary divmod in ``main`` for a divisor monic in ``main``."""
    lc = g.leading_coeff_in(main)
    if not (lc.is_constant() and lc.constant_value() == 1):
        raise ValueError("divisor is not monic in the main variable")
    q, r, _ = pseudo_div(f, g, main)
    return q, r


# ------------------------------------------------------------ gcd machinery


def _fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    if not a:
        return abs(b)
    if not b:
        return abs(a)
    num = _int_gcd(a.numerator, b.numerator)
    den = (a.denominator * b.denominator
           // _int_gcd(a.denominator, b.denominator))
    return Fraction(num, den)


def rational_content(f: Poly) -> Fraction:
    """Positive rational c with f/c integer-coefficient and primitive."""
    c = Fraction(0)
    for coeff in f.terms.values():
        c = _fraction_gcd(c, coeff)
        if c == 1:
            break
    return c


def sign_normalized(f: Poly) -> Poly:
    """Flip sign so the canonical leading coefficient is positive."""
    if f.is_zero():
        return f
    _, lc = f.leading_term()
    return -f if lc < 0 else f


def normalized(f: Poly) -> Poly:
    """Integer-primitive representative with positive leading coefficient."""
    if f.is_zero():
        return f
    c = rational_content(f)
    _, lc = f.leading_term()
    if lc < 0:
        c = -c
    return f * (1 / c)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Full gcd in QQ[vars], rational contents included (content grade).

    The result is canonical: for constants it is the non-negative rational
    gcd; otherwise it is sign-normalized.  Used for content extraction.
    """
    if f.is_zero() and g.is_zero():
        return f
    if f.is_zero():
        return sign_normalized(g)
    if g.is_zero():
        return sign_normalized(f)
    fvars = f.variables()
    gvars = g.variables()
    if not fvars and not gvars:
        return Poly.const(f.table,
                          _fraction_gcd(f.constant_value(),
                                        g.constant_value()))
    # Deterministic main variable: last declared name occurring in either.
    occurring = fvars | gvars
    main = next(n for n in reversed(f.table.names) if n in occurring)
    cf = content_in(f, main)
    cg = content_in(g, main)
    cc = poly_gcd(cf, cg)
    core = gcd_main(f, g, main)
    return sign_normalized(cc * core)


def content_in(f: Poly, main: str) -> Poly:
    """Content of ``f`` viewed in ``main``: gcd of its coefficients."""
    if f.is_zero():
        return f
    acc = Poly.zero(f.table)
    for part in f.coeffs_in(main).values():
        acc = poly_gcd(acc, part)
        if acc.is_constant() and acc.constant_value() == 1:
            break
    return acc


def primitive_in(f: Poly, main: str) -> Poly:
    """``f`` divided by its content in ``main`` (zero stays zero)."""
    if f.is_zero():
        return f
    return exact_div(f, content_in(f, main))


def gcd_main(f: Poly, g: Poly, main: str) -> Poly:
    """Gcd w.r.t. ``main`` over the fraction field of the other variables.

    Computed by the subresultant pseudo-remainder sequence on the primitive
    parts.  The result is primitive in ``main``, integer-primitive overall,
    and carries a positive leading rational.  A unit gcd is returned as the
    constant 1.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    table = f.table
    one = Poly.const(table, 1)
    if f.is_zero():
        return sign_normalized(primitive_in(g, main))
    if g.is_zero():
        return sign_normalized(primitive_in(f, main))
    if f.degree_in(main) == 0 or g.degree_in(main) == 0:
        return one
    a = primitive_in(f, main)
    b = primitive_in(g, main)
    if a.degree_in(main) < b.degree_in(main):
        a, b = b, a
    gg = one
    h = one
    while True:
        delta = a.degree_in(main) - b.degree_in(main)
        _, rem, _ = pseudo_div(a, b, main)
        if rem.is_zero():
            break
        if rem.degree_in(main) == 0:
            return one
        a, b = b, exact_div(rem, gg * h ** delta)
        gg = a.leading_coeff_in(main)
        if delta >= 1:
            h = exact_div(gg ** delta, h ** (delta - 1))
    return sign_normalized(normalized(primitive_in(b, main)))


def squarefree_part(f: Poly) -> Poly:
    """The radical of ``f``: product of its distinct irreducible factors.

    Normalized integer-primitive with positive leading coefficient.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    h = normalized(f)
    for name in f.table.names:
        d = h.degree_in(name)
        if d is NEG_INFINITY or d < 1:
            continue
        g = gcd_main(h, h.derivative(name), name)
        if g.degree_in(name) >= 1:
            h = exact_div(h, g)
    return normalized(h)


# ------------------------------------------------------------- roots, taylor


def _integer_nth_root(n: int, m: int) -> int | None:
    """Exact m-th root of a non-negative integer, or None."""
    if n < 0:
        return None
    if n in (0, 1) or m == 1:
        return n
    r = round(n ** (1.0 / m))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** m == n:
            return cand
    return None


def _fraction_nth_root(q: Fraction, m: int) -> Fraction | None:
    sign = 1
    if q < 0:
        if m % 2 == 0:
            return None
        sign = -1
        q = -q
    num = _integer_nth_root(q.numerator, m)
    den = _integer_nth_root(q.denominator, m)
    if num is None or den is None:
        return None
    return Fraction(sign * num, den)


def mth_root(f: Poly, m: int) -> Poly:
    """Exact m-th root with a squarefree root, verified by powering.

    The result carries a positive leading rational.  Raises
    :class:`NotAPower` when no squarefree ``g`` with ``g**m == f`` exists.
    """
    if m < 1:
        raise ValueError("root order must be >= 1")
    if f.is_zero():
        raise ValueError("zero polynomial has no m-th root here")
    if m == 1:
        return f
    deg = f.total_degree()
    if deg % m:
        raise NotAPower(f"total degree {deg} is not a multiple of {m}")
    root = squarefree_part(f)
    _, lc_f = f.leading_term()
    _, lc_r = root.leading_term()
    lam = _fraction_nth_root(lc_f / lc_r ** m, m)
    if lam is None:
        raise NotAPower("leading coefficient has no rational m-th root")
    candidate = root * lam
    if candidate ** m != f:
        raise NotAPower(
            "no squarefree m-th root (verification by powering failed)")
    return sign_normalized(candidate)


def taylor_t(f: Poly, upto: int) -> list[Poly]:
    """Coefficients ``[c_0, ..., c_upto]`` of the parameter-power expansion."""
    if upto < 0:
        raise ValueError("upto must be >= 0")
    parts = f.coeffs_in(f.table.param)
    zero = Poly.zero(f.table)
    return [parts.get(i, zero) for i in range(upto + 1)]


# -------------------------------------------------------------- weighted ops


def weighted_degree(f: Poly):
    """Maximum weighted degree over the terms (explicit weights required)."""
    if f.table.weights is None:
        raise MissingWeights("variable table carries no weights")
    if f.is_zero():
        return NEG_INFINITY
    w = f.table.weights
    return max(sum(wi * e for wi, e in zip(w, m)) for m in f.terms)


def is_weighted_homogeneous(f: Poly) -> bool:
    if f.table.weights is None:
        raise MissingWeights("variable table carries no weights")
    if f.is_zero():
        return True
    w = f.table.weights
    grades = {sum(wi * e for wi, e in zip(w, m)) for m in f.terms}
    return len(grades) == 1


# ----------------------------------------------------------------- resultant


def resultant(f: Poly, g: Poly, main: str) -> Poly:
    """Resultant w.r.t. ``main`` via fraction-free (Bareiss) elimination."""
    f._check(g)
    table = f.table
    if f.is_zero() or g.is_zero():
        return Poly.zero(table)
    df = f.degree_in(main)
    dg = g.degree_in(main)
    df = 0 if df is NEG_INFINITY else df
    dg = 0 if dg is NEG_INFINITY else dg
    if df == 0 and dg == 0:
        return Poly.const(table, 1)
    if df == 0:
        return f ** dg
    if dg == 0:
        return g ** df
    fc = [f.coeff_of(main, df - i) for i in range(df + 1)]
    gc = [g.coeff_of(main, dg - i) for i in range(dg + 1)]
    n = df + dg
    zero = Poly.zero(table)
    rows: list[list[Poly]] = []
    for i in range(dg):
        rows.append([zero] * i + fc + [zero] * (n - i - df - 1))
    for i in range(df):
        rows.append([zero] * i + gc + [zero] * (n - i - dg - 1))
    sign = 1
    prev = Poly.const(table, 1)
    for k in range(n - 1):
        if rows[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, n)
                              if not rows[r][k].is_zero()), None)
            if pivot_row is None:
                return zero
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        piv = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = exact_div(
                    rows[i][j] * piv - rows[i][k] * rows[k][j], prev)
            rows[i][k] = zero
        prev = piv
    det = rows[n - 1][n - 1]
    return det if sign > 0 else -det
