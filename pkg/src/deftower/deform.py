"""Forward direction: tower -> 1-parameter family -> total equation.

``build_family`` transcribes a tower into the triangular system

    sigma(z) = t^{n_0} w_0,  Q_1 = t^{n_1} w_1, ..., Q_{k+1} = 0,

``eliminate`` back-substitutes the fiber variables and clears the minimal
power of t, and ``sigma_adic`` rewrites the result in powers of sigma so the
t-divisibility of the coefficients can be checked.  A seeded random tower
sampler generates test fixtures that satisfy the normal-type invariants and
the separability certificate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisibilityViolation, MalformedTower, NotSigmaAdic, UnsupportedShape
from .polycore import (
    NEG_INFINITY,
    Poly,
    VarTable,
    exact_div,
    gcd_main,
    monic_divmod,
)
from .tower import CoveringTower, ValidationReport, validate_normal_type


@dataclass(frozen=True)
class FamilySystem:
    """The triangular system of a scaled tower (one residual per equation)."""

    tower: CoveringTower
    equations: list[Poly]  # sigma - t^n0*w0, Q_1 - t^n1*w1, ..., Q_{k+1}


@dataclass(frozen=True)
class FamilyEquation:
    """A family Sigma(z, t), optionally with its central root sigma."""

    total: Poly
    m: int | None = None
    sigma: Poly | None = None


@dataclass(frozen=True)
class SigmaAdic:
    """Expansion Sigma = sigma^m + sum_i a_i sigma^(m-i)."""

    sigma: Poly
    m: int
    coeffs: list[Poly]  # a_1, ..., a_m

    def reconstruct(self) -> Poly:
        total = self.sigma ** self.m
        for i, a in enumerate(self.coeffs, start=1):
            total = total + a * self.sigma ** (self.m - i)
        return total


def build_family(tw: CoveringTower) -> FamilySystem:
    """Transcribe a validated tower into its scaled triangular system."""
    report = validate_normal_type(tw)
    if not report.ok:
        raise MalformedTower(
            "; ".join(e.detail for e in report.failures()))
    table = tw.vars
    t = Poly.var(table, table.param)
    fibers = tw.fiber_names
    equations = [tw.sigma - (t ** tw.exponents[0]) * Poly.var(table, fibers[0])]
    for j in range(1, len(fibers)):
        equations.append(tw.levels[j - 1]
                         - (t ** tw.exponents[j]) * Poly.var(table, fibers[j]))
    equations.append(tw.levels[-1])
    return FamilySystem(tw, equations)


def eliminate(fs: FamilySystem) -> FamilyEquation:
    """Back-substitute the fiber variables and clear denominators in t.

    The total equation is normalized so t does not divide it; for a valid
    tower its t=0 slice is exactly sigma^m.
    """
    tw = fs.tower
    table = tw.vars
    t = Poly.var(table, table.param)
    fibers = tw.fiber_names
    m = tw.chain[-1]

    # Fiber variable w_j equals numerator[j] / t^denom[j].
    numerator: list[Poly] = [tw.sigma]
    denom: list[int] = [tw.exponents[0]]
    for j in range(1, len(fibers)):
        level = tw.levels[j - 1]
        num, den = _substitute_ladder(level, fibers, numerator, denom, table)
        numerator.append(num)
        denom.append(den + tw.exponents[j])

    top, top_den = _substitute_ladder(tw.levels[-1], fibers, numerator,
                                      denom, table)
    val = _t_valuation(top, table)
    if val:
        top = exact_div(top, t ** val)
    sigma_m = tw.sigma ** m
    if top.coeff_of(table.param, 0) != sigma_m:
        raise MalformedTower(
            "elimination inconsistency: central slice is not sigma^m")

    base_table = VarTable(
        tuple(tw.base_names) + (table.param,), table.param,
        None if table.weights is None
        else {n: 1 for n in tw.base_names})
    total = top.project(base_table)
    sigma = tw.sigma.project(base_table)
    return FamilyEquation(total, m, sigma)


def _substitute_ladder(poly: Poly, fibers, numerator, denom, table):
    """Replace each known fiber variable by its numerator, clearing t."""
    t = Poly.var(table, table.param)
    current = poly
    total_den = 0
    for j in reversed(range(len(numerator))):
        w = fibers[j]
        deg = current.degree_in(w)
        if deg is NEG_INFINITY or deg == 0:
            continue
        coeffs = current.coeffs_in(w)
        acc = Poly.zero(table)
        for e, c in coeffs.items():
            acc = acc + c * (numerator[j] ** e) * (t ** (denom[j] * (deg - e)))
        current = acc
        total_den += denom[j] * deg
    return current, total_den


def _t_valuation(poly: Poly, table: VarTable) -> int:
    if poly.is_zero():
        return 0
    i = table.param_index
    return min(mono[i] for mono in poly.terms)


def _adic_variable(sigma: Poly) -> str:
    """The first declared variable in which sigma is monic."""
    table = sigma.table
    for name in table.names:
        if name == table.param:
            continue
        deg = sigma.degree_in(name)
        if deg is NEG_INFINITY or deg < 1:
            continue
        lead = sigma.coeff_of(name, deg)
        if lead.is_constant() and lead.constant_value() == 1:
            return name
    raise UnsupportedShape(
        "sigma is not monic in any variable; the adic rewrite is unsupported")


def sigma_adic(fe: FamilyEquation) -> SigmaAdic:
    """Rewrite ``fe.total`` as sigma^m + sum a_i sigma^(m-i) by division.

    The expansion is computed by iterated division in a variable where sigma
    is monic and is re-verified by exact reconstruction before returning.
    """
    if fe.sigma is None or fe.m is None:
        raise ValueError("sigma and m must be known for the adic rewrite")
    sigma = fe.sigma
    m = fe.m
    v = _adic_variable(sigma)
    digits: list[Poly] = []
    rem = fe.total
    while not rem.is_zero():
        quo, digit = monic_divmod(rem, sigma, v)
        digits.append(digit)
        rem = quo
        if len(digits) > m + 1:
            break
    if len(digits) != m + 1:
        raise NotSigmaAdic(
            f"total equation has sigma-degree {len(digits) - 1}, expected {m}")
    top = digits[-1]
    if not (top.is_constant() and top.constant_value() == 1):
        raise NotSigmaAdic("leading sigma-adic digit is not 1")
    coeffs = [digits[m - i] for i in range(1, m + 1)]
    sa = SigmaAdic(sigma, m, coeffs)
    if sa.reconstruct() != fe.total:
        raise NotSigmaAdic("adic reconstruction failed")
    return sa


def check_divide(sa: SigmaAdic) -> ValidationReport:
    """Check t^i | a_i for every coefficient of the adic expansion."""
    report = ValidationReport()
    table = sa.sigma.table
    t = Poly.var(table, table.param)
    for i, a in enumerate(sa.coeffs, start=1):
        rule = f"t^{i}-divides-a{i}"
        if a.is_zero():
            report.add(rule, True, f"a{i} = 0")
            continue
        val = _t_valuation(a, table)
        if val >= i:
            report.add(rule, True, f"a{i} has t-order {val} >= {i}")
        else:
            report.add(rule, False, f"a{i} has t-order {val} < {i}")
    return report


def divide_out(sa: SigmaAdic) -> list[Poly]:
    """The quotients b_i = a_i / t^i (raises when the division fails)."""
    table = sa.sigma.table
    t = Poly.var(table, table.param)
    out = []
    for i, a in enumerate(sa.coeffs, start=1):
        try:
            out.append(exact_div(a, t ** i) if a else a)
        except Exception as exc:
            raise DivisibilityViolation(
                f"t^{i} does not divide a{i}") from exc
    return out


# ------------------------------------------------------------------- sampler


_NONZERO = [Fraction(c) for c in (-3, -2, -1, 1, 2, 3)]


def _weighted_monomials(weights: list[int], target: int):
    """Exponent tuples with the given weighted degree (all weights >= 1)."""
    if not weights:
        if target == 0:
            yield ()
        return
    w = weights[0]
    for e in range(target // w + 1):
        for rest in _weighted_monomials(weights[1:], target - w * e):
            yield (e,) + rest


def _dense_homogeneous(table: VarTable, allowed: list[str], target: int,
                       rng: random.Random, monic_in: tuple[str, int] | None):
    """Dense weighted-homogeneous polynomial with coefficients in +-1..3."""
    idx = [table.index(n) for n in allowed]
    weights = [table._grades[i] for i in idx]
    terms = {}
    lead_key = None
    if monic_in is not None:
        name, power = monic_in
        mono = [0] * table.size
        mono[table.index(name)] = power
        lead_key = tuple(mono)
    for exps in _weighted_monomials(weights, target):
        mono = [0] * table.size
        for i, e in zip(idx, exps):
            mono[i] = e
        key = tuple(mono)
        if key == lead_key:
            continue
        terms[key] = rng.choice(_NONZERO)
    if lead_key is not None:
        terms[lead_key] = Fraction(1)
    return Poly(table, terms)


_CHAINS: dict[int, list[tuple[int, ...]]] = {}


def _chains_upto(k: int, max_m: int) -> list[tuple[int, ...]]:
    if k not in _CHAINS:
        chains = [(1,)]
        for _ in range(k + 1):
            chains = [c + (c[-1] * e,) for c in chains
                      for e in range(1, max_m // c[-1] + 1)]
        _CHAINS[k] = [c for c in chains if c[-1] <= max_m]
    return _CHAINS[k]


def sample_tower(rng: random.Random, *, max_base: int = 3, max_d: int = 3,
                 max_m: int = 6, max_k: int = 2,
                 max_exp: int = 2) -> CoveringTower:
    """Random normal-type tower passing validation and separability.

    Coefficients are drawn from {-3..3} \\ {0} with the leading term forced
    monic; sigma is resampled until squarefree and each level until its
    separability certificate holds.
    """
    from .polycore import squarefree_part, normalized

    nbase = rng.randint(1, max_base)
    d = 1 if nbase == 1 else rng.randint(1, max_d)
    k = rng.randint(0, max_k)
    chain = rng.choice(_chains_upto(k, max_m))
    exponents = tuple(rng.randint(1, max_exp) for _ in range(k + 1))

    base_names = [f"z{i}" for i in range(nbase)]
    fiber_names = [f"w{i}" for i in range(k + 1)]
    weights = {n: 1 for n in base_names}
    for j, w in enumerate(fiber_names):
        weights[w] = max(d * chain[j], 1)
    table = VarTable(base_names + fiber_names + ["t"], "t", weights)

    while True:
        sigma = _dense_homogeneous(table, base_names, d, rng,
                                   monic_in=(base_names[0], d))
        if squarefree_part(normalized(sigma)) == normalized(sigma):
            break

    levels = []
    for j in range(1, k + 2):
        w = fiber_names[j - 1]
        degree = chain[j] // chain[j - 1]
        allowed = base_names + fiber_names[:j]
        while True:
            level = _dense_homogeneous(table, allowed, d * chain[j], rng,
                                       monic_in=(w, degree))
            if degree == 1:
                break
            g = gcd_main(level, level.derivative(w), w)
            if g.degree_in(w) == 0:
                break
        levels.append(level)
    return CoveringTower(table, sigma, levels, chain, exponents)
