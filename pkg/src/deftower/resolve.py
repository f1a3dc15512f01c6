"""Inverse direction: resolve a family into its standard-form blow-up tower.

Starting from Sigma(z, t) with central slice sigma^m, the resolution
substitutes sigma = t*w_0, divides by t^m, and then repeatedly blows up the
locus where the central fiber stays singular: the center D is the reduced
gcd of (P at t=0, its fiber derivative, the t-linear coefficient), the
working equation is rewritten D-adically, D is replaced by t*w_new, and the
result is divided exactly by t^r where P|_{t=0} = D^r * G with D not
dividing G.  The loop stops when the three test polynomials have no common
root.  Substituting every relation back and clearing t reproduces the input
equation exactly, which is re-checked on every run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .deform import FamilyEquation, check_divide, sigma_adic
from .errors import (
    DepthExceeded,
    DivisibilityViolation,
    MalformedFamily,
    NotDivisible,
    TruncationTooShort,
    UnsupportedShape,
)
from .polycore import (
    NEG_INFINITY,
    Poly,
    VarTable,
    exact_div,
    gcd_main,
    normalized,
    pseudo_div,
    sign_normalized,
    squarefree_part,
    weighted_degree,
)

DEFAULT_MAX_DEPTH = 64


@dataclass(frozen=True)
class BlowupStep:
    """One substitution center = t*new_var followed by division by t^r."""

    center: Poly        # D, monic in the fiber variable it eliminates
    multiplicity: int   # r with P|_{t=0} = D^r * G, D not dividing G
    fiber_var: str      # the variable the center is monic in
    new_var: str
    equation: Poly      # the working equation after the substitution


@dataclass(frozen=True)
class ResolutionTower:
    """The standard-form system produced by the resolution."""

    sigma: Poly
    m: int
    exponent_chain: tuple[int, ...]
    steps: list[BlowupStep]
    final_system: list[Poly]
    table: VarTable

    @property
    def depth(self) -> int:
        """Total number of t-substitutions, the initial one included."""
        return 1 + len(self.steps)


@dataclass(frozen=True)
class BranchGerm:
    """Truncated curve branch phi(t) = c_1 t + ... + c_N t^N."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a branch germ needs at least one coefficient")

    def to_poly(self, table: VarTable) -> Poly:
        t = Poly.var(table, table.param)
        acc = Poly.zero(table)
        for i, c in enumerate(self.coeffs, start=1):
            acc = acc + Poly.const(table, c) * t ** i
        return acc

    def order(self) -> int | None:
        """t-adic order, or None when the truncated germ is zero."""
        for i, c in enumerate(self.coeffs, start=1):
            if c:
                return i
        return None


def central_root(fe: FamilyEquation) -> tuple[Poly, int]:
    """Maximal m and reduced sigma with sigma^m = Sigma(.,0) up to a
    positive rational unit (the unit is folded into sigma).

    A squarefree root forces sigma to be the radical of the central slice
    up to sign, so m is determined by the degree ratio; the candidate is
    verified by powering and m = 1 is the fallback.
    """
    table = fe.total.table
    central = fe.total.coeff_of(table.param, 0)
    if central.is_zero():
        raise MalformedFamily("the central fiber equation vanishes")
    if central.is_constant():
        return sign_normalized(normalized(central)), 1
    _, lead = central.leading_term()
    primitive = normalized(central)          # positive leading coefficient
    radical = squarefree_part(central)
    deg_c = central.total_degree()
    deg_r = radical.total_degree()
    if deg_r and deg_c % deg_r == 0:
        m = deg_c // deg_r
        if m >= 2 and radical ** m == primitive:
            if lead > 0:
                return radical, m
            if m % 2 == 1:
                # sigma^m must carry the negative sign of the input.
                return -radical, m
    return (primitive if lead > 0 else -primitive), 1


def blowup_once(P: Poly, fiber_var: str, next_var: str) -> BlowupStep | None:
    """One step of the resolution; ``None`` means the fiber is smooth.

    The center is the squarefree part of the gcd of (P at t=0, its
    derivative in ``fiber_var``, the t-linear coefficient); the gcd itself
    can carry multiplicities, the blow-up locus is its reduced zero set.
    """
    table = P.table
    param = table.param
    P0 = P.coeff_of(param, 0)
    P1 = P.coeff_of(param, 1)
    dP0 = P0.derivative(fiber_var)
    center = gcd_main(P0, dP0, fiber_var)
    center = gcd_main(center, P1, fiber_var)
    if center.degree_in(fiber_var) == 0:
        return None
    center = squarefree_part(center)
    lead = center.leading_coeff_in(fiber_var)
    if not lead.is_constant():
        raise UnsupportedShape(
            f"blow-up center is not monic in {fiber_var}: {center}")
    center = center * (1 / lead.constant_value())

    multiplicity = 0
    residue = P0
    while True:
        try:
            residue = exact_div(residue, center)
        except NotDivisible:
            break
        multiplicity += 1
    if multiplicity < 2:
        raise DivisibilityViolation(
            "blow-up center has multiplicity below 2 in the central fiber")

    digits: list[Poly] = []
    rem = P
    while not rem.is_zero():
        quo, digit, _ = pseudo_div(rem, center, fiber_var)
        digits.append(digit)
        rem = quo

    weights = None
    if table.weights is not None:
        wd = weighted_degree(center)
        weights = [int(wd) if wd is not NEG_INFINITY else 1]
    new_table = table.insert_fibers([next_var], weights)
    t = Poly.var(new_table, param)
    nv = Poly.var(new_table, next_var)
    acc = Poly.zero(new_table)
    for e, digit in enumerate(digits):
        lifted = digit.lift(new_table)
        if e >= multiplicity:
            acc = acc + lifted * nv ** e * t ** (e - multiplicity)
        else:
            try:
                part = exact_div(lifted, t ** (multiplicity - e)) if lifted else lifted
            except NotDivisible:
                raise DivisibilityViolation(
                    f"t^{multiplicity - e} does not divide the degree-{e} "
                    "adic digit of the working equation") from None
            acc = acc + part * nv ** e
    return BlowupStep(center.lift(new_table), multiplicity, fiber_var,
                      next_var, acc)


def resolve_family(fe: FamilyEquation,
                   max_depth: int = DEFAULT_MAX_DEPTH) -> ResolutionTower:
    """Full resolution: initial substitution sigma = t*w_0, then blow-ups.

    Repeated rescalings (centers that are a bare fiber variable with trivial
    cofactor) are recorded in ``exponent_chain``.  The output is verified by
    exact re-elimination before it is returned.
    """
    sigma, m = central_root(fe)
    if fe.sigma is not None and normalized(fe.sigma) != normalized(sigma):
        raise MalformedFamily(
            "declared sigma does not match the central root")
    work = FamilyEquation(fe.total, m, sigma)
    sa = sigma_adic(work)
    report = check_divide(sa)
    if not report.ok:
        raise DivisibilityViolation(
            "; ".join(e.detail for e in report.failures()))

    table = fe.total.table
    first = table.fresh_names("w", 1)[0]
    weights = None
    if table.weights is not None:
        wd = weighted_degree(sigma)
        weights = [int(wd) if wd is not NEG_INFINITY else 1]
    work_table = table.insert_fibers([first], weights)
    t = Poly.var(work_table, table.param)
    w0 = Poly.var(work_table, first)
    P = w0 ** m
    for i, a in enumerate(sa.coeffs, start=1):
        if a.is_zero():
            continue
        b = exact_div(a.lift(work_table), t ** i)
        P = P + b * w0 ** (m - i)

    relations = [sigma.lift(work_table) - t * w0]
    steps: list[BlowupStep] = []
    fiber = first
    while True:
        nxt = P.table.fresh_names("w", 1)[0]
        step = blowup_once(P, fiber, nxt)
        if step is None:
            break
        steps.append(step)
        P = step.equation
        fiber = step.new_var
        if len(steps) >= max_depth:
            raise DepthExceeded(max_depth)

    final_table = P.table
    final_system = [rel.lift(final_table) for rel in relations]
    for step in steps:
        tt = Poly.var(final_table, final_table.param)
        final_system.append(step.center.lift(final_table)
                            - tt * Poly.var(final_table, step.new_var))
    final_system.append(P)

    rt = ResolutionTower(sigma, m, _exponent_chain(steps), steps,
                         final_system, final_table)
    replayed = re_eliminate(rt, fe.total.table)
    if replayed != fe.total:
        raise MalformedFamily(
            "internal error: re-elimination does not reproduce the input")
    return rt


def _exponent_chain(steps: list[BlowupStep]) -> tuple[int, ...]:
    """Run lengths of pure rescalings after each structural substitution.

    A step whose center is the bare fiber variable with a constant cofactor
    is a rescaling sigma = t^a v (the new equation then has fiber degree
    equal to the multiplicity); any other step opens a new level.
    """
    chain = [1]
    for step in steps:
        bare = Poly.var(step.center.table, step.fiber_var)
        is_rescale = (step.center == bare and
                      step.equation.degree_in(step.new_var)
                      == step.multiplicity)
        if is_rescale:
            chain[-1] += 1
        else:
            chain.append(1)
    return tuple(chain)


def re_eliminate(rt: ResolutionTower, target: VarTable) -> Poly:
    """Undo every substitution and reproduce the input family equation."""
    P = rt.final_system[-1]
    for step in reversed(rt.steps):
        P = _undo(P, step.new_var, step.center.lift(P.table),
                  step.multiplicity)
    first = next(name for name in rt.table.names
                 if name not in target.names and name != rt.table.param)
    P = _undo(P, first, rt.sigma.lift(P.table), rt.m)
    return P.project(target)


def _undo(P: Poly, var: str, replacement: Poly, r: int) -> Poly:
    table = P.table
    t = Poly.var(table, table.param)
    deg = P.degree_in(var)
    if deg is NEG_INFINITY:
        deg = 0
    acc = Poly.zero(table)
    for e, c in P.coeffs_in(var).items():
        acc = acc + c * replacement ** e * t ** (deg - e)
    return exact_div(acc, t ** (deg - r)) if deg > r else acc


# --------------------------------------------------------------- curve germs


def branch_track_oracle(branches: list[BranchGerm]) -> int:
    """Expected resolution depth: the largest pairwise contact order.

    Single branches resolve with the initial substitution alone, depth 1.
    Identical truncated germs cannot be separated and raise
    :class:`TruncationTooShort`.
    """
    if not branches:
        raise ValueError("no branches given")
    best = 1
    for a, b in itertools.combinations(branches, 2):
        n = max(len(a.coeffs), len(b.coeffs))
        diff = [
            (a.coeffs[i] if i < len(a.coeffs) else Fraction(0))
            - (b.coeffs[i] if i < len(b.coeffs) else Fraction(0))
            for i in range(n)
        ]
        order = next((i + 1 for i, c in enumerate(diff) if c), None)
        if order is None:
            raise TruncationTooShort(
                "two branches coincide within their truncation order")
        best = max(best, order)
    return best


def curve_resolve(branches: list[BranchGerm],
                  max_depth: int = DEFAULT_MAX_DEPTH) -> ResolutionTower:
    """Resolve the plane curve product of (y - phi_i(t)) over the germs.

    Truncations are treated as exact polynomials.  Coinciding truncated
    germs raise :class:`TruncationTooShort` up front since no finite number
    of blow-ups could separate them.
    """
    if not branches:
        raise ValueError("no branches given")
    for a, b in itertools.combinations(branches, 2):
        if _same_series(a, b):
            raise TruncationTooShort(
                "two branches coincide within their truncation order")
    table = VarTable(("y", "t"), "t")
    y = Poly.var(table, "y")
    F = Poly.const(table, 1)
    for germ in branches:
        F = F * (y - germ.to_poly(table))
    fe = FamilyEquation(F, None, None)
    return resolve_family(fe, max_depth)


def _same_series(a: BranchGerm, b: BranchGerm) -> bool:
    n = max(len(a.coeffs), len(b.coeffs))
    for i in range(n):
        ca = a.coeffs[i] if i < len(a.coeffs) else Fraction(0)
        cb = b.coeffs[i] if i < len(b.coeffs) else Fraction(0)
        if ca != cb:
            return False
    return True
