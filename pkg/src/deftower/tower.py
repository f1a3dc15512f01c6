"""Covering towers: domain model, normal-type validation, normalization.

A tower is the data ``(sigma, Q_1, ..., Q_{k+1})`` over base variables z and
fiber variables w_0..w_k, together with a divisibility chain
``m_0=1 | m_1 | ... | m_{k+1}`` and scaling exponents n_0..n_k.  Level j is
monic of degree m_j/m_{j-1} in its top fiber variable and weighted
homogeneous of degree d*m_j, where d is the degree of sigma and the weights
are z -> 1, w_j -> d*m_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotAPower
from .polycore import (
    NEG_INFINITY,
    Poly,
    VarTable,
    gcd_main,
    is_weighted_homogeneous,
    mth_root,
    normalized,
    weighted_degree,
)


@dataclass(frozen=True)
class RuleCheck:
    rule: str
    passed: bool
    detail: str


@dataclass
class ValidationReport:
    """Per-rule outcomes; overall pass iff every rule passed."""

    entries: list[RuleCheck] = field(default_factory=list)

    def add(self, rule: str, passed: bool, detail: str) -> None:
        self.entries.append(RuleCheck(rule, passed, detail))

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[RuleCheck]:
        return [e for e in self.entries if not e.passed]

    def render_text(self) -> str:
        lines = []
        for e in self.entries:
            status = "PASS" if e.passed else "FAIL"
            lines.append(f"{status} {e.rule}: {e.detail}")
        return "\n".join(lines)

    def render_kv(self) -> str:
        lines = []
        for e in self.entries:
            status = "pass" if e.passed else "fail"
            lines.append(f"rule={e.rule} status={status} detail={e.detail}")
        return "\n".join(lines)


@dataclass(frozen=True)
class CoveringTower:
    """An iterated univariate covering presented by explicit equations."""

    vars: VarTable
    sigma: Poly
    levels: list[Poly]
    chain: tuple[int, ...]      # m_0, m_1, ..., m_{k+1}
    exponents: tuple[int, ...]  # n_0, ..., n_k

    def __post_init__(self):
        if len(self.chain) != len(self.levels) + 1:
            raise ValueError("chain length must be levels + 1")
        if len(self.exponents) != len(self.levels):
            raise ValueError("one exponent per level is required")

    @property
    def fiber_names(self) -> list[str]:
        non_param = [n for n in self.vars.names if n != self.vars.param]
        return non_param[len(non_param) - len(self.levels):]

    @property
    def base_names(self) -> list[str]:
        non_param = [n for n in self.vars.names if n != self.vars.param]
        return non_param[:len(non_param) - len(self.levels)]

    @property
    def degree_d(self) -> int:
        d = self.sigma.total_degree()
        return 0 if d is NEG_INFINITY else d


def covering_degree(tw: CoveringTower) -> int:
    """Total covering degree m (the last chain entry)."""
    return tw.chain[-1]


def validate_normal_type(tw: CoveringTower) -> ValidationReport:
    """Check every normal-type invariant, one report entry per rule."""
    report = ValidationReport()
    chain = tw.chain
    fibers = tw.fiber_names
    base = set(tw.base_names)
    param = tw.vars.param

    ok = chain[0] == 1 and all(
        chain[j] % chain[j - 1] == 0 for j in range(1, len(chain)))
    detail = " | ".join(str(m) for m in chain)
    report.add("chain", ok,
               f"divisibility chain {detail}" if ok
               else f"chain {detail} is not a divisibility chain from 1")

    bad = []
    for j, level in enumerate(tw.levels, start=1):
        w = fibers[j - 1]
        want = chain[j] // chain[j - 1] if chain[j - 1] and chain[j] % chain[j - 1] == 0 else None
        got = level.degree_in(w)
        got = None if got is NEG_INFINITY else got
        if want is None or got != want:
            bad.append(f"level {j}: degree {got} in {w}, expected {want}")
    report.add("level-degree", not bad,
               "every level has degree m_j/m_(j-1) in its fiber variable"
               if not bad else "; ".join(bad))

    bad = []
    for j, level in enumerate(tw.levels, start=1):
        w = fibers[j - 1]
        d = level.degree_in(w)
        if d is NEG_INFINITY:
            bad.append(f"level {j}: fiber variable {w} absent")
            continue
        lead = level.coeff_of(w, d)
        if not (lead.is_constant() and lead.constant_value() == 1):
            bad.append(f"level {j}: not monic in {w}")
    report.add("monic", not bad,
               "every level is monic in its fiber variable"
               if not bad else "; ".join(bad))

    if tw.vars.weights is None:
        report.add("weighted-homogeneous", False, "no weights declared")
    else:
        bad = []
        d = tw.degree_d
        wmap = dict(zip(tw.vars.names, tw.vars.weights))
        for name in tw.base_names:
            if wmap[name] != 1:
                bad.append(f"base variable {name} has weight {wmap[name]} != 1")
        for j, w in enumerate(fibers):
            if wmap[w] != d * chain[j]:
                bad.append(f"fiber {w} has weight {wmap[w]} != {d * chain[j]}")
        if not is_weighted_homogeneous(tw.sigma) or weighted_degree(tw.sigma) != d:
            bad.append("sigma is not homogeneous of its own degree")
        for j, level in enumerate(tw.levels, start=1):
            if not is_weighted_homogeneous(level):
                bad.append(f"level {j} is not weighted homogeneous")
            elif weighted_degree(level) != d * chain[j]:
                bad.append(
                    f"level {j} has weighted degree {weighted_degree(level)}"
                    f" != {d * chain[j]}")
        report.add("weighted-homogeneous", not bad,
                   f"all levels weighted homogeneous (d={d})"
                   if not bad else "; ".join(bad))

    sigma_ok = True
    detail = "sigma is not a proper power"
    if tw.sigma.is_zero() or tw.sigma.is_constant():
        sigma_ok = False
        detail = "sigma is constant"
    else:
        deg = tw.sigma.total_degree()
        for mm in range(2, deg + 1):
            if deg % mm:
                continue
            try:
                mth_root(normalized(tw.sigma), mm)
            except NotAPower:
                continue
            sigma_ok = False
            detail = f"sigma is a {mm}-th power"
            break
    report.add("sigma-reduced", sigma_ok, detail)

    bad = []
    if not tw.sigma.variables() <= base:
        bad.append("sigma uses non-base variables")
    for j, level in enumerate(tw.levels, start=1):
        allowed = base | set(fibers[:j])
        extra = level.variables() - allowed
        if extra:
            bad.append(f"level {j} uses {sorted(extra)}")
    if param in tw.sigma.variables() or any(
            param in lv.variables() for lv in tw.levels):
        bad.append(f"the parameter {param} appears in a tower equation")
    report.add("variable-scope", not bad,
               "all equations use only their allowed variables"
               if not bad else "; ".join(bad))
    return report


def separability_certificate(tw: CoveringTower) -> ValidationReport:
    """Per-level generic separability: each Q_j squarefree in its fiber
    variable over the function field of the variables below it.

    Equivalent to the resultant of Q_j and its fiber derivative being
    nonzero; necessary for smoothness, not sufficient.
    """
    report = ValidationReport()
    fibers = tw.fiber_names
    for j, level in enumerate(tw.levels, start=1):
        w = fibers[j - 1]
        rule = f"level-{j}-separable"
        deg = level.degree_in(w)
        if deg is NEG_INFINITY or deg < 1:
            report.add(rule, False, f"{w} does not occur in level {j}")
            continue
        if deg == 1:
            report.add(rule, True, "degree 1, separable vacuously")
            continue
        g = gcd_main(level, level.derivative(w), w)
        if g.degree_in(w) == 0:
            report.add(rule, True,
                       f"no common root with the {w}-derivative")
        else:
            report.add(rule, False,
                       f"shares the factor {g} with its {w}-derivative")
    return report


def _tschirnhausen_steps(tw: CoveringTower):
    """Shifted tower plus the list of (fiber variable, shift) applied."""
    table = tw.vars
    fibers = tw.fiber_names
    levels = list(tw.levels)
    shifts: list[tuple[str, Poly]] = []
    for j, w in enumerate(fibers):
        level = levels[j]
        deg = level.degree_in(w)
        if deg is NEG_INFINITY or deg < 1:
            raise ValueError(f"level {j + 1} is not a polynomial in {w}")
        sub = level.coeff_of(w, deg - 1)
        shift = sub * Fraction(1, deg)
        if shift.is_zero():
            continue
        repl = Poly.var(table, w) - shift
        for i in range(j, len(levels)):
            levels[i] = levels[i].substitute(w, repl)
        shifts.append((w, shift))
    shifted = CoveringTower(table, tw.sigma, levels, tw.chain, tw.exponents)
    return shifted, shifts


def tschirnhausen(tw: CoveringTower) -> CoveringTower:
    """Shift each fiber variable so the subleading coefficient vanishes.

    The shift w -> w - a_1/deg is applied to the defining level and to every
    later level, so the tower presents the same subscheme; applying the
    inverse shifts in reverse order reproduces the input exactly.
    """
    shifted, _ = _tschirnhausen_steps(tw)
    return shifted


def undo_tschirnhausen(shifted: CoveringTower,
                       shifts: list[tuple[str, Poly]]) -> CoveringTower:
    """Apply the inverse shifts in reverse order (testing aid)."""
    table = shifted.vars
    levels = list(shifted.levels)
    for w, shift in reversed(shifts):
        repl = Poly.var(table, w) + shift
        levels = [lv.substitute(w, repl) for lv in levels]
    return CoveringTower(table, shifted.sigma, levels,
                         shifted.chain, shifted.exponents)
