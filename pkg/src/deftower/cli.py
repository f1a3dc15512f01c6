"""Command-line front end: forward, resolve, verify, curve, roundtrip.

Exit codes: 0 success, 1 validation failure (report printed), 2 input or
parse error, 3 algorithmic error.  Every error path writes a single
machine-parsable ``error: <kind>: <detail>`` line to stderr.  Output is
byte-identical across runs for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import deform, polyparse, resolve, tower
from .errors import (
    DeftowerError,
    DepthExceeded,
    DivisibilityViolation,
    MalformedFamily,
    MalformedTower,
    NotAPower,
    NotDivisible,
    NotSigmaAdic,
    ParseError,
    StructureError,
    TruncationTooShort,
    UnsupportedShape,
)
from .resolve import BranchGerm, ResolutionTower

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2
EXIT_ALGORITHM = 3

_KINDS = [
    ((ParseError, StructureError), "parse", EXIT_INPUT),
    ((OSError,), "io", EXIT_INPUT),
    ((DivisibilityViolation,), "divisibility", EXIT_ALGORITHM),
    ((DepthExceeded,), "depth", EXIT_ALGORITHM),
    ((UnsupportedShape,), "shape", EXIT_ALGORITHM),
    ((NotSigmaAdic,), "sigma-adic", EXIT_ALGORITHM),
    ((TruncationTooShort,), "truncation", EXIT_ALGORITHM),
    ((MalformedFamily, MalformedTower), "malformed", EXIT_ALGORITHM),
    ((NotAPower, NotDivisible), "algebra", EXIT_ALGORITHM),
    ((DeftowerError,), "error", EXIT_ALGORITHM),
]


def _fail(exc: Exception, stderr) -> int:
    for classes, kind, code in _KINDS:
        if isinstance(exc, classes):
            print(f"error: {kind}: {exc}", file=stderr)
            return code
    raise exc


def _read(path: str) -> str:
    with open(path, "r", encoding="ascii") as handle:
        return handle.read()


def _emit(text: str, out_path: str | None, stdout) -> None:
    if out_path:
        with open(out_path, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        stdout.write(text)


def render_resolution(rt: ResolutionTower, header: list[str] | None = None) -> str:
    """Standard-form system in tower-file syntax plus a step log."""
    lines = list(header or [])
    lines.append("# standard form")
    lines.append(f"# depth {rt.depth}")
    fibers = [n for n in rt.table.names
              if n != rt.table.param and n not in rt.sigma.table.names]
    base = [n for n in rt.sigma.table.names if n != rt.sigma.table.param]
    first = fibers[0] if fibers else "w0"
    lines.append(f"# sub: sigma = t*{first}")
    for i, step in enumerate(rt.steps, start=1):
        lines.append(
            f"# step {i}: center {polyparse.render_poly(step.center)}, "
            f"multiplicity {step.multiplicity}, new variable {step.new_var}")
    lines.append(f"base: {' '.join(base)}")
    lines.append(f"fibers: {' '.join(fibers)}")
    lines.append(f"param: {rt.table.param}")
    lines.append(f"m: {rt.m}")
    lines.append(f"sigma: {polyparse.render_poly(rt.sigma)}")
    for eq in rt.final_system:
        lines.append(f"eq: {polyparse.render_poly(eq)}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- commands


def cmd_forward(args, stdout, stderr) -> int:
    text = _read(args.input)
    tw = polyparse.parse_tower(text)
    if args.exponents:
        try:
            exps = tuple(int(p) for p in args.exponents.split(","))
        except ValueError:
            raise StructureError("--exponents expects comma-separated integers")
        if len(exps) != len(tw.exponents) or any(n < 1 for n in exps):
            raise StructureError(
                f"--exponents needs {len(tw.exponents)} values >= 1")
        tw = tower.CoveringTower(tw.vars, tw.sigma, tw.levels, tw.chain, exps)
    report = tower.validate_normal_type(tw)
    if not report.ok:
        stdout.write(report.render_kv() + "\n")
        print(f"error: validation: {report.failures()[0].detail}",
              file=stderr)
        return EXIT_VALIDATION
    fe = deform.eliminate(deform.build_family(tw))
    adic = deform.sigma_adic(fe) if args.sigma_adic else None
    _emit(polyparse.render_family_file(fe, adic), args.out, stdout)
    return EXIT_OK


def cmd_resolve(args, stdout, stderr) -> int:
    fe = polyparse.parse_family(_read(args.input))
    rt = resolve.resolve_family(fe, args.max_depth)
    _emit(render_resolution(rt), args.out, stdout)
    return EXIT_OK


def cmd_verify(args, stdout, stderr) -> int:
    tw = polyparse.parse_tower(_read(args.input))
    report = tower.validate_normal_type(tw)
    cert = tower.separability_certificate(tw)
    report.entries.extend(cert.entries)
    stdout.write(report.render_kv() + "\n")
    if not report.ok:
        print(f"error: validation: {report.failures()[0].detail}",
              file=stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_curve(args, stdout, stderr) -> int:
    germs = [BranchGerm(tuple(coeffs))
             for coeffs in polyparse.parse_branches(_read(args.input))]
    rt = resolve.curve_resolve(germs, args.max_depth)
    header = [f"# curve with {len(germs)} branches"]
    _emit(render_resolution(rt, header), args.out, stdout)
    return EXIT_OK


def _roundtrip_one(tw) -> bool:
    fe = deform.eliminate(deform.build_family(tw))
    rt = resolve.resolve_family(fe)
    return resolve.re_eliminate(rt, fe.total.table) == fe.total


def cmd_roundtrip(args, stdout, stderr) -> int:
    results = []
    if args.input:
        tw = polyparse.parse_tower(_read(args.input))
        report = tower.validate_normal_type(tw)
        if not report.ok:
            stdout.write(report.render_kv() + "\n")
            print(f"error: validation: {report.failures()[0].detail}",
                  file=stderr)
            return EXIT_VALIDATION
        results.append(_roundtrip_one(tw))
    if args.batch:
        rng = random.Random(args.seed)
        for _ in range(args.batch):
            results.append(_roundtrip_one(deform.sample_tower(rng)))
    if not results:
        raise StructureError("nothing to do: give an input file or --batch N")
    good = sum(results)
    status = "pass" if good == len(results) else "fail"
    stdout.write(f"roundtrip: {status} ({good}/{len(results)})\n")
    if status == "fail":
        print("error: validation: re-elimination mismatch", file=stderr)
        return EXIT_VALIDATION
    return EXIT_OK


# -------------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deftower",
        description="Covering-tower deformation families and their"
                    " blow-up resolutions (exact arithmetic).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", help="tower file -> family file")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--sigma-adic", action="store_true",
                   help="emit the a_i block instead of the total equation")
    p.add_argument("--exponents",
                   help="comma-separated scaling exponents n0,n1,...")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("resolve", help="family file -> standard form")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--max-depth", type=int, default=resolve.DEFAULT_MAX_DEPTH)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("verify", help="validate a tower file")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("curve", help="branch file -> resolution")
    p.add_argument("input")
    p.add_argument("--out")
    p.add_argument("--max-depth", type=int, default=resolve.DEFAULT_MAX_DEPTH)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("roundtrip",
                       help="forward -> resolve -> re-eliminate, exactly")
    p.add_argument("input", nargs="?")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--batch", type=int, default=0,
                   help="also roundtrip N sampled towers")
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, stdout, stderr)
    except (DeftowerError, OSError) as exc:
        return _fail(exc, stderr)


def entry() -> None:
    sys.exit(main())
