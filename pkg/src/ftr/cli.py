"""ftr command line: derivations, cosmic-pair solving, Monte Carlo checks,
the zoo puzzle and comparison reports.

Exit status is 0 when every check passes, 1 when any fails and 2 on bad
input.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import chain, zoo
from .errors import ConfigError, FtrError
from .geometry import mc_centroid, solve_cosmic_pair
from .numeric import BUNDLED, ConstantSet, Quantity, bundled, load_constants_file, rel_error, set_precision
from .report import (
    DEFAULT_DIGITS,
    FORMATS,
    Report,
    check_row,
    derivation_row,
    emit,
    fmt_number,
    make_meta,
    mc_row,
)

ENV_CONSTANTS = "FTR_CONSTANTS"
DEFAULT_DATASET = "modern"
MIN_PRECISION = 20


def load_dataset(source: str | None) -> ConstantSet:
    """A bundled set by name, or a .cst file by path."""
    source = source or os.environ.get(ENV_CONSTANTS) or DEFAULT_DATASET
    if source in BUNDLED:
        return bundled(source)
    path = Path(source)
    if not path.exists():
        raise ConfigError(f"no constant set {source!r} (bundled: {', '.join(BUNDLED)})")
    return load_constants_file(path)


def parse_tolerances(items: list[str]) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ConfigError(f"tolerance must be name=value, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"tolerance {name!r} is not a number: {value!r}") from None
    return chain.merge_tolerances(out)


# --------------------------------------------------------------------------
# subcommands; each returns a Report


def _derive_rows(constants, tolerances, digits):
    return [derivation_row(r, tolerances, digits) for r in chain.run_chain(constants)]


def cmd_derive(args, constants, tolerances) -> Report:
    report = Report(make_meta("derive", constants, tolerances=tolerances, digits=args.digits))
    report.rows = _derive_rows(constants, tolerances, args.digits)
    return report


def _cosmic_rows(ratio: str, k: str, tolerance: float, digits: int) -> list[dict]:
    frame = solve_cosmic_pair(Quantity.of(ratio, "cm"), Quantity.of(k, "cm"))
    rows = []
    for name, value, expected, unit in (
        ("N", frame.N, "2.31e79", "1"),
        ("R0", frame.R0.to("cm"), "9.14e26", "cm"),
    ):
        err = rel_error(value, Quantity.of(expected).magnitude)
        row = check_row(name, fmt_number(value, digits), expected, err <= tolerance,
                        "sqrt(N) = k / (R0/N), R0 = k sqrt(N)", f"R0/N = {ratio} cm, k = {k} cm", "cosmic")
        row.update(unit=unit, rel_error_paper=fmt_number(err, 3), tolerance="vintage",
                   limit=fmt_number(tolerance, 3), deviation=fmt_number(err, 3))
        rows.append(row)
    return rows


def cmd_solve_cosmic(args, constants, tolerances) -> Report:
    report = Report(make_meta("solve-cosmic", tolerances=tolerances, digits=args.digits))
    report.rows = _cosmic_rows(args.ratio, args.k, tolerances["vintage"], args.digits)
    return report


def _mc_rows(ns, trials, seed, workers, digits):
    return [mc_row(mc_centroid(n, trials, seed, workers=workers), digits) for n in ns]


def cmd_mc_verify(args, constants, tolerances) -> Report:
    report = Report(make_meta("mc-verify", seed=args.seed, digits=args.digits))
    report.meta["trials"] = args.trials
    report.rows = _mc_rows(args.n or [100, 1000, 10000], args.trials, args.seed, args.workers, args.digits)
    return report


def _zoo_rows(solution: zoo.ZooSolution) -> list[dict]:
    winners = {(kind, f.best_score) for f in solution.families for _, kind in f.winners}
    rows = [
        check_row("max family size", solution.size, 5, solution.size == 5, kind="zoo"),
        check_row("composition", solution.compositions, {(3, 2)}, solution.compositions == {(3, 2)},
                  note="(boys, girls)", kind="zoo"),
        check_row("winner", sorted(winners), [("boy", 4)], winners == {("boy", 4)}, kind="zoo"),
        check_row("witness family", "compatible" if zoo.is_family(zoo.WITNESSES.values()) else "incompatible",
                  "compatible", zoo.is_family(zoo.WITNESSES.values()),
                  note=", ".join(zoo.WITNESSES), kind="zoo"),
    ]
    for i, fam in enumerate(solution.families, 1):
        text = " ".join(f"{kind[0]}:{zoo.format_cycles(P)}" for P, kind in fam.members)
        row = check_row(f"family {i}", text, "", True, kind="zoo")
        row.update(tolerance="", verdict="info", paper="", target="")
        rows.append(row)
    return rows


def cmd_zoo(args, constants, tolerances) -> Report:
    solution = zoo.max_family(require_mixed=not args.any_gender)
    report = Report(make_meta("zoo", digits=args.digits))
    report.meta["summary"] = solution.summary()
    report.meta["families"] = len(solution.families)
    report.rows = _zoo_rows(solution)
    return report


def cmd_compare(args, constants, tolerances) -> Report:
    """Same chain on two constant sets; flags rows that shift by more than
    the vintage tolerance."""
    other = load_dataset(args.against)
    report = Report(make_meta("compare", constants, tolerances=tolerances, digits=args.digits))
    report.meta["against"] = other.source or args.against
    limit = tolerances["vintage"]
    for a, b in zip(chain.run_chain(constants), chain.run_chain(other)):
        shift = rel_error(a.computed, b.computed) if b.computed.magnitude != 0 else None
        row = derivation_row(a, tolerances, args.digits)
        row.update(
            modern=fmt_number(b.value, args.digits),
            rel_error_modern=fmt_number(shift, 3),
            target="modern",
            tolerance="vintage" if a.tolerance else "",
            limit=fmt_number(limit, 3) if a.tolerance else "",
            deviation=fmt_number(shift, 3) if a.tolerance else "",
            verdict=("pass" if shift is not None and shift <= limit else "fail") if a.tolerance else "info",
            note="shift between constant sets",
        )
        report.rows.append(row)
    return report


def cmd_report_all(args, constants, tolerances) -> Report:
    report = Report(make_meta("report-all", constants, seed=args.seed, tolerances=tolerances, digits=args.digits))
    report.rows += _derive_rows(constants, tolerances, args.digits)
    report.rows += _cosmic_rows("3.95e-53", "1.9e-13", tolerances["vintage"], args.digits)
    report.rows += _mc_rows([100, 1000, 10000], args.trials, args.seed, args.workers, args.digits)
    report.rows += _zoo_rows(zoo.max_family())
    return report


COMMANDS = {
    "derive": cmd_derive,
    "solve-cosmic": cmd_solve_cosmic,
    "mc-verify": cmd_mc_verify,
    "zoo": cmd_zoo,
    "compare": cmd_compare,
    "report-all": cmd_report_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--constants", help=f"bundled set ({', '.join(BUNDLED)}) or .cst path; "
                        f"defaults to ${ENV_CONSTANTS} or {DEFAULT_DATASET}")
    common.add_argument("--precision", type=int, default=50, help="working decimal digits (>= 20)")
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--tolerance", action="append", default=[], metavar="NAME=VALUE",
                        help="override a tolerance class (exact, vintage, magnitude, order) or a row by name")
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="significant digits shown")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="ftr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("derive", parents=[common], help="run the derivation chain")
    p = sub.add_parser("solve-cosmic", parents=[common], help="recover (N, R0) from R0/N and k")
    p.add_argument("--ratio", default="3.95e-53", help="R0/N in cm")
    p.add_argument("--k", default="1.9e-13", help="range constant in cm")
    for name in ("mc-verify", "report-all"):
        p = sub.add_parser(name, parents=[common])
        if name == "mc-verify":
            p.add_argument("--n", type=int, action="append", help="particles per trial (repeatable)")
        p.add_argument("--trials", type=int, default=2000)
        p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("zoo", parents=[common], help="solve the zoo puzzle")
    p.add_argument("--any-gender", action="store_true", help="allow single-gender families")
    p.add_argument("--families", action="store_true", help="list every optimal family")
    p = sub.add_parser("compare", parents=[common], help="run the chain on two constant sets")
    p.add_argument("--against", default="paper-era-1946")
    return parser


def run(argv: list[str] | None = None) -> tuple[Report, str, int]:
    """Parse ``argv``, run the subcommand and render it; writes ``--output``
    but never stdout."""
    args = build_parser().parse_args(argv)
    if args.precision < MIN_PRECISION:
        raise ConfigError(f"precision must be at least {MIN_PRECISION}")
    if args.digits < 1:
        raise ConfigError("digits must be positive")
    set_precision(args.precision)
    tolerances = parse_tolerances(args.tolerance)
    constants = load_dataset(args.constants) if args.command in ("derive", "compare", "report-all") else None
    report = COMMANDS[args.command](args, constants, tolerances)
    if args.command == "zoo" and args.format == "table":
        text = report.meta["summary"] + "\n"
        if args.families:
            text += "".join(f"{row['name']}: {row['value']}\n" for row in report.rows if row["verdict"] == "info")
    else:
        text = emit(report, args.format)
    if args.output:
        Path(args.output).write_text(text)
        text = ""
    return report, text, 0 if report.passed else 1


def main(argv: list[str] | None = None) -> int:
    try:
        report, text, status = run(argv)
    except FtrError as exc:
        print(f"ftr: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
