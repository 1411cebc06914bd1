"""Comparison reports: rows of derivations, Monte Carlo runs and zoo results,
emitted as an aligned table, CSV or JSON."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Mapping

from mpmath import mp

from . import __version__
from .chain import DerivationResult
from .errors import FtrError
from .geometry import McReport
from .numeric import Quantity, get_precision, real

FORMATS = ("table", "csv", "json")
COLUMNS = (
    "kind",
    "name",
    "value",
    "unit",
    "paper",
    "modern",
    "rel_error_paper",
    "rel_error_modern",
    "target",
    "tolerance",
    "limit",
    "deviation",
    "verdict",
    "formula",
    "note",
)
DEFAULT_DIGITS = 6


def fmt_number(x, digits: int = DEFAULT_DIGITS) -> str:
    """Fixed significant digits, independent of the working precision."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int) and abs(x) < 10**digits:
        return str(x)
    return mp.nstr(real(x), digits, min_fixed=-4, max_fixed=digits)


def _in_unit(q: Quantity | None, unit: str):
    if q is None:
        return None
    try:
        return q.to(unit)
    except (FtrError, ValueError):
        return q.magnitude


def derivation_row(r: DerivationResult, tolerances: Mapping[str, float], digits: int) -> dict:
    limit = r.limit(tolerances)
    return {
        "kind": "derivation",
        "name": r.name,
        "value": fmt_number(r.value, digits),
        "unit": r.unit,
        "paper": fmt_number(_in_unit(r.paper_value, r.unit), digits),
        "modern": fmt_number(_in_unit(r.modern_value, r.unit), digits),
        "rel_error_paper": fmt_number(r.rel_error_paper, 3),
        "rel_error_modern": fmt_number(r.rel_error_modern, 3),
        "target": r.target if r.tolerance else "",
        "tolerance": r.tolerance or "",
        "limit": fmt_number(limit, 3),
        "deviation": fmt_number(r.deviation(), 3) if r.tolerance else "",
        "verdict": r.verdict(tolerances),
        "formula": r.formula,
        "note": r.note,
    }


def mc_row(m: McReport, digits: int) -> dict:
    return {
        "kind": "monte-carlo",
        "name": f"centroid std n={m.n_particles}",
        "value": fmt_number(m.empirical_std, digits),
        "unit": "R0",
        "paper": "",
        "modern": fmt_number(m.predicted_std, digits),
        "rel_error_paper": "",
        "rel_error_modern": fmt_number(abs(m.empirical_std - m.predicted_std) / m.predicted_std, 3),
        "target": "modern",
        "tolerance": "z",
        "limit": "3",
        "deviation": fmt_number(abs(m.z), 3),
        "verdict": "pass" if m.passed else "fail",
        "formula": "std of centroid = R0 / (2 sqrt(n))",
        "note": f"trials={m.trials} seed={m.seed} se={fmt_number(m.standard_error, 3)}",
    }


def check_row(name: str, value, expected, passed: bool, formula: str = "", note: str = "", kind: str = "check") -> dict:
    row = dict.fromkeys(COLUMNS, "")
    row.update(
        kind=kind,
        name=name,
        value=str(value),
        paper=str(expected),
        target="paper",
        tolerance="exact",
        verdict="pass" if passed else "fail",
        formula=formula,
        note=note,
    )
    return row


@dataclass
class Report:
    meta: dict
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row["verdict"] != "fail" for row in self.rows)

    def as_dict(self) -> dict:
        return {"meta": self.meta, "rows": self.rows, "passed": self.passed}


def make_meta(command: str, constants=None, seed: int | None = None, tolerances=None, digits=DEFAULT_DIGITS) -> dict:
    meta = {
        "tool": "ftr",
        "version": __version__,
        "command": command,
        "precision": get_precision(),
        "digits": digits,
    }
    if constants is not None:
        meta["dataset"] = constants.source or "bundled"
        meta["provenance"] = constants.provenance
    if seed is not None:
        meta["seed"] = seed
    if tolerances is not None:
        meta["tolerances"] = {k: tolerances[k] for k in sorted(tolerances)}
    return meta


def _table(report: Report) -> str:
    shown = ("name", "value", "unit", "paper", "modern", "deviation", "limit", "verdict")
    lines = [f"# {k}: {v}" for k, v in report.meta.items() if k != "tolerances"]
    if report.rows:
        widths = {c: max(len(c), *(len(str(r[c])) for r in report.rows)) for c in shown}
        lines.append("  ".join(c.ljust(widths[c]) for c in shown).rstrip())
        lines.append("  ".join("-" * widths[c] for c in shown))
        for r in report.rows:
            lines.append("  ".join(str(r[c]).ljust(widths[c]) for c in shown).rstrip())
    lines.append("passed: " + ("yes" if report.passed else "no"))
    return "\n".join(lines) + "\n"


def _csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in report.rows:
        writer.writerow(r)
    return buf.getvalue()


def emit(report: Report, fmt: str = "table") -> str:
    if fmt == "table":
        return _table(report)
    if fmt == "csv":
        return _csv(report)
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=2, sort_keys=False) + "\n"
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")

