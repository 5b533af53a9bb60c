"""Machine-readable verification reports.

A report is an ordered list of rows, each row one check for one case key
(operator, n, p, trial).  Identity rows carry the canonical polynomial
text of both sides and of their difference; informational rows (floating
point constants, surveyed-not-asserted orderings) use status "reported"
and never affect the exit code.  Rendering is deterministic: rows are
sorted by case key and check name, JSON uses sorted keys and fixed
separators, and no timestamps appear anywhere, so equal seeds give
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_REPORTED = "reported"

SCHEMA_VERSION = 1


@dataclass(frozen=True, order=True)
class CaseKey:
    operator: str
    n: int
    p: int
    trial: int


@dataclass(frozen=True)
class ReportRow:
    case: CaseKey
    check: str
    status: str
    lhs: str
    rhs: str
    residual: str


@dataclass
class Report:
    command: str
    seed: int
    rows: list[ReportRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(
        self,
        case: CaseKey,
        check: str,
        status: str,
        lhs: str = "",
        rhs: str = "",
        residual: str = "",
    ) -> None:
        self.rows.append(ReportRow(case, check, status, lhs, rhs, residual))

    def add_equality(self, case: CaseKey, check: str, lhs, rhs) -> None:
        """Row asserting two canonicalizable values are equal."""
        diff = lhs - rhs
        status = STATUS_PASS if diff.is_zero() else STATUS_FAIL
        self.add(case, check, status, lhs.canonical(), rhs.canonical(), diff.canonical())

    def sorted_rows(self) -> list[ReportRow]:
        return sorted(self.rows, key=lambda r: (r.case, r.check))

    def counts(self) -> dict[str, int]:
        out = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_REPORTED: 0}
        for row in self.rows:
            out[row.status] = out.get(row.status, 0) + 1
        return out

    def exit_code(self) -> int:
        return 1 if self.counts()[STATUS_FAIL] else 0

    # -- renderers ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"# {self.command} (seed={self.seed})"]
        for note in self.notes:
            lines.append(f"# note: {note}")
        for row in self.sorted_rows():
            case = f"{row.case.operator} n={row.case.n} p={row.case.p} t={row.case.trial}"
            lines.append(
                f"[{row.status:8s}] {case:28s} {row.check:34s} "
                f"lhs={row.lhs} rhs={row.rhs} residual={row.residual}"
            )
        counts = self.counts()
        lines.append(
            f"# summary: pass={counts[STATUS_PASS]} fail={counts[STATUS_FAIL]} "
            f"reported={counts[STATUS_REPORTED]}"
        )
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "seed": self.seed,
            "summary": self.counts(),
            "notes": list(self.notes),
            "cases": [
                {
                    "case": {
                        "operator": row.case.operator,
                        "n": row.case.n,
                        "p": row.case.p,
                        "trial": row.case.trial,
                    },
                    "check": row.check,
                    "status": row.status,
                    "lhs": row.lhs,
                    "rhs": row.rhs,
                    "residual": row.residual,
                }
                for row in self.sorted_rows()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":")) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["operator", "n", "p", "trial", "check", "status", "lhs", "rhs", "residual"]
        )
        for row in self.sorted_rows():
            writer.writerow(
                [
                    row.case.operator,
                    row.case.n,
                    row.case.p,
                    row.case.trial,
                    row.check,
                    row.status,
                    row.lhs,
                    row.rhs,
                    row.residual,
                ]
            )
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "text":
            return self.to_text()
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")
