"""Structured verdicts with witnesses, serialized deterministically.

Every check in the package returns a :class:`VerificationReport`: an
overall verdict, an ordered list of named clauses (each with its own
verdict and, where relevant, a witness or counterexample string), and a
few integer counters.  Reports are pure values; serializing the same
report twice yields byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
ERROR = "error"
INFO = "info"

_EXIT_CODES = {PASS: 0, FAIL: 1, NOT_APPLICABLE: 2, ERROR: 3}


@dataclass(frozen=True)
class Clause:
    """One named condition inside a report."""

    name: str
    verdict: str
    witness: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    check: str
    verdict: str
    clauses: tuple[Clause, ...] = ()
    stats: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        # keep counters in a fixed order regardless of how they were supplied
        object.__setattr__(self, "stats", tuple(sorted(self.stats)))

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def clause(self, name: str) -> Clause | None:
        for c in self.clauses:
            if c.name == name:
                return c
        return None

    def first_witness(self) -> str | None:
        """Witness of the first non-passing clause, if any."""
        for c in self.clauses:
            if c.verdict in (FAIL, NOT_APPLICABLE, ERROR) and c.witness:
                return c.witness
        return None


def combine(check: str, clauses, stats=None, verdict: str | None = None) -> VerificationReport:
    """Build a report; by default the verdict is fail iff some clause failed."""
    clauses = tuple(clauses)
    if verdict is None:
        verdict = FAIL if any(c.verdict == FAIL for c in clauses) else PASS
    return VerificationReport(check, verdict, clauses, tuple(stats or ()))


def error_report(check: str, message: str) -> VerificationReport:
    return VerificationReport(check, ERROR, (Clause("input", ERROR, message),))


def exit_code(report: VerificationReport) -> int:
    return _EXIT_CODES[report.verdict]


def serialize_report(report: VerificationReport, fmt: str = "text") -> str:
    """Render a report as text or JSON.  Output always ends with a newline."""
    if fmt == "json":
        payload = {
            "check": report.check,
            "verdict": report.verdict,
            "clauses": [
                {"name": c.name, "verdict": c.verdict, "witness": c.witness}
                for c in report.clauses
            ],
            "stats": dict(report.stats),
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [f"{report.verdict.upper()} {report.check}"]
    for c in report.clauses:
        line = f"  {c.name}: {c.verdict}"
        if c.witness is not None:
            line += f"  witness: {c.witness}"
        lines.append(line)
    for key, value in report.stats:
        lines.append(f"  stat {key}={value}")
    return "\n".join(lines) + "\n"
