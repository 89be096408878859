"""Verification reports: violations, canonical ordering and rendering."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Tuple

from terms import Atom, Clause, format_instance, instance_key

log = logging.getLogger(__name__)


class ViolationKind(Enum):
    CORR = "CORR"
    COV = "COV"
    LVL = "LVL"
    C1 = "C1"
    C2 = "C2"
    K1 = "K1"
    K2 = "K2"
    TERM = "TERM"
    PAIR = "PAIR"
    # oracle comparison
    MISSING = "MISSING"
    EXCESS = "EXCESS"
    REFUTED = "REFUTED"
    UNREFUTED = "UNREFUTED"
    # depth stability
    UNSTABLE = "UNSTABLE"


_KIND_ORDER = {kind: i for i, kind in enumerate(ViolationKind)}


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    instance: object  # ground Atom or ground Clause
    clause_index: Optional[int] = None
    note: str = ""
    position: Optional[int] = None

    def sort_key(self) -> tuple:
        return (instance_key(self.instance), _KIND_ORDER[self.kind],
                self.clause_index or 0, self.position or 0, self.note)

    def atoms(self) -> Tuple[Atom, ...]:
        if isinstance(self.instance, Clause):
            return self.instance.atoms()
        return (self.instance,)


@dataclass(frozen=True)
class VcReport:
    check: str
    checked_count: int
    violations: Tuple[Violation, ...] = ()
    violation_count: int = 0
    frontier_count: int = 0
    stability_flag: bool = True
    notes: Tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    @property
    def vacuous(self) -> bool:
        return self.checked_count == 0


def build_report(check: str, checked: int, violations: Iterable[Violation], frontier: int = 0,
                 limit: Optional[int] = 20, notes: Iterable[str] = (), stable: bool = True) -> VcReport:
    """Sort violations canonically and keep the first ``limit`` (None keeps all)."""
    ordered = sorted(violations, key=Violation.sort_key)
    kept = ordered if limit is None else ordered[:limit]
    notes = list(notes)
    if checked == 0:
        notes.append("vacuous: nothing to check on this slice")
    if len(kept) < len(ordered):
        notes.append(f"showing {len(kept)} of {len(ordered)} violations")
    log.debug("%s: checked=%d violations=%d frontier=%d", check, checked, len(ordered), frontier)
    return VcReport(check, checked, tuple(kept), len(ordered), frontier, stable, tuple(notes))


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_report(r: VcReport, fmt: str = "machine") -> str:
    if fmt == "machine":
        verdict = "pass" if r.passed else "fail"
        line = (f"RESULT {r.check} {verdict} checked={r.checked_count} "
                f"violations={r.violation_count} frontier={r.frontier_count}")
        flags = [name for name, on in (("vacuous", r.vacuous), ("unstable", not r.stability_flag)) if on]
        if flags:
            line += f' note="{",".join(flags)}"'
        lines = [line]
        for v in r.violations:
            clause = "-" if v.clause_index is None else str(v.clause_index)
            lines.append(f"VIOLATION kind={v.kind.value} clause={clause} "
                         f"instance={_quote(format_instance(v.instance))} note={_quote(v.note)}")
        return "\n".join(lines) + "\n"

    verdict = "PASS" if r.passed else "FAIL"
    lines = [f"{r.check}: {verdict} ({r.checked_count} checked, {r.violation_count} violations, "
             f"{r.frontier_count} frontier instances)"]
    if not r.stability_flag:
        lines.append("  unstable under depth increase")
    for v in r.violations:
        where = "" if v.clause_index is None else f" clause {v.clause_index}"
        if v.position is not None:
            where += f" literal {v.position}"
        lines.append(f"  [{v.kind.value}]{where}: {format_instance(v.instance)}")
        if v.note:
            lines.append(f"      {v.note}")
    for note in r.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def report_to_dict(r: VcReport) -> dict:
    return {
        "check": r.check,
        "pass": r.passed,
        "checked": r.checked_count,
        "violations": r.violation_count,
        "frontier": r.frontier_count,
        "stable": r.stability_flag,
        "notes": list(r.notes),
        "listed": [
            {"kind": v.kind.value, "clause": v.clause_index, "position": v.position,
             "instance": format_instance(v.instance), "note": v.note}
            for v in r.violations
        ],
    }
