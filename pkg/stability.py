"""Depth-stability audit of the bounded-base approximation.

The Φ fixpoint and, optionally, one check are computed at the configured
depth d and again at d+1. Any atom of base(d) whose Φ status differs, and
any violation over base(d) atoms that appears or disappears, is reported as
UNSTABLE.
"""
import logging
from dataclasses import replace

from reports import VcReport, Violation, ViolationKind, build_report
from runner import Inputs, RunConfig, build_slice, load_inputs, run_check, semantics_of

log = logging.getLogger(__name__)


def _witnesses(report: VcReport, base) -> dict:
    return {(v.kind, v.instance): v for v in report.violations
            if all(a in base for a in v.atoms())}


def stability_check(cfg: RunConfig, inputs: Inputs = None) -> VcReport:
    inputs = inputs or load_inputs(cfg)
    low, high = build_slice(inputs, cfg), build_slice(inputs, cfg.at_depth(cfg.depth + 1))
    violations = []

    shallow, deep = semantics_of(inputs, low, cfg.cap), semantics_of(inputs, high, cfg.cap)
    for a in low.atoms:
        before, after = shallow.status(a), deep.status(a)
        if before != after:
            violations.append(Violation(ViolationKind.UNSTABLE, a,
                                        note=f"Φ status {before} at depth {cfg.depth}, {after} at depth {cfg.depth + 1}"))

    notes = []
    if cfg.check:
        uncapped = replace(cfg, report_limit=None)
        first = run_check(uncapped, inputs, low)
        second = run_check(uncapped.at_depth(cfg.depth + 1), inputs, high)
        old, new = _witnesses(first, low.base), _witnesses(second, low.base)
        for key in old.keys() - new.keys():
            v = old[key]
            violations.append(Violation(ViolationKind.UNSTABLE, v.instance, v.clause_index,
                                        f"{v.kind.value} violation disappears at depth {cfg.depth + 1}"))
        for key in new.keys() - old.keys():
            v = new[key]
            violations.append(Violation(ViolationKind.UNSTABLE, v.instance, v.clause_index,
                                        f"{v.kind.value} violation appears at depth {cfg.depth + 1}"))
        notes.append(f"{cfg.check}: {'pass' if first.passed else 'fail'} at depth {cfg.depth}, "
                     f"{'pass' if second.passed else 'fail'} at depth {cfg.depth + 1}; "
                     f"frontier {first.frontier_count} -> {second.frontier_count}")

    if violations:
        log.warning("%d unstable verdicts between depth %d and %d", len(violations), cfg.depth, cfg.depth + 1)
    return build_report("stability", len(low.atoms), violations, 0, cfg.report_limit, notes,
                        stable=not violations)
