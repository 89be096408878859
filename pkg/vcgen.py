"""Verification conditions over a Herbrand slice.

Each check grounds the program over the slice, evaluates its condition on
every ground instance (or specified atom) and reports the ground
counterexamples. Work is split into chunks for an optional thread pool; the
final report is sorted canonically, so the degree of parallelism never shows
in the output.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

import config
from errors import NotDefinite, PairInconsistent
from reports import VcReport, Violation, ViolationKind, build_report
from semantics import GroundInstance, GroundProgram, ground_program
from specs import LevelMapping, SpecInterpretation, SpecPair, check_pair_consistency
from terms import Atom, HerbrandSlice, Literal, Program, format_atom, variables

log = logging.getLogger(__name__)

LEVEL_NOTE = "level decrease is required against every body atom (conservative)"


def _scan(items: Sequence, fn: Callable[[object], List[Violation]], workers: int) -> List[Violation]:
    if workers <= 1 or len(items) < 2:
        return [v for item in items for v in fn(item)]
    size = -(-len(items) // workers)
    chunks = [items[i:i + size] for i in range(0, len(items), size)]

    def run(chunk):
        return [v for item in chunk for v in fn(item)]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return [v for part in pool.map(run, chunks) for v in part]


class _Membership:
    """Memoized membership test; specs and levels are total, so atoms outside the base are fine."""

    def __init__(self, fn):
        self._fn = fn
        self._seen: Dict[Atom, object] = {}

    def __call__(self, a: Atom):
        try:
            return self._seen[a]
        except KeyError:
            value = self._seen[a] = self._fn(a)
            return value


def _notes(slice_: HerbrandSlice, *extra: str) -> List[str]:
    notes = list(extra)
    if slice_.signature.fresh_constant:
        notes.append(f"no constant in the signature; added fresh constant {slice_.signature.fresh_constant}")
    return notes


def _grounded(p: Program, slice_: HerbrandSlice, cap: int, gp: Optional[GroundProgram],
              head_only: bool = False) -> GroundProgram:
    if gp is not None and gp.slice is slice_ and gp.head_only == head_only:
        return gp
    return ground_program(p, slice_, cap, head_only)


def _require_definite(p: Program, check: str):
    if not p.is_definite:
        raise NotDefinite(f"{check} needs a definite program")


def _require_consistent(pair: SpecPair, slice_: HerbrandSlice, limit: Optional[int]):
    report = check_pair_consistency(pair, slice_, limit)
    if not report.passed:
        raise PairInconsistent(report)


# ---------------------------------------------------------------------------
# Definite programs
# ---------------------------------------------------------------------------

def check_correct_definite(p: Program, s_corr: SpecInterpretation, slice_: HerbrandSlice, *,
                           cap: int = config.DEFAULT_CAP, workers: int = 1,
                           report_limit: Optional[int] = config.REPORT_LIMIT,
                           gp: Optional[GroundProgram] = None) -> VcReport:
    """S_corr must be a model: a body inside S_corr forces the head into S_corr."""
    _require_definite(p, "check-correct")
    gp = _grounded(p, slice_, cap, gp)
    corr = s_corr.extension(slice_)

    def condition(inst: GroundInstance):
        clause = inst.clause
        if all(lit.atom in corr for lit in clause.body) and clause.head not in corr:
            return [Violation(ViolationKind.CORR, clause, inst.clause_index,
                              f"body in {s_corr.name}, head {format_atom(clause.head)} is not")]
        return []

    violations = _scan(gp.instances, condition, workers)
    return build_report("check-correct", len(gp.instances), violations, gp.frontier,
                        report_limit, _notes(slice_))


def _covering(gp: GroundProgram, a: Atom, inside) -> List[GroundInstance]:
    return [inst for inst in gp.with_head(a) if all(inside(lit) for lit in inst.clause.body)]


def check_semicomplete_definite(p: Program, s_compl: SpecInterpretation, slice_: HerbrandSlice, *,
                                cap: int = config.DEFAULT_CAP, workers: int = 1,
                                report_limit: Optional[int] = config.REPORT_LIMIT,
                                gp: Optional[GroundProgram] = None) -> VcReport:
    """Every specified atom heads some instance whose body is specified."""
    _require_definite(p, "check-semicomplete")
    gp = _grounded(p, slice_, cap, gp)
    compl = s_compl.extension(slice_)
    required = [a for a in slice_.atoms if a in compl]

    def condition(a: Atom):
        if _covering(gp, a, lambda lit: lit.atom in compl):
            return []
        return [Violation(ViolationKind.COV, a, note=f"no instance with body in {s_compl.name}")]

    violations = _scan(required, condition, workers)
    return build_report("check-semicomplete", len(required), violations, gp.frontier,
                        report_limit, _notes(slice_))


def check_complete_definite(p: Program, s_compl: SpecInterpretation, lm: LevelMapping,
                            slice_: HerbrandSlice, *, cap: int = config.DEFAULT_CAP, workers: int = 1,
                            report_limit: Optional[int] = config.REPORT_LIMIT,
                            gp: Optional[GroundProgram] = None) -> VcReport:
    """Coverage where one covering instance also strictly decreases the level."""
    _require_definite(p, "check-complete")
    gp = _grounded(p, slice_, cap, gp)
    compl = s_compl.extension(slice_)
    level = _Membership(lm.level)
    required = [a for a in slice_.atoms if a in compl]

    def condition(a: Atom):
        covering = _covering(gp, a, lambda lit: lit.atom in compl)
        if not covering:
            return [Violation(ViolationKind.COV, a, note=f"no instance with body in {s_compl.name}")]
        head_level = level(a)
        for inst in covering:
            if all(head_level > level(lit.atom) for lit in inst.clause.body):
                return []
        return [Violation(ViolationKind.LVL, a, note=f"covered, but no covering instance decreases level {head_level}")]

    violations = _scan(required, condition, workers)
    return build_report("check-complete", len(required), violations, gp.frontier,
                        report_limit, _notes(slice_, LEVEL_NOTE))


# ---------------------------------------------------------------------------
# Normal programs
# ---------------------------------------------------------------------------

def _holds_weakly(lit: Literal, corr, compl) -> bool:
    """Literal is possibly true under the pair: positive in S_corr, negative outside S_compl."""
    return lit.atom in corr if lit.positive else lit.atom not in compl


def _holds_strongly(lit: Literal, corr, compl) -> bool:
    """Literal is certainly true under the pair: positive in S_compl, negative outside S_corr."""
    return lit.atom in compl if lit.positive else lit.atom not in corr


def check_correct_normal(p: Program, pair: SpecPair, slice_: HerbrandSlice, *,
                         cap: int = config.DEFAULT_CAP, workers: int = 1,
                         report_limit: Optional[int] = config.REPORT_LIMIT,
                         gp: Optional[GroundProgram] = None) -> VcReport:
    _require_consistent(pair, slice_, report_limit)
    gp = _grounded(p, slice_, cap, gp)
    corr = pair.corr.extension(slice_)
    compl = pair.compl.extension(slice_)

    def c1(inst: GroundInstance):
        clause = inst.clause
        if clause.head in corr or not all(_holds_weakly(lit, corr, compl) for lit in clause.body):
            return []
        return [Violation(ViolationKind.C1, clause, inst.clause_index,
                          f"premise holds under the pair, head {format_atom(clause.head)} not in {pair.corr.name}")]

    def c2(a: Atom):
        if _covering(gp, a, lambda lit: _holds_strongly(lit, corr, compl)):
            return []
        return [Violation(ViolationKind.C2, a, note="no instance whose body is certainly true under the pair")]

    required = [a for a in slice_.atoms if a in compl]
    violations = _scan(gp.instances, c1, workers) + _scan(required, c2, workers)
    return build_report("check-correct-normal", len(gp.instances) + len(required), violations,
                        gp.frontier, report_limit, _notes(slice_))


def check_complete_normal(p: Program, pair: SpecPair, lm: LevelMapping, slice_: HerbrandSlice, *,
                          cap: int = config.DEFAULT_CAP, workers: int = 1,
                          report_limit: Optional[int] = config.REPORT_LIMIT,
                          gp: Optional[GroundProgram] = None) -> VcReport:
    """Positive side for S_compl atoms, negative side for atoms outside S_corr, both level-decreasing."""
    _require_consistent(pair, slice_, report_limit)
    gp = _grounded(p, slice_, cap, gp)
    corr = pair.corr.extension(slice_)
    compl = pair.compl.extension(slice_)
    level = _Membership(lm.level)

    def k1(a: Atom):
        covering = _covering(gp, a, lambda lit: _holds_strongly(lit, corr, compl))
        if not covering:
            return [Violation(ViolationKind.K1, a, note="no instance whose body is certainly true under the pair")]
        head_level = level(a)
        if any(all(head_level > level(lit.atom) for lit in inst.clause.body) for inst in covering):
            return []
        return [Violation(ViolationKind.LVL, a, note=f"K1: covered, but no covering instance decreases level {head_level}")]

    def kills(lit: Literal) -> bool:
        return lit.atom not in corr if lit.positive else lit.atom in compl

    def k2(a: Atom):
        head_level = level(a)
        found = []
        for inst in gp.with_head(a):
            body = inst.clause.body
            if any(kills(lit) and level(lit.atom) < head_level for lit in body):
                continue
            if any(kills(lit) for lit in body):
                found.append(Violation(ViolationKind.LVL, inst.clause, inst.clause_index,
                                       f"K2: refuting literal does not decrease level {head_level}"))
            else:
                found.append(Violation(ViolationKind.K2, inst.clause, inst.clause_index,
                                       f"{format_atom(a)} is outside {pair.corr.name} but no literal refutes it"))
        return found

    required = [a for a in slice_.atoms if a in compl]
    refuted = [a for a in slice_.atoms if a not in corr]
    violations = _scan(required, k1, workers) + _scan(refuted, k2, workers)
    return build_report("check-complete-normal", len(required) + len(refuted), violations,
                        gp.frontier, report_limit, _notes(slice_, LEVEL_NOTE))


def _body_only_variables(clause) -> List[str]:
    head = set(variables(clause.head))
    return [name for name in variables(clause.body) if name not in head]


def _clause_list(indices) -> str:
    return ", ".join(str(i) for i in sorted(indices))


def check_terminate(p: Program, pair: SpecPair, lm: LevelMapping, slice_: HerbrandSlice, *,
                    cap: int = config.DEFAULT_CAP, workers: int = 1,
                    report_limit: Optional[int] = config.REPORT_LIMIT,
                    gp: Optional[GroundProgram] = None) -> VcReport:
    """Acceptability under leftmost selection.

    Ranges over instances whose head lies in the base; body atoms may fall
    outside it, where the specifications and the level mapping are still
    evaluated directly. The verdict only carries over to the whole base when
    every reached body atom stays inside the slice and no body-only variable
    can take deeper values; otherwise the report is marked unstable.
    """
    _require_consistent(pair, slice_, report_limit)
    gp = _grounded(p, slice_, cap, gp, head_only=True)
    in_corr = _Membership(pair.corr.contains)
    in_compl = _Membership(pair.compl.contains)
    level = _Membership(lm.level)
    escaped = set()

    def condition(inst: GroundInstance):
        clause = inst.clause
        head_level = level(clause.head)
        found = []
        for position, lit in enumerate(clause.body, 1):
            if lit.atom not in slice_:
                escaped.add(inst.clause_index)
            body_level = level(lit.atom)
            if head_level <= body_level:
                found.append(Violation(ViolationKind.TERM, clause, inst.clause_index,
                                       f"literal {position}: level {body_level} is not below head level {head_level}",
                                       position))
            holds = in_corr(lit.atom) if lit.positive else not in_compl(lit.atom)
            if not holds:
                break
        return found

    violations = _scan(gp.instances, condition, workers)
    notes = _notes(slice_)
    open_clauses = []
    if any(arity > 0 for _, arity in slice_.signature.functions):
        open_clauses = [i for i, c in enumerate(p.clauses, 1) if _body_only_variables(c)]
    if open_clauses:
        notes.append(f"body-only variables of clause {_clause_list(open_clauses)} were only tried "
                     f"with terms of depth <= {slice_.depth}")
    if escaped:
        notes.append(f"clause {_clause_list(escaped)} reaches body atoms outside the base, "
                     f"whose own clauses are not checked")
    stable = not open_clauses and not escaped
    if not stable:
        log.info("check-terminate verdict at depth %d does not cover the whole base", slice_.depth)
    return build_report("check-terminate", len(gp.instances), violations, gp.frontier,
                        report_limit, notes, stable)
