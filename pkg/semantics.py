"""Ground semantics oracles over a Herbrand slice.

``tp_lfp`` gives the least Herbrand model of a definite program and
``phi_fixpoint`` the 3-valued completion semantics (iterated Fitting
operator), both restricted to the ground instances that stay inside the
slice's base.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

from errors import NotDefinite, ResourceExceeded
from reports import VcReport, Violation, ViolationKind, build_report
from specs import SpecPair
from terms import Atom, Clause, HerbrandSlice, Literal, Program, bounded_instances

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroundInstance:
    clause_index: int  # 1-based position of the source clause
    clause: Clause


@dataclass(frozen=True)
class GroundProgram:
    instances: Tuple[GroundInstance, ...]
    slice: HerbrandSlice
    frontier: int = 0
    head_only: bool = False
    _by_head: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        by_head: Dict[Atom, list] = {}
        for inst in self.instances:
            by_head.setdefault(inst.clause.head, []).append(inst)
        object.__setattr__(self, "_by_head", {k: tuple(v) for k, v in by_head.items()})

    @property
    def clauses(self) -> Tuple[Clause, ...]:
        return tuple(inst.clause for inst in self.instances)

    @property
    def is_definite(self) -> bool:
        return all(inst.clause.is_definite for inst in self.instances)

    def with_head(self, a: Atom) -> Tuple[GroundInstance, ...]:
        return self._by_head.get(a, ())


@dataclass(frozen=True)
class TwoValuedInterp:
    true_atoms: frozenset = frozenset()


@dataclass(frozen=True)
class ThreeValuedInterp:
    true_atoms: frozenset = frozenset()
    false_atoms: frozenset = frozenset()

    def status(self, a: Atom) -> str:
        if a in self.true_atoms:
            return "T"
        if a in self.false_atoms:
            return "F"
        return "U"

    def is_consistent(self) -> bool:
        return not (self.true_atoms & self.false_atoms)

    def leq(self, other: "ThreeValuedInterp") -> bool:
        """Knowledge order."""
        return self.true_atoms <= other.true_atoms and self.false_atoms <= other.false_atoms


def ground_program(p: Program, slice_: HerbrandSlice, cap: int = 200000, head_only: bool = False) -> GroundProgram:
    """Instances of every clause inside the base; the rest are counted as frontier.

    With ``head_only`` only the head has to lie in the base.
    """
    instances = []
    frontier = 0
    for index, clause in enumerate(p.clauses, 1):
        kept, skipped = bounded_instances(clause, slice_, cap, head_only)
        frontier += skipped
        instances.extend(GroundInstance(index, c) for c in kept)
        if len(instances) > cap:
            raise ResourceExceeded(f"ground program exceeds {cap} instances")
    log.debug("ground program: %d instances, %d frontier", len(instances), frontier)
    return GroundProgram(tuple(instances), slice_, frontier, head_only)


def _require_definite(gp: GroundProgram):
    if not gp.is_definite:
        raise NotDefinite("T_P is defined for definite programs only")


def tp_step(gp: GroundProgram, i: TwoValuedInterp) -> TwoValuedInterp:
    _require_definite(gp)
    true = i.true_atoms
    return TwoValuedInterp(frozenset(
        inst.clause.head for inst in gp.instances
        if all(lit.atom in true for lit in inst.clause.body)
    ))


def tp_lfp(gp: GroundProgram) -> Tuple[TwoValuedInterp, int]:
    _require_definite(gp)
    current = TwoValuedInterp()
    iterations = 0
    while True:
        following = tp_step(gp, current)
        if following == current:
            break
        current = following
        iterations += 1
    assert iterations <= len(gp.slice.atoms), "T_P iteration exceeded |base|"
    return current, iterations


def _literal_true(lit: Literal, i: ThreeValuedInterp) -> bool:
    if lit.positive:
        return lit.atom in i.true_atoms
    return lit.atom in i.false_atoms


def _literal_false(lit: Literal, i: ThreeValuedInterp) -> bool:
    if lit.positive:
        return lit.atom in i.false_atoms
    return lit.atom in i.true_atoms


def phi_step(gp: GroundProgram, i: ThreeValuedInterp) -> ThreeValuedInterp:
    true = frozenset(
        inst.clause.head for inst in gp.instances
        if all(_literal_true(lit, i) for lit in inst.clause.body)
    )
    # atoms without instances are false: empty disjunction
    false = frozenset(
        a for a in gp.slice.atoms
        if all(any(_literal_false(lit, i) for lit in inst.clause.body) for inst in gp.with_head(a))
    )
    return ThreeValuedInterp(true, false)


def phi_fixpoint(gp: GroundProgram) -> Tuple[ThreeValuedInterp, int]:
    current = ThreeValuedInterp()
    iterations = 0
    limit = 2 * len(gp.slice.atoms)
    while True:
        following = phi_step(gp, current)
        if following == current:
            break
        current = following
        iterations += 1
        assert iterations <= limit, "Φ iteration exceeded 2·|base|"
    assert current.is_consistent()
    log.debug("Φ fixpoint after %d steps: %d true, %d false", iterations,
              len(current.true_atoms), len(current.false_atoms))
    return current, iterations


def oracle_check(pair: SpecPair, sem: ThreeValuedInterp, slice_: HerbrandSlice,
                 limit: Optional[int] = 20) -> VcReport:
    """Compare a computed semantics with the bracketing S_compl ⊆ semantics ⊆ S_corr."""
    corr = pair.corr.extension(slice_)
    compl = pair.compl.extension(slice_)
    violations = []
    failed = {kind: 0 for kind in (ViolationKind.MISSING, ViolationKind.EXCESS,
                                   ViolationKind.REFUTED, ViolationKind.UNREFUTED)}

    def flag(kind, a, note):
        failed[kind] += 1
        violations.append(Violation(kind, a, note=note))

    for a in slice_.atoms:
        status = sem.status(a)
        if a in compl and status != "T":
            flag(ViolationKind.MISSING, a, "in S_compl but not true")
        if status == "T" and a not in corr:
            flag(ViolationKind.EXCESS, a, "true but not in S_corr")
        if status == "F" and a in compl:
            flag(ViolationKind.REFUTED, a, "false but in S_compl")
        if a not in corr and status != "F":
            flag(ViolationKind.UNREFUTED, a, "outside S_corr but not false")
    notes = [
        f"S_compl ⊆ true: {'pass' if not failed[ViolationKind.MISSING] else 'fail'}",
        f"true ⊆ S_corr: {'pass' if not failed[ViolationKind.EXCESS] else 'fail'}",
        f"false ∩ S_compl = ∅: {'pass' if not failed[ViolationKind.REFUTED] else 'fail'}",
        f"base ∖ S_corr ⊆ false: {'pass' if not failed[ViolationKind.UNREFUTED] else 'fail'}",
    ]
    return build_report("cross-check", len(slice_.atoms), violations, 0, limit, notes)


def dump_semantics(sem: ThreeValuedInterp, atoms: Iterable[Atom]) -> str:
    """One ``T ``/``F ``/``U `` prefixed atom per line, in canonical order."""
    from terms import format_atom
    return "".join(f"{sem.status(a)} {format_atom(a)}\n" for a in atoms)
