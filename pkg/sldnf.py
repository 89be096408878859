"""Depth-first LDNF interpreter with a shared step budget.

Leftmost selection; a negative literal is only selected when ground, and is
decided by a subsidiary search that stops at its first answer. Every node
visited in any tree costs one step. Exhausting the budget, or nesting
negations deeper than the configured limit, poisons the whole run.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import config
from terms import (Atom, HerbrandSlice, Literal, Program, Term, Var, apply_subst, format_literal,
                   is_ground, rename, resolve, undo_to, unify_in_place, variables)

log = logging.getLogger(__name__)


class OutcomeKind(Enum):
    ANSWERS = "answers"
    FLOUNDERED = "floundered"
    BOUND_EXCEEDED = "bound-exceeded"


@dataclass(frozen=True)
class SolveOutcome:
    kind: OutcomeKind
    query: Tuple[Literal, ...]
    # one tuple of terms per answer, aligned with query_variables
    answers: frozenset = frozenset()
    query_variables: Tuple[str, ...] = ()
    floundered_goal: str = ""
    steps: int = 0

    @property
    def succeeded(self) -> bool:
        return self.kind is OutcomeKind.ANSWERS and bool(self.answers)

    @property
    def failed(self) -> bool:
        """Finite failure: the tree was fully explored without an answer."""
        return self.kind is OutcomeKind.ANSWERS and not self.answers

    def answer_substitutions(self) -> List[Dict[str, Term]]:
        return [dict(zip(self.query_variables, answer)) for answer in self.answers]

    def ground_answers(self, slice_: HerbrandSlice) -> frozenset:
        """Query instances obtained by grounding every answer over the slice's universe."""
        grounded = set()
        for s in self.answer_substitutions():
            instance = tuple(apply_subst(s, lit) for lit in self.query)
            rest = variables(instance)
            for combo in itertools.product(slice_.universe, repeat=len(rest)):
                grounded.add(tuple(apply_subst(dict(zip(rest, combo)), lit) for lit in instance))
        return frozenset(grounded)


class _Abort(Exception):
    def __init__(self, kind: OutcomeKind, goal: str = ""):
        super().__init__(kind.value)
        self.kind = kind
        self.goal = goal


class LdnfSolver:
    def __init__(self, program: Program, step_bound: int, max_nesting: Optional[int] = None):
        if step_bound <= 0:
            raise ValueError("step bound must be > 0")
        self.step_bound = step_bound
        self.max_nesting = config.MAX_NEGATION_NESTING if max_nesting is None else max_nesting
        self.steps = 0
        self._renamed = 0
        self._clauses: Dict[Tuple[str, int], list] = {}
        for clause in program.clauses:
            self._clauses.setdefault(clause.head.indicator, []).append(clause)

    def _tick(self):
        self.steps += 1
        if self.steps > self.step_bound:
            raise _Abort(OutcomeKind.BOUND_EXCEEDED)

    def _fresh(self, clause):
        self._renamed += 1
        return rename(clause, f"#{self._renamed}")

    def _search(self, goals: Tuple[Literal, ...], nesting: int, first_only: bool,
                names: Sequence[str] = ()) -> List[tuple]:
        """Answers as tuples of resolved terms for ``names``.

        One binding store per search, undone to each entry's trail mark on pop.
        Entries are ``(mark, goals, None)`` for a node or ``(mark, goals, clause)``
        for resolving ``goals[0]`` with ``clause``.
        """
        s: Dict[str, Term] = {}
        trail: List[str] = []
        answers = []
        stack = [(0, goals, None)]
        while stack:
            mark, goals, clause = stack.pop()
            undo_to(s, trail, mark)
            if clause is not None:
                clause = self._fresh(clause)
                if not unify_in_place(goals[0].atom, clause.head, s, trail):
                    continue
                goals = clause.body + goals[1:]
            self._tick()
            if not goals:
                answers.append(tuple(resolve(Var(name), s) for name in names))
                if first_only:
                    return answers
                continue
            selected, rest = goals[0], goals[1:]
            mark = len(trail)
            if selected.positive:
                candidates = self._clauses.get(selected.atom.indicator, ())
                # first clause on top
                stack.extend((mark, goals, c) for c in reversed(candidates))
                continue
            a = resolve(selected.atom, s)
            if not is_ground(a):
                state = ", ".join(format_literal(resolve(lit, s)) for lit in goals)
                raise _Abort(OutcomeKind.FLOUNDERED, state)
            if nesting + 1 > self.max_nesting:
                raise _Abort(OutcomeKind.BOUND_EXCEEDED)
            if not self._search((Literal(a),), nesting + 1, True):
                stack.append((mark, rest, None))
        return answers

    def solve(self, query: Sequence[Literal]) -> SolveOutcome:
        query = tuple(query)
        names = tuple(variables(query))
        try:
            found = self._search(query, 0, False, names)
        except _Abort as e:
            log.info("query %s: %s after %d steps", _format_query(query), e.kind.value, self.steps)
            return SolveOutcome(e.kind, query, query_variables=names, floundered_goal=e.goal, steps=self.steps)
        answers = frozenset(found)
        log.debug("query %s: %d answers in %d steps", _format_query(query), len(answers), self.steps)
        return SolveOutcome(OutcomeKind.ANSWERS, query, answers, names, steps=self.steps)


def _format_query(query) -> str:
    return ", ".join(format_literal(lit) for lit in query)


def sldnf_solve(p: Program, query: Sequence[Literal], step_bound: int = config.DEFAULT_STEP_BOUND,
                max_nesting: Optional[int] = None) -> SolveOutcome:
    return LdnfSolver(p, step_bound, max_nesting).solve(query)


def solve_atom(p: Program, a: Atom, step_bound: int = config.DEFAULT_STEP_BOUND) -> SolveOutcome:
    return sldnf_solve(p, (Literal(a),), step_bound)
