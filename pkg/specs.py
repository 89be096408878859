"""Specification mini-language.

A specification is a decidable interpretation: a ground atom belongs to it
when some rule pattern matches the atom and the rule's guard holds under the
match. Rules combine by disjunction; atoms no rule matches are not members.
Level mappings pick the first matching rule instead.
"""
from __future__ import annotations

import logging
import operator
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from reports import VcReport, Violation, ViolationKind, build_report
from terms import (CONS, NIL, SUCC, Atom, HerbrandSlice, Struct, Substitution, Term, Var,
                   apply_subst, format_atom, format_term, make_list, match, numeral_value, variables)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Term measures
# ---------------------------------------------------------------------------

def list_length(t: Term) -> int:
    """Cons cells along the tail spine, whatever ends it."""
    n = 0
    while isinstance(t, Struct) and t.functor == CONS and len(t.args) == 2:
        n += 1
        t = t.args[1]
    return n


def list_items(t: Term) -> Optional[List[Term]]:
    items = []
    while isinstance(t, Struct) and t.functor == CONS and len(t.args) == 2:
        items.append(t.args[0])
        t = t.args[1]
    if isinstance(t, Struct) and t.functor == NIL and not t.args:
        return items
    return None


def nat_value(t: Term) -> int:
    """Applications of s/1 along the first-argument spine."""
    n = 0
    while isinstance(t, Struct) and t.functor == SUCC and len(t.args) == 1:
        n += 1
        t = t.args[0]
    return n


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


# ---------------------------------------------------------------------------
# Natural-number expressions
# ---------------------------------------------------------------------------

class NatExpr:
    def evaluate(self, s: Substitution) -> int:
        raise NotImplementedError

    def variables(self) -> List[str]:
        return []


@dataclass(frozen=True)
class Const(NatExpr):
    value: int

    def evaluate(self, s):
        return self.value

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Len(NatExpr):
    term: Term

    def evaluate(self, s):
        return list_length(apply_subst(s, self.term))

    def variables(self):
        return variables(self.term)

    def __str__(self):
        return f"len({format_term(self.term)})"


@dataclass(frozen=True)
class NatVal(NatExpr):
    term: Term

    def evaluate(self, s):
        return nat_value(apply_subst(s, self.term))

    def variables(self):
        return variables(self.term)

    def __str__(self):
        return f"natval({format_term(self.term)})"


@dataclass(frozen=True)
class Size(NatExpr):
    term: Term

    def evaluate(self, s):
        return term_size(apply_subst(s, self.term))

    def variables(self):
        return variables(self.term)

    def __str__(self):
        return f"size({format_term(self.term)})"


@dataclass(frozen=True)
class Plus(NatExpr):
    left: NatExpr
    right: NatExpr

    def evaluate(self, s):
        return self.left.evaluate(s) + self.right.evaluate(s)

    def variables(self):
        return self.left.variables() + self.right.variables()

    def __str__(self):
        return f"{self.left} + {self.right}"


@dataclass(frozen=True)
class Max(NatExpr):
    left: NatExpr
    right: NatExpr

    def evaluate(self, s):
        return max(self.left.evaluate(s), self.right.evaluate(s))

    def variables(self):
        return self.left.variables() + self.right.variables()

    def __str__(self):
        return f"max({self.left},{self.right})"


# ---------------------------------------------------------------------------
# Guards
# ---------------------------------------------------------------------------

class GuardExpr:
    def evaluate(self, s: Substitution) -> bool:
        raise NotImplementedError

    def variables(self) -> List[str]:
        return []


@dataclass(frozen=True)
class TrueGuard(GuardExpr):
    def evaluate(self, s):
        return True

    def __str__(self):
        return "true"


@dataclass(frozen=True)
class FalseGuard(GuardExpr):
    def evaluate(self, s):
        return False

    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Eq(GuardExpr):
    left: Term
    right: Term

    def evaluate(self, s):
        return apply_subst(s, self.left) == apply_subst(s, self.right)

    def variables(self):
        return variables((self.left, self.right))

    def __str__(self):
        return f"{format_term(self.left)} == {format_term(self.right)}"


@dataclass(frozen=True)
class Neq(GuardExpr):
    left: Term
    right: Term

    def evaluate(self, s):
        return apply_subst(s, self.left) != apply_subst(s, self.right)

    def variables(self):
        return variables((self.left, self.right))

    def __str__(self):
        return f"{format_term(self.left)} \\== {format_term(self.right)}"


@dataclass(frozen=True)
class IsList(GuardExpr):
    term: Term

    def evaluate(self, s):
        return list_items(apply_subst(s, self.term)) is not None

    def variables(self):
        return variables(self.term)

    def __str__(self):
        return f"islist({format_term(self.term)})"


@dataclass(frozen=True)
class IsNat(GuardExpr):
    term: Term

    def evaluate(self, s):
        return numeral_value(apply_subst(s, self.term)) is not None

    def variables(self):
        return variables(self.term)

    def __str__(self):
        return f"isnat({format_term(self.term)})"


@dataclass(frozen=True)
class Concat(GuardExpr):
    """c is the list a with b as its tail; a must be a proper list."""
    a: Term
    b: Term
    c: Term

    def evaluate(self, s):
        items = list_items(apply_subst(s, self.a))
        if items is None:
            return False
        return make_list(items, apply_subst(s, self.b)) == apply_subst(s, self.c)

    def variables(self):
        return variables((self.a, self.b, self.c))

    def __str__(self):
        return f"concat({format_term(self.a)},{format_term(self.b)},{format_term(self.c)})"


_COMPARISONS = {
    "==": operator.eq,
    "=<": operator.le,
    "<": operator.lt,
    ">": operator.gt,
    ">=": operator.ge,
}


@dataclass(frozen=True)
class Cmp(GuardExpr):
    left: NatExpr
    op: str
    right: NatExpr

    def __post_init__(self):
        if self.op not in _COMPARISONS:
            raise ValueError(f"unknown comparison {self.op}")

    def evaluate(self, s):
        return _COMPARISONS[self.op](self.left.evaluate(s), self.right.evaluate(s))

    def variables(self):
        return self.left.variables() + self.right.variables()

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class And(GuardExpr):
    left: GuardExpr
    right: GuardExpr

    def evaluate(self, s):
        return self.left.evaluate(s) and self.right.evaluate(s)

    def variables(self):
        return self.left.variables() + self.right.variables()

    def __str__(self):
        return f"({self.left}, {self.right})"


@dataclass(frozen=True)
class Or(GuardExpr):
    left: GuardExpr
    right: GuardExpr

    def evaluate(self, s):
        return self.left.evaluate(s) or self.right.evaluate(s)

    def variables(self):
        return self.left.variables() + self.right.variables()

    def __str__(self):
        return f"({self.left} ; {self.right})"


@dataclass(frozen=True)
class Not(GuardExpr):
    guard: GuardExpr

    def evaluate(self, s):
        return not self.guard.evaluate(s)

    def variables(self):
        return self.guard.variables()

    def __str__(self):
        return f"\\+ {self.guard}"


# ---------------------------------------------------------------------------
# Specifications, pairs and level mappings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpecRule:
    pattern: Atom
    guard: GuardExpr = TrueGuard()

    def __str__(self):
        return f"{format_atom(self.pattern)} := {self.guard}."


def _index_by_predicate(rules) -> Dict[Tuple[str, int], tuple]:
    index: Dict[Tuple[str, int], list] = {}
    for rule in rules:
        index.setdefault(rule.pattern.indicator, []).append(rule)
    return {k: tuple(v) for k, v in index.items()}


@dataclass(frozen=True)
class SpecInterpretation:
    name: str = "spec"
    rules: Tuple[SpecRule, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", _index_by_predicate(self.rules))

    @classmethod
    def from_atoms(cls, name: str, atoms: Iterable[Atom]) -> "SpecInterpretation":
        """Extensional specification: exactly the given ground atoms."""
        return cls(name, tuple(SpecRule(a) for a in atoms))

    def contains(self, a: Atom) -> bool:
        for rule in self._index.get(a.indicator, ()):
            s = match(rule.pattern, a)
            if s is not None and rule.guard.evaluate(s):
                return True
        return False

    def extension(self, slice_: HerbrandSlice) -> frozenset:
        """S ∩ base."""
        return frozenset(a for a in slice_.atoms if self.contains(a))

    def patterns(self) -> Tuple[Atom, ...]:
        return tuple(rule.pattern for rule in self.rules)

    def __str__(self):
        return "".join(str(rule) + "\n" for rule in self.rules)


@dataclass(frozen=True)
class SpecPair:
    corr: SpecInterpretation
    compl: SpecInterpretation

    def patterns(self) -> Tuple[Atom, ...]:
        return self.corr.patterns() + self.compl.patterns()


@dataclass(frozen=True)
class LevelRule:
    pattern: Atom
    expr: NatExpr

    def __str__(self):
        return f"level {format_atom(self.pattern)} = {self.expr}."


@dataclass(frozen=True)
class LevelMapping:
    rules: Tuple[LevelRule, ...] = ()
    default: NatExpr = Const(0)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", _index_by_predicate(self.rules))

    def level(self, a: Atom) -> int:
        for rule in self._index.get(a.indicator, ()):
            s = match(rule.pattern, a)
            if s is not None:
                return rule.expr.evaluate(s)
        return self.default.evaluate({})

    def patterns(self) -> Tuple[Atom, ...]:
        return tuple(rule.pattern for rule in self.rules)


class Classification(Enum):
    REQUIRED_TRUE = "RequiredTrue"
    DONT_CARE = "DontCare"
    REQUIRED_FALSE = "RequiredFalse"


def eval_spec(spec: SpecInterpretation, a: Atom) -> bool:
    return spec.contains(a)


def eval_level(lm: LevelMapping, a: Atom) -> int:
    return lm.level(a)


def classify(pair: SpecPair, a: Atom) -> Classification:
    if pair.compl.contains(a):
        return Classification.REQUIRED_TRUE
    if not pair.corr.contains(a):
        return Classification.REQUIRED_FALSE
    return Classification.DONT_CARE


def check_pair_consistency(pair: SpecPair, slice_: HerbrandSlice, limit: Optional[int] = 20) -> VcReport:
    """Every base atom in S_compl must also be in S_corr."""
    violations = [
        Violation(ViolationKind.PAIR, a, note="in S_compl but not in S_corr")
        for a in slice_.atoms
        if pair.compl.contains(a) and not pair.corr.contains(a)
    ]
    return build_report("check-pair", len(slice_.atoms), violations, 0, limit)
