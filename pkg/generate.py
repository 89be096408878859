"""Seeded random programs, specifications and level mappings for property suites."""
import logging
import random
from typing import List, Optional, Sequence, Union

from specs import Const, LevelMapping, LevelRule, NatExpr, NatVal, Plus, Size, SpecInterpretation, SpecPair
from terms import Atom, Clause, HerbrandSlice, Literal, Polarity, Program, Signature, Struct, Term, Var

log = logging.getLogger(__name__)

VARIABLE_NAMES = ("X", "Y", "Z")

Seed = Union[int, random.Random]


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _term(rng: random.Random, constants: Sequence[str], functions: Sequence[tuple], depth: int,
          variable_rate: float) -> Term:
    if rng.random() < variable_rate:
        return Var(rng.choice(VARIABLE_NAMES))
    if depth > 0 and functions and rng.random() < 0.3:
        name, arity = rng.choice(functions)
        return Struct(name, tuple(_term(rng, constants, functions, depth - 1, variable_rate)
                                  for _ in range(arity)))
    return Struct(rng.choice(constants))


def _atom(rng, sig: Signature, constants, functions, variable_rate: float) -> Atom:
    name, arity = rng.choice(sorted(sig.predicates))
    return Atom(name, tuple(_term(rng, constants, functions, 1, variable_rate) for _ in range(arity)))


def random_program(seed: Seed, sig: Signature, clause_count: int, max_body_len: int,
                   negation_rate: float, variable_rate: float = 0.5) -> Program:
    """Same seed and arguments give the same program."""
    constants = sig.constants
    if not constants or not sig.predicates:
        raise ValueError("signature needs at least one constant and one predicate")
    functions = sorted(f for f in sig.functions if f[1] > 0)
    rng = _rng(seed)
    clauses = []
    for _ in range(clause_count):
        head = _atom(rng, sig, constants, functions, variable_rate)
        body = []
        for _ in range(rng.randint(0, max_body_len)):
            polarity = Polarity.NEGATIVE if rng.random() < negation_rate else Polarity.POSITIVE
            body.append(Literal(_atom(rng, sig, constants, functions, variable_rate), polarity))
        clauses.append(Clause(head, tuple(body)))
    return Program(tuple(clauses))


def random_spec(seed: Seed, slice_: HerbrandSlice, density: float = 0.5, name: str = "spec",
                within: Optional[frozenset] = None) -> SpecInterpretation:
    """Extensional specification: a random subset of the base (of ``within`` if given)."""
    rng = _rng(seed)
    pool: List[Atom] = [a for a in slice_.atoms if within is None or a in within]
    return SpecInterpretation.from_atoms(name, [a for a in pool if rng.random() < density])


def random_spec_pair(seed: Seed, slice_: HerbrandSlice, density: float = 0.6) -> SpecPair:
    """A consistent pair: S_compl is drawn from S_corr's atoms."""
    rng = _rng(seed)
    corr = random_spec(rng, slice_, density, "S_corr")
    compl = random_spec(rng, slice_, density, "S_compl", within=corr.extension(slice_))
    return SpecPair(corr, compl)


def _level_expr(rng: random.Random, names: Sequence[str], max_level: int) -> NatExpr:
    choice = rng.randrange(4) if names else 0
    if choice == 0:
        return Const(rng.randint(0, max_level))
    var = Var(rng.choice(names))
    if choice == 1:
        return Size(var)
    if choice == 2:
        return NatVal(var)
    return Plus(Size(var), Const(rng.randint(0, max_level)))


def random_levels(seed: Seed, sig: Signature, max_level: int = 3) -> LevelMapping:
    """One rule per predicate, built from size/natval measures of an argument."""
    rng = _rng(seed)
    rules = []
    for name, arity in sorted(sig.predicates):
        names = [f"A{i}" for i in range(arity)]
        pattern = Atom(name, tuple(Var(n) for n in names))
        rules.append(LevelRule(pattern, _level_expr(rng, names, max_level)))
    return LevelMapping(tuple(rules), Const(0))
