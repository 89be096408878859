"""Abstract syntax of the clause language, unification and bounded grounding.

Terms, atoms, literals and clauses are immutable. A Herbrand slice is the
finite part of the Herbrand universe/base whose terms have depth at most
``depth`` (constants have depth 0, ``f(t1..tn)`` has 1 + max depth(ti)).
"""
from __future__ import annotations

import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from errors import ResourceExceeded

log = logging.getLogger(__name__)

NIL = "[]"
CONS = "."
ZERO = "0"
SUCC = "s"
FRESH_CONSTANT = "c0"
# prefix of anonymous variables; no source variable can start with it
ANONYMOUS = "_#"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Struct:
    """Compound term; a constant is a Struct with no arguments."""
    functor: str
    args: Tuple["Term", ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.functor:
            raise ValueError("functor names must be nonempty")
        object.__setattr__(self, "_hash", hash((self.functor, self.args)))

    def __hash__(self):
        return self._hash

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self):
        return format_term(self)


Term = Union[Var, Struct]
Substitution = Dict[str, Term]


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: Tuple[Term, ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.predicate, self.args)))

    def __hash__(self):
        return self._hash

    @property
    def indicator(self) -> Tuple[str, int]:
        return (self.predicate, len(self.args))

    def __str__(self):
        return format_atom(self)


class Polarity(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"


@dataclass(frozen=True)
class Literal:
    atom: Atom
    polarity: Polarity = Polarity.POSITIVE

    @property
    def positive(self) -> bool:
        return self.polarity is Polarity.POSITIVE

    def __str__(self):
        return format_literal(self)


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: Tuple[Literal, ...] = ()

    def atoms(self) -> Tuple[Atom, ...]:
        return (self.head,) + tuple(lit.atom for lit in self.body)

    @property
    def is_definite(self) -> bool:
        return all(lit.positive for lit in self.body)

    def __str__(self):
        return format_clause(self)


class ProgramKind(Enum):
    DEFINITE = "definite"
    NORMAL = "normal"


@dataclass(frozen=True)
class Program:
    clauses: Tuple[Clause, ...] = ()

    @property
    def kind(self) -> ProgramKind:
        if all(c.is_definite for c in self.clauses):
            return ProgramKind.DEFINITE
        return ProgramKind.NORMAL

    @property
    def is_definite(self) -> bool:
        return self.kind is ProgramKind.DEFINITE

    def __str__(self):
        return format_program(self)


@dataclass(frozen=True)
class Signature:
    functions: frozenset
    predicates: frozenset
    fresh_constant: Optional[str] = None

    @property
    def constants(self) -> List[str]:
        return sorted(name for name, arity in self.functions if arity == 0)


@dataclass(frozen=True)
class HerbrandSlice:
    signature: Signature
    depth: int
    # layers[k] holds every universe term of depth <= k, in canonical order
    layers: Tuple[Tuple[Struct, ...], ...]
    atoms: Tuple[Atom, ...]
    base: frozenset

    @property
    def universe(self) -> Tuple[Struct, ...]:
        return self.layers[self.depth]

    def __contains__(self, atom: Atom) -> bool:
        return atom in self.base


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------

def constant(name: str) -> Struct:
    return Struct(name)


def numeral(k: int, tail: Optional[Term] = None) -> Term:
    """s^k(0), or s^k(tail) when a tail is given."""
    term = Struct(ZERO) if tail is None else tail
    for _ in range(k):
        term = Struct(SUCC, (term,))
    return term


def make_list(items: Sequence[Term], tail: Optional[Term] = None) -> Term:
    term = Struct(NIL) if tail is None else tail
    for item in reversed(items):
        term = Struct(CONS, (item, term))
    return term


def atom(predicate: str, *args: Term) -> Atom:
    return Atom(predicate, tuple(args))


# ---------------------------------------------------------------------------
# Inspection and canonical order
# ---------------------------------------------------------------------------

def term_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def atom_depth(a: Atom) -> int:
    return max((term_depth(t) for t in a.args), default=0)


def is_ground(x) -> bool:
    if isinstance(x, Var):
        return False
    if isinstance(x, Struct):
        return all(is_ground(a) for a in x.args)
    if isinstance(x, Atom):
        return all(is_ground(a) for a in x.args)
    if isinstance(x, Literal):
        return is_ground(x.atom)
    if isinstance(x, Clause):
        return all(is_ground(a) for a in x.atoms())
    raise TypeError(f"not a term, atom, literal or clause: {x!r}")


def variables(x) -> List[str]:
    """Variable names in first-occurrence order."""
    seen: Dict[str, None] = {}
    _collect_vars(x, seen)
    return list(seen)


def _collect_vars(x, seen):
    if isinstance(x, Var):
        seen.setdefault(x.name, None)
    elif isinstance(x, (Struct, Atom)):
        for a in x.args:
            _collect_vars(a, seen)
    elif isinstance(x, Literal):
        _collect_vars(x.atom, seen)
    elif isinstance(x, Clause):
        for a in x.atoms():
            _collect_vars(a, seen)
    elif isinstance(x, (tuple, list)):
        for item in x:
            _collect_vars(item, seen)


def term_key(t: Term) -> tuple:
    # depth first, then functor name, then arity, then arguments left to right
    if isinstance(t, Var):
        return (0, 0, t.name)
    return (term_depth(t), 1, t.functor, len(t.args), tuple(term_key(a) for a in t.args))


def atom_key(a: Atom) -> tuple:
    return (a.predicate, len(a.args), tuple(term_key(t) for t in a.args))


def clause_key(c: Clause) -> tuple:
    return (atom_key(c.head), tuple((lit.positive, atom_key(lit.atom)) for lit in c.body))


def instance_key(x) -> tuple:
    """Canonical key for violation instances (atoms sort before clauses with the same head)."""
    if isinstance(x, Atom):
        return (atom_key(x), 0, ())
    return (atom_key(x.head), 1, clause_key(x)[1])


# ---------------------------------------------------------------------------
# Pretty printing (parse(format(p)) == p)
# ---------------------------------------------------------------------------

_PLAIN_NAME = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def format_name(name: str) -> str:
    if _PLAIN_NAME.match(name) or name == NIL or name.isdigit():
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


def numeral_value(t: Term) -> Optional[int]:
    k = 0
    while isinstance(t, Struct) and t.functor == SUCC and len(t.args) == 1:
        t = t.args[0]
        k += 1
    if isinstance(t, Struct) and t.functor == ZERO and not t.args:
        return k
    return None


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return "_" if t.name.startswith(ANONYMOUS) else t.name
    k = numeral_value(t)
    if k is not None:
        return str(k)
    if t.functor == CONS and len(t.args) == 2:
        items = []
        while isinstance(t, Struct) and t.functor == CONS and len(t.args) == 2:
            items.append(format_term(t.args[0]))
            t = t.args[1]
        if isinstance(t, Struct) and t.functor == NIL and not t.args:
            return "[" + ",".join(items) + "]"
        return "[" + ",".join(items) + "|" + format_term(t) + "]"
    if not t.args:
        return format_name(t.functor)
    return format_name(t.functor) + "(" + ",".join(format_term(a) for a in t.args) + ")"


def format_atom(a: Atom) -> str:
    if not a.args:
        return format_name(a.predicate)
    return format_name(a.predicate) + "(" + ",".join(format_term(t) for t in a.args) + ")"


def format_literal(lit: Literal) -> str:
    text = format_atom(lit.atom)
    return text if lit.positive else "\\+ " + text


def format_clause(c: Clause) -> str:
    if not c.body:
        return format_atom(c.head) + "."
    return format_atom(c.head) + " :- " + ", ".join(format_literal(lit) for lit in c.body) + "."


def format_program(p: Program) -> str:
    return "".join(format_clause(c) + "\n" for c in p.clauses)


def format_instance(x) -> str:
    """Ground clause or atom as shown in reports (clauses without the final dot)."""
    if isinstance(x, Atom):
        return format_atom(x)
    return format_clause(x)[:-1]


# ---------------------------------------------------------------------------
# Substitutions and unification
# ---------------------------------------------------------------------------

def apply_subst(s: Substitution, x):
    """Simultaneous replacement of bound variables; unbound ones stay."""
    if isinstance(x, Var):
        return s.get(x.name, x)
    if isinstance(x, Struct):
        if not x.args:
            return x
        return Struct(x.functor, tuple(apply_subst(s, a) for a in x.args))
    if isinstance(x, Atom):
        if not x.args:
            return x
        return Atom(x.predicate, tuple(apply_subst(s, a) for a in x.args))
    if isinstance(x, Literal):
        return Literal(apply_subst(s, x.atom), x.polarity)
    if isinstance(x, Clause):
        return Clause(apply_subst(s, x.head), tuple(apply_subst(s, lit) for lit in x.body))
    raise TypeError(f"cannot substitute into {x!r}")


def walk(t: Term, s: Substitution) -> Term:
    while isinstance(t, Var) and t.name in s:
        t = s[t.name]
    return t


def resolve(x, s: Substitution):
    """Apply a triangular substitution to a fixpoint."""
    if isinstance(x, Var):
        t = walk(x, s)
        return t if isinstance(t, Var) else resolve(t, s)
    if isinstance(x, Struct):
        if not x.args:
            return x
        return Struct(x.functor, tuple(resolve(a, s) for a in x.args))
    if isinstance(x, Atom):
        if not x.args:
            return x
        return Atom(x.predicate, tuple(resolve(a, s) for a in x.args))
    if isinstance(x, Literal):
        return Literal(resolve(x.atom, s), x.polarity)
    if isinstance(x, Clause):
        return Clause(resolve(x.head, s), tuple(resolve(lit, s) for lit in x.body))
    raise TypeError(f"cannot substitute into {x!r}")


def _occurs(name: str, t: Term, s: Substitution) -> bool:
    t = walk(t, s)
    if isinstance(t, Var):
        return t.name == name
    return any(_occurs(name, a, s) for a in t.args)


def unify_bindings(pairs: Iterable[Tuple[Term, Term]], s: Substitution) -> Optional[Substitution]:
    """Extend the triangular substitution ``s`` (not mutated); occur check always on."""
    s = dict(s)
    stack = list(pairs)
    while stack:
        a, b = stack.pop()
        a = walk(a, s)
        b = walk(b, s)
        if a == b:
            continue
        if isinstance(a, Var):
            if _occurs(a.name, b, s):
                return None
            s[a.name] = b
        elif isinstance(b, Var):
            if _occurs(b.name, a, s):
                return None
            s[b.name] = a
        elif a.functor != b.functor or len(a.args) != len(b.args):
            return None
        else:
            stack.extend(zip(a.args, b.args))
    return s


def unify_in_place(a1: Atom, a2: Atom, s: Dict[str, Term], trail: List[str]) -> bool:
    """Unify into the shared store ``s``, appending every bound name to ``trail``.

    On failure the partial bindings stay on the trail; callers undo to their mark.
    """
    if a1.indicator != a2.indicator:
        return False
    stack = list(zip(a1.args, a2.args))
    while stack:
        a, b = stack.pop()
        a = walk(a, s)
        b = walk(b, s)
        if a == b:
            continue
        if isinstance(b, Var) and not isinstance(a, Var):
            a, b = b, a
        if isinstance(a, Var):
            if _occurs(a.name, b, s):
                return False
            s[a.name] = b
            trail.append(a.name)
        elif a.functor != b.functor or len(a.args) != len(b.args):
            return False
        else:
            stack.extend(zip(a.args, b.args))
    return True


def undo_to(s: Dict[str, Term], trail: List[str], mark: int):
    while len(trail) > mark:
        del s[trail.pop()]


def unify(t1: Term, t2: Term) -> Optional[Substitution]:
    """Most general unifier in idempotent (solved) form, or None."""
    s = unify_bindings([(t1, t2)], {})
    if s is None:
        return None
    return {name: resolve(t, s) for name, t in s.items()}


def match(pattern, ground, s: Optional[Substitution] = None) -> Optional[Substitution]:
    """One-way matching of a pattern term/atom against a ground one."""
    s = dict(s or {})
    stack = [(pattern, ground)]
    while stack:
        p, g = stack.pop()
        if isinstance(p, Var):
            bound = s.get(p.name)
            if bound is None:
                s[p.name] = g
            elif bound != g:
                return None
            continue
        if isinstance(p, Atom):
            if not isinstance(g, Atom) or p.indicator != g.indicator:
                return None
        elif not isinstance(g, Struct) or p.functor != g.functor or len(p.args) != len(g.args):
            return None
        stack.extend(zip(p.args, g.args))
    return s


def rename(x, suffix: str):
    mapping = {name: Var(name + suffix) for name in variables(x)}
    return apply_subst(mapping, x)


# ---------------------------------------------------------------------------
# Signatures and Herbrand slices
# ---------------------------------------------------------------------------

def _collect_functions(t: Term, functions: set):
    if isinstance(t, Struct):
        functions.add((t.functor, len(t.args)))
        for a in t.args:
            _collect_functions(a, functions)


def collect_signature(program: Program, extra: Iterable[Atom] = (), constants: Iterable[str] = ()) -> Signature:
    functions: set = set()
    predicates: set = set()
    atoms = [a for c in program.clauses for a in c.atoms()] + list(extra)
    for a in atoms:
        predicates.add(a.indicator)
        for t in a.args:
            _collect_functions(t, functions)
    functions.update((name, 0) for name in constants)
    fresh = None
    if not any(arity == 0 for _, arity in functions):
        fresh = FRESH_CONSTANT
        functions.add((FRESH_CONSTANT, 0))
        log.info("no constant in the signature, added %s", FRESH_CONSTANT)
    return Signature(frozenset(functions), frozenset(predicates), fresh)


def herbrand_slice(sig: Signature, depth: int, cap: int = 200000) -> HerbrandSlice:
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if cap <= 0:
        raise ValueError("cap must be > 0")
    constants = tuple(sorted((Struct(name) for name in sig.constants), key=term_key))
    functors = sorted((name, arity) for name, arity in sig.functions if arity > 0)
    layers = [constants]
    for k in range(1, depth + 1):
        prev = layers[-1]
        size = len(constants) + sum(len(prev) ** arity for _, arity in functors)
        if size > cap:
            raise ResourceExceeded(f"universe of depth {k} has {size} terms (cap {cap})")
        terms = list(constants)
        for name, arity in functors:
            terms.extend(Struct(name, args) for args in itertools.product(prev, repeat=arity))
        layers.append(tuple(sorted(terms, key=term_key)))
    universe = layers[-1]
    predicates = sorted(sig.predicates)
    size = sum(len(universe) ** arity for _, arity in predicates)
    if size > cap:
        raise ResourceExceeded(f"Herbrand base at depth {depth} has {size} atoms (cap {cap})")
    # product over the sorted universe already yields atoms in canonical order
    atoms = tuple(Atom(name, args) for name, arity in predicates
                  for args in itertools.product(universe, repeat=arity))
    log.debug("slice depth=%d universe=%d base=%d", depth, len(universe), len(atoms))
    return HerbrandSlice(sig, depth, tuple(layers), atoms, frozenset(atoms))


def ground_instances(clause: Clause, slice_: HerbrandSlice, cap: int = 200000) -> Iterator[Clause]:
    """Every assignment of the clause variables to universe terms, in canonical order."""
    names = variables(clause)
    universe = slice_.universe
    count = len(universe) ** len(names)
    if count > cap:
        raise ResourceExceeded(f"clause has {count} ground instances (cap {cap})")
    for combo in itertools.product(universe, repeat=len(names)):
        yield apply_subst(dict(zip(names, combo)), clause)


def _depth_bounds(t: Term, position: int, depth: int, bounds: Dict[str, int]) -> bool:
    if isinstance(t, Var):
        bounds[t.name] = min(bounds.get(t.name, depth), depth - position)
        return True
    if position > depth:
        return False
    return all(_depth_bounds(a, position + 1, depth, bounds) for a in t.args)


def bounded_instances(clause: Clause, slice_: HerbrandSlice, cap: int = 200000,
                      head_only: bool = False) -> Tuple[List[Clause], int]:
    """Ground instances whose atoms lie in the base, plus the count of the others.

    Each variable only ranges over terms shallow enough to keep every
    constrained atom (the head, and the body unless ``head_only``) inside the
    base, so the kept instances equal the base-filtered output of
    ground_instances without enumerating the frontier.
    """
    names = variables(clause)
    total = len(slice_.universe) ** len(names)
    constrained = [clause.head] if head_only else list(clause.atoms())
    bounds: Dict[str, int] = {}
    fits = all(_depth_bounds(t, 0, slice_.depth, bounds) for a in constrained for t in a.args)
    if not fits:
        return [], total
    domains = []
    for name in names:
        bound = bounds.get(name, slice_.depth)
        domains.append(slice_.layers[bound] if bound >= 0 else ())
    count = math.prod(len(d) for d in domains)
    if count > cap:
        raise ResourceExceeded(f"clause {format_clause(clause)} has {count} ground instances in the slice (cap {cap})")
    kept = []
    for combo in itertools.product(*domains):
        inst = apply_subst(dict(zip(names, combo)), clause)
        # symbols outside the signature never reach the base
        if all(a in slice_.base for a in constrained_atoms(inst, head_only)):
            kept.append(inst)
    return kept, total - len(kept)


def constrained_atoms(clause: Clause, head_only: bool) -> Tuple[Atom, ...]:
    return (clause.head,) if head_only else clause.atoms()
