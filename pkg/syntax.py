"""Parsers for program, query, specification and level files."""
import logging
import re

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from errors import ParseError
from specs import (And, Cmp, Concat, Const, Eq, FalseGuard, IsList, IsNat, Len, LevelMapping, LevelRule,
                   Max, NatExpr, NatVal, Neq, Not, Or, Plus, Size, SpecInterpretation, SpecRule, TrueGuard)
from terms import (ANONYMOUS, NIL, Atom, Clause, Literal, Polarity, Program, Struct, Var, apply_subst, make_list,
                   numeral, numeral_value, variables)

log = logging.getLogger(__name__)

GRAMMAR = r"""
program: clause*
clause: atom "."                    -> fact
      | atom ":-" body "."          -> rule

query: body "."?
body: literal ("," literal)*
literal: atom                       -> positive
       | "\\+" atom                 -> negative

atom: name ("(" args ")")?
args: term ("," term)*

?term: VAR                          -> var
     | INT                          -> integer
     | name "(" args ")"            -> compound
     | name                         -> constant
     | "[" "]"                      -> nil
     | "[" args ("|" term)? "]"     -> cons_list

name: NAME | QNAME

spec: spec_rule*
spec_rule: atom ":=" guard "."

?guard: conj
      | guard ";" conj              -> g_or
?conj: gnot
     | conj "," gnot                -> g_and
?gnot: "\\+" gnot                   -> g_not
     | "(" guard ")"
     | term                         -> g_test
     | nexpr CMP nexpr              -> g_compare

?nexpr: term
      | nexpr "+" term              -> n_plus

levels: level_item*
?level_item: "level" atom "=" nexpr "."     -> level_rule
           | "default" "=" nexpr "."        -> level_default

CMP: "==" | "\\==" | "=<" | ">=" | "<" | ">"
VAR: /[A-Z_][A-Za-z0-9_]*/
NAME: /[a-z][A-Za-z0-9_]*/
QNAME: /'(\\.|[^'\\])*'/
INT: /[0-9]+/
COMMENT: /%[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_parser = Lark(GRAMMAR, parser="lalr", start=["program", "query", "spec", "levels"],
               propagate_positions=True)

_NAT_FUNCTIONS = {("len", 1), ("natval", 1), ("size", 1), ("max", 2)}


def _unquote(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text[1:-1])


def _is_natexpr_form(x) -> bool:
    return isinstance(x, NatExpr) or (isinstance(x, Struct) and (x.functor, len(x.args)) in _NAT_FUNCTIONS)


def _to_natexpr(x, meta) -> NatExpr:
    if isinstance(x, NatExpr):
        return x
    if isinstance(x, Struct):
        k = numeral_value(x)
        if k is not None:
            return Const(k)
        key = (x.functor, len(x.args))
        if key == ("len", 1):
            return Len(x.args[0])
        if key == ("natval", 1):
            return NatVal(x.args[0])
        if key == ("size", 1):
            return Size(x.args[0])
        if key == ("max", 2):
            return Max(_to_natexpr(x.args[0], meta), _to_natexpr(x.args[1], meta))
    raise ParseError(meta.line, meta.column, f"expected a natural-number expression, got {x}")


def _standardize_apart(clauses) -> tuple:
    """Rename variables already used by an earlier clause; a program that is apart comes back unchanged."""
    used = set()
    result = []
    for clause in clauses:
        names = variables(clause)
        taken = used | set(names)
        mapping = {}
        for name in names:
            if name not in used:
                continue
            k = 1
            while f"{name}_{k}" in taken:
                k += 1
            taken.add(f"{name}_{k}")
            mapping[name] = Var(f"{name}_{k}")
        if mapping:
            clause = apply_subst(mapping, clause)
        used.update(variables(clause))
        result.append(clause)
    return tuple(result)


class _Builder(Transformer):
    def __init__(self):
        super().__init__()
        self._anonymous = 0

    # terms and clauses

    def name(self, children):
        token = children[0]
        return _unquote(token.value) if token.type == "QNAME" else token.value

    def var(self, children):
        name = children[0].value
        if name == "_":
            self._anonymous += 1
            return Var(f"{ANONYMOUS}{self._anonymous}")
        return Var(name)

    def integer(self, children):
        return numeral(int(children[0].value))

    def constant(self, children):
        return Struct(children[0])

    def compound(self, children):
        return Struct(children[0], tuple(children[1]))

    def nil(self, children):
        return Struct(NIL)

    def cons_list(self, children):
        tail = children[1] if len(children) > 1 else None
        return make_list(children[0], tail)

    def args(self, children):
        return list(children)

    def atom(self, children):
        args = tuple(children[1]) if len(children) > 1 else ()
        return Atom(children[0], args)

    def positive(self, children):
        return Literal(children[0])

    def negative(self, children):
        return Literal(children[0], Polarity.NEGATIVE)

    def body(self, children):
        return tuple(children)

    def fact(self, children):
        return Clause(children[0])

    def rule(self, children):
        return Clause(children[0], children[1])

    def program(self, children):
        return Program(_standardize_apart(children))

    def query(self, children):
        return children[0]

    # specifications

    def g_or(self, children):
        return Or(children[0], children[1])

    def g_and(self, children):
        return And(children[0], children[1])

    def g_not(self, children):
        return Not(children[0])

    @v_args(meta=True)
    def g_test(self, meta, children):
        t = children[0]
        if isinstance(t, Struct):
            key = (t.functor, len(t.args))
            if key == ("true", 0):
                return TrueGuard()
            if key == ("false", 0):
                return FalseGuard()
            if key == ("islist", 1):
                return IsList(t.args[0])
            if key == ("isnat", 1):
                return IsNat(t.args[0])
            if key == ("concat", 3):
                return Concat(*t.args)
        raise ParseError(meta.line, meta.column, f"unknown guard {t}")

    @v_args(meta=True)
    def g_compare(self, meta, children):
        left, op, right = children
        op = op.value
        if op in ("==", "\\==") and not (_is_natexpr_form(left) or _is_natexpr_form(right)):
            return Eq(left, right) if op == "==" else Neq(left, right)
        left, right = _to_natexpr(left, meta), _to_natexpr(right, meta)
        if op == "\\==":
            return Not(Cmp(left, "==", right))
        return Cmp(left, op, right)

    @v_args(meta=True)
    def n_plus(self, meta, children):
        return Plus(_to_natexpr(children[0], meta), _to_natexpr(children[1], meta))

    @v_args(meta=True)
    def spec_rule(self, meta, children):
        pattern, guard = children
        free = set(guard.variables()) - set(variables(pattern))
        if free:
            raise ParseError(meta.line, meta.column,
                             f"guard variables not in the pattern: {', '.join(sorted(free))}")
        return SpecRule(pattern, guard)

    def spec(self, children):
        return tuple(children)

    # level mappings

    @v_args(meta=True)
    def level_rule(self, meta, children):
        pattern, expr = children[0], _to_natexpr(children[1], meta)
        free = set(expr.variables()) - set(variables(pattern))
        if free:
            raise ParseError(meta.line, meta.column,
                             f"level variables not in the pattern: {', '.join(sorted(free))}")
        return LevelRule(pattern, expr)

    @v_args(meta=True)
    def level_default(self, meta, children):
        expr = _to_natexpr(children[0], meta)
        if expr.variables():
            raise ParseError(meta.line, meta.column, "default level must be ground")
        return expr

    def levels(self, children):
        rules = tuple(c for c in children if isinstance(c, LevelRule))
        defaults = [c for c in children if not isinstance(c, LevelRule)]
        return LevelMapping(rules, defaults[-1] if defaults else Const(0))


def _end_position(text: str):
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def _parse(text: str, start: str):
    try:
        tree = _parser.parse(text, start=start)
        return _Builder().transform(tree)
    except UnexpectedEOF:
        line, column = _end_position(text)
        raise ParseError(line, column, "unexpected end of input") from None
    except UnexpectedCharacters as e:
        raise ParseError(e.line, e.column, f"unexpected character {text[e.pos_in_stream]!r}") from None
    except UnexpectedToken as e:
        if e.token.type == "$END":
            line, column = _end_position(text)
            raise ParseError(line, column, "unexpected end of input") from None
        expected = ", ".join(sorted(e.expected))
        raise ParseError(e.line, e.column, f"unexpected {e.token.value!r}, expected one of: {expected}") from None
    except UnexpectedInput as e:
        raise ParseError(getattr(e, "line", 0), getattr(e, "column", 0), str(e)) from None
    except VisitError as e:
        if isinstance(e.orig_exc, ParseError):
            raise e.orig_exc from None
        raise


def parse_program(text: str) -> Program:
    program = _parse(text, "program")
    log.debug("parsed %d clauses (%s)", len(program.clauses), program.kind.value)
    return program


def parse_query(text: str):
    """A comma-separated literal sequence, with an optional final dot."""
    return _parse(text, "query")


def parse_atom(text: str) -> Atom:
    literals = parse_query(text)
    if len(literals) != 1 or not literals[0].positive:
        raise ParseError(1, 1, "expected a single atom")
    return literals[0].atom


def parse_spec(text: str, name: str = "spec") -> SpecInterpretation:
    return SpecInterpretation(name, _parse(text, "spec"))


def parse_levels(text: str) -> LevelMapping:
    return _parse(text, "levels")
