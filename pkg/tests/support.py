"""Shared builders for the test suites."""
from pathlib import Path

from runner import Inputs, RunConfig, build_slice, load_inputs
from semantics import ThreeValuedInterp, ground_program, phi_step
from specs import Const, LevelMapping, LevelRule, SpecInterpretation, SpecPair
from terms import Signature, collect_signature, herbrand_slice

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

# a, b with one unary function; three predicates
MICRO = Signature(frozenset({("a", 0), ("b", 0), ("f", 1)}),
                  frozenset({("p", 1), ("q", 1), ("r", 2)}))
# function-free: the depth-0 slice is the whole Herbrand base
DATALOG = Signature(frozenset({("a", 0), ("b", 0), ("c", 0)}),
                    frozenset({("p", 0), ("q", 1), ("r", 2)}))
# small enough to enumerate every subset of the base (8 atoms at depth 1)
TINY = Signature(frozenset({("a", 0), ("b", 0), ("f", 1)}),
                 frozenset({("p", 1), ("q", 1)}))

# slice parameters keeping every corpus entry small
CORPUS_SLICES = {
    "append": (1, ("a",)),
    "member": (1, ("[]", "a")),
    "reverse": (1, ("a",)),
    "even_odd": (4, ()),
    "win": (0, ()),
    "reach": (0, ()),
    "p_not_p": (0, ()),
    "p_loop": (0, ()),
}
# entries without negation
DEFINITE_CORPUS = ("append", "member", "p_loop", "reach", "reverse")


def slice_of(program, depth, extra=(), constants=(), cap=200000):
    return herbrand_slice(collect_signature(program, extra, constants), depth, cap)


def corpus_config(name, check="check-correct", depth=None, constants=None):
    default_depth, default_constants = CORPUS_SLICES[name]
    entry = CORPUS / name
    return RunConfig(
        check=check,
        program_path=str(entry / "program.pl"),
        spec_path=str(entry / "corr.spec"),
        compl_path=str(entry / "compl.spec"),
        levels_path=str(entry / "levels.lvl"),
        depth=default_depth if depth is None else depth,
        constants=default_constants if constants is None else constants,
    )


def corpus_case(name, depth=None, constants=None):
    """(inputs, slice) for a bundled entry."""
    cfg = corpus_config(name, depth=depth, constants=constants)
    inputs = load_inputs(cfg)
    return inputs, build_slice(inputs, cfg)


def phi_stages(gp):
    """Φ fixpoint plus the iteration at which each decided atom was first decided."""
    current = ThreeValuedInterp()
    stages = {}
    step = 0
    while True:
        following = phi_step(gp, current)
        if following == current:
            return current, stages
        step += 1
        for a in following.true_atoms | following.false_atoms:
            stages.setdefault(a, step)
        current = following


def exact_pair(sem, slice_):
    """The tightest pair a correct program meets: S_corr = base minus false, S_compl = true."""
    corr = SpecInterpretation.from_atoms("S_corr", [a for a in slice_.atoms if a not in sem.false_atoms])
    compl = SpecInterpretation.from_atoms("S_compl", [a for a in slice_.atoms if a in sem.true_atoms])
    return SpecPair(corr, compl)


def stage_levels(stages):
    return LevelMapping(tuple(LevelRule(a, Const(k)) for a, k in sorted(stages.items(), key=lambda kv: str(kv[0]))))


def grounded(program, slice_):
    return ground_program(program, slice_)


__all__ = ["CORPUS", "MICRO", "DATALOG", "TINY", "CORPUS_SLICES", "DEFINITE_CORPUS", "Inputs", "slice_of", "corpus_config",
           "corpus_case", "phi_stages", "exact_pair", "stage_levels", "grounded"]
