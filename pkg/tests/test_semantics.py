import itertools
import random

import pytest

from errors import NotDefinite
from generate import random_program
from semantics import (ThreeValuedInterp, TwoValuedInterp, dump_semantics, ground_program, oracle_check,
                       phi_fixpoint, phi_step, tp_lfp, tp_step)
from reports import ViolationKind
from specs import SpecInterpretation, SpecPair
from syntax import parse_program, parse_spec
from terms import Atom, atom, constant, herbrand_slice, make_list, numeral

from support import DEFINITE_CORPUS, TINY, corpus_case, slice_of

EVEN = parse_program("even(0). even(s(s(X))) :- even(X).")
WIN = parse_program("move(a,b). move(b,c). win(X) :- move(X,Y), \\+ win(Y).")


def even(k):
    return atom("even", numeral(k))


def test_tp_step_on_even():
    gp = ground_program(EVEN, slice_of(EVEN, 4))
    assert tp_step(gp, TwoValuedInterp()).true_atoms == {even(0)}
    assert tp_step(gp, TwoValuedInterp(frozenset({even(0), even(1)}))).true_atoms == {even(0), even(2), even(3)}


def test_tp_lfp_on_even():
    gp = ground_program(EVEN, slice_of(EVEN, 4))
    model, iterations = tp_lfp(gp)
    assert model.true_atoms == {even(0), even(2), even(4)}
    assert iterations == 3


def test_tp_rejects_normal_programs():
    gp = ground_program(WIN, slice_of(WIN, 0))
    with pytest.raises(NotDefinite):
        tp_lfp(gp)


def test_append_lfp():
    program = parse_program("append([],Ys,Ys). append([X|Xs],Ys,[X|Zs]) :- append(Xs,Ys,Zs).")
    slice_ = slice_of(program, 1, constants=("a",))
    model, _ = tp_lfp(ground_program(program, slice_))
    a, nil, one = constant("a"), make_list([]), make_list([constant("a")])
    assert atom("append", nil, one, one) in model.true_atoms
    assert atom("append", one, nil, one) in model.true_atoms
    assert atom("append", nil, a, a) in model.true_atoms
    assert atom("append", one, one, one) not in model.true_atoms


def test_no_facts_no_model():
    program = parse_program("p(X) :- q(X). q(X) :- p(X).")
    model, iterations = tp_lfp(ground_program(program, slice_of(program, 0)))
    assert model.true_atoms == frozenset()
    assert iterations == 0


def test_phi_leaves_p_not_p_undefined():
    program = parse_program("p :- \\+ p.")
    sem, steps = phi_fixpoint(ground_program(program, slice_of(program, 0)))
    assert sem.status(Atom("p")) == "U"
    assert steps == 0


def test_phi_atoms_without_clauses_are_false():
    program = parse_program("p :- \\+ q.")
    slice_ = slice_of(program, 0, extra=[Atom("q")])
    sem, _ = phi_fixpoint(ground_program(program, slice_))
    assert sem.status(Atom("q")) == "F"
    assert sem.status(Atom("p")) == "T"


def test_phi_win():
    slice_ = slice_of(WIN, 0)
    sem, _ = phi_fixpoint(ground_program(WIN, slice_))
    a, b, c = (constant(n) for n in "abc")
    assert sem.status(atom("win", b)) == "T"
    assert sem.status(atom("win", a)) == "F"
    assert sem.status(atom("win", c)) == "F"
    assert sem.status(atom("move", a, c)) == "F"
    assert sem.is_consistent()


def test_phi_on_loop_is_undefined_not_false():
    program = parse_program("p :- p.")
    sem, _ = phi_fixpoint(ground_program(program, slice_of(program, 0)))
    assert sem.status(Atom("p")) == "U"


def test_phi_true_part_is_the_least_model_for_definite_programs():
    slice_ = herbrand_slice(TINY, 1)
    rng = random.Random(7)
    for _ in range(100):
        program = random_program(rng, TINY, rng.randint(0, 5), 2, 0.0)
        gp = ground_program(program, slice_)
        model, _ = tp_lfp(gp)
        sem, _ = phi_fixpoint(gp)
        assert sem.true_atoms == model.true_atoms
        assert not (sem.false_atoms & model.true_atoms)


def test_lfp_is_the_least_model_by_enumeration():
    """Over TINY's 8-atom base every subset can be tried as a model."""
    slice_ = herbrand_slice(TINY, 1)
    atoms = slice_.atoms
    subsets = [frozenset(itertools.compress(atoms, bits)) for bits in itertools.product((0, 1), repeat=len(atoms))]
    rng = random.Random(11)
    for _ in range(30):
        program = random_program(rng, TINY, rng.randint(1, 4), 2, 0.0)
        gp = ground_program(program, slice_)
        models = [s for s in subsets if tp_step(gp, TwoValuedInterp(s)).true_atoms <= s]
        least = frozenset(atoms).intersection(*models)
        assert tp_lfp(gp)[0].true_atoms == least


def test_tp_step_is_monotone():
    slice_ = herbrand_slice(TINY, 1)
    rng = random.Random(3)
    for _ in range(50):
        program = random_program(rng, TINY, 4, 2, 0.0)
        gp = ground_program(program, slice_)
        small = frozenset(a for a in slice_.atoms if rng.random() < 0.3)
        large = small | frozenset(a for a in slice_.atoms if rng.random() < 0.5)
        assert tp_step(gp, TwoValuedInterp(small)).true_atoms <= tp_step(gp, TwoValuedInterp(large)).true_atoms


def test_knowledge_order():
    low = ThreeValuedInterp(frozenset({Atom("p")}))
    high = ThreeValuedInterp(frozenset({Atom("p")}), frozenset({Atom("q")}))
    assert low.leq(high)
    assert not high.leq(low)


def test_oracle_check_passes_on_the_exact_pair():
    slice_ = slice_of(WIN, 0)
    sem, _ = phi_fixpoint(ground_program(WIN, slice_))
    spec = parse_spec("move(a,b) := true.\nmove(b,c) := true.\nwin(b) := true.")
    report = oracle_check(SpecPair(spec, spec), sem, slice_)
    assert report.passed
    assert report.checked_count == len(slice_.atoms)
    assert all(note.endswith("pass") for note in report.notes)


def test_oracle_check_kinds():
    program = parse_program("p :- \\+ p. q.")
    slice_ = slice_of(program, 0)
    sem, _ = phi_fixpoint(ground_program(program, slice_))
    # p is undefined, q true; require p, forbid q
    pair = SpecPair(SpecInterpretation.from_atoms("S_corr", [Atom("p")]),
                    SpecInterpretation.from_atoms("S_compl", [Atom("p")]))
    report = oracle_check(pair, sem, slice_)
    kinds = sorted(v.kind.value for v in report.violations)
    assert kinds == [ViolationKind.EXCESS.value, ViolationKind.MISSING.value, ViolationKind.UNREFUTED.value]


def test_dump_semantics():
    slice_ = slice_of(WIN, 0)
    sem, _ = phi_fixpoint(ground_program(WIN, slice_))
    lines = dump_semantics(sem, slice_.atoms).splitlines()
    assert len(lines) == len(slice_.atoms)
    assert "T win(b)" in lines
    assert "F win(a)" in lines


def test_phi_step_is_monotone_in_the_knowledge_order():
    slice_ = herbrand_slice(TINY, 1)
    rng = random.Random(12)
    for _ in range(100):
        program = random_program(rng, TINY, rng.randint(1, 5), 3, 0.5)
        gp = ground_program(program, slice_)
        status = {a: rng.choice("TFU") for a in slice_.atoms}
        low = ThreeValuedInterp(frozenset(a for a, s in status.items() if s == "T"),
                                frozenset(a for a, s in status.items() if s == "F"))
        undecided = [a for a, s in status.items() if s == "U"]
        more_true = frozenset(a for a in undecided if rng.random() < 0.3)
        more_false = frozenset(a for a in undecided if a not in more_true and rng.random() < 0.3)
        high = ThreeValuedInterp(low.true_atoms | more_true, low.false_atoms | more_false)
        assert low.leq(high)
        assert phi_step(gp, low).leq(phi_step(gp, high)), str(program)


@pytest.mark.parametrize("name", DEFINITE_CORPUS)
def test_phi_agrees_with_the_least_model_on_definite_entries(name):
    inputs, slice_ = corpus_case(name)
    assert inputs.program.is_definite
    gp = ground_program(inputs.program, slice_)
    sem, _ = phi_fixpoint(gp)
    model, _ = tp_lfp(gp)
    assert sem.true_atoms == model.true_atoms
