"""Randomized laws linking the verification conditions to the fixpoint semantics.

Every suite is seeded, so a failure names a reproducible program.
"""
import random

import pytest

from generate import random_levels, random_program, random_spec, random_spec_pair
from reports import ViolationKind
from semantics import TwoValuedInterp, ground_program, oracle_check, phi_fixpoint, tp_lfp, tp_step
from sldnf import OutcomeKind, solve_atom
from specs import SpecInterpretation, SpecPair
from syntax import parse_spec
from vcgen import (check_complete_definite, check_complete_normal, check_correct_definite, check_correct_normal,
                   check_semicomplete_definite, check_terminate)
from terms import herbrand_slice

from support import DATALOG, MICRO, exact_pair, phi_stages, stage_levels

pytestmark = pytest.mark.slow


def _kinds(report):
    return {v.kind for v in report.violations}


def test_definite_checks_match_their_fixpoint_laws():
    slice_ = herbrand_slice(MICRO, 1)
    rng = random.Random(2024)
    correct = complete = 0
    for case in range(500):
        program = random_program(rng, MICRO, rng.randint(0, 5), 2, 0.0)
        gp = ground_program(program, slice_)
        model, _ = tp_lfp(gp)
        if case % 2:
            spec = random_spec(rng, slice_, rng.random())
        else:
            spec = random_spec(rng, slice_, 1.0, within=model.true_atoms)
        extension = spec.extension(slice_)
        image = tp_step(gp, TwoValuedInterp(extension)).true_atoms

        corr = check_correct_definite(program, spec, slice_, gp=gp, report_limit=None)
        assert corr.passed == (image <= extension), str(program)
        if corr.passed:
            correct += 1
            assert model.true_atoms <= extension

        semi = check_semicomplete_definite(program, spec, slice_, gp=gp, report_limit=None)
        assert semi.passed == (extension <= image), str(program)

        levels = random_levels(rng, MICRO)
        comp = check_complete_definite(program, spec, levels, slice_, gp=gp, report_limit=None)
        if comp.passed:
            complete += 1
            assert extension <= model.true_atoms, str(program)
    # the even cases use the least model itself, which is always a model
    assert correct >= 250
    assert complete > 0


def test_least_model_with_stage_levels_is_complete():
    slice_ = herbrand_slice(MICRO, 1)
    rng = random.Random(77)
    for _ in range(200):
        program = random_program(rng, MICRO, rng.randint(0, 5), 2, 0.0)
        gp = ground_program(program, slice_)
        sem, stages = phi_stages(gp)
        pair = exact_pair(sem, slice_)
        report = check_complete_definite(program, pair.compl, stage_levels(stages), slice_, gp=gp)
        assert report.passed, str(program)


def test_correct_normal_is_sound():
    slice_ = herbrand_slice(MICRO, 1)
    rng = random.Random(31)
    passed = failed = 0
    for case in range(1000):
        program = random_program(rng, MICRO, rng.randint(0, 5), 3, 0.4)
        gp = ground_program(program, slice_)
        sem, _ = phi_fixpoint(gp)
        pair = exact_pair(sem, slice_) if case % 2 == 0 else random_spec_pair(rng, slice_, rng.random())
        report = check_correct_normal(program, pair, slice_, gp=gp, report_limit=None)
        if not report.passed:
            failed += 1
            continue
        passed += 1
        oracle = oracle_check(pair, sem, slice_, None)
        assert not _kinds(oracle) & {ViolationKind.EXCESS, ViolationKind.REFUTED}, str(program)
    assert passed >= 500
    assert failed > 0


def test_complete_normal_is_sound():
    slice_ = herbrand_slice(MICRO, 1)
    rng = random.Random(43)
    passed = failed = 0
    for case in range(500):
        program = random_program(rng, MICRO, rng.randint(0, 5), 3, 0.4)
        gp = ground_program(program, slice_)
        sem, stages = phi_stages(gp)
        if case % 2 == 0:
            pair, levels = exact_pair(sem, slice_), stage_levels(stages)
        else:
            pair, levels = random_spec_pair(rng, slice_, rng.random()), random_levels(rng, MICRO)
        report = check_complete_normal(program, pair, levels, slice_, gp=gp, report_limit=None)
        if not report.passed:
            failed += 1
            continue
        passed += 1
        oracle = oracle_check(pair, sem, slice_, None)
        assert not _kinds(oracle) & {ViolationKind.MISSING, ViolationKind.UNREFUTED}, str(program)
    assert passed >= 250
    assert failed > 0


def test_terminate_is_sound_on_function_free_programs():
    """With no function symbols the depth-0 slice is the whole base, so the pair can be exact."""
    slice_ = herbrand_slice(DATALOG, 0)
    rng = random.Random(58)
    passed = 0
    for _ in range(300):
        program = random_program(rng, DATALOG, rng.randint(0, 4), 3, 0.3)
        gp = ground_program(program, slice_)
        sem, _ = phi_fixpoint(gp)
        pair = exact_pair(sem, slice_)
        levels = random_levels(rng, DATALOG)
        if not check_terminate(program, pair, levels, slice_).passed:
            continue
        passed += 1
        for a in slice_.atoms:
            outcome = solve_atom(program, a, step_bound=50000)
            assert outcome.kind is not OutcomeKind.BOUND_EXCEEDED, (str(program), str(a))
    # includes every empty program
    assert passed >= 20


def test_stable_terminate_verdicts_hold_with_function_symbols():
    """With every literal required to decrease, a stable pass means each ground derivation stays in the base."""
    slice_ = herbrand_slice(MICRO, 1)
    everything = parse_spec("p(A) := true.\nq(A) := true.\nr(A, B) := true.")
    pair = SpecPair(everything, SpecInterpretation("S_compl"))
    rng = random.Random(77)
    passed = 0
    for _ in range(200):
        program = random_program(rng, MICRO, rng.randint(0, 3), 2, 0.3)
        report = check_terminate(program, pair, random_levels(rng, MICRO), slice_)
        if not report.passed or not report.stability_flag:
            continue
        passed += 1
        for a in slice_.atoms:
            outcome = solve_atom(program, a)
            assert outcome.kind is OutcomeKind.ANSWERS, (str(program), str(a))
    # includes every empty program
    assert passed >= 20
