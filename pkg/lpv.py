"""lpv: verification conditions for definite and normal logic programs.

Exit codes: 0 all checks pass, 1 violations found, 2 usage or parse error,
3 resource cap exceeded or instability detected.
"""
import argparse
import logging
import sys
from typing import List, Optional, TextIO

import config
from errors import LpvError, NotDefinite, PairInconsistent, ParseError, ResourceExceeded
from reports import VcReport, render_report
from runner import CHECKS, InputError, RunConfig, build_slice, load_inputs, run_check
from semantics import dump_semantics, ground_program, phi_fixpoint
from sldnf import OutcomeKind, sldnf_solve
from terms import collect_signature, format_program, format_term, term_key

log = logging.getLogger("lpv")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

CHECK_HELP = {
    "check-correct": "correctness of a definite program (S_corr is a model)",
    "check-semicomplete": "semi-completeness of a definite program (coverage of S_compl)",
    "check-complete": "completeness of a definite program (coverage with level decrease)",
    "check-correct-normal": "correctness of a normal program w.r.t. a specification pair",
    "check-complete-normal": "completeness of a normal program w.r.t. a specification pair",
    "check-terminate": "acceptability under leftmost selection",
    "check-pair": "S_compl contained in S_corr on the base",
    "cross-check": "compare the Φ fixpoint with the specification pair",
}


def _constants(text: str):
    return tuple(name.strip() for name in text.split(",") if name.strip())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("program", help="program file")
    common.add_argument("spec", nargs="?", help="specification file (S_corr)")
    common.add_argument("--spec-compl", help="S_compl specification file (defaults to the main specification)")
    common.add_argument("--levels", help="level mapping file")
    common.add_argument("--depth", type=int, default=config.DEFAULT_DEPTH, help="term depth of the Herbrand slice")
    common.add_argument("--cap", type=int, default=config.DEFAULT_CAP, help="maximum universe/base/instance count")
    common.add_argument("--step-bound", type=int, default=config.DEFAULT_STEP_BOUND, help="LDNF step budget")
    common.add_argument("--format", choices=("human", "machine"), default="machine")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--constants", type=_constants, default=(),
                        help="comma-separated constants added to the signature")
    common.add_argument("--workers", type=int, default=config.WORKERS)
    common.add_argument("--report-limit", type=int, default=config.REPORT_LIMIT,
                        help="violations listed per report; 0 lists all")
    common.add_argument("--save", action="store_true", help="record the report in the run history database")

    parser = argparse.ArgumentParser(prog="lpv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in CHECK_HELP.items():
        sub.add_parser(name, parents=[common], help=text)
    sub.add_parser("semantics", parents=[common], help="dump the Φ fixpoint as T/F/U lines")
    solve = sub.add_parser("solve", parents=[common], help="run a query with the LDNF interpreter")
    solve.add_argument("--query", required=True)
    stability = sub.add_parser("stability", parents=[common], help="compare verdicts at depth and depth+1")
    stability.add_argument("--check", choices=sorted(CHECKS), help="check to rerun besides the Φ fixpoint")
    generate = sub.add_parser("generate", parents=[common],
                              help="print a seeded random program over the program's signature")
    generate.add_argument("--clauses", type=int, default=5)
    generate.add_argument("--max-body", type=int, default=3)
    generate.add_argument("--negation-rate", type=float, default=0.0)
    corpus = sub.add_parser("corpus", help="run the bundled corpus against its goldens")
    corpus.add_argument("--regen", action="store_true", help="rewrite expected.txt files")
    corpus.add_argument("--dir", help="corpus directory")
    return parser


def _config(args) -> RunConfig:
    check = args.command
    if args.command == "stability":
        check = args.check
    return RunConfig(
        check=check,
        program_path=args.program,
        spec_path=args.spec,
        compl_path=args.spec_compl,
        levels_path=args.levels,
        depth=args.depth,
        cap=args.cap,
        step_bound=args.step_bound,
        fmt=args.format,
        seed=args.seed,
        constants=args.constants,
        workers=max(1, args.workers),
        report_limit=args.report_limit or None,
        query=getattr(args, "query", None),
        save=args.save,
    )


def _save(report: VcReport, cfg: RunConfig):
    from sqlalchemy.exc import SQLAlchemyError
    from models import record_report
    try:
        record_report(report, cfg)
    except SQLAlchemyError as e:
        log.warning("could not record the report: %s", e)


def _emit(report: VcReport, cfg: RunConfig, out: TextIO) -> VcReport:
    out.write(render_report(report, cfg.fmt))
    if cfg.save:
        _save(report, cfg)
    return report


def _run_semantics(cfg: RunConfig, out: TextIO) -> int:
    inputs = load_inputs(cfg)
    slice_ = build_slice(inputs, cfg)
    sem, steps = phi_fixpoint(ground_program(inputs.program, slice_, cfg.cap))
    if cfg.fmt == "human":
        undefined = len(slice_.atoms) - len(sem.true_atoms) - len(sem.false_atoms)
        out.write(f"% Φ fixpoint after {steps} steps: {len(sem.true_atoms)} true, "
                  f"{len(sem.false_atoms)} false, {undefined} undefined\n")
    out.write(dump_semantics(sem, slice_.atoms))
    return EXIT_PASS


def _run_solve(cfg: RunConfig, out: TextIO) -> int:
    inputs = load_inputs(cfg)
    outcome = sldnf_solve(inputs.program, inputs.query, cfg.step_bound)
    if outcome.kind is OutcomeKind.FLOUNDERED:
        out.write(f'SOLVE floundered goal="{outcome.floundered_goal}"\n')
        return EXIT_RESOURCE
    if outcome.kind is OutcomeKind.BOUND_EXCEEDED:
        out.write("SOLVE bound-exceeded\n")
        return EXIT_RESOURCE
    if outcome.failed:
        out.write("SOLVE failed\n")
        return EXIT_FAIL
    out.write(f"SOLVE answers={len(outcome.answers)}\n")
    for answer in sorted(outcome.answers, key=lambda terms: tuple(term_key(t) for t in terms)):
        bindings = ", ".join(f"{name}={format_term(t)}" for name, t in zip(outcome.query_variables, answer))
        out.write(f"ANSWER {bindings or 'yes'}\n")
    return EXIT_PASS


def _run_generate(args, cfg: RunConfig, out: TextIO) -> int:
    from generate import random_program
    inputs = load_inputs(cfg)
    sig = collect_signature(inputs.program, constants=cfg.constants)
    program = random_program(cfg.seed, sig, args.clauses, args.max_body, args.negation_rate)
    out.write(format_program(program))
    return EXIT_PASS


def _run_corpus(args, out: TextIO, err: TextIO) -> int:
    import corpus
    entries = corpus.discover(args.dir)
    if args.regen:
        for entry in entries:
            corpus.regen(entry)
            out.write(f"REGEN {entry.name}\n")
        return EXIT_PASS
    failed = False
    for entry in entries:
        problems = corpus.check_entry(entry)
        out.write(f"CORPUS {entry.name} {'fail' if problems else 'ok'}\n")
        for problem in problems:
            err.write(problem + "\n")
        failed = failed or bool(problems)
    return EXIT_FAIL if failed else EXIT_PASS


def _dispatch(args, out: TextIO, err: TextIO) -> int:
    if args.command == "corpus":
        return _run_corpus(args, out, err)
    cfg = _config(args)
    if args.command == "semantics":
        return _run_semantics(cfg, out)
    if args.command == "generate":
        return _run_generate(args, cfg, out)
    if args.command == "solve":
        return _run_solve(cfg, out)
    if args.command == "stability":
        from stability import stability_check
        report = _emit(stability_check(cfg), cfg, out)
        return EXIT_PASS if report.passed else EXIT_RESOURCE
    report = _emit(run_check(cfg), cfg, out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def run(argv: Optional[List[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    try:
        return _dispatch(args, out, err)
    except PairInconsistent as e:
        out.write(render_report(e.report, args.format))
        err.write(f"lpv: {e}\n")
        return EXIT_FAIL
    except (ParseError, InputError, NotDefinite, ValueError) as e:
        err.write(f"lpv: error: {e}\n")
        return EXIT_USAGE
    except ResourceExceeded as e:
        err.write(f"lpv: resource exceeded: {e}\n")
        return EXIT_RESOURCE
    except LpvError as e:
        err.write(f"lpv: error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    logging.basicConfig(level=config.LOG_LEVEL, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
