"""Run configuration, input loading and check dispatch."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

import config
from errors import LpvError, ParseError
from reports import VcReport
from semantics import ThreeValuedInterp, ground_program, oracle_check, phi_fixpoint
from specs import LevelMapping, SpecInterpretation, SpecPair, check_pair_consistency
from syntax import parse_levels, parse_program, parse_query, parse_spec
from terms import HerbrandSlice, Literal, Program, collect_signature, herbrand_slice
import vcgen

log = logging.getLogger(__name__)


class InputError(LpvError):
    """An input file is missing or unreadable."""


@dataclass(frozen=True)
class RunConfig:
    check: str
    program_path: Optional[str] = None
    spec_path: Optional[str] = None
    compl_path: Optional[str] = None
    levels_path: Optional[str] = None
    depth: int = config.DEFAULT_DEPTH
    cap: int = config.DEFAULT_CAP
    step_bound: int = config.DEFAULT_STEP_BOUND
    fmt: str = "machine"
    seed: int = 0
    constants: Tuple[str, ...] = ()
    workers: int = config.WORKERS
    report_limit: Optional[int] = config.REPORT_LIMIT
    query: Optional[str] = None
    save: bool = False

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.cap <= 0 or self.step_bound <= 0:
            raise ValueError("cap and step bound must be > 0")

    def at_depth(self, depth: int) -> "RunConfig":
        return replace(self, depth=depth)


@dataclass(frozen=True)
class Inputs:
    program: Program
    corr: SpecInterpretation = field(default_factory=lambda: SpecInterpretation("S_corr"))
    compl: Optional[SpecInterpretation] = None
    levels: LevelMapping = field(default_factory=LevelMapping)
    query: Tuple[Literal, ...] = ()

    @property
    def pair(self) -> SpecPair:
        """(S_corr, S_compl); a missing S_compl defaults to S_corr."""
        return SpecPair(self.corr, self.compl if self.compl is not None else SpecInterpretation("S_compl", self.corr.rules))

    @property
    def completeness_spec(self) -> SpecInterpretation:
        """S_compl if given, else the main specification."""
        return self.compl if self.compl is not None else self.corr


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from None


def _parsed(parse, text: str, origin: str):
    try:
        return parse(text)
    except ParseError as e:
        raise e.in_file(origin) from None


def inputs_from_text(program: str, spec: Optional[str] = None, spec_compl: Optional[str] = None,
                     levels: Optional[str] = None, query: Optional[str] = None,
                     origins: Tuple[str, ...] = ("program", "spec", "spec-compl", "levels")) -> Inputs:
    return Inputs(
        program=_parsed(parse_program, program, origins[0]),
        corr=_parsed(lambda t: parse_spec(t, "S_corr"), spec or "", origins[1]),
        compl=_parsed(lambda t: parse_spec(t, "S_compl"), spec_compl, origins[2]) if spec_compl is not None else None,
        levels=_parsed(parse_levels, levels, origins[3]) if levels is not None else LevelMapping(),
        query=_parsed(parse_query, query, "query") if query else (),
    )


def load_inputs(cfg: RunConfig) -> Inputs:
    if cfg.program_path is None:
        raise InputError("a program file is required")
    paths = (cfg.program_path, cfg.spec_path, cfg.compl_path, cfg.levels_path)
    texts = [_read(p) if p else None for p in paths]
    return inputs_from_text(*texts, query=cfg.query, origins=tuple(p or "-" for p in paths))


def build_slice(inputs: Inputs, cfg: RunConfig) -> HerbrandSlice:
    extra = list(inputs.corr.patterns()) + list(inputs.levels.patterns())
    if inputs.compl is not None:
        extra += inputs.compl.patterns()
    extra += [lit.atom for lit in inputs.query]
    sig = collect_signature(inputs.program, extra, cfg.constants)
    return herbrand_slice(sig, cfg.depth, cfg.cap)


def semantics_of(inputs: Inputs, slice_: HerbrandSlice, cap: int) -> ThreeValuedInterp:
    sem, _ = phi_fixpoint(ground_program(inputs.program, slice_, cap))
    return sem


def _options(cfg: RunConfig) -> dict:
    return {"cap": cfg.cap, "workers": cfg.workers, "report_limit": cfg.report_limit}


CHECKS: Dict[str, Callable[[Inputs, HerbrandSlice, RunConfig], VcReport]] = {
    "check-correct": lambda i, s, c: vcgen.check_correct_definite(i.program, i.corr, s, **_options(c)),
    "check-semicomplete": lambda i, s, c: vcgen.check_semicomplete_definite(
        i.program, i.completeness_spec, s, **_options(c)),
    "check-complete": lambda i, s, c: vcgen.check_complete_definite(
        i.program, i.completeness_spec, i.levels, s, **_options(c)),
    "check-correct-normal": lambda i, s, c: vcgen.check_correct_normal(i.program, i.pair, s, **_options(c)),
    "check-complete-normal": lambda i, s, c: vcgen.check_complete_normal(
        i.program, i.pair, i.levels, s, **_options(c)),
    "check-terminate": lambda i, s, c: vcgen.check_terminate(i.program, i.pair, i.levels, s, **_options(c)),
    "check-pair": lambda i, s, c: check_pair_consistency(i.pair, s, c.report_limit),
    "cross-check": lambda i, s, c: oracle_check(i.pair, semantics_of(i, s, c.cap), s, c.report_limit),
}


def run_check(cfg: RunConfig, inputs: Optional[Inputs] = None, slice_: Optional[HerbrandSlice] = None) -> VcReport:
    try:
        check = CHECKS[cfg.check]
    except KeyError:
        raise ValueError(f"unknown check {cfg.check}") from None
    inputs = inputs or load_inputs(cfg)
    slice_ = slice_ or build_slice(inputs, cfg)
    log.info("%s at depth %d: %d atoms in the base", cfg.check, cfg.depth, len(slice_.atoms))
    return check(inputs, slice_, cfg)
