"""Bundled corpus of example programs with golden expected outputs.

Each entry lives in ``corpus/<name>/`` with ``program.pl``, ``corr.spec``,
``compl.spec``, ``levels.lvl`` and ``expected.txt``. The golden file lists
invocations as ``$ <subcommand> <flags>`` followed by the normalized output
(``RESULT <check> <verdict> violations=<m>`` and ``SOLVE ...`` lines) and the
``EXIT <code>`` line. Goldens only change through ``regen``.
"""
import io
import logging
import shlex
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

log = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).resolve().parent / "corpus"
INPUT_FILES = (("program.pl", None), ("corr.spec", None), ("compl.spec", "--spec-compl"),
               ("levels.lvl", "--levels"))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    path: Path

    @property
    def expected_path(self) -> Path:
        return self.path / "expected.txt"

    def file(self, name: str) -> Path:
        return self.path / name

    def argv(self, command: str) -> List[str]:
        words = shlex.split(command)
        if not words:
            raise ValueError(f"{self.name}: empty command")
        argv = [words[0]]
        for filename, flag in INPUT_FILES:
            path = self.file(filename)
            if path.exists():
                argv += [flag, str(path)] if flag else [str(path)]
        return argv + words[1:]

    def commands(self) -> List[str]:
        return [command for command, _ in parse_golden(self.expected_path.read_text(encoding="utf-8"))]


def discover(root: Optional[Path] = None) -> List[CorpusEntry]:
    root = Path(root) if root else CORPUS_DIR
    return [CorpusEntry(p.name, p) for p in sorted(root.iterdir())
            if p.is_dir() and (p / "program.pl").exists()]


def parse_golden(text: str) -> List[Tuple[str, List[str]]]:
    blocks: List[Tuple[str, List[str]]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("$ "):
            blocks.append((line[2:].strip(), []))
        elif blocks:
            blocks[-1][1].append(line)
        else:
            raise ValueError(f"golden line outside a command block: {line}")
    return blocks


def normalize(output: str, code: int) -> List[str]:
    lines = []
    for line in output.splitlines():
        if line.startswith("RESULT "):
            words = line.split()
            violations = next(w for w in words if w.startswith("violations="))
            lines.append(" ".join(words[:3] + [violations]))
        elif line.startswith("SOLVE "):
            lines.append(line)
    lines.append(f"EXIT {code}")
    return lines


def run_command(entry: CorpusEntry, command: str) -> List[str]:
    import lpv
    out, err = io.StringIO(), io.StringIO()
    code = lpv.run(entry.argv(command), out, err)
    log.debug("%s: %s -> %d", entry.name, command, code)
    return normalize(out.getvalue(), code)


def render_golden(blocks: List[Tuple[str, List[str]]]) -> str:
    return "\n".join(f"$ {command}\n" + "".join(line + "\n" for line in lines) for command, lines in blocks)


def run_entry(entry: CorpusEntry) -> List[Tuple[str, List[str]]]:
    return [(command, run_command(entry, command)) for command in entry.commands()]


def check_entry(entry: CorpusEntry) -> List[str]:
    """Mismatch descriptions; empty when the entry matches its golden."""
    expected = parse_golden(entry.expected_path.read_text(encoding="utf-8"))
    problems = []
    for command, lines in expected:
        actual = run_command(entry, command)
        if actual != lines:
            problems.append(f"{entry.name}: $ {command}\n  expected: {lines}\n  actual:   {actual}")
    return problems


def regen(entry: CorpusEntry) -> None:
    entry.expected_path.write_text(render_golden(run_entry(entry)), encoding="utf-8")
    log.info("rewrote %s", entry.expected_path)
