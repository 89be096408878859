import io

from reports import ViolationKind
from runner import RunConfig, inputs_from_text
from stability import stability_check
import lpv

EVEN = "even(0). even(s(s(X))) :- even(X)."
# q depends on an atom one level deeper than the base
SHALLOW = "q :- p(f(a)). p(f(a))."


def test_even_is_stable():
    inputs = inputs_from_text(EVEN, "even(0) := true.\neven(2) := true.\neven(4) := true.\neven(6) := true.")
    report = stability_check(RunConfig(check="check-correct", depth=4), inputs)
    assert report.passed
    assert report.stability_flag
    assert report.checked_count == 5


def test_propositional_programs_are_stable():
    inputs = inputs_from_text("p :- \\+ q. q :- \\+ p. r :- r.")
    assert stability_check(RunConfig(check=None, depth=0), inputs).passed


def test_verdict_that_depends_on_the_frontier_is_unstable():
    inputs = inputs_from_text(SHALLOW)
    report = stability_check(RunConfig(check=None, depth=0), inputs)
    assert not report.stability_flag
    [violation] = report.violations
    assert violation.kind is ViolationKind.UNSTABLE
    assert str(violation.instance) == "q"
    assert "F at depth 0, T at depth 1" in violation.note


def test_disappearing_violation_is_unstable():
    inputs = inputs_from_text(SHALLOW, "p(f(a)) := true.", "q := true.\np(f(a)) := true.")
    report = stability_check(RunConfig(check="check-semicomplete", depth=0), inputs)
    notes = [v.note for v in report.violations]
    assert "COV violation disappears at depth 1" in notes


def test_cli_reports_instability_with_exit_3(tmp_path):
    program = tmp_path / "shallow.pl"
    program.write_text(SHALLOW, encoding="utf-8")
    out, err = io.StringIO(), io.StringIO()
    assert lpv.run(["stability", str(program), "--depth", "0"], out, err) == 3
    assert out.getvalue().startswith("RESULT stability fail checked=2 violations=1")
