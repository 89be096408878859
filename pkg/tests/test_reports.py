from reports import Violation, ViolationKind, build_report, render_report, report_to_dict
from syntax import parse_atom, parse_program


def test_machine_format():
    clause = parse_program("q(a).").clauses[0]
    report = build_report("check-correct", 3, [Violation(ViolationKind.CORR, clause, 1, "head q(a) is not")], 2)
    assert render_report(report) == (
        "RESULT check-correct fail checked=3 violations=1 frontier=2\n"
        'VIOLATION kind=CORR clause=1 instance="q(a)" note="head q(a) is not"\n'
    )


def test_quotes_are_escaped():
    report = build_report("check-semicomplete", 1, [Violation(ViolationKind.COV, parse_atom("p('say \"hi\"')"))])
    line = render_report(report).splitlines()[1]
    assert line.startswith("VIOLATION kind=COV clause=- instance=")
    assert '\\"hi\\"' in line


def test_vacuous_note():
    report = build_report("check-complete", 0, [])
    assert report.passed and report.vacuous
    assert render_report(report) == 'RESULT check-complete pass checked=0 violations=0 frontier=0 note="vacuous"\n'


def test_canonical_order_ignores_discovery_order():
    atoms = [parse_atom(t) for t in ("q(b)", "p(f(a))", "p(b)", "p(a)")]
    shuffled = build_report("x", 4, [Violation(ViolationKind.COV, a) for a in atoms])
    ordered = build_report("x", 4, [Violation(ViolationKind.COV, a) for a in reversed(atoms)])
    assert shuffled == ordered
    assert [str(v.instance) for v in shuffled.violations] == ["p(a)", "p(b)", "p(f(a))", "q(b)"]


def test_atom_sorts_before_clause_with_the_same_head():
    clause = parse_program("p(a) :- q(a).").clauses[0]
    report = build_report("x", 2, [Violation(ViolationKind.K2, clause, 1), Violation(ViolationKind.K1, clause.head)])
    assert [v.kind for v in report.violations] == [ViolationKind.K1, ViolationKind.K2]


def test_limit_keeps_the_count():
    violations = [Violation(ViolationKind.COV, parse_atom(f"p({n})")) for n in range(5)]
    report = build_report("x", 5, violations, limit=2)
    assert report.violation_count == 5
    assert len(report.violations) == 2
    assert render_report(report).count("VIOLATION") == 2


def test_unstable_report_is_flagged():
    report = build_report("check-terminate", 4, [], 0, stable=False)
    assert render_report(report) == 'RESULT check-terminate pass checked=4 violations=0 frontier=0 note="unstable"\n'
    assert "unstable under depth increase" in render_report(report, "human")
    assert report_to_dict(report)["stable"] is False


def test_human_format_and_dict():
    clause = parse_program("p :- p.").clauses[0]
    report = build_report("check-terminate", 1,
                          [Violation(ViolationKind.TERM, clause, 1, "level 1 is not below 1", 1)])
    text = render_report(report, "human")
    assert text.startswith("check-terminate: FAIL (1 checked, 1 violations, 0 frontier instances)")
    assert "[TERM] clause 1 literal 1: p :- p" in text
    data = report_to_dict(report)
    assert data["pass"] is False
    assert data["listed"] == [{"kind": "TERM", "clause": 1, "position": 1, "instance": "p :- p",
                               "note": "level 1 is not below 1"}]
