import pytest

from corpus import CORPUS_DIR, INPUT_FILES, check_entry, discover, normalize, parse_golden, regen, render_golden

ENTRIES = discover()


def test_bundled_entries():
    names = [entry.name for entry in ENTRIES]
    assert names == sorted(["append", "even_odd", "member", "p_loop", "p_not_p", "reach", "reverse", "win"])
    for entry in ENTRIES:
        for filename, _ in INPUT_FILES:
            assert entry.file(filename).exists(), f"{entry.name}/{filename}"
        assert entry.expected_path.exists()


@pytest.mark.slow
@pytest.mark.parametrize("entry", ENTRIES, ids=[e.name for e in ENTRIES])
def test_entry_matches_its_golden(entry, request):
    if request.config.getoption("--regen-golden"):
        regen(entry)
        return
    problems = check_entry(entry)
    assert problems == [], "\n".join(problems)


def test_argv_puts_inputs_before_flags():
    entry = next(e for e in ENTRIES if e.name == "win")
    argv = entry.argv("check-terminate --depth 0")
    assert argv[0] == "check-terminate"
    assert argv[1] == str(CORPUS_DIR / "win" / "program.pl")
    assert argv[3:5] == ["--spec-compl", str(CORPUS_DIR / "win" / "compl.spec")]
    assert argv[-2:] == ["--depth", "0"]


def test_parse_golden():
    text = "# comment\n$ check-correct --depth 1\nRESULT check-correct pass violations=0\nEXIT 0\n\n$ solve --query p\nEXIT 3\n"
    assert parse_golden(text) == [
        ("check-correct --depth 1", ["RESULT check-correct pass violations=0", "EXIT 0"]),
        ("solve --query p", ["EXIT 3"]),
    ]
    assert parse_golden(render_golden(parse_golden(text))) == parse_golden(text)
    with pytest.raises(ValueError):
        parse_golden("RESULT stray\n")


def test_normalize_drops_counts_and_violation_lines():
    output = ("RESULT check-correct fail checked=12 violations=2 frontier=3\n"
              'VIOLATION kind=CORR clause=1 instance="q(a)" note=""\n'
              "SOLVE answers=1\nANSWER X=a\n")
    assert normalize(output, 1) == ["RESULT check-correct fail violations=2", "SOLVE answers=1", "EXIT 1"]
