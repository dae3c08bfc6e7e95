import json

import pytest

from dfawtl import build_counter_nfa, parse_automaton, serialize_automaton, validate, validate_nfa
from dfawtl.cli import REPORT_KEYS, dispatch, main
from dfawtl.core import empty_automaton
from dfawtl.textfmt import (CORPUS, ParseError, corpus_path, corpus_text, doc_from_automaton,
                            load_corpus)

from conftest import words

BALANCED = """\
# as many a as b
alphabet: a b
states: q0 q1
initial: q0
final: q0
q0 a q1
q1 b q0
"""


def test_parse_fixture(balanced):
    assert validate(parse_automaton(BALANCED)) == balanced


def test_parse_tolerates_blanks_and_comments(balanced):
    text = "\n# c\n\nalphabet: a b   # two letters\n\nstates: q0 q1\ninitial: q0\nfinal: q0\n" \
           "q1 b q0\n\nq0 a q1  # trailing\n"
    assert validate(parse_automaton(text)) == balanced


def test_missing_section():
    with pytest.raises(ParseError) as e:
        parse_automaton(BALANCED.replace("initial: q0\n", ""))
    assert e.value.kind == "MissingSection" and "initial" in str(e.value)


def test_unknown_letter_position():
    with pytest.raises(ParseError) as e:
        parse_automaton(BALANCED + "q0 c q1\n")
    assert e.value.kind == "UnknownLetter"
    assert (e.value.line, e.value.column) == (8, 4)


def test_syntax_errors_carry_line():
    with pytest.raises(ParseError) as e:
        parse_automaton(BALANCED + "q0 a\n")
    assert e.value.kind == "SyntaxError" and e.value.line == 8
    with pytest.raises(ParseError) as e:
        parse_automaton(BALANCED.replace("final:", "finish:"))
    assert e.value.kind == "SyntaxError" and e.value.line == 5


@pytest.mark.parametrize("name", CORPUS)
def test_round_trip(name):
    text = corpus_text(name)
    doc = parse_automaton(text)
    again = serialize_automaton(doc)
    assert parse_automaton(again) == doc
    assert serialize_automaton(parse_automaton(again)) == again


def test_fixture_text_is_canonical():
    assert serialize_automaton(parse_automaton(BALANCED)) == BALANCED
    shuffled = BALANCED.replace("q0 a q1\nq1 b q0\n", "q1 b q0\nq0 a q1\n")
    assert serialize_automaton(parse_automaton(shuffled)) == BALANCED


def test_counter_nfa_document(astar):
    text = serialize_automaton(doc_from_automaton(build_counter_nfa(astar)))
    N = validate_nfa(parse_automaton(text))
    assert all(N.accepts(w) == all(a == "a" for a in w) for w in words("ab", 6))


def test_empty_language_document():
    text = serialize_automaton(doc_from_automaton(empty_automaton(("a", "b"))))
    assert text == "alphabet: a b\nstates: q0\ninitial: q0\nfinal:\n"
    assert not validate(parse_automaton(text)).finals


# -- command line ------------------------------------------------------------


def path(name):
    return str(corpus_path(name))


MATRIX = [
    (["validate", "balanced"], 0, "valid"),
    (["run", "balanced", "ba"], 0, "Accepted"),
    (["run", "balanced", "aab"], 1, "RejectedNonFinal"),
    (["run", "balanced", "bb"], 1, "RejectedStuck"),
    (["run", "balanced", "abc"], 2, "error"),
    (["jc", "balanced", "bbaa"], 0, "2"),
    (["jc", "balanced", "aab"], 1, "undefined"),
    (["profile", "balanced", "--max-len", "6"], 0, "profile"),
    (["profile", "balanced", "--max-len", "13"], 2, "error"),
    (["classify", "balanced"], 0, "Linear"),
    (["classify", "abc_linear"], 0, "Linear"),
    (["classify", "loop_ab"], 0, "Linear"),
    (["classify", "astar"], 0, "Constant"),
    (["classify", "twoword"], 0, "Constant"),
    (["classify", "abba_dfa"], 0, "Constant"),
    (["regular", "balanced"], 1, "NonRegular"),
    (["regular", "loop_ab"], 1, "NonRegular"),
    (["regular", "astar"], 0, "Regular"),
    (["regular", "twoword"], 0, "Regular"),
    (["regular", "abc_linear"], 3, "precondition-violated"),
    (["equiv", "twoword", "abba_dfa"], 0, "Equal"),
    (["equiv", "twoword", "astar"], 1, "NotEqual"),
    (["equiv", "balanced", "balanced"], 3, "precondition-violated"),
    (["equiv", "astar", "abc_linear"], 3, "precondition-violated"),
    (["to-nfa", "twoword"], 0, "nfa"),
    (["to-nfa", "balanced"], 3, "precondition-violated"),
]


def _argv(args):
    return [path(a) if a in CORPUS else a for a in args]


@pytest.mark.parametrize("args,code,verdict", MATRIX, ids=[" ".join(m[0]) for m in MATRIX])
def test_exit_code_matrix(args, code, verdict):
    got, text = dispatch(_argv(args))
    assert got == code
    assert text.splitlines()[-1] == f"{args[0]}: {verdict}"


@pytest.mark.parametrize("args,code,verdict", MATRIX, ids=[" ".join(m[0]) for m in MATRIX])
def test_json_schema(args, code, verdict):
    got, text = dispatch(_argv(args) + ["--json"])
    report = json.loads(text)
    assert tuple(report) == REPORT_KEYS
    assert got == code
    assert report["command"] == args[0] and report["verdict"] == verdict
    assert isinstance(report["elapsed_ms"], float) and isinstance(report["evidence"], dict)


def test_usage_errors(capsys):
    assert dispatch([])[0] == 2
    assert dispatch(["frobnicate"])[0] == 2
    assert dispatch(["classify"])[0] == 2
    assert dispatch(["classify", "/no/such/file.wtl"])[0] == 2
    assert main(["classify"]) == 2
    assert "usage-error" in capsys.readouterr().err


def test_parse_error_exit(tmp_path):
    bad = tmp_path / "bad.wtl"
    bad.write_text(BALANCED.replace("initial: q0\n", ""))
    code, text = dispatch(["validate", str(bad)])
    assert code == 2 and "MissingSection" in text


def test_classify_output():
    code, text = dispatch(["classify", path("balanced")])
    assert code == 0
    assert "witness: (ε, ba, ε)" in text
    report = json.loads(dispatch(["classify", path("balanced"), "--json"])[1])
    assert report["witness"] == {"prefix": "ε", "pump": "ba", "suffix": "ε",
                                 "jumps_per_iteration": 1}
    assert report["evidence"]["verified"] is True


def test_equiv_output():
    code, text = dispatch(["equiv", path("twoword"), path("astar")])
    assert code == 1 and "NotEqual, witness: ε" in text


def test_regular_output():
    code, text = dispatch(["regular", path("abc_linear")])
    assert code == 3 and "binary" in text
    report = json.loads(dispatch(["--json", "regular", path("balanced")])[1])
    assert report["witness"] == {"u": "ε", "b_block": "b", "a_block": "a", "v": "ε"}
    assert report["evidence"]["cycle"] == "q0-a->q1-b->q0"


def test_run_trace_tags():
    _, text = dispatch(["run", path("balanced"), "ba"])
    assert "q0 --a--> q1  jump @1" in text
    assert "jumps: 1" in text


def test_profile_rows():
    _, text = dispatch(["profile", path("balanced"), "--max-len", "4"])
    assert text.splitlines()[1:6] == ["0\t0", "1\tundefined", "2\t1", "3\tundefined", "4\t2"]


def test_force_lifts_bound():
    code, _ = dispatch(["profile", path("astar"), "--max-len", "13", "--force"])
    assert code == 0


def test_emit_nfa(tmp_path):
    out = tmp_path / "astar_nfa.wtl"
    code, _ = dispatch(["regular", path("astar"), "--emit-nfa", str(out)])
    assert code == 0
    N = validate_nfa(parse_automaton(out.read_text()))
    assert N.accepts("aaa") and not N.accepts("ab")


def test_to_nfa_file(tmp_path, twoword):
    out = tmp_path / "twoword_nfa.wtl"
    code, _ = dispatch(["to-nfa", path("twoword"), "--out", str(out)])
    assert code == 0
    N = validate_nfa(parse_automaton(out.read_text()))
    assert {w for w in words("ab", 4) if N.accepts(w)} == {("a", "b"), ("b", "a")}


def test_corpus_loads():
    for name in CORPUS:
        assert load_corpus(name).states
