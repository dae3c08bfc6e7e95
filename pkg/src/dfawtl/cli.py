"""Command-line front end.

Exit codes: 0 success, 1 negative verdict (rejected word, NonRegular,
NotEqual), 2 usage or parse error, 3 precondition violation.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import amortize, jumpcx, regular, sim
from .core import as_word, format_word
from .errors import BoundTooLarge, InvalidAutomaton, LetterOutsideAlphabet, PreconditionViolated
from .textfmt import ParseError, doc_from_automaton, load_automaton, serialize_automaton

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3
REPORT_KEYS = ("command", "verdict", "witness", "evidence", "elapsed_ms")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _word(M, text):
    return M.check_word(as_word(text, M.alphabet))


def _linear_witness(w):
    return {"prefix": format_word(w.prefix), "pump": format_word(w.pump),
            "suffix": format_word(w.suffix), "jumps_per_iteration": w.jumps_per_iteration}


def cmd_validate(args):
    M = load_automaton(args.file)
    return EXIT_OK, "valid", None, {"states": len(M.states), "alphabet": list(M.alphabet)}, []


def cmd_run(args):
    M = load_automaton(args.file)
    t = sim.run(M, _word(M, args.word))
    steps = [{"kind": str(s.kind), "letter": s.letter, "index": s.consumed_index,
              "from": str(s.source), "to": str(s.target)} for s in t.steps]
    lines = [f"{s['from']} --{s['letter']}--> {s['to']}  "
             f"{s['kind'].lower()}{' @' + str(s['index']) if s['index'] else ''}" for s in steps]
    lines.append(f"jumps: {t.jump_count}")
    code = EXIT_OK if t.accepted else EXIT_NEGATIVE
    return code, str(t.outcome), None, {"steps": steps, "jump_count": t.jump_count}, lines


def cmd_jc(args):
    M = load_automaton(args.file)
    value = sim.jc_word(M, _word(M, args.word))
    if value is None:
        return EXIT_NEGATIVE, "undefined", None, {"word": args.word}, []
    return EXIT_OK, str(value), None, {"word": args.word, "jc": value}, []


def cmd_profile(args):
    M = load_automaton(args.file)
    table = sim.jc_profile(M, args.max_len, bound=max(args.max_len, sim.DEFAULT_BOUND))
    lines = ["n\tJC"] + [f"{n}\t{'undefined' if v is None else v}" for n, v in table.items()]
    evidence = {str(n): v for n, v in table.items()}
    return EXIT_OK, "profile", None, evidence, lines


def cmd_classify(args):
    M = load_automaton(args.file)
    verdict = jumpcx.classify(M)
    if verdict.is_constant:
        return EXIT_OK, "Constant", None, {"states": len(M.states)}, []
    report = jumpcx.verify_witness(M, verdict.witness, args.verify_depth,
                                   bound=max(args.verify_depth, sim.DEFAULT_BOUND))
    tr = verdict.trigger
    evidence = {"trigger": tr.variant, "letter": tr.letter, "verified_depth": report.checked,
                "verified": report.passed}
    lines = [f"witness: {verdict.witness}",
             f"trigger: {tr.variant} on letter {tr.letter}",
             f"verified to depth {report.checked}: {'yes' if report.passed else 'NO'}"]
    return EXIT_OK, "Linear", _linear_witness(verdict.witness), evidence, lines


def cmd_regular(args):
    M = load_automaton(args.file)
    verdict = regular.decide_regular(M)
    if verdict.regular:
        lines = [f"counter automaton: {len(verdict.nfa.states)} states"]
        if args.emit_nfa:
            with open(args.emit_nfa, "w", encoding="utf-8") as fh:
                fh.write(serialize_automaton(doc_from_automaton(verdict.nfa)))
            lines.append(f"written to {args.emit_nfa}")
        return EXIT_OK, "Regular", None, {"nfa_states": len(verdict.nfa.states)}, lines
    w = verdict.witness
    failures = regular.verify_nonregular_witness(M, w, args.verify_depth)
    witness = {"u": format_word(w.u), "b_block": format_word(w.b_block),
               "a_block": format_word(w.a_block), "v": format_word(w.v)}
    evidence = {"cycle": str(verdict.cycle), "letter": verdict.cycle.letter,
                "verified_depth": args.verify_depth, "verified": not failures}
    lines = [f"cycle: {verdict.cycle}", f"witness: {w}"]
    return EXIT_NEGATIVE, "NonRegular", witness, evidence, lines


def cmd_equiv(args):
    A, B = load_automaton(args.file1), load_automaton(args.file2)
    verdict = amortize.decide_equivalence(A, B)
    if verdict.answer is amortize.Equivalence.NOT_APPLICABLE:
        raise PreconditionViolated(f"{verdict.side} automaton has linear jump complexity")
    if verdict.answer is amortize.Equivalence.EQUAL:
        return EXIT_OK, "Equal", None, {}, []
    word = format_word(verdict.witness)
    return (EXIT_NEGATIVE, "NotEqual", word,
            {"accepted_by": "left" if sim.run(A, verdict.witness).accepted else "right"},
            [f"NotEqual, witness: {word}"])


def cmd_to_nfa(args):
    M = load_automaton(args.file)
    N = amortize.build_amortizing_nfa(M)
    text = serialize_automaton(doc_from_automaton(N))
    lines = []
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        lines.append(f"written to {args.out}")
    else:
        lines.extend(text.rstrip("\n").splitlines())
    return EXIT_OK, "nfa", None, {"states": len(N.states)}, lines


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable report")
    common.add_argument("--max-len", type=int, default=argparse.SUPPRESS,
                        help="enumeration length bound (default 12)")
    common.add_argument("--verify-depth", type=int, default=argparse.SUPPRESS,
                        help="pump iterations to verify (default 8)")
    common.add_argument("--force", action="store_true", default=argparse.SUPPRESS,
                        help="allow bounds above the default limit")

    parser = _Parser(prog="dfawtl", parents=[common],
                     description="Finite automata with translucent letters")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, *positional, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "file", help="check an automaton file")
    add("run", cmd_run, "file", "word", help="trace the computation on WORD")
    add("jc", cmd_jc, "file", "word", help="jump count of WORD")
    add("profile", cmd_profile, "file", help="maximum jump count per length")
    add("classify", cmd_classify, "file", help="constant or linear jump complexity")
    p = add("regular", cmd_regular, "file", help="regularity (binary alphabets)")
    p.add_argument("--emit-nfa", metavar="PATH")
    add("equiv", cmd_equiv, "file1", "file2", help="equivalence of constant-jump machines")
    p = add("to-nfa", cmd_to_nfa, "file", help="classical NFA for a constant-jump machine")
    p.add_argument("--out", metavar="PATH")
    return parser


def _defaults(args):
    for name, value in (("json", False), ("max_len", sim.DEFAULT_BOUND),
                        ("verify_depth", regular.VERIFY_DEPTH), ("force", False)):
        if not hasattr(args, name):
            setattr(args, name, value)
    return args


def dispatch(argv) -> tuple[int, str]:
    """Run one command; returns ``(exit_code, output_text)``."""
    start = time.perf_counter()
    as_json = "--json" in argv
    command = next((a for a in argv if not a.startswith("-")), None)
    try:
        args = _defaults(build_parser().parse_args(argv))
        if getattr(args, "func", None) is None:
            raise _UsageError("a subcommand is required")
        command = args.command
        if (args.max_len > sim.DEFAULT_BOUND or args.verify_depth > sim.DEFAULT_BOUND) \
                and not args.force:
            raise BoundTooLarge(f"bounds above {sim.DEFAULT_BOUND} need --force")
        code, verdict, witness, evidence, lines = args.func(args)
    except _UsageError as e:
        code, verdict, witness, evidence, lines = EXIT_USAGE, "usage-error", None, {"error": str(e)}, []
    except (ParseError, InvalidAutomaton, LetterOutsideAlphabet, BoundTooLarge, OSError) as e:
        code, verdict, witness, evidence, lines = EXIT_USAGE, "error", None, {"error": str(e)}, []
    except PreconditionViolated as e:
        code, verdict, witness, evidence, lines = (EXIT_PRECONDITION, "precondition-violated",
                                                   None, {"error": str(e)}, [])
    elapsed = round((time.perf_counter() - start) * 1000, 3)
    if as_json:
        report = dict(zip(REPORT_KEYS, (command, verdict, witness, evidence, elapsed)))
        return code, json.dumps(report, ensure_ascii=False) + "\n"
    out = list(lines)
    if "error" in evidence:
        out.append(f"error: {evidence['error']}")
    if witness is not None and not any(line.startswith(("witness", "NotEqual")) for line in out):
        out.append(f"witness: {witness}")
    out.append(f"{command}: {verdict}")
    return code, "\n".join(out) + "\n"


def main(argv=None) -> int:
    code, text = dispatch(sys.argv[1:] if argv is None else list(argv))
    stream = sys.stderr if code == EXIT_USAGE else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
