"""Plain-text automaton format.

::

    # optional leading comment
    alphabet: a b
    states: q0 q1
    initial: q0
    final: q0
    q0 a q1
    q1 b q0

One transition per line as ``source letter target``. NFAs repeat
``(source, letter)`` pairs and use the token ``epsilon`` for ε-arcs.
"""
from __future__ import annotations

from importlib import resources

from .core import EPSILON, AutomatonDoc, DfaWtl, EpsNfa, validate

HEADERS = ("alphabet", "states", "initial", "final")


class ParseError(ValueError):
    """``kind`` is one of ``SyntaxError``, ``UnknownLetter``, ``MissingSection``."""

    def __init__(self, kind: str, message: str, line: int | None = None, column: int | None = None):
        self.kind = kind
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{kind}: {where}{message}")


def parse_automaton(text: str) -> AutomatonDoc:
    headers: dict = {}
    header_pos: dict = {}
    transitions = []
    comment = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, note = raw.partition("#")
        if not body.strip():
            if "#" in raw and not seen_content:
                comment.append(note.strip())
            continue
        seen_content = True
        col = len(body) - len(body.lstrip()) + 1
        if ":" in body:
            key, _, rest = body.partition(":")
            key = key.strip()
            if key == "finals":
                key = "final"
            if key not in HEADERS:
                raise ParseError("SyntaxError", f"unknown section {key!r}", lineno, col)
            if key in headers:
                raise ParseError("SyntaxError", f"section {key!r} given twice", lineno, col)
            headers[key] = tuple(rest.split())
            header_pos[key] = (lineno, body.index(":") + 2)
            continue
        tokens = body.split()
        if len(tokens) != 3:
            raise ParseError("SyntaxError",
                             f"expected 'source letter target', got {len(tokens)} tokens", lineno, col)
        letter_col = body.index(tokens[1], body.index(tokens[0]) + len(tokens[0])) + 1
        transitions.append((tuple(tokens), lineno, letter_col))

    for key in HEADERS:
        if key not in headers:
            raise ParseError("MissingSection", f"no '{key}:' section")
    initial = headers["initial"]
    if len(initial) != 1:
        line, col = header_pos["initial"]
        raise ParseError("SyntaxError", "exactly one initial state expected", line, col)
    alphabet = headers["alphabet"]
    if EPSILON in alphabet:
        line, col = header_pos["alphabet"]
        raise ParseError("SyntaxError", f"{EPSILON!r} is reserved for ε-arcs", line, col)
    for (q, a, p), lineno, col in transitions:
        if a not in alphabet and a != EPSILON:
            raise ParseError("UnknownLetter", f"letter {a!r} is not in the alphabet", lineno, col)

    return AutomatonDoc(alphabet, headers["states"], initial[0], headers["final"],
                        _canonical(headers["states"], alphabet, [t for t, _, _ in transitions]),
                        tuple(comment))


def _canonical(states, alphabet, transitions):
    s_rank = {q: i for i, q in enumerate(states)}
    a_rank = {a: i for i, a in enumerate(alphabet)}
    big = len(states) + len(alphabet) + 1

    def key(t):
        q, a, p = t
        return (s_rank.get(q, big), str(q), a_rank.get(a, big), s_rank.get(p, big), str(p))

    return tuple(sorted(dict.fromkeys(transitions), key=key))


def serialize_automaton(doc: AutomatonDoc) -> str:
    lines = [f"# {c}" if c else "#" for c in doc.comment]
    lines.append(_header("alphabet", doc.alphabet))
    lines.append(_header("states", doc.states))
    lines.append(_header("initial", (doc.initial,)))
    lines.append(_header("final", doc.finals))
    for q, a, p in _canonical(doc.states, doc.alphabet, doc.transitions):
        lines.append(f"{q} {a} {p}")
    return "\n".join(lines) + "\n"


def _header(key, values):
    return f"{key}: {' '.join(values)}".rstrip()


def state_token(q) -> str:
    """Whitespace-free rendering of constructed states such as ``(q, m, n)``."""
    if isinstance(q, str):
        return q
    if isinstance(q, tuple):
        return "<" + ",".join(state_token(x) for x in q) + ">"
    if isinstance(q, frozenset):
        return "{" + ",".join(sorted(state_token(x) for x in q)) + "}"
    base = getattr(q, "base", None)
    if base is not None:  # AmortState
        return f"{state_token(base)}[{','.join(str(e) for e in q.pending)}]"
    return str(q)


def doc_from_automaton(M, comment=()) -> AutomatonDoc:
    """Describe a :class:`DfaWtl` or :class:`EpsNfa` as a document."""
    if isinstance(M, DfaWtl):
        d = M.to_doc()
        return AutomatonDoc(d.alphabet, tuple(map(state_token, d.states)), state_token(d.initial),
                            tuple(map(state_token, d.finals)),
                            tuple((state_token(q), a, state_token(p)) for q, a, p in d.transitions),
                            tuple(comment))
    if isinstance(M, EpsNfa):
        names = {q: state_token(q) for q in M.states}
        if len(set(names.values())) != len(names):
            names = {q: f"s{i}" for i, q in enumerate(M.states)}
        return AutomatonDoc(
            M.alphabet, tuple(names[q] for q in M.states), names[M.initial],
            tuple(names[q] for q in M.states if q in M.finals),
            tuple((names[q], EPSILON if a is None else a, names[p]) for q, a, p in M.arcs()),
            tuple(comment))
    raise TypeError(f"cannot describe {type(M).__name__}")


def load_automaton(path) -> DfaWtl:
    with open(path, encoding="utf-8") as fh:
        return validate(parse_automaton(fh.read()))


CORPUS = ("balanced", "abc_linear", "astar", "twoword", "loop_ab", "abba_dfa")


def corpus_text(name: str) -> str:
    return resources.files("dfawtl").joinpath("corpus", f"{name}.wtl").read_text(encoding="utf-8")


def load_corpus(name: str) -> DfaWtl:
    """One of the shipped fixture machines, by name (see ``CORPUS``)."""
    return validate(parse_automaton(corpus_text(name)))


def corpus_path(name: str):
    return resources.files("dfawtl").joinpath("corpus", f"{name}.wtl")
