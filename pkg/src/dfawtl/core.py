"""Automaton data model, validation, trimming and digraph reachability."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidAutomaton, LetterOutsideAlphabet, UnknownStateError

State = Hashable
Letter = str
Word = tuple  # tuple of letters

EPSILON = "epsilon"


def as_word(w, alphabet: Sequence[Letter] | None = None) -> Word:
    """Normalise ``w`` to a tuple of letters.

    Strings are split per character; if the alphabet has multi-character
    tokens a string is split on whitespace instead.
    """
    if isinstance(w, str):
        if w in ("", "ε"):
            return ()
        if alphabet is not None and any(len(a) != 1 for a in alphabet):
            return tuple(w.split())
        return tuple(w)
    return tuple(w)


def format_word(w: Iterable[Letter]) -> str:
    w = tuple(w)
    if not w:
        return "ε"
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(w)


# -- raw descriptions --------------------------------------------------------


@dataclass(frozen=True)
class AutomatonDoc:
    """Raw automaton description, as parsed from text; not yet validated."""

    alphabet: tuple = ()
    states: tuple = ()
    initial: State | None = None
    finals: tuple = ()
    transitions: tuple = ()  # (source, letter, target) triples
    comment: tuple = ()  # leading comment lines, without '#'


@dataclass(frozen=True)
class Issue:
    kind: str  # Nondeterministic | UnknownState | UnknownLetter | MissingInitial
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


# -- automata ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DfaWtl:
    """Deterministic finite automaton with translucent letters.

    ``delta`` is partial: an absent ``(state, letter)`` key means the letter
    is translucent for that state.
    """

    alphabet: tuple
    states: tuple
    initial: State
    finals: frozenset
    delta: Mapping
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", dict(self.delta))
        object.__setattr__(self, "_index", {q: i for i, q in enumerate(self.states)})
        issues = _model_issues(self.alphabet, self.states, self.initial, self.finals,
                               ((q, a, p) for (q, a), p in self.delta.items()))
        if issues:
            raise InvalidAutomaton(issues)

    def __eq__(self, other):
        if not isinstance(other, DfaWtl):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.states == other.states
                and self.initial == other.initial and self.finals == other.finals
                and self.delta == other.delta)

    __hash__ = None

    def index(self, q: State) -> int:
        try:
            return self._index[q]
        except KeyError:
            raise UnknownStateError(q) from None

    def next(self, q: State, a: Letter):
        return self.delta.get((q, a))

    def arcs(self):
        """Transitions as ``(source, letter, target)`` in declared order."""
        for q in self.states:
            for a in self.alphabet:
                p = self.delta.get((q, a))
                if p is not None:
                    yield q, a, p

    def check_word(self, w) -> Word:
        w = as_word(w, self.alphabet)
        letters = set(self.alphabet)
        for a in w:
            if a not in letters:
                raise LetterOutsideAlphabet(f"letter {a!r} not in alphabet {self.alphabet}")
        return w

    def as_nfa(self) -> NfaWtl:
        return NfaWtl(self.alphabet, self.states, self.initial, self.finals,
                      {k: frozenset([v]) for k, v in self.delta.items()})

    def to_doc(self) -> AutomatonDoc:
        return AutomatonDoc(self.alphabet, self.states, self.initial,
                            tuple(q for q in self.states if q in self.finals),
                            tuple(self.arcs()))

    def __len__(self):
        return len(self.states)


@dataclass(frozen=True, eq=False)
class NfaWtl:
    """Nondeterministic variant: ``delta`` maps to sets of targets."""

    alphabet: tuple
    states: tuple
    initial: State
    finals: frozenset
    delta: Mapping

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", {k: frozenset(v) for k, v in self.delta.items() if v})
        issues = _model_issues(self.alphabet, self.states, self.initial, self.finals,
                               ((q, a, p) for (q, a), ps in self.delta.items() for p in ps))
        if issues:
            raise InvalidAutomaton(issues)

    def targets(self, q, a) -> frozenset:
        return self.delta.get((q, a), frozenset())


@dataclass(frozen=True, eq=False)
class EpsNfa:
    """Classical NFA, optionally with ε-arcs (letter ``None``).

    States may be any hashable values; the analyses build states such as
    ``(q, m, n)`` tuples.
    """

    alphabet: tuple
    states: tuple
    initial: State
    finals: frozenset
    delta: Mapping  # (state, letter | None) -> frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", {k: frozenset(v) for k, v in self.delta.items() if v})

    @property
    def has_epsilon(self) -> bool:
        return any(a is None for (_, a) in self.delta)

    def targets(self, q, a) -> frozenset:
        return self.delta.get((q, a), frozenset())

    def closure(self, qs) -> frozenset:
        seen = set(qs)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for p in self.delta.get((q, None), ()):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def step(self, qs, a) -> frozenset:
        out = set()
        for q in qs:
            out |= self.delta.get((q, a), frozenset())
        return self.closure(out)

    def accepts(self, w) -> bool:
        current = self.closure({self.initial})
        for a in as_word(w, self.alphabet):
            current = self.step(current, a)
            if not current:
                return False
        return not current.isdisjoint(self.finals)

    def remove_epsilon(self) -> EpsNfa:
        """Equivalent ε-free NFA over the same state set."""
        if not self.has_epsilon:
            return self
        delta = {}
        finals = set()
        for q in self.states:
            cq = self.closure({q})
            if not cq.isdisjoint(self.finals):
                finals.add(q)
            for a in self.alphabet:
                out = set()
                for r in cq:
                    out |= self.delta.get((r, a), frozenset())
                if out:
                    delta[(q, a)] = self.closure(out)
        return EpsNfa(self.alphabet, self.states, self.initial, finals, delta)

    def arcs(self):
        letters = (*self.alphabet, None)
        for q in self.states:
            for a in letters:
                for p in sorted(self.delta.get((q, a), ()), key=_state_key):
                    yield q, a, p


def _state_key(q):
    return repr(q)


def _model_issues(alphabet, states, initial, finals, triples) -> list[Issue]:
    issues = []
    state_set = set(states)
    letters = set(alphabet)
    if initial is None:
        issues.append(Issue("MissingInitial", "no initial state declared"))
    elif initial not in state_set:
        issues.append(Issue("UnknownState", f"initial state {initial!r} is not declared"))
    for f in finals:
        if f not in state_set:
            issues.append(Issue("UnknownState", f"final state {f!r} is not declared"))
    for q, a, p in triples:
        if a not in letters:
            issues.append(Issue("UnknownLetter", f"transition {q} {a} {p}: letter {a!r}"))
        for s in (q, p):
            if s not in state_set:
                issues.append(Issue("UnknownState", f"transition {q} {a} {p}: state {s!r}"))
    return issues


def _doc_fields(doc):
    if isinstance(doc, Mapping):
        return (tuple(doc.get("alphabet", ())), tuple(doc.get("states", ())), doc.get("initial"),
                tuple(doc.get("finals", doc.get("final", ()))), tuple(doc.get("transitions", ())))
    return doc.alphabet, doc.states, doc.initial, doc.finals, doc.transitions


def validate(doc) -> DfaWtl:
    """Turn a raw description into a :class:`DfaWtl`.

    Accepts an :class:`AutomatonDoc` or a mapping with the same keys.
    Raises :class:`InvalidAutomaton` listing every violation found.
    """
    alphabet, states, initial, finals, transitions = _doc_fields(doc)
    issues = _model_issues(alphabet, states, initial, finals, transitions)
    delta = {}
    reported = set()
    for q, a, p in transitions:
        if a == EPSILON and a not in alphabet:
            continue  # already reported as UnknownLetter
        prev = delta.get((q, a))
        if prev is not None and prev != p and (q, a) not in reported:
            reported.add((q, a))
            issues.append(Issue("Nondeterministic", f"state {q!r} has several targets on {a!r}"))
        delta.setdefault((q, a), p)
    if issues:
        raise InvalidAutomaton(issues)
    return DfaWtl(alphabet, states, initial, finals, delta)


def validate_nfa(doc) -> EpsNfa:
    """Validate a description as a classical NFA; ``epsilon`` marks ε-arcs."""
    alphabet, states, initial, finals, transitions = _doc_fields(doc)
    plain = [(q, a, p) for q, a, p in transitions if a != EPSILON]
    issues = _model_issues(alphabet, states, initial, finals, plain)
    state_set = set(states)
    for q, a, p in transitions:
        if a == EPSILON:
            issues += [Issue("UnknownState", f"transition {q} {a} {p}: state {s!r}")
                       for s in (q, p) if s not in state_set]
    if issues:
        raise InvalidAutomaton(issues)
    delta: dict = {}
    for q, a, p in transitions:
        delta.setdefault((q, None if a == EPSILON else a), set()).add(p)
    return EpsNfa(alphabet, states, initial, finals, delta)


# -- deficiency and trimming -------------------------------------------------


def deficiency(M: DfaWtl, q: State) -> frozenset:
    """Letters with no transition from ``q``: the letters ``q`` can jump over."""
    M.index(q)
    return frozenset(a for a in M.alphabet if (q, a) not in M.delta)


def _bfs(start, succ):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in succ(v):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def empty_automaton(alphabet, state="q0") -> DfaWtl:
    return DfaWtl(alphabet, (state,), state, (), {})


SINK = "⊥"


def coreachable(M: DfaWtl) -> set:
    """States from which some final state is reachable."""
    pred = {q: [] for q in M.states}
    for q, _, p in M.arcs():
        pred[p].append(q)
    out = set()
    for f in M.finals:
        if f not in out:
            out |= _bfs(f, pred.__getitem__)
    return out


def trim(M: DfaWtl) -> DfaWtl:
    """Remove states that are unreachable or cannot reach a final state.

    Transitions into removed states are redirected to a single non-final
    sink without outgoing transitions. Dropping them instead would make
    their letters translucent and change the language.
    """
    succ = {q: [] for q in M.states}
    for q, _, p in M.arcs():
        succ[q].append(p)
    useful = _bfs(M.initial, succ.__getitem__) & coreachable(M)
    if M.initial not in useful:
        return empty_automaton(M.alphabet, M.initial)
    states = [q for q in M.states if q in useful]
    sink = SINK
    n = 0
    while sink in useful:
        n += 1
        sink = f"{SINK}{n}"
    delta = {}
    for (q, a), p in M.delta.items():
        if q in useful:
            delta[(q, a)] = p if p in useful else sink
    if sink in delta.values():
        states.append(sink)
    if set(states) == set(M.states) and delta == M.delta:
        return M
    return DfaWtl(M.alphabet, states, M.initial, M.finals & useful, delta)


# -- digraphs ----------------------------------------------------------------


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    arcs: tuple  # (source, target, label) with label possibly None

    def __post_init__(self):
        vs = set(self.vertices)
        for u, v, _ in self.arcs:
            if u not in vs or v not in vs:
                raise ValueError(f"arc ({u!r}, {v!r}) leaves the vertex set")

    def adjacency(self) -> np.ndarray:
        index = {v: i for i, v in enumerate(self.vertices)}
        adj = np.zeros((len(self.vertices), len(self.vertices)), dtype=bool)
        for u, v, _ in self.arcs:
            adj[index[u], index[v]] = True
        return adj


def digraph(M: DfaWtl) -> Digraph:
    return Digraph(M.states, tuple((q, p, a) for q, a, p in M.arcs()))


@dataclass(frozen=True, eq=False)
class Reachability:
    """Reflexive-transitive reachability relation over ``vertices``."""

    vertices: tuple
    matrix: np.ndarray
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    def __call__(self, p, q) -> bool:
        return bool(self.matrix[self._index[p], self._index[q]])

    def pairs(self):
        for i, j in zip(*np.nonzero(self.matrix)):
            yield self.vertices[i], self.vertices[j]


def closure_matrix(adj: np.ndarray) -> np.ndarray:
    """Floyd-Warshall style reflexive-transitive closure of a boolean matrix."""
    n = adj.shape[0]
    reach = adj.astype(bool) | np.eye(n, dtype=bool)
    for k in range(n):
        col = reach[:, k]
        if col.any():
            reach |= np.outer(col, reach[k])
    return reach


def transitive_closure(G: Digraph) -> Reachability:
    return Reachability(G.vertices, closure_matrix(G.adjacency()))


def shortest_word(M: DfaWtl, source, targets, allowed=None, min_length=0):
    """Length-lexicographically least word labelling a path ``source`` ->* target.

    ``targets`` is a state or a predicate on states; ``allowed`` restricts
    every state on the path (including both ends). Returns ``(word, path)``
    or ``None``. With ``min_length=1`` the empty path is not accepted, which
    finds cycles.
    """
    is_target = targets if callable(targets) else (lambda q, _t=targets: q == _t)
    ok = (lambda q: True) if allowed is None else allowed
    if not ok(source):
        return None
    if min_length == 0 and is_target(source):
        return (), (source,)
    # BFS visiting letters in alphabet order yields the length-lex least label.
    parent = {}
    seen = {source} if min_length == 0 else set()
    queue = deque([source])
    while queue:
        q = queue.popleft()
        for a in M.alphabet:
            p = M.delta.get((q, a))
            if p is None or p in seen or not ok(p):
                continue
            seen.add(p)
            parent[p] = (q, a)
            if is_target(p):
                return _unwind(parent, p, source)
            queue.append(p)
    return None


def _unwind(parent, end, source):
    word = []
    path = [end]
    v = end
    while True:
        u, a = parent[v]
        word.append(a)
        path.append(u)
        if u == source:
            break
        v = u
    return tuple(reversed(word)), tuple(reversed(path))
