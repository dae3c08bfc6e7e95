"""Language equivalence for constant-jump DFAwtl via classical automata.

A machine that never has more than ``k`` jumps outstanding is simulated by
an NFA reading its input strictly left to right. A jump is guessed with an
ε-move that records the consumed letter as *owed*, together with the
translucent set of the jumping state. When the owed letter physically
arrives on the tape it is paid off instead of being read again. The guards
make the guesses honest: every letter passed over while an entry is owed
must have been translucent for the state that created that entry.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .core import DfaWtl, EpsNfa, as_word, deficiency, trim
from .errors import AlphabetMismatch, NotConstant
from .jumpcx import classify
from .sim import run


@dataclass(frozen=True)
class OwedEntry:
    letter: str
    guard: frozenset

    def __post_init__(self):
        if self.letter in self.guard:
            raise ValueError("a jump-consumed letter is never translucent for the jumping state")

    def __str__(self):
        return f"{self.letter}/{''.join(sorted(self.guard))}"


@dataclass(frozen=True)
class AmortState:
    base: object
    pending: tuple = ()  # OwedEntry, oldest first


def _letter_moves(M: DfaWtl, s: AmortState, c: str):
    """Targets of ``s`` on the tape letter ``c`` (no ε-moves)."""
    pending = s.pending
    for j, e in enumerate(pending):
        if e.letter == c:
            # forced amortization of the oldest entry owing c
            if all(c in f.guard for f in pending[:j]):
                return [AmortState(s.base, pending[:j] + pending[j + 1:])]
            return []
    p = M.next(s.base, c)
    if p is None or not all(c in e.guard for e in pending):
        return []
    return [AmortState(p, pending)]


def _epsilon_moves(M: DfaWtl, s: AmortState, k: int, guards: dict):
    if len(s.pending) >= k:
        return []
    guard = guards[s.base]
    if not guard:
        return []
    out = []
    for b in M.alphabet:
        p = M.next(s.base, b)
        if p is not None:
            out.append(AmortState(p, s.pending + (OwedEntry(b, guard),)))
    return out


def amortizing_eps_nfa(M: DfaWtl, k: int | None = None) -> EpsNfa:
    """The owed-queue construction with its ε-moves still present."""
    if k is None:
        k = max(len(M.states) - 1, 0)
    guards = {q: deficiency(M, q) for q in M.states}
    start = AmortState(M.initial)
    order = [start]
    seen = {start}
    delta: dict = {}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        moves = [(None, t) for t in _epsilon_moves(M, s, k, guards)]
        moves += [(c, t) for c in M.alphabet for t in _letter_moves(M, s, c)]
        for c, t in moves:
            delta.setdefault((s, c), set()).add(t)
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    finals = {s for s in order if not s.pending and s.base in M.finals}
    return EpsNfa(M.alphabet, tuple(order), start, finals, delta)


def build_amortizing_nfa(M: DfaWtl, k: int | None = None, check: bool = True) -> EpsNfa:
    """ε-free NFA accepting ``L(M)`` for a constant-jump machine ``M``.

    ``k`` bounds the number of owed letters; the default ``len(Q) - 1``
    suffices because such machines never make ``len(Q)`` jumps on an
    accepted word.
    """
    if check and not classify(M).is_constant:
        raise NotConstant("the automaton has linear jump complexity")
    return _prune(amortizing_eps_nfa(trim(M), k).remove_epsilon())


def _prune(N: EpsNfa) -> EpsNfa:
    """Drop states no longer reachable once ε-arcs are gone."""
    seen = {N.initial}
    order = [N.initial]
    queue = deque([N.initial])
    while queue:
        q = queue.popleft()
        for c in N.alphabet:
            for p in sorted(N.targets(q, c), key=repr):
                if p not in seen:
                    seen.add(p)
                    order.append(p)
                    queue.append(p)
    delta = {(q, c): ps for (q, c), ps in N.delta.items() if q in seen}
    return EpsNfa(N.alphabet, tuple(order), N.initial, N.finals & seen, delta)


# -- classical determinisation and equivalence -------------------------------


@dataclass(frozen=True, eq=False)
class Dfa:
    """Classical partial DFA; a missing transition rejects."""

    alphabet: tuple
    states: tuple
    initial: object
    finals: frozenset
    delta: dict

    def accepts(self, w) -> bool:
        q = self.initial
        for a in as_word(w, self.alphabet):
            q = self.delta.get((q, a))
            if q is None:
                return False
        return q in self.finals


def subset_construction(N: EpsNfa) -> Dfa:
    """Powerset determinisation over the reachable subsets."""
    if N.has_epsilon:
        N = N.remove_epsilon()
    start = frozenset([N.initial])
    order = [start]
    seen = {start}
    delta = {}
    queue = deque([start])
    while queue:
        S = queue.popleft()
        for c in N.alphabet:
            T = set()
            for q in S:
                T |= N.targets(q, c)
            if not T:
                continue
            T = frozenset(T)
            delta[(S, c)] = T
            if T not in seen:
                seen.add(T)
                order.append(T)
                queue.append(T)
    finals = {S for S in order if not S.isdisjoint(N.finals)}
    return Dfa(N.alphabet, tuple(order), start, frozenset(finals), delta)


def dfa_equivalence(D1: Dfa, D2: Dfa):
    """``None`` if the languages agree, else the length-lex least word in
    exactly one of them (letters ordered as in ``D1.alphabet``)."""
    if set(D1.alphabet) != set(D2.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {D1.alphabet} vs {D2.alphabet}")
    start = (D1.initial, D2.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in D1.finals if p is not None else False) != (q in D2.finals if q is not None else False):
            word = []
            while parent[pair] is not None:
                pair, a = parent[pair]
                word.append(a)
            return tuple(reversed(word))
        for a in D1.alphabet:
            nxt = (D1.delta.get((p, a)) if p is not None else None,
                   D2.delta.get((q, a)) if q is not None else None)
            if nxt == (None, None) or nxt in parent:
                continue
            parent[nxt] = (pair, a)
            queue.append(nxt)
    return None


class Equivalence(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    NOT_APPLICABLE = "NotApplicable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EquivalenceVerdict:
    answer: Equivalence
    witness: tuple | None = None
    side: str | None = None  # "left" or "right" for NotApplicable


def decide_equivalence(A: DfaWtl, B: DfaWtl) -> EquivalenceVerdict:
    if set(A.alphabet) != set(B.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {A.alphabet} vs {B.alphabet}")
    for side, M in (("left", A), ("right", B)):
        if not classify(M).is_constant:
            return EquivalenceVerdict(Equivalence.NOT_APPLICABLE, side=side)
    # B is re-expressed over A's letter order so tie-breaks follow A.
    B = DfaWtl(A.alphabet, B.states, B.initial, B.finals, B.delta)
    DA = subset_construction(build_amortizing_nfa(A, check=False))
    DB = subset_construction(build_amortizing_nfa(B, check=False))
    w = dfa_equivalence(DA, DB)
    if w is None:
        return EquivalenceVerdict(Equivalence.EQUAL)
    if run(A, w).accepted == run(B, w).accepted:
        raise AssertionError(f"distinguishing word {w!r} is not confirmed by simulation")
    return EquivalenceVerdict(Equivalence.NOT_EQUAL, witness=w)
