"""Regularity of binary DFAwtl languages.

The language of a binary DFAwtl is non-regular exactly when a reachable
closed walk uses both letters and every ``x``-arc on it leaves a state that
cannot read the other letter ``y``. Such a walk lets the machine read
``(y^(n-l))^i (x^l)^i`` back to its start, which no finite automaton can
track. Without one, pending jumps stay below ``len(Q)`` and two bounded
counters simulate the machine classically.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import DfaWtl, Digraph, EpsNfa, format_word, shortest_word, trim
from .errors import AlphabetNotBinary, PreconditionViolated
from .sim import run

VERIFY_DEPTH = 8


def _other(M: DfaWtl, x: str) -> str:
    _require_binary(M)
    if x not in M.alphabet:
        raise ValueError(f"letter {x!r} not in alphabet {M.alphabet}")
    return M.alphabet[1] if M.alphabet[0] == x else M.alphabet[0]


def _require_binary(M: DfaWtl):
    if len(M.alphabet) != 2:
        raise AlphabetNotBinary(
            f"regularity is decided for binary alphabets only; got {len(M.alphabet)} letters")


def restrict_graph(M: DfaWtl, x: str) -> Digraph:
    """All ``y``-arcs plus the ``x``-arcs leaving ``y``-deficient states."""
    y = _other(M, x)
    arcs = []
    for q, a, p in M.arcs():
        if a == y or M.next(q, y) is None:
            arcs.append((q, p, a))
    return Digraph(M.states, tuple(arcs))


@dataclass(frozen=True, eq=False)
class DpMatrix:
    """``table[i, c, p, q]``: a walk of length <= i from p to q in the
    restricted graph uses at least one arc labelled ``letters[c]``."""

    states: tuple
    letters: tuple
    table: np.ndarray

    def entry(self, i, p, q, c) -> bool:
        return bool(self.table[i, self.letters.index(c), self.states.index(p),
                               self.states.index(q)])


def jumping_dp(M: DfaWtl, x: str) -> DpMatrix:
    """Fill the path-with-letter table up to walk length ``len(M.states)``."""
    y = _other(M, x)
    G = restrict_graph(M, x)
    n = len(M.states)
    index = {q: i for i, q in enumerate(M.states)}
    letters = (x, y)
    arc = np.zeros((2, n, n), dtype=bool)
    for u, v, a in G.arcs:
        arc[letters.index(a), index[u], index[v]] = True
    anyarc = arc[0] | arc[1]
    table = np.zeros((n + 1, 2, n, n), dtype=bool)
    walk = np.eye(n, dtype=bool)  # walks of length <= i, any labels
    for i in range(n):
        cur = table[i]
        for c in range(2):
            # last arc is c, or an earlier arc already was
            table[i + 1, c] = (cur[c] | _bool_matmul(walk, arc[c])
                               | _bool_matmul(cur[c], anyarc))
        walk = walk | _bool_matmul(walk, anyarc)
    return DpMatrix(M.states, letters, table)


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int32) @ b.astype(np.int32)) > 0


@dataclass(frozen=True)
class JumpingCycle:
    letter: str
    states: tuple  # p_0, ..., p_n with p_n == p_0
    letters: tuple  # letters[i] labels p_i -> p_{i+1}

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def jump_arcs(self) -> int:
        return sum(1 for a in self.letters if a == self.letter)

    def __str__(self):
        parts = [str(self.states[0])]
        for a, p in zip(self.letters, self.states[1:]):
            parts.append(f"-{a}->{p}")
        return "".join(parts)


def detect_jumping_cycle(M: DfaWtl, x: str) -> JumpingCycle | None:
    """Find a closed walk using ``x`` and ``y`` inside :func:`restrict_graph`.

    ``M`` should be trimmed. The table test is the ``O(n^4)`` dynamic
    program; the reported walk is the shortest one through the first
    qualifying state.
    """
    y = _other(M, x)
    n = len(M.states)
    dp = jumping_dp(M, x)
    last = dp.table[n]
    # p ->* r using x, then r ->* p using y
    closes = _bool_matmul(last[0], last[1]).diagonal()
    hits = np.nonzero(closes)[0]
    if not len(hits):
        return None
    p = M.states[int(hits[0])]
    return _shortest_closed_walk(M, restrict_graph(M, x), p, x, y)


def _shortest_closed_walk(M, G, p, x, y) -> JumpingCycle:
    succ = {q: [] for q in M.states}
    for u, v, a in G.arcs:
        succ[u].append((a, v))
    for q in succ:
        succ[q].sort(key=lambda av: M.alphabet.index(av[0]))
    start = (p, False, False)
    goal = (p, True, True)
    parent = {}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q, sx, sy = node
        for a, v in succ[q]:
            nxt = (v, sx or a == x, sy or a == y)
            if nxt in parent:
                continue
            parent[nxt] = (node, a)
            if nxt == goal:
                queue.clear()
                break
            queue.append(nxt)
    if goal not in parent:
        raise AssertionError("dynamic program and walk reconstruction disagree")
    states, letters = [p], []
    node = goal
    while True:
        prev, a = parent[node]
        letters.append(a)
        states.append(prev[0])
        node = prev
        if node == start:
            break
    return JumpingCycle(x, tuple(reversed(states)), tuple(reversed(letters)))


@dataclass(frozen=True)
class NonRegularWitness:
    """``u · b_block^i · a_block^i · v`` is accepted for every ``i``.

    ``b_block`` holds the non-jumped letter, ``a_block`` the letter read by
    jumps along the cycle.
    """

    u: tuple
    b_block: tuple
    a_block: tuple
    v: tuple

    def word(self, i: int) -> tuple:
        return self.u + self.b_block * i + self.a_block * i + self.v

    def __str__(self):
        return (f"({format_word(self.u)}, {format_word(self.b_block)}, "
                f"{format_word(self.a_block)}, {format_word(self.v)})")


def synthesize_nonregular_witness(M: DfaWtl, c: JumpingCycle) -> NonRegularWitness:
    """Pick the rotation of ``c`` closest to the initial state and build the family.

    Any rotation works: one lap consumes exactly ``n - l`` other letters and
    ``l`` jumped letters from the front block pair.
    """
    y = _other(M, c.letter)
    best = None
    for start in dict.fromkeys(c.states[:-1]):
        u = shortest_word(M, M.initial, start)
        v = shortest_word(M, start, lambda s: s in M.finals)
        if u is None or v is None:
            continue
        key = (len(u[0]), [M.alphabet.index(a) for a in u[0]], len(v[0]))
        if best is None or key < best[0]:
            best = (key, u[0], v[0])
    if best is None:
        raise ValueError("cycle is not reachable and co-reachable; trim the automaton first")
    _, u, v = best
    n, l = c.length, c.jump_arcs
    return NonRegularWitness(u, (y,) * (n - l), (c.letter,) * l, v)


def verify_nonregular_witness(M: DfaWtl, w: NonRegularWitness, depth: int = VERIFY_DEPTH):
    """Indices ``0..depth`` whose family word is rejected (empty means verified)."""
    return [i for i in range(depth + 1) if not run(M, w.word(i)).accepted]


class Regularity(enum.Enum):
    REGULAR = "Regular"
    NON_REGULAR = "NonRegular"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RegularityVerdict:
    answer: Regularity
    nfa: EpsNfa | None = None
    cycle: JumpingCycle | None = None
    witness: NonRegularWitness | None = None

    @property
    def regular(self) -> bool:
        return self.answer is Regularity.REGULAR


def decide_regular(M: DfaWtl) -> RegularityVerdict:
    _require_binary(M)
    T = trim(M)
    for x in T.alphabet:
        cycle = detect_jumping_cycle(T, x)
        if cycle is not None:
            witness = synthesize_nonregular_witness(T, cycle)
            return RegularityVerdict(Regularity.NON_REGULAR, cycle=cycle, witness=witness)
    return RegularityVerdict(Regularity.REGULAR, nfa=_counter_nfa(T))


def build_counter_nfa(M: DfaWtl) -> EpsNfa:
    """ε-NFA over states ``(q, m, n)`` counting pending jumps on each letter.

    ``m`` counts ``a``s consumed by jumps but not yet passed on the tape,
    ``n`` the same for ``b``. Counters stay below ``len(Q)``; increments
    beyond that are left out. Only states reachable from ``(q0, 0, 0)``
    are built.
    """
    _require_binary(M)
    T = trim(M)
    for x in T.alphabet:
        if detect_jumping_cycle(T, x) is not None:
            raise PreconditionViolated(f"the automaton has a {x}-jumping cycle; "
                                       "its language is not regular")
    return _counter_nfa(T)


def _counter_nfa(M: DfaWtl, cap: int | None = None) -> EpsNfa:
    a, b = M.alphabet
    if cap is None:
        cap = len(M.states) - 1
    start = (M.initial, 0, 0)
    delta: dict = {}
    seen = {start}
    order = [start]
    queue = deque([start])

    def add(src, letter, dst):
        delta.setdefault((src, letter), set()).add(dst)
        if dst not in seen:
            seen.add(dst)
            order.append(dst)
            queue.append(dst)

    while queue:
        q, m, n = src = queue.popleft()
        pa, pb = M.next(q, a), M.next(q, b)
        # recording jumps
        if pa is None and pb is not None and n < cap:
            add(src, None, (pb, m, n + 1))
        if pb is None and pa is not None and m < cap:
            add(src, None, (pa, m + 1, n))
        # amortizing jumps
        if n >= 1:
            add(src, b, (q, m, n - 1))
        if m >= 1:
            add(src, a, (q, m - 1, n))
        # sequential moves, gated on the matching counter
        if m == 0 and pa is not None:
            add(src, a, (pa, 0, n))
        if n == 0 and pb is not None:
            add(src, b, (pb, m, 0))
    finals = {s for s in order if s[0] in M.finals and s[1] == 0 and s[2] == 0}
    return EpsNfa(M.alphabet, tuple(order), start, finals, delta)
