"""Execution semantics: steps, traces, jump counts and language enumeration."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import DfaWtl, NfaWtl, State, Word, as_word
from .errors import BoundTooLarge

DEFAULT_BOUND = 12


class Outcome(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED_STUCK = "RejectedStuck"
    REJECTED_NONFINAL = "RejectedNonFinal"

    @property
    def accepted(self) -> bool:
        return self is Outcome.ACCEPTED

    def __str__(self):
        return self.value


class StepKind(enum.Enum):
    SEQUENTIAL = "Sequential"
    JUMP = "Jump"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Configuration:
    state: State
    remaining: Word


@dataclass(frozen=True)
class TraceStep:
    kind: StepKind
    letter: str
    consumed_index: int  # index within the remaining word before the step
    source: State
    target: State


@dataclass(frozen=True)
class Halt:
    outcome: Outcome


@dataclass(frozen=True)
class Trace:
    input: Word
    steps: tuple
    outcome: Outcome
    final_state: State

    @property
    def jump_count(self) -> int:
        return sum(1 for s in self.steps if s.kind is StepKind.JUMP)

    @property
    def accepted(self) -> bool:
        return self.outcome.accepted


def step(M: DfaWtl, c: Configuration):
    """One move of ``M``: returns ``(Configuration, TraceStep)`` or a :class:`Halt`."""
    q, w = c.state, c.remaining
    if not w:
        return Halt(Outcome.ACCEPTED if q in M.finals else Outcome.REJECTED_NONFINAL)
    delta = M.delta
    for i, a in enumerate(w):
        p = delta.get((q, a))
        if p is not None:
            kind = StepKind.SEQUENTIAL if i == 0 else StepKind.JUMP
            return Configuration(p, w[:i] + w[i + 1:]), TraceStep(kind, a, i, q, p)
    return Halt(Outcome.REJECTED_STUCK)


def run(M: DfaWtl, w) -> Trace:
    w = M.check_word(w)
    c = Configuration(M.initial, w)
    steps = []
    while True:
        r = step(M, c)
        if isinstance(r, Halt):
            return Trace(w, tuple(steps), r.outcome, c.state)
        c, s = r
        steps.append(s)


def jc_word(M: DfaWtl, w) -> int | None:
    """Jump count of the unique computation on ``w``; ``None`` if rejected."""
    t = run(M, w)
    return t.jump_count if t.accepted else None


def min_jump_count(N: NfaWtl, w) -> int | None:
    """Fewest jumps over all accepting computations of an NFA with translucent letters.

    0-1 breadth-first search over configurations ``(state, remaining)``;
    exponential in the worst case, meant for small oracle checks.
    """
    w = as_word(w, N.alphabet)
    start = (N.initial, w)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        q, rest = config = queue.popleft()
        d = dist[config]
        if not rest:
            if q in N.finals:
                return d
            continue
        # Only the leftmost letter with a defined transition can be consumed.
        for i, a in enumerate(rest):
            targets = N.targets(q, a)
            if targets:
                cost = 0 if i == 0 else 1
                left = rest[:i] + rest[i + 1:]
                for p in targets:
                    nxt = (p, left)
                    nd = d + cost
                    if nd < dist.get(nxt, nd + 1):
                        dist[nxt] = nd
                        if cost:
                            queue.append(nxt)
                        else:
                            queue.appendleft(nxt)
                break
    return None


# -- batch simulation --------------------------------------------------------


def _table(M: DfaWtl) -> np.ndarray:
    table = np.full((len(M.states), len(M.alphabet)), -1, dtype=np.int32)
    letter_index = {a: i for i, a in enumerate(M.alphabet)}
    for q, a, p in M.arcs():
        table[M.index(q), letter_index[a]] = M.index(p)
    return table


def all_words(k: int, n: int) -> np.ndarray:
    """All words of length ``n`` over ``k`` letters, as letter indices, in lexicographic order."""
    count = k ** n
    idx = np.arange(count, dtype=np.int64)
    out = np.empty((count, n), dtype=np.int8)
    for j in range(n):
        out[:, j] = (idx // k ** (n - 1 - j)) % k
    return out


def run_batch(M: DfaWtl, words: np.ndarray, table: np.ndarray | None = None):
    """Run ``M`` on every row of ``words`` at once.

    Returns ``(accepted, jumps)`` arrays. Semantics are identical to
    :func:`run`: each step consumes the leftmost letter with a defined
    transition, and it is a jump iff an unconsumed letter precedes it.
    """
    if table is None:
        table = _table(M)
    count, n = words.shape
    state = np.full(count, M.index(M.initial), dtype=np.int32)
    jumps = np.zeros(count, dtype=np.int32)
    alive = np.ones(count, dtype=bool)
    if n:
        consumed = np.zeros((count, n), dtype=bool)
        rows = np.arange(count)
        for _ in range(n):
            nxt = table[state[:, None], words]  # (count, n)
            readable = (nxt >= 0) & ~consumed
            has = readable.any(axis=1)
            alive &= has
            pos = readable.argmax(axis=1)
            first_open = (~consumed).argmax(axis=1)
            ok = alive
            jumps += (ok & (pos > first_open)).astype(np.int32)
            state = np.where(ok, nxt[rows, pos], state)
            consumed[rows[ok], pos[ok]] = True
    finals = np.zeros(len(M.states), dtype=bool)
    for f in M.finals:
        finals[M.index(f)] = True
    accepted = alive & finals[state]
    return accepted, jumps


def _check_bound(maxlen: int, bound: int):
    if maxlen > bound:
        raise BoundTooLarge(f"length bound {maxlen} exceeds the configured limit {bound}")


def enumerate_language(M: DfaWtl, maxlen: int, bound: int = DEFAULT_BOUND) -> dict:
    """Every accepted word of length <= ``maxlen`` mapped to its jump count.

    Keys are letter tuples in length-lexicographic order.
    """
    _check_bound(maxlen, bound)
    table = _table(M)
    letters = M.alphabet
    out = {}
    for n in range(maxlen + 1):
        words = all_words(len(letters), n)
        accepted, jumps = run_batch(M, words, table)
        for i in np.nonzero(accepted)[0]:
            out[tuple(letters[j] for j in words[i])] = int(jumps[i])
    return out


def jc_profile(M: DfaWtl, maxlen: int, bound: int = DEFAULT_BOUND) -> dict:
    """Maximum jump count per input length ``0..maxlen``; ``None`` where nothing is accepted."""
    _check_bound(maxlen, bound)
    table = _table(M)
    out = {}
    for n in range(maxlen + 1):
        accepted, jumps = run_batch(M, all_words(len(M.alphabet), n), table)
        out[n] = int(jumps[accepted].max()) if accepted.any() else None
    return out


def max_jumps(M: DfaWtl, maxlen: int, bound: int = DEFAULT_BOUND) -> int | None:
    """Largest jump count over all accepted words of length <= ``maxlen``."""
    values = [v for v in jc_profile(M, maxlen, bound).values() if v is not None]
    return max(values) if values else None
