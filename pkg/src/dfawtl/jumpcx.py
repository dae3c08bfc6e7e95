"""Constant/linear jump-complexity classification with pump witnesses.

A DFAwtl either jumps a bounded number of times on every accepted word or
admits a family ``prefix · pump^i · suffix`` whose jump count grows with
``i``. Two structural triggers characterise the linear case:

* ``JumpBackTrigger``: a state ``t`` that cannot read ``a`` jumps over it to
  read ``b`` into ``s``, ``s`` reads ``a`` into ``r``, and ``r`` leads back
  to ``t``. The words ``y (a b x)^i z`` then cost one jump per iteration.
* ``TranslucentCycleTrigger``: a cycle made only of ``a``-deficient states,
  left through ``a``-deficient states towards a state that reads ``a``.
  With an ``a`` parked in front of the cycle, every cycle letter is a jump.

Everything else has fewer than ``len(M.states)`` jumps per accepted word.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import DfaWtl, closure_matrix, coreachable, format_word, shortest_word, trim
from .sim import DEFAULT_BOUND, run
from .errors import BoundTooLarge


@dataclass(frozen=True)
class JumpBackTrigger:
    letter: str  # jumped over by t
    t: object
    consumed: str  # read by the jump from t
    s: object
    r: object

    variant = "T1"


@dataclass(frozen=True)
class TranslucentCycleTrigger:
    letter: str
    cycle: tuple  # states, cycle[0] is the base; all letter-deficient
    cycle_word: tuple
    escape_path: tuple  # base ... s_m inside the deficient states
    escape_word: tuple
    exit_letter: str  # arc s_m --exit_letter--> p
    p: object  # reads ``letter``

    variant = "T2"


@dataclass(frozen=True)
class LinearWitness:
    prefix: tuple
    pump: tuple
    suffix: tuple
    jumps_per_iteration: int

    def word(self, i: int) -> tuple:
        return self.prefix + self.pump * i + self.suffix

    def __str__(self):
        return (f"({format_word(self.prefix)}, {format_word(self.pump)}, "
                f"{format_word(self.suffix)})")


class Complexity(enum.Enum):
    CONSTANT = "Constant"
    LINEAR = "Linear"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ComplexityVerdict:
    cls: Complexity
    witness: LinearWitness | None = None
    trigger: JumpBackTrigger | TranslucentCycleTrigger | None = None

    def __post_init__(self):
        linear = self.cls is Complexity.LINEAR
        if linear != (self.witness is not None) or linear != (self.trigger is not None):
            raise ValueError("a witness and trigger are present exactly for Linear verdicts")

    @property
    def is_constant(self) -> bool:
        return self.cls is Complexity.CONSTANT


def _tables(M: DfaWtl):
    n, k = len(M.states), len(M.alphabet)
    table = np.full((n, k), -1, dtype=np.int64)
    for q, a, p in M.arcs():
        table[M.index(q), M.alphabet.index(a)] = M.index(p)
    adj = np.zeros((n, n), dtype=bool)
    src, let = np.nonzero(table >= 0)
    adj[src, table[src, let]] = True
    return table, adj


def t1_trigger(M: DfaWtl, reach: np.ndarray | None = None) -> JumpBackTrigger | None:
    """First ``(t, a, b, s, r)`` in declared order with δ(t,a) undefined,
    δ(t,b)=s, δ(s,a)=r and r ->* t (the empty path included)."""
    table, adj = _tables(M)
    if reach is None:
        reach = closure_matrix(adj)
    k = len(M.alphabet)
    for t in range(len(M.states)):
        row = table[t]
        for a in range(k):
            if row[a] >= 0:
                continue
            for b in range(k):
                s = row[b]
                if s < 0:
                    continue
                r = table[s, a]
                if r >= 0 and reach[r, t]:
                    st = M.states
                    return JumpBackTrigger(M.alphabet[a], st[t], M.alphabet[b], st[s], st[r])
    return None


def t2_trigger(M: DfaWtl) -> TranslucentCycleTrigger | None:
    """A cycle of ``a``-deficient states that can exit towards a state reading ``a``."""
    table, adj = _tables(M)
    states = M.states
    live = coreachable(M)
    alive = np.array([q in live for q in states], dtype=bool)
    for ai, a in enumerate(M.alphabet):
        deficient = table[:, ai] < 0
        if not deficient.any():
            continue
        sub = adj & deficient[:, None] & deficient[None, :]
        reach = closure_matrix(sub)
        # q lies on a cycle inside the restriction iff some successor reaches it back.
        on_cycle = deficient & ((sub.astype(np.int32) @ reach.astype(np.int32)).diagonal() > 0)
        # s_m owns an arc to some p that reads a and can still accept.
        readers = table[:, ai] >= 0
        readers[readers] = alive[table[readers, ai]]
        targets = np.where(table >= 0, table, 0)
        exit_arc = ((table >= 0) & readers[targets]).any(axis=1) & deficient
        candidates = on_cycle & (reach & exit_arc[None, :]).any(axis=1)
        if not candidates.any():
            continue
        base = states[int(np.argmax(candidates))]
        in_def = {states[i] for i in np.nonzero(deficient)[0]}
        allowed = in_def.__contains__
        cycle_word, cycle = shortest_word(M, base, base, allowed=allowed, min_length=1)

        def exit_letter(q):
            for c in M.alphabet:
                p = M.next(q, c)
                if p is not None and M.next(p, a) in live:
                    return c
            return None

        escape_word, escape_path = shortest_word(
            M, base, lambda q: exit_letter(q) is not None, allowed=allowed)
        sm = escape_path[-1]
        c = exit_letter(sm)
        return TranslucentCycleTrigger(a, cycle[:-1], cycle_word, escape_path, escape_word,
                                       c, M.next(sm, c))
    return None


def _to_final(M: DfaWtl, q):
    found = shortest_word(M, q, lambda s: s in M.finals)
    if found is None:
        raise ValueError(f"state {q!r} cannot reach a final state; trim the automaton first")
    return found[0]


def _from_initial(M: DfaWtl, q):
    found = shortest_word(M, M.initial, q)
    if found is None:
        raise ValueError(f"state {q!r} is unreachable; trim the automaton first")
    return found[0]


def synthesize_linear_witness(M: DfaWtl, tr) -> LinearWitness:
    """Build the pump family for a trigger found on the trimmed machine ``M``.

    All connecting words are labels of transition-graph paths, so they are
    read without jumps.
    """
    if isinstance(tr, JumpBackTrigger):
        back = shortest_word(M, tr.r, tr.t)[0]
        return LinearWitness(
            prefix=_from_initial(M, tr.t),
            pump=(tr.letter, tr.consumed) + back,
            suffix=_to_final(M, tr.t),
            jumps_per_iteration=1,
        )
    p_after = M.next(tr.p, tr.letter)
    return LinearWitness(
        prefix=_from_initial(M, tr.cycle[0]) + (tr.letter,),
        pump=tr.cycle_word,
        suffix=tr.escape_word + (tr.exit_letter,) + _to_final(M, p_after),
        jumps_per_iteration=len(tr.cycle_word),
    )


def classify(M: DfaWtl) -> ComplexityVerdict:
    """Constant or Linear jump complexity, with a pump witness for Linear.

    Cost is dominated by one closure per letter, ``O(|V| |Q|^3)``.
    """
    T = trim(M)
    if not T.finals:
        return ComplexityVerdict(Complexity.CONSTANT)
    trigger = t1_trigger(T) or t2_trigger(T)
    if trigger is None:
        return ComplexityVerdict(Complexity.CONSTANT)
    return ComplexityVerdict(Complexity.LINEAR, synthesize_linear_witness(T, trigger), trigger)


@dataclass(frozen=True)
class WitnessReport:
    passed: bool
    checked: int
    first_failure: int | None = None
    reason: str = ""


def verify_witness(M: DfaWtl, w: LinearWitness, imax: int,
                   bound: int = DEFAULT_BOUND) -> WitnessReport:
    """Check that ``prefix · pump^i · suffix`` is accepted with at least
    ``i · jumps_per_iteration`` jumps for every ``i`` in ``1..imax``."""
    if imax > bound:
        raise BoundTooLarge(f"verification depth {imax} exceeds the configured limit {bound}")
    for i in range(1, imax + 1):
        t = run(M, w.word(i))
        if not t.accepted:
            return WitnessReport(False, i, i, f"word rejected ({t.outcome})")
        need = i * w.jumps_per_iteration
        if t.jump_count < need:
            return WitnessReport(False, i, i, f"{t.jump_count} jumps, expected at least {need}")
    return WitnessReport(True, imax)
