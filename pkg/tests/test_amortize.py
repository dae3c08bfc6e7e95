import numpy as np
import pytest
from hypothesis import given, settings

from dfawtl import (DfaWtl, Equivalence, EpsNfa, build_amortizing_nfa, classify, decide_equivalence,
                   dfa_equivalence, run, subset_construction)
from dfawtl.amortize import AmortState, OwedEntry, amortizing_eps_nfa
from dfawtl.errors import AlphabetMismatch, NotConstant
from dfawtl.generate import random_dfawtl
from dfawtl.regular import build_counter_nfa, decide_regular

from conftest import dfawtls, language, words


def accepted(N, alphabet, maxlen):
    return {w for w in words(alphabet, maxlen) if N.accepts(w)}


def test_owed_entry_invariant():
    with pytest.raises(ValueError):
        OwedEntry("a", frozenset("a"))
    assert str(OwedEntry("b", frozenset("ca"))) == "b/ac"


def test_complete_dfa_has_no_epsilon_arcs():
    M = DfaWtl("ab", ("s", "t"), "s", {"t"},
               {("s", "a"): "t", ("s", "b"): "s", ("t", "a"): "t", ("t", "b"): "s"})
    E = amortizing_eps_nfa(M)
    assert not E.has_epsilon
    assert [s.base for s in E.states] == ["s", "t"]
    N = build_amortizing_nfa(M)
    assert accepted(N, "ab", 6) == language(M, 6)


def test_twoword(twoword):
    N = build_amortizing_nfa(twoword)
    assert accepted(N, "ab", 4) == {("a", "b"), ("b", "a")}
    E = amortizing_eps_nfa(twoword)
    owed = AmortState("q1", (OwedEntry("b", frozenset("a")),))
    assert owed in E.targets(AmortState("q0"), None)
    # "ab": sequential a from the guessed state, then pay off b
    after_a = AmortState("q2", owed.pending)
    assert after_a in E.targets(owed, "a")
    assert AmortState("q2") in E.targets(after_a, "b")


def test_astar(astar):
    assert accepted(build_amortizing_nfa(astar), "ab", 6) == language(astar, 6)


def test_linear_input_refused(balanced):
    with pytest.raises(NotConstant):
        build_amortizing_nfa(balanced)


def test_pending_bound():
    rng = np.random.default_rng(17)
    for _ in range(100):
        M = random_dfawtl(rng, int(rng.integers(1, 6)), int(rng.integers(2, 4)))
        if not classify(M).is_constant:
            continue
        k = max(len(M.states) - 1, 0)
        assert all(len(s.pending) <= k for s in amortizing_eps_nfa(M, k).states)


@given(dfawtls(max_states=4))
@settings(max_examples=120, deadline=None)
def test_oracle_agreement(M):
    if not classify(M).is_constant:
        return
    n = 7 if len(M.alphabet) == 2 else 5
    assert accepted(build_amortizing_nfa(M), M.alphabet, n) == language(M, n)


@given(dfawtls(max_states=4, letters=(2,)))
@settings(max_examples=80, deadline=None)
def test_agrees_with_counter_construction(M):
    if not classify(M).is_constant or not decide_regular(M).regular:
        return
    A, C = build_amortizing_nfa(M), build_counter_nfa(M)
    for w in words("ab", 8):
        assert A.accepts(w) == C.accepts(w) == run(M, w).accepted


def _nfa(alphabet, states, initial, finals, arcs):
    delta = {}
    for q, a, p in arcs:
        delta.setdefault((q, a), set()).add(p)
    return EpsNfa(alphabet, states, initial, finals, delta)


def test_subset_construction_examples():
    det = _nfa("ab", ("s", "t"), "s", {"t"}, [("s", "a", "t"), ("t", "b", "s")])
    D = subset_construction(det)
    assert all(D.accepts(w) == det.accepts(w) for w in words("ab", 6))
    two = _nfa("ab", ("0", "1", "2", "x", "f"), "0", {"f"},
               [("0", "a", "1"), ("0", "a", "x"), ("0", "b", "2"), ("1", "b", "f"), ("2", "a", "f")])
    D = subset_construction(two)
    assert {w for w in words("ab", 4) if D.accepts(w)} == {("a", "b"), ("b", "a")}
    none = _nfa("ab", ("s",), "s", set(), [("s", "a", "s")])
    assert not any(subset_construction(none).accepts(w) for w in words("ab", 4))


def test_dfa_equivalence_examples():
    astar = subset_construction(_nfa("a", ("s",), "s", {"s"}, [("s", "a", "s")]))
    aplus = subset_construction(_nfa("a", ("s", "t"), "s", {"t"},
                                     [("s", "a", "t"), ("t", "a", "t")]))
    assert dfa_equivalence(astar, astar) is None
    assert dfa_equivalence(astar, aplus) == ()
    other = subset_construction(_nfa("b", ("s",), "s", {"s"}, [("s", "b", "s")]))
    with pytest.raises(AlphabetMismatch):
        dfa_equivalence(astar, other)


def test_decide_equivalence_examples(twoword, abba, astar, balanced):
    assert decide_equivalence(twoword, abba).answer is Equivalence.EQUAL
    v = decide_equivalence(twoword, astar)
    assert v.answer is Equivalence.NOT_EQUAL and v.witness == ()
    assert run(astar, ()).accepted and not run(twoword, ()).accepted
    v = decide_equivalence(balanced, balanced)
    assert v.answer is Equivalence.NOT_APPLICABLE and v.side == "left"
    assert decide_equivalence(astar, balanced).side == "right"
    with pytest.raises(AlphabetMismatch):
        decide_equivalence(astar, DfaWtl("abc", ("q",), "q", {"q"}, {}))


def _shortest_difference(A, B, maxlen):
    for w in words(A.alphabet, maxlen):
        if run(A, w).accepted != run(B, w).accepted:
            return w
    return None


def test_equivalence_matches_enumeration():
    rng = np.random.default_rng(23)
    done = 0
    while done < 60:
        A = random_dfawtl(rng, int(rng.integers(1, 4)), 2)
        B = random_dfawtl(rng, int(rng.integers(1, 4)), 2)
        if not (classify(A).is_constant and classify(B).is_constant):
            continue
        done += 1
        v = decide_equivalence(A, B)
        diff = _shortest_difference(A, B, 8)
        if v.answer is Equivalence.EQUAL:
            assert diff is None
        else:
            # the product search returns the length-lex least distinguishing word
            assert v.witness == diff
        assert decide_equivalence(B, A).answer is v.answer
        assert decide_equivalence(A, A).answer is Equivalence.EQUAL
