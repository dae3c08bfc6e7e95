import itertools

import pytest
from hypothesis import strategies as st

from dfawtl import DfaWtl, run
from dfawtl.textfmt import load_corpus


@pytest.fixture(scope="session")
def balanced():
    return load_corpus("balanced")


@pytest.fixture(scope="session")
def abc_linear():
    return load_corpus("abc_linear")


@pytest.fixture(scope="session")
def astar():
    return load_corpus("astar")


@pytest.fixture(scope="session")
def twoword():
    return load_corpus("twoword")


@pytest.fixture(scope="session")
def loop_ab():
    return load_corpus("loop_ab")


@pytest.fixture(scope="session")
def abba():
    return load_corpus("abba_dfa")


@st.composite
def dfawtls(draw, max_states=5, letters=(2, 3)):
    n = draw(st.integers(1, max_states))
    k = draw(st.sampled_from(letters))
    states = [f"q{i}" for i in range(n)]
    alphabet = "abc"[:k]
    delta = {}
    for q in states:
        for a in alphabet:
            t = draw(st.none() | st.sampled_from(states))
            if t is not None:
                delta[(q, a)] = t
    finals = draw(st.sets(st.sampled_from(states)))
    return DfaWtl(alphabet, states, states[0], finals, delta)


def words(alphabet, maxlen):
    for n in range(maxlen + 1):
        yield from itertools.product(alphabet, repeat=n)


def language(M, maxlen):
    """Per-word oracle: the accepted words of length <= maxlen, by single runs."""
    return {w for w in words(M.alphabet, maxlen) if run(M, w).accepted}
