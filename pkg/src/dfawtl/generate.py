"""Random automata for differential testing."""
from __future__ import annotations

import numpy as np

from .core import DfaWtl, trim

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def random_dfawtl(rng: np.random.Generator, n_states: int, n_letters: int,
                  p_defined: float = 0.55, p_final: float = 0.3) -> DfaWtl:
    """Uniformly random partial transition table; at least one final state."""
    states = tuple(f"q{i}" for i in range(n_states))
    alphabet = tuple(LETTERS[:n_letters])
    defined = rng.random((n_states, n_letters)) < p_defined
    targets = rng.integers(0, n_states, size=(n_states, n_letters))
    delta = {(states[i], alphabet[j]): states[targets[i, j]]
             for i in range(n_states) for j in range(n_letters) if defined[i, j]}
    finals = [q for q in states if rng.random() < p_final] or [states[rng.integers(n_states)]]
    return DfaWtl(alphabet, states, states[0], finals, delta)


def random_trimmed(rng: np.random.Generator, max_states: int, letters=(2, 3),
                   min_states: int = 1, **kw) -> DfaWtl:
    """A random trimmed machine with a non-empty language and at least
    ``min_states`` useful states."""
    while True:
        n = int(rng.integers(min_states, max_states + 1))
        k = int(rng.choice(letters))
        M = trim(random_dfawtl(rng, n, k, **kw))
        if M.finals and len(M.states) >= min_states:
            return M
