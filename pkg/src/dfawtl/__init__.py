"""Deterministic finite automata with translucent letters.

Exact simulation, constant/linear jump-complexity classification with pump
witnesses, regularity for binary alphabets, and equivalence of
constant-jump machines.
"""
from .core import (AutomatonDoc, Digraph, DfaWtl, EpsNfa, NfaWtl, Reachability, deficiency,
                   digraph, format_word, transitive_closure, trim, validate, validate_nfa)
from .sim import (Outcome, StepKind, Trace, enumerate_language, jc_profile, jc_word,
                  min_jump_count, run, step)
from .jumpcx import Complexity, LinearWitness, classify, verify_witness
from .regular import Regularity, decide_regular, build_counter_nfa, detect_jumping_cycle
from .amortize import (Equivalence, build_amortizing_nfa, decide_equivalence,
                       dfa_equivalence, subset_construction)
from .textfmt import load_automaton, load_corpus, parse_automaton, serialize_automaton

__version__ = "0.1.0"

__all__ = [
    "AutomatonDoc", "Digraph", "DfaWtl", "EpsNfa", "NfaWtl", "Reachability", "deficiency",
    "digraph", "format_word", "transitive_closure", "trim", "validate", "validate_nfa",
    "Outcome", "StepKind", "Trace", "enumerate_language", "jc_profile", "jc_word",
    "min_jump_count", "run", "step",
    "Complexity", "LinearWitness", "classify", "verify_witness",
    "Regularity", "decide_regular", "build_counter_nfa", "detect_jumping_cycle",
    "Equivalence", "build_amortizing_nfa", "decide_equivalence", "dfa_equivalence",
    "subset_construction",
    "load_automaton", "load_corpus", "parse_automaton", "serialize_automaton",
]
