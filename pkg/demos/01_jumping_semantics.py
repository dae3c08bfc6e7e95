"""Watching a machine with translucent letters jump.

The balanced machine reads ``a`` from q0 and ``b`` from q1. At q0 the
letter ``b`` is translucent, so on input ``ba`` the machine skips the
``b``, consumes the ``a`` and comes back for the ``b`` later.
"""
from dfawtl import format_word, jc_profile, load_corpus, run
from dfawtl.sim import enumerate_language

M = load_corpus("balanced")

# --- one computation, step by step
trace = run(M, "bbaa")
for s in trace.steps:
    print(f"{s.source} --{s.letter}--> {s.target}   {s.kind} (position {s.consumed_index})")
print("outcome:", trace.outcome, "| jumps:", trace.jump_count)

# --- rejection comes in two flavours
print(run(M, "bb").outcome)    # nothing readable at q0
print(run(M, "aab").outcome)   # input used up in q1

# --- the language is every word with equally many a and b
lang = enumerate_language(M, 6)
print(len(lang), "accepted words of length <= 6, e.g.", [format_word(w) for w in list(lang)[:5]])

# --- worst-case jumps per length: n/2 for even n, nothing for odd n
for n, jc in jc_profile(M, 10).items():
    print(n, "undefined" if jc is None else jc)
