"""Two decision procedures built on top of the simulator.

Regularity (two-letter alphabets): look for a closed walk that uses both
letters and only jumps from states blind to the other letter. If there is
one, the language pumps like b^i a^i. If not, a counter automaton reads
the same language left to right.

Equivalence (constant-jump machines): compile each machine to a classical
NFA that remembers owed letters, determinise, and search the product.
"""
from dfawtl import decide_equivalence, decide_regular, load_corpus, run
from dfawtl.textfmt import doc_from_automaton, serialize_automaton

for name in ("balanced", "loop_ab", "astar", "twoword"):
    v = decide_regular(load_corpus(name))
    if v.regular:
        print(f"{name:9s} Regular      counter automaton with {len(v.nfa.states)} states")
    else:
        print(f"{name:9s} NonRegular   cycle {v.cycle}   family {v.witness}")

# the counter automaton for {ab, ba}, in the plain text format
print(serialize_automaton(doc_from_automaton(decide_regular(load_corpus("twoword")).nfa)))

tw, abba, astar = (load_corpus(n) for n in ("twoword", "abba_dfa", "astar"))
print(decide_equivalence(tw, abba).answer)          # same language, different machines
v = decide_equivalence(tw, astar)
print(v.answer, "on", repr("".join(v.witness)), "->", run(tw, v.witness).outcome,
      "vs", run(astar, v.witness).outcome)
print(decide_equivalence(load_corpus("balanced"), tw))  # linear input: not applicable
