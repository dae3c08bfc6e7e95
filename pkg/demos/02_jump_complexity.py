"""Constant or linear: classifying how many jumps a machine needs.

Every machine falls in one of two classes. For linear machines the
classifier hands back a pump family and we can check it by simulation.
For constant machines the observed jump count stays below the number of
states.
"""
import numpy as np

from dfawtl import classify, load_corpus, verify_witness
from dfawtl.generate import random_trimmed
from dfawtl.sim import jc_word, max_jumps

for name in ("balanced", "abc_linear", "loop_ab", "astar", "twoword"):
    M = load_corpus(name)
    v = classify(M)
    if v.is_constant:
        print(f"{name:11s} Constant  max jumps up to length 10: {max_jumps(M, 10)}")
        continue
    w = v.witness
    jumps = [jc_word(M, w.word(i)) for i in range(1, 6)]
    print(f"{name:11s} Linear    witness {w}  trigger {v.trigger.variant}  jumps {jumps}")

# The three-letter machine: a b^i c costs at least one jump per b, because
# the a at the front has to wait until the machine leaves the b-loop.
M = load_corpus("abc_linear")
print(verify_witness(M, classify(M).witness, 8))

# --- a small random sweep
rng = np.random.default_rng(0)
counts = {"Constant": 0, "Linear": 0}
for _ in range(200):
    counts[str(classify(random_trimmed(rng, 5)).cls)] += 1
print(counts)
