"""
Rounds grow with AND depth, not with circuit size
=================================================

XOR gates are free, and all AND gates at one depth share a round.  The
malicious protocol adds a fixed number of rounds for preparation, selection,
transcript commitment and the openings.
"""

import random

from trio3pc.bits import BitString
from trio3pc.circuit import and_chain, random_circuit, xor_chain
from trio3pc.malicious import run_malicious
from trio3pc.semihonest import run_semi_honest

circuits = [("xor-chain:6", xor_chain(6))] + [(f"and-chain:{d}", and_chain(d)) for d in (1, 2, 5, 10)]
rng = random.Random(0)
circuits += [(f"random q={q}", random_circuit(rng, 10, q, m=2)) for q in (20, 200, 2000)]

print(f"{'circuit':16} {'gates':>5} {'depth':>5} {'semi':>5} {'mal s=2':>7} {'mal s=8':>7}")
for name, c in circuits:
    xs = [BitString.zeros(c.input_length(i)) for i in (1, 2, 3)]
    d = c.and_depth()
    semi = run_semi_honest(c, xs).metrics.rounds
    # pin c so that both verification and output runs occur
    m2 = run_malicious(c, xs, 2, indicator=0b10).metrics.rounds
    m8 = run_malicious(c, xs, 8, indicator=0b10000000).metrics.rounds
    print(f"{name:16} {c.q:5} {d:5} {semi:5} {m2:7} {m8:7}   offsets {semi - d}, {m2 - d}, {m8 - d}")
