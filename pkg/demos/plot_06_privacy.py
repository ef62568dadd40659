"""
What one party sees
===================

Fix the inputs and rerun with fresh randomness: every bit a single party
receives should be a fair coin, whatever the others' inputs are.
"""

import numpy as np

from trio3pc import run_semi_honest
from trio3pc.circuit import majority

circuit = majority()
runs = 5000

for k, xs in enumerate((["0", "0", "0"], ["1", "1", "1"])):
    bits = []
    for seed in range(runs):
        trace = run_semi_honest(circuit, xs, seed=k * runs + seed, trace=True).trace
        # what P1 receives, in a fixed order
        view = "".join(format(int(p, 16), f"0{max(1, len(p) * 4)}b")[-w:]
                       for line in trace
                       for _, snd, rcv, tag, p in [line.split(" ")]
                       if rcv == "1"
                       for w in [{"input-share": 1, "and:1": 3, "output": 1}[tag]])
        bits.append([int(b) for b in view])
    freq = np.asarray(bits).mean(axis=0)
    print("inputs", "".join(xs), "P1 view bit frequencies", np.round(freq, 3))
print("5 sigma band: 0.5 +/-", round(5 * np.sqrt(0.25 / runs), 3))
