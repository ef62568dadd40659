"""
Cut-and-choose: s runs, some checked, the rest trusted
======================================================

Each party feeds s copies of either its true input or a random one.  After
everyone commits to its transcripts, the indicator c is revealed: runs with
c_j = 1 are opened and replayed in the clear, runs with c_j = 0 give the output.
"""

from trio3pc import run_malicious, run_semi_honest
from trio3pc.circuit import majority

circuit = majority()
xs = ["1", "1", "0"]

result = run_malicious(circuit, xs, s=8, seed=3, trace=True, keep_parties=True)
ind = result.parties[1].indicator
print("indicator c =", format(ind, "08b"), "(1 = verification run)")
for i in (1, 2, 3):
    print(f"P{i}:", result.outcomes[i].describe())

# the phases, one per round
phases = []
for line in result.trace:
    tag = line.split()[3]
    if not phases or phases[-1] != tag:
        phases.append(tag)
print("rounds:", " ".join(phases))
print("malicious rounds", result.metrics.rounds, "bytes", result.metrics.total_bytes)

semi = run_semi_honest(circuit, xs, seed=3)
print("semi-honest rounds", semi.metrics.rounds, "bytes", semi.metrics.total_bytes)

# with every run a verification run there is nothing to output
result = run_malicious(circuit, xs, s=2, seed=0, indicator=0b11)
print("c = 11:", result.outcomes[1].describe())
