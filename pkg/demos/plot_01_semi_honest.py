"""
Semi-honest evaluation of the majority function
===============================================

Three parties each hold one bit and learn maj(x1, x2, x3) and nothing else.
Every wire is held as three XOR shares; only the AND gate costs a round.
"""

from trio3pc import eval_plaintext, run_semi_honest
from trio3pc.circuit import format_circuit, majority

circuit = majority()
print(format_circuit(circuit))

# run the protocol on every input combination
for v in range(8):
    xs = [str((v >> k) & 1) for k in (2, 1, 0)]
    result = run_semi_honest(circuit, xs, seed=v)
    outputs = {str(result.outcomes[i].value) for i in (1, 2, 3)}
    print("inputs", "".join(xs), "->", outputs, "plaintext", eval_plaintext(circuit, xs))

# rounds: input sharing, one AND layer, output
result = run_semi_honest(circuit, ["1", "0", "1"], seed=0, trace=True, keep_parties=True)
print("rounds", result.metrics.rounds, "bytes", result.metrics.total_bytes)

# each party's wire values look random; their XOR is the real wire value
for w in range(1, circuit.wires + 1):
    shares = [result.parties[i].wires[w] for i in (1, 2, 3)]
    print(f"wire {w}: shares {shares} -> {shares[0] ^ shares[1] ^ shares[2]}")

# the transport trace: round, sender, receiver, phase, payload
for line in result.trace:
    print(line)
