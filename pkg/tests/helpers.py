"""Shared test utilities: scripted randomness and independent oracles."""

from __future__ import annotations

import itertools

from trio3pc.circuit import Op, make_circuit, split_bounds

# one pass/fail line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


class ScriptedRng:
    """Feeds fixed values to getrandbits/randrange, in call order."""

    def __init__(self, values):
        self.values = list(values)

    def getrandbits(self, k):
        v = self.values.pop(0)
        assert 0 <= v < 2 ** k, (v, k)
        return v

    def randrange(self, a, b=None):
        lo, hi = (0, a) if b is None else (a, b)
        v = self.values.pop(0)
        assert lo <= v < hi
        return v


def naive_eval(c, bits):
    """Recursive evaluator straight off the gate list, memo-free on purpose."""
    gates = {g.out: g for g in c.gates}

    def value(w):
        if w <= c.n:
            return bits[w - 1]
        g = gates[w]
        x, y = value(g.a), value(g.b)
        return x & y if g.op is Op.AND else x ^ y

    return [value(w) for w in range(c.n + c.q - c.m + 1, c.n + c.q + 1)]


def longest_and_path(c):
    """AND depth by brute-force enumeration of every path into each wire."""
    gates = {g.out: g for g in c.gates}

    def paths(w):
        if w <= c.n:
            return [0]
        g = gates[w]
        here = 1 if g.op is Op.AND else 0
        return [here + d for d in paths(g.a) + paths(g.b)]

    return max(max(paths(w)) for w in range(1, c.n + c.q + 1))


def small_family(max_q=2, ns=(2, 3)):
    """Every circuit with the given input counts and up to ``max_q`` gates, all output counts."""
    for n in ns:
        for q in range(1, max_q + 1):
            choices = []
            for idx in range(q):
                g = n + 1 + idx
                choices.append([(op, a, b) for op in ("XOR", "AND") for b in range(2, g) for a in range(1, b)])
            for specs in itertools.product(*choices):
                for m in range(1, q + 1):
                    yield make_circuit(n, m, list(specs), split_bounds(n))


def all_inputs(c):
    from trio3pc.bits import BitString

    for v in range(2 ** c.n):
        x = BitString(v, c.n)
        yield [x[c.bounds[i - 1]:c.bounds[i]] for i in (1, 2, 3)]


def select_by_shares(x0, x1, sigma, c, width, draws):
    """Reconstructed selection output for one owner (P1) from explicit share randomness.

    ``draws`` supplies, in order: two XOR share masks of the first copy field,
    two of the second, two of the indicator bit and the three parties' AND masks.
    """
    from trio3pc.malicious import select_share

    first, second = (x1, x0) if sigma else (x0, x1)
    a1, a2, b1, b2, c1, c2, r1, r2, r3 = draws
    F = (a1, a2, first ^ a1 ^ a2)
    S = (b1, b2, second ^ b1 ^ b2)
    C = [c1, c2, c ^ c1 ^ c2]
    C[0] ^= sigma  # the owner folds its ordering bit into its indicator share
    R = (r1, r2, r3)
    T = [F[k] ^ S[k] for k in range(3)]
    out = 0
    for k in range(3):
        _, z = select_share(F[k], S[k], C[k], R[k], T[k - 1], C[k - 1], R[k - 1], width)
        out ^= z
    return out
