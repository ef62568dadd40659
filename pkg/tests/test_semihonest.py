import itertools
import random

import pytest

from helpers import all_inputs
from trio3pc.bits import BitString
from trio3pc.circuit import and_chain, and_gate, eval_plaintext, eval_wires, majority, random_circuit, xor_chain
from trio3pc.rand import derive
from trio3pc.semihonest import and_share, compute_circuit, pack_fields, run_semi_honest, unpack_fields
from trio3pc.transport import PARTIES, Adversary, ProtocolAbort, run_parties


def test_and_share_example():
    a, b, r = (1, 0, 0), (1, 1, 1), (0, 0, 0)
    z = [and_share(a[i], b[i], r[i], a[i - 1], b[i - 1], r[i - 1]) for i in range(3)]
    assert z == [0, 1, 0]
    assert z[0] ^ z[1] ^ z[2] == 1  # a = 1, b = 1


def test_xor_gate_exhaustive():
    for bits in itertools.product((0, 1), repeat=6):
        a, b = bits[:3], bits[3:]
        assert (a[0] ^ b[0]) ^ (a[1] ^ b[1]) ^ (a[2] ^ b[2]) == (a[0] ^ a[1] ^ a[2]) ^ (b[0] ^ b[1] ^ b[2])


def test_pack_fields_round_trip_and_malformed():
    data = pack_fields(((5, 3), (0, 2), (1, 1)))
    assert unpack_fields(data, (3, 2, 1)) == [5, 0, 1]
    with pytest.raises(ProtocolAbort) as err:
        unpack_fields(data + b"\0", (3, 2, 1))
    assert err.value.code == "malformed"
    with pytest.raises(ProtocolAbort):
        unpack_fields(b"\xff", (3,))


@pytest.mark.parametrize("circuit", [and_gate(), majority(), xor_chain(5), and_chain(3)])
def test_all_inputs(circuit):
    for xs in all_inputs(circuit):
        res = run_semi_honest(circuit, xs, seed=7)
        want = eval_plaintext(circuit, xs)
        assert all(res.outcomes[i].value == want for i in PARTIES)


def test_rounds_follow_and_depth():
    assert run_semi_honest(xor_chain(4), ["01", "1", "0"]).metrics.rounds == 2
    assert run_semi_honest(and_chain(3), ["11", "1", "1"]).metrics.rounds == 5


def test_random_circuits():
    rng = random.Random(2)
    for t in range(100):
        n = rng.randint(2, 10)
        c = random_circuit(rng, n, rng.randint(1, 60), m=1)
        xs = [BitString.random(c.input_length(i), rng) for i in PARTIES]
        res = run_semi_honest(c, xs, seed=t)
        assert res.outcomes[1].value == eval_plaintext(c, xs)


def test_party_without_inputs():
    c = random_circuit(random.Random(0), 4, 10, bounds=(0, 4, 4))
    xs = [BitString(), BitString.from_str("1011"), BitString()]
    assert run_semi_honest(c, xs).outcomes[3].value == eval_plaintext(c, xs)


def test_wire_shares_reconstruct():
    c = majority()
    res = run_semi_honest(c, ["1", "1", "0"], seed=3, keep_parties=True)
    want = eval_wires(c, "110")
    for w in range(1, c.wires + 1):
        assert res.parties[1].wires[w] ^ res.parties[2].wires[w] ^ res.parties[3].wires[w] == want[w]


def test_input_length_checked():
    with pytest.raises(ValueError):
        run_semi_honest(majority(), ["1", "10", "0"])


class Garble(Adversary):
    corrupted = 2

    def rewrite(self, env):
        return env._replace(payload=env.payload + b"\0") if env.tag == "and:1" else env


def test_malformed_payload_aborts():
    res = run_semi_honest(majority(), ["1", "0", "1"], adversary=Garble())
    assert res.outcomes[3].code == "malformed"
    assert res.outcomes[3].phase == "and:1"


def test_lanes_are_independent():
    # four lanes of the AND gate at once: inputs (00, 01, 10, 11)
    c = and_gate()
    X = {1: 0b0011, 2: 0b0101}


    shares = {w: [random.Random(w).getrandbits(4) for _ in range(2)] for w in (1, 2)}

    def party(i):
        wires = [0] * (c.wires + 1)
        for w in (1, 2):
            a, b = shares[w]
            wires[w] = (a, b, X[w] ^ a ^ b)[i - 1]
        yield from compute_circuit(i, c, wires, 4, derive(9, "lane", i))
        return wires[3]

    res = run_parties({i: party(i) for i in PARTIES})
    z = res.outcomes[1].value ^ res.outcomes[2].value ^ res.outcomes[3].value
    assert z == 0b0001
    assert res.metrics.rounds == 1
