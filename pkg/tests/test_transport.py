import pytest

from trio3pc.transport import (PARTIES, Adversary, DeadlockError, Envelope, Network, PhaseMismatchError,
                               ProtocolAbort, Step, h, run_parties)


def test_h_wraps():
    assert [h(i) for i in range(0, 7)] == [3, 1, 2, 3, 1, 2, 3]


def ring(i, rounds):
    got = []
    for r in range(rounds):
        inbox = yield Step(f"r{r}", {h(i + 1): bytes([i, r])}, (h(i - 1),))
        got.append(inbox[h(i - 1)])
    return got


def test_ring_rounds_and_metrics():
    res = run_parties({i: ring(i, 3) for i in PARTIES})
    assert res.metrics.rounds == 3
    assert res.metrics.messages == 9
    assert res.metrics.bytes_per_channel == {(1, 2): 6, (2, 3): 6, (3, 1): 6}
    assert res.metrics.total_bytes == 18
    assert res.outcomes[1].value == [bytes([3, 0]), bytes([3, 1]), bytes([3, 2])]


def test_empty_round_is_not_counted():
    net = Network()
    assert net.exchange([]) == []
    assert net.metrics.rounds == 0


class Flip(Adversary):
    corrupted = 1

    def rewrite(self, env):
        return env._replace(payload=bytes(b ^ 0xFF for b in env.payload))


def test_rewrite_reaches_receiver_but_not_meter():
    res = run_parties({i: ring(i, 1) for i in PARTIES}, Flip(), trace=True)
    assert res.outcomes[2].value == [bytes([0xFE, 0xFF])]
    assert res.metrics.bytes_per_channel[(1, 2)] == 2
    assert res.trace[0] == "1 1 2 r0 feff"


class Drop(Adversary):
    corrupted = 3

    def rewrite(self, env):
        return None


def test_dropped_message_aborts_with_phase():
    res = run_parties({i: ring(i, 2) for i in PARTIES}, Drop())
    assert res.outcomes[1].code == "missing-message"
    assert res.outcomes[1].phase == "r0"
    assert "missing-message phase r0" in res.outcomes[1].describe()
    # P2 heard from P1 and finished round 0, then waits on P1, which has stopped
    assert res.outcomes[2].code == "peer-abort"


def quitter(i):
    if i == 2:
        raise ProtocolAbort("circuit", run=3, detail="bad wire")
    yield from ring(i, 1)


def test_abort_propagates_as_peer_abort():
    res = run_parties({i: quitter(i) for i in PARTIES})
    assert res.outcomes[2].describe() == "abort circuit run 3 (bad wire)"
    assert res.outcomes[3].code == "peer-abort"


def test_deadlock_detected():
    def mute(i):
        if i == 1:
            yield Step("x", {}, (3,))
        else:
            yield Step("x", {}, ())
    with pytest.raises(DeadlockError):
        run_parties({i: mute(i) for i in PARTIES})


def test_phase_mismatch_detected():
    def prog(i):
        yield Step("a" if i == 1 else "b", {}, ())
    with pytest.raises(PhaseMismatchError):
        run_parties({i: prog(i) for i in PARTIES})


def test_self_send_rejected():
    with pytest.raises(ValueError):
        Network().exchange([Envelope(1, 1, 1, "x", b"")])
