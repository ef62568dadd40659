"""Lockstep message passing between the three party programs.

A party program is a generator.  Each time it needs to talk it yields a
:class:`Step` naming the phase, the payloads it sends this round and the
peers it expects to hear from; the harness resumes it with a dict mapping
sender to payload.  A program finishes by returning its output or by raising
:class:`ProtocolAbort`.

All three programs advance together, one round per step.  A round with no
traffic is not counted.  Messages sent by the corrupted party pass through the
adversary's ``rewrite`` hook before delivery; traffic between the two honest
parties never does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generator, Mapping, NamedTuple

PARTIES = (1, 2, 3)


def h(i: int) -> int:
    """Party index modulo 3 in ``{1, 2, 3}``: ``h(4) = 1``, ``h(0) = 3``."""
    return (i - 1) % 3 + 1


class Envelope(NamedTuple):
    sender: int
    receiver: int
    round: int
    tag: str
    payload: bytes


class Step(NamedTuple):
    phase: str
    sends: Mapping[int, bytes]
    expect: tuple[int, ...]


@dataclass
class Metrics:
    rounds: int = 0
    bytes_per_channel: dict[tuple[int, int], int] = field(default_factory=dict)
    messages: int = 0

    @property
    def total_bytes(self) -> int:
        return sum(self.bytes_per_channel.values())


class ProtocolAbort(Exception):
    """Raised inside a party program to stop with an abort outcome."""

    def __init__(self, code: str, run: int | None = None, detail: str = ""):
        super().__init__(f"{code}" + (f" run {run}" if run is not None else "") + (f": {detail}" if detail else ""))
        self.code = code
        self.run = run
        self.detail = detail


class DeadlockError(RuntimeError):
    def __init__(self, party: int, tag: str, waiting: int):
        super().__init__(f"P{party} owes a '{tag}' message to P{waiting} but sent none")
        self.party = party
        self.tag = tag


class PhaseMismatchError(RuntimeError):
    pass


@dataclass
class Outcome:
    status: str  # "ok" | "abort"
    value: object = None
    code: str | None = None
    run: int | None = None
    phase: str | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def describe(self) -> str:
        if self.ok:
            return f"ok output {self.value}"
        text = f"abort {self.code}"
        if self.run is not None:
            text += f" run {self.run}"
        if self.phase:
            text += f" phase {self.phase}"
        if self.detail:
            text += f" ({self.detail})"
        return text


@dataclass
class RunResult:
    outcomes: dict[int, Outcome]
    metrics: Metrics
    trace: list[str] | None = None
    parties: dict[int, object] | None = None


class Adversary:
    """Transport-level view of a corruption: which party, and how its messages are rewritten."""

    corrupted: int = 1

    def rewrite(self, env: Envelope) -> Envelope | None:
        return env


class Network:
    def __init__(self, adversary: Adversary | None = None, trace: bool = False):
        self.adversary = adversary
        self.metrics = Metrics()
        self.trace: list[str] | None = [] if trace else None

    def exchange(self, envelopes: list[Envelope]) -> list[Envelope]:
        """Deliver one round of envelopes simultaneously."""
        if not envelopes:
            return []
        m = self.metrics
        m.rounds += 1
        adv = self.adversary
        corrupted = adv.corrupted if adv is not None else None
        bpc = m.bytes_per_channel
        delivered = []
        for env in envelopes:
            if env.sender == env.receiver:
                raise ValueError(f"P{env.sender} cannot send to itself")
            key = (env.sender, env.receiver)
            bpc[key] = bpc.get(key, 0) + len(env.payload)
            m.messages += 1
            if env.sender == corrupted:
                env = adv.rewrite(env)
                if env is None:
                    continue
            if self.trace is not None:
                self.trace.append(f"{env.round} {env.sender} {env.receiver} {env.tag} {env.payload.hex()}")
            delivered.append(env)
        return delivered


Program = Generator[Step, Mapping[int, bytes], object]


def _advance(gen: Program, value, outcomes: dict, party: int, phase: str | None):
    """Resume a program; returns its next Step or None once it has finished."""
    try:
        return gen.send(value)
    except StopIteration as stop:
        outcomes[party] = Outcome("ok", value=stop.value)
    except ProtocolAbort as exc:
        outcomes[party] = Outcome("abort", code=exc.code, run=exc.run, phase=phase, detail=exc.detail)
    return None


def run_parties(programs: Mapping[int, Program] | Mapping[int, Callable[[], Program]],
                adversary: Adversary | None = None, trace: bool = False) -> RunResult:
    """Run three party programs in lockstep until every one has finished."""
    net = Network(adversary, trace)
    metrics, log = net.metrics, net.trace
    bpc = metrics.bytes_per_channel
    corrupted = adversary.corrupted if adversary is not None else None
    gens = {i: (p() if callable(p) else p) for i, p in programs.items()}
    outcomes: dict[int, Outcome] = {}
    steps = {}
    for i, gen in gens.items():
        step = _advance(gen, None, outcomes, i, None)
        if step is not None:
            steps[i] = step

    while steps:
        phase = next(iter(steps.values())).phase
        for st in steps.values():
            if st.phase != phase:
                raise PhaseMismatchError("parties out of sync: " + ", ".join(f"P{i}:{s.phase}" for i, s in sorted(steps.items())))
        # route this round's messages; same behaviour as Network.exchange, minus
        # the envelope objects on the common path
        rnd = metrics.rounds + 1
        inboxes: dict[int, dict[int, bytes]] = {i: {} for i in steps}
        sent = False
        for i, step in steps.items():
            for to, payload in step.sends.items():
                target = steps.get(to)
                if target is None:
                    continue
                if to == i:
                    raise ValueError(f"P{i} cannot send to itself")
                if i != corrupted and i not in target.expect:
                    raise PhaseMismatchError(f"P{to} does not expect a '{phase}' message from P{i}")
                sent = True
                key = (i, to)
                bpc[key] = bpc.get(key, 0) + len(payload)
                metrics.messages += 1
                sender = i
                if i == corrupted:
                    env = adversary.rewrite(Envelope(i, to, rnd, phase, payload))
                    if env is None:
                        continue
                    sender, to, payload = env.sender, env.receiver, env.payload
                if log is not None:
                    log.append(f"{rnd} {sender} {to} {phase} {payload.hex()}")
                box = inboxes.get(to)
                if box is not None and sender in steps[to].expect:
                    box[sender] = payload
        if sent:
            metrics.rounds += 1

        nxt = {}
        for i, step in steps.items():
            inbox = inboxes[i]
            if len(inbox) != len(step.expect):
                j = next(j for j in step.expect if j not in inbox)
                if j in steps and j != corrupted:
                    raise DeadlockError(j, phase, i)
                if j in outcomes and outcomes[j].status == "abort":
                    outcomes[i] = Outcome("abort", code="peer-abort", phase=phase, detail=f"P{j} aborted")
                else:
                    outcomes[i] = Outcome("abort", code="missing-message", phase=phase, detail=f"nothing from P{j}")
                gens[i].close()
                continue
            try:
                nxt[i] = gens[i].send(inbox)
            except StopIteration as stop:
                outcomes[i] = Outcome("ok", value=stop.value)
            except ProtocolAbort as exc:
                outcomes[i] = Outcome("abort", code=exc.code, run=exc.run, phase=phase, detail=exc.detail)
        steps = nxt

    return RunResult(outcomes, net.metrics, net.trace)
