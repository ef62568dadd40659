"""Cheating strategies for one corrupted party, and a Monte Carlo harness.

A strategy plugs into the corrupted party's program through four hooks
(``on_prepare``, ``tamper_shares``, ``on_select``, ``on_transcript``) and into
the network through ``rewrite``, which sees every envelope the corrupted party
sends.  Each trial gets a fresh instance with its own seeded generator.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .bits import BitString
from .circuit import Circuit, eval_plaintext
from .commitment import PRODUCTION, FieldParams, pack_columns, unpack_columns
from .malicious import OUTPUT, run_malicious, split_cid
from .rand import derive, derive_seed
from .transport import PARTIES, Adversary, Envelope


class Strategy(Adversary):
    name = "null"
    summary = "follows the protocol"

    def __init__(self, corrupted: int = 1, seed: int = 0):
        if corrupted not in PARTIES:
            raise ValueError(f"corrupted party must be 1, 2 or 3, got {corrupted}")
        self.corrupted = corrupted
        self.rng = derive(seed, "strategy", self.name)
        self.s = 0
        self.p = PRODUCTION.p

    def on_prepare(self, party) -> None:
        """After ``x1``, ``sigma`` and the indicator share are drawn."""
        self.s = party.s
        self.p = party.params.p

    def tamper_shares(self, party, shares: list[int]) -> list[int]:
        """XOR shares of the packed input copies, indexed by receiving party - 1."""
        return shares

    def on_select(self, party, owner: int, run: int, t: int) -> int:
        """The corrupted party's share of ``x^sigma ^ x^(1-sigma)`` for ``owner``'s copy ``run``."""
        return t

    def on_transcript(self, party) -> None:
        """After batched evaluation, before the transcripts are committed."""

    def rewrite(self, env: Envelope) -> Envelope | None:
        return env


class GuessC(Strategy):
    """Guess the indicator and corrupt exactly the runs guessed to be output runs.

    The guess is uniform over the ``2^s - 1`` indicators that leave at least one
    output run (an all-verification indicator aborts every execution anyway).
    The corrupted party flips its share of the first output wire in each
    guessed output run; it wins exactly when the guess is right.
    """

    name = "guess-c"
    summary = "flip the output in runs guessed to be output runs"

    def __init__(self, corrupted: int = 1, seed: int = 0, guess: int | None = None):
        super().__init__(corrupted, seed)
        self.guess = guess

    def on_prepare(self, party) -> None:
        super().on_prepare(party)
        if self.guess is None:
            self.guess = self.rng.randrange(2 ** party.s - 1)
        elif not 0 <= self.guess < 2 ** party.s - 1:
            raise ValueError(f"guess {self.guess} is not an indicator with an output run")

    def on_transcript(self, party) -> None:
        s, m = party.s, party.circuit.m
        for j in range(1, s + 1):
            if not (self.guess >> (s - j)) & 1:
                party.transcripts[j] ^= 1 << (m - 1)


class SingleRunTamper(Strategy):
    """Flip one internal wire share in one run's committed transcript.

    The evaluation itself is untouched, so the lie only shows when that run is
    opened for verification.  Circuits without internal wires get the first
    input wire instead.
    """

    name = "single-run-tamper"
    summary = "corrupt one internal wire of one run"

    def on_prepare(self, party) -> None:
        super().on_prepare(party)
        self.run = self.rng.randint(1, party.s)

    def on_transcript(self, party) -> None:
        c = party.circuit
        wire = c.n + 1 if c.q > c.m else 1
        party.transcripts[self.run] ^= 1 << (c.wires - wire)


class TrueInputSwap(Strategy):
    """Feed the true input into one run whatever the indicator says.

    The corrupted party orders that run's copy as ``(x0, x1)`` and cancels the
    selection difference with its share of ``t``, so the run computes on
    ``x0`` even when it is a verification run.
    """

    name = "true-input-swap"
    summary = "force the true input into one run"

    def on_prepare(self, party) -> None:
        super().on_prepare(party)
        self.run = self.rng.randint(1, party.s)
        party.sigma &= ~(1 << (party.s - self.run))

    def on_select(self, party, owner: int, run: int, t: int) -> int:
        if owner == party.i and run == self.run:
            return t ^ party.x0.value ^ party.x1
        return t


class CommitmentEquivocation(Strategy):
    """Announce a different share for the first output-segment block it opens."""

    name = "commitment-equivocation"
    summary = "open an output commitment to another value"

    def __init__(self, corrupted: int = 1, seed: int = 0):
        super().__init__(corrupted, seed)
        self.round = None

    def rewrite(self, env: Envelope) -> Envelope | None:
        if env.tag not in ("open-verify", "open-output") or self.round not in (None, env.round):
            return env
        cids, idx, shares = unpack_columns(env.payload)
        for pos, cid in enumerate(cids):
            committer, kind, _ = split_cid(cid)
            if committer == self.corrupted and kind == OUTPUT:
                self.round = env.round
                shares = list(shares)
                shares[pos] = (shares[pos] + 1) % self.p
                return env._replace(payload=pack_columns(cids, idx, shares))
        return env


class InconsistentInputSharing(Strategy):
    """Hand both peers the same share of the random-input copies.

    The copies of ``x1`` then reconstruct to the corrupted party's own share
    rather than to ``x1``; the true-input copies are shared correctly.
    """

    name = "inconsistent-input-sharing"
    summary = "share the random input inconsistently"

    def tamper_shares(self, party, shares: list[int]) -> list[int]:
        s, L = party.s, party.layout.lengths[party.i]
        mask = 0
        for j in range(1, s + 1):
            # x1 is the first field of copy j when sigma_j = 1
            first = (party.sigma >> (s - j)) & 1
            field = ((1 << L) - 1) << (L if first else 0)
            mask |= field << (2 * (s - j) * L)
        a, b = [m - 1 for m in PARTIES if m != party.i]
        shares = list(shares)
        shares[b] = (shares[b] & ~mask) | (shares[a] & mask)
        return shares


class DropOut(Strategy):
    """Stop sending once the transcripts are due."""

    name = "drop-out"
    summary = "withhold the transcript commitments"

    def rewrite(self, env: Envelope) -> Envelope | None:
        return None if env.tag == "tcommit" else env


CATALOG: dict[str, type[Strategy]] = {cls.name: cls for cls in (
    Strategy, GuessC, SingleRunTamper, TrueInputSwap, CommitmentEquivocation, InconsistentInputSharing, DropOut)}


def make_strategy(name: str, corrupted: int = 1, seed: int = 0, **kwargs) -> Strategy:
    try:
        cls = CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; choose from {', '.join(CATALOG)}") from None
    return cls(corrupted, seed, **kwargs)


# --------------------------------------------------------------------------
# Monte Carlo


@dataclass
class TrialReport:
    name: str
    s: int
    trials: int = 0
    wins: int = 0
    clean: int = 0
    aborts: Counter = field(default_factory=Counter)
    disagreements: int = 0

    @property
    def win_rate(self) -> float:
        return self.wins / self.trials if self.trials else 0.0

    def record(self, honest: list, expected: BitString) -> str:
        """Classify one trial from the honest parties' outcomes."""
        self.trials += 1
        accepted = [o.value for o in honest if o.ok]
        if len(set(accepted)) > 1:
            self.disagreements += 1
        if any(v != expected for v in accepted):
            self.wins += 1
            return "win"
        if len(accepted) == len(honest):
            self.clean += 1
            return "clean"
        code = next(o.code for o in honest if not o.ok)
        self.aborts[code] += 1
        return code

    def format_line(self) -> str:
        line = f"{self.name} s={self.s} trials={self.trials} wins={self.wins} clean={self.clean}"
        for code in sorted(self.aborts):
            line += f" abort:{code}={self.aborts[code]}"
        if self.disagreements:
            line += f" disagreements={self.disagreements}"
        return line


def estimate(strategy: str, circuit: Circuit, s: int, trials: int, seed: int = 0, corrupted: int = 1,
             params: FieldParams = PRODUCTION, inputs=None, indicator=None, **kwargs) -> TrialReport:
    """Run ``trials`` independent executions against ``strategy`` and tally them.

    Inputs are fresh uniform bits per trial unless ``inputs`` fixes them.
    A win is any honest party accepting a value other than the true output.
    """
    report = TrialReport(strategy, s)
    honest_ids = [i for i in PARTIES if i != corrupted]
    for t in range(trials):
        if inputs is None:
            rng = derive(seed, "inputs", t)
            xs = [BitString.random(circuit.input_length(i), rng) for i in PARTIES]
        else:
            xs = inputs
        adv = make_strategy(strategy, corrupted, derive_seed(seed, "strategy", t), **kwargs)
        result = run_malicious(circuit, xs, s, seed=derive_seed(seed, "trial", t), strategy=adv,
                               params=params, indicator=indicator)
        report.record([result.outcomes[i] for i in honest_ids], eval_plaintext(circuit, xs))
    return report
