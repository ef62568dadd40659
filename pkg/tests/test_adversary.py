from collections import Counter

import pytest

from trio3pc.adversary import CATALOG, TrialReport, estimate, make_strategy
from trio3pc.bits import BitString
from trio3pc.circuit import and_gate, majority
from trio3pc.transport import Outcome


def test_catalog_has_named_strategies():
    assert {"null", "guess-c", "single-run-tamper", "true-input-swap", "commitment-equivocation",
            "inconsistent-input-sharing", "drop-out"} <= set(CATALOG)
    for name, cls in CATALOG.items():
        assert cls.name == name and cls.summary


def test_make_strategy_checks():
    with pytest.raises(ValueError):
        make_strategy("bribe")
    with pytest.raises(ValueError):
        make_strategy("null", corrupted=4)


def test_report_classification():
    r = TrialReport("x", 2)
    y = BitString.from_str("1")
    assert r.record([Outcome("ok", y), Outcome("ok", y)], y) == "clean"
    assert r.record([Outcome("ok", BitString.from_str("0")), Outcome("abort", code="circuit")], y) == "win"
    assert r.record([Outcome("abort", code="circuit"), Outcome("abort", code="circuit")], y) == "circuit"
    assert r.record([Outcome("ok", y), Outcome("ok", BitString.from_str("0"))], y) == "win"
    assert (r.trials, r.wins, r.clean, r.disagreements) == (4, 2, 1, 1)
    assert r.aborts == Counter(circuit=1)
    assert r.format_line() == "x s=2 trials=4 wins=2 clean=1 abort:circuit=1 disagreements=1"
    assert r.win_rate == 0.5


def test_null_strategy_never_aborts_with_output_runs():
    r = estimate("null", majority(), 3, 200, seed=1)
    assert r.wins == 0
    assert set(r.aborts) <= {"no-output-runs"}
    assert r.clean + r.aborts["no-output-runs"] == 200


@pytest.mark.parametrize("name, codes", [
    ("true-input-swap", {"random-input"}),
    ("commitment-equivocation", {"commitment"}),
    ("inconsistent-input-sharing", {"random-input"}),
    ("drop-out", {"missing-message"}),
])
@pytest.mark.parametrize("corrupted", [1, 2, 3])
def test_strategies_are_caught(name, codes, corrupted):
    r = estimate(name, majority(), 4, 60, seed=corrupted, corrupted=corrupted)
    assert r.wins == 0 and r.disagreements == 0
    assert set(r.aborts) - {"no-output-runs"} <= codes
    assert r.clean == 0 or name in ("true-input-swap", "inconsistent-input-sharing")


def test_single_run_tamper_aborts_or_is_harmless():
    r = estimate("single-run-tamper", and_gate(), 4, 300, seed=2)
    assert r.wins == 0
    assert r.clean > 0 and sum(r.aborts.values()) > 0


def test_guess_c_rate_roughly_half_at_s1():
    r = estimate("guess-c", and_gate(), 1, 2000, seed=3)
    assert abs(r.win_rate - 0.5) < 5 * (0.25 / 2000) ** 0.5


def test_estimate_is_deterministic():
    a = estimate("guess-c", majority(), 2, 50, seed=9)
    b = estimate("guess-c", majority(), 2, 50, seed=9)
    assert a == b and a.format_line() == b.format_line()


@pytest.mark.parametrize("s", [1, 2, 8])
def test_no_strategy_beats_the_bound(s):
    for name in CATALOG:
        r = estimate(name, majority(), s, 150, seed=s)
        bound = 2.0 ** -s + 3 * (2.0 ** -s * (1 - 2.0 ** -s) / 150) ** 0.5
        assert r.win_rate <= bound, r.format_line()
        assert r.disagreements == 0
