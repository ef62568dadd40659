"""
What a cheating party can achieve
=================================

Each catalog strategy plays one corrupted party.  A win means an honest party
accepted a wrong output.  Only guessing the indicator ever wins, at rate 2^-s.
"""

from trio3pc.circuit import majority
from trio3pc.adversary import CATALOG, estimate

circuit = majority()
for name, cls in CATALOG.items():
    report = estimate(name, circuit, s=4, trials=400, seed=1)
    print(f"{cls.summary:50s} {report.format_line()}")

# guess-c against growing s
for s in (1, 2, 3, 4, 6):
    report = estimate("guess-c", circuit, s=s, trials=4000, seed=s)
    print(f"s={s}: win rate {report.win_rate:.4f}  (2^-s = {2.0 ** -s:.4f})")
