"""
Shamir-based commitments among three parties
============================================

A value is hidden as f(0) of a random line over F_p; party j keeps f(j).
Opening checks that all three points are collinear, so one liar is caught.
"""

import random

from trio3pc import TOY, BitString, CommitmentError, commit, open_commitment
from trio3pc.commitment import deal

rng = random.Random(1)

# small field so the numbers stay readable: p = 11, two bits per block
c = commit(1, BitString.from_str("10"), rng, TOY)
print("shares held by P1, P2, P3:", [s[0] for s in c.shares])
print("opened:", open_commitment(c))

# hiding: whatever the committed block, P2's share runs over all of F_11
for value in range(4):
    seen = sorted(deal([value], random.Random(a), 11)[1][0] for a in range(200))
    print("value", value, "P2 sees", sorted(set(seen)))

# binding: P3 announces a different share and the opening fails
c = commit(1, BitString.from_str("01"), rng, TOY)
d1, d2, d3 = c.shares
try:
    open_commitment(c, (d1, d2, [(d3[0] + 1) % 11]))
except CommitmentError as exc:
    print("abort:", exc)

# longer strings are split into k-bit blocks; production uses p = 2^61 - 1, k = 59
long = BitString.random(150, rng)
c = commit(2, long, rng)
print(c.blocks, "blocks, round trip ok:", open_commitment(c) == long)
