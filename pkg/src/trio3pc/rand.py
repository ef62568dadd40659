"""Seed expansion.

Every random source in a run is a :class:`random.Random` seeded from one root
seed and a fixed label path, e.g. ``derive(seed, "party", 2)``.  Changing one
axis (protocol randomness, strategy randomness, trial index) leaves the others
untouched.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(seed: int, *labels) -> int:
    text = ":".join([str(seed)] + [str(x) for x in labels])
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "little")


class _SeededRandom(random.Random):
    """``random.Random(seed)`` without the second seeding pass.

    The C constructor already seeds from an int argument; ``Random.__init__``
    would seed again with the same value.  Trials create several generators
    each, so the saving adds up.
    """

    def __init__(self, seed: int):
        self.gauss_next = None


def _same_stream() -> bool:
    return _SeededRandom(2**63 + 1).getrandbits(64) == random.Random(2**63 + 1).getrandbits(64)


_FACTORY = _SeededRandom if _same_stream() else random.Random


def derive(seed: int, *labels) -> random.Random:
    return _FACTORY(derive_seed(seed, *labels))
