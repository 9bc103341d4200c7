"""Portable seeded randomness.

The generator is xoshiro256** (Blackman & Vigna), seeded through splitmix64.
A stream is identified by a 64-bit seed plus an integer key path, e.g.
``(seed, 0)`` for machine sessions or ``(seed, n_index, replication)`` in a
power sweep, so independent streams never depend on evaluation order.

A Bernoulli(p) draw takes the top 53 bits ``x`` of a 64-bit output and
succeeds iff ``x < ceil(p * 2**53)``, i.e. the uniform sample ``x / 2**53``
is below ``p`` exactly.  ``p = 0`` never succeeds and ``p = 1`` always does.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import _kernels
from ._numbers import to_probability

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
BERNOULLI_BITS = 53


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(x: int):
    """Yield the splitmix64 sequence started from state ``x``."""
    while True:
        x = (x + GOLDEN_GAMMA) & MASK64
        yield _mix64(x)


def check_seed(seed) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise TypeError(f"seed must be an int, got {seed!r}")
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def stream_state(seed: int, *key: int) -> tuple:
    h = check_seed(seed)
    for part in key:
        h = _mix64((h ^ _mix64((part + 1) * GOLDEN_GAMMA & MASK64)) & MASK64)
    gen = splitmix64(h)
    state = tuple(next(gen) for _ in range(4))
    if not any(state):
        state = (1, 0, 0, 0)
    return state


def bernoulli_threshold(p) -> int:
    p = to_probability(p)
    return math.ceil(Fraction(p) * (1 << BERNOULLI_BITS))


class Xoshiro256:
    """Stateful wrapper around the kernels."""

    def __init__(self, seed: int = 0, *key: int, state: tuple = None):
        self.state = tuple(state) if state is not None else stream_state(seed, *key)

    def next_u64(self, count: int = 1) -> list:
        out, self.state = _kernels.next_u64(self.state, count)
        return out

    def bernoulli(self, p, count: int) -> bytes:
        out, self.state = _kernels.bernoulli_draws(self.state, bernoulli_threshold(p), count)
        return out

    def bernoulli_count(self, p, count: int) -> int:
        hits, self.state = _kernels.bernoulli_count(self.state, bernoulli_threshold(p), count)
        return hits
