"""Synthetic repetitive corpus generation.

Stands in for the giant genomic datasets this kind of compressor
targets: a seeded random base string over a 5-letter alphabet is copied
c times, each copy independently mutated at a per-character rate, and
the copies concatenated.

All randomness is counter-based splitmix64 so the corpus is a pure
function of (m, c, e, seed) reproducible from the documented scheme:
draw(seed, i) = mix(seed + (i + 1) * 0x9E3779B97F4A7C15) with the
splitmix64 finalizer as mix.  The base consumes counters [0, m); copy
number t consumes [m + 2tm, m + 2tm + m) for its mutation mask and
[m + (2t+1)m, ...) for replacement picks.  A character mutates when
draw / 2^64 < e, and is replaced by one of the other four letters.
"""

from __future__ import annotations

import numpy as np

from .bits import mix64

ALPHABET = b"ACGTN"

_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(seed: int, index: int) -> int:
    """The index-th draw of the counter-based stream for `seed`."""
    return mix64((seed + (index + 1) * _GOLDEN) & ((1 << 64) - 1))


def _draws(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized splitmix64 draws for counters [start, start + count)."""
    with np.errstate(over="ignore"):
        idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        x = np.uint64(seed) + idx * np.uint64(_GOLDEN)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return x ^ (x >> np.uint64(31))


def gen_corpus(m: int, c: int, e: float, seed: int = 0) -> bytes:
    """c noisy copies of a seeded random m-byte base string."""
    if m < 1:
        raise ValueError("base length must be >= 1")
    if c < 1:
        raise ValueError("copy count must be >= 1")
    if not 0 <= e < 1:
        raise ValueError("mutation rate must be in [0, 1)")

    letters = np.frombuffer(ALPHABET, dtype=np.uint8)
    nsyms = np.uint64(len(ALPHABET))
    base = (_draws(seed, 0, m) % nsyms).astype(np.uint8)

    if e == 0.0:
        return letters[base].tobytes() * c

    threshold = np.uint64(int(e * 2.0 ** 64))
    parts = []
    for t in range(c):
        mask = _draws(seed, m + 2 * t * m, m) < threshold
        picks = _draws(seed, m + (2 * t + 1) * m, m) % np.uint64(4)
        copy = base.copy()
        # + 1..4 mod 5 always lands on a different letter
        copy[mask] = (copy[mask] + picks.astype(np.uint8)[mask] + 1) % np.uint8(5)
        parts.append(letters[copy].tobytes())
    return b"".join(parts)
