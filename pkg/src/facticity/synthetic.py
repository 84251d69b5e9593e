"""Seeded string-sequence generators with known process behaviour.

Each generator returns a list of bit strings ``x_0 .. x_{steps-1}``.
"""

from __future__ import annotations

import numpy as np

from .estimator import _to_bits


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _random_bits(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.integers(0, 2, size=n, dtype=np.uint8)


def _markov_source(rng: np.random.Generator, n: int, m: int, flip: float = 0.03) -> np.ndarray:
    """Order-m chain whose next bit is a random function of the context, flipped w.p. ``flip``."""
    table = rng.integers(0, 2, size=1 << m, dtype=np.uint8)
    noise = rng.random(n) < flip
    out = np.empty(n, dtype=np.uint8)
    out[:m] = rng.integers(0, 2, size=m)
    ctx = 0
    for j in range(m):
        ctx = ((ctx << 1) | int(out[j])) & ((1 << m) - 1)
    for j in range(m, n):
        b = int(table[ctx]) ^ int(noise[j])
        out[j] = b
        ctx = ((ctx << 1) | b) & ((1 << m) - 1)
    return out


def repeated(seed: int, steps: int = 20, n: int = 1024) -> list[str]:
    """The same random string at every step."""
    x = _to_bits(_random_bits(_rng(seed), n))
    return [x] * steps


def growing_random_prefixes(seed: int, steps: int = 20, chunk: int = 256) -> list[str]:
    """Prefixes of length chunk, 2*chunk, ... of one random string."""
    x = _to_bits(_random_bits(_rng(seed), steps * chunk))
    return [x[: (t + 1) * chunk] for t in range(steps)]


def decaying_structure(seed: int, steps: int = 20, n0: int = 4096, shrink: int = 128) -> list[str]:
    """Shorter strings from lower-order context sources as t grows."""
    rng = _rng(seed)
    orders = np.linspace(8, 1, steps).round().astype(int)
    return [_to_bits(_markov_source(rng, n0 - shrink * t, int(m))) for t, m in enumerate(orders)]


def progressive_periodization(seed: int, steps: int = 20, n: int = 4096, period: int = 8) -> list[str]:
    """Fixed-length random string whose prefix is overwritten by a periodic
    pattern, the overwritten share growing linearly to the whole string."""
    rng = _rng(seed)
    base = _random_bits(rng, n)
    word = _random_bits(rng, period)
    pattern = np.resize(word, n)
    out = []
    for t in range(steps):
        cut = int(round(n * t / (steps - 1)))
        x = base.copy()
        x[:cut] = pattern[:cut]
        out.append(_to_bits(x))
    return out


def accreting_blocks(seed: int, steps: int = 20, block: int = 512, flip: float = 0.03) -> list[str]:
    """Append one new block per step, each from a fresh context source of
    rising order."""
    rng = _rng(seed)
    orders = np.linspace(1, 8, steps).round().astype(int)
    parts: list[np.ndarray] = []
    out = []
    for m in orders:
        parts.append(_markov_source(rng, block, int(m), flip))
        out.append(_to_bits(np.concatenate(parts)))
    return out


GENERATORS = {
    "reversible": repeated,
    "random": growing_random_prefixes,
    "information_discarding": decaying_structure,
    "self_organizing": progressive_periodization,
    "factic": accreting_blocks,
}
