"""Closed-form curves for stochastic binary strings.

All logarithms are base 2. ``k`` is the block size and strings have length
``k * 2**k`` unless a length is passed explicitly.
"""

from __future__ import annotations

import math

from .entropy import inverse_entropy_bisect
from .errors import DomainError

K_MAX = 24
SATURATION_EXP_MAX = 62


def _check_s(s: float) -> None:
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"entropy out of range: {s}")


def _check_k(k: int) -> None:
    if not 1 <= k <= K_MAX:
        raise DomainError(f"block size must be in [1, {K_MAX}]: {k}")


def epsilon_no_model(n: int, k: int, s: float) -> float:
    """Probability that the least likely k-block never shows up in n/k draws."""
    if k < 1 or n < k:
        raise DomainError(f"need k >= 1 and n >= k, got n={n}, k={k}")
    _check_s(s)
    p = inverse_entropy_bisect(s)
    return math.exp((n / k) * math.log1p(-(p ** k)))


def collapse_prob(k: int, s: float) -> float:
    """(1 - H^-1(s)^k)^(2^k), evaluated in log space."""
    _check_k(k)
    _check_s(s)
    p = inverse_entropy_bisect(s)
    return math.exp(float(2 ** k) * math.log1p(-(p ** k)))


def log2_binomial(n: int, m: int) -> float:
    if n < 0 or not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= n, got n={n}, m={m}")
    if m == 0 or m == n:
        return 0.0
    ln = math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)
    return ln / math.log(2.0)


def facticity_threshold(k: int, s: float, c: int = 0) -> float:
    """Upper bound (bits) on the optimal model size of a stochastic string.

    The model indexes the ``ceil(2^k * collapse_prob)``-subset of k-blocks,
    plus ``k`` bits of density, ``log2 k`` bits of length and a constant ``c``.
    """
    _check_k(k)
    if c < 0:
        raise DomainError("constant must be non-negative")
    space = 2 ** k
    occupied = min(space, math.ceil(space * collapse_prob(k, s)))
    return log2_binomial(space, occupied) + k + math.log2(k) + c


def max_facticity_bound(k: int, c: int = 0) -> float:
    _check_k(k)
    return 2 ** k + k + math.log2(k) + c


def saturation_bound(u_len: int) -> int:
    """2^(sd-overhead of a u_len-bit universal machine index)."""
    if u_len < 1:
        raise DomainError("index length must be >= 1")
    exponent = u_len + 2 * (u_len.bit_length() - 1) + 1
    if exponent > SATURATION_EXP_MAX:
        raise OverflowError(f"2**{exponent} exceeds the 2**{SATURATION_EXP_MAX} guard")
    return 1 << exponent
