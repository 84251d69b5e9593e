"""Binary entropy, its inverse, and the principal branch of Lambert W."""

from __future__ import annotations

import math

from .errors import DomainError

_INV_E = math.exp(-1.0)

BISECT_WIDTH = 1e-12
BISECT_MAX_ITER = 200


def binary_entropy(p: float) -> float:
    """H(p) in bits, with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability out of range: {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def lambert_w0(x: float) -> float:
    """Principal branch W0(x), the solution of w * exp(w) = x with w >= -1.

    Halley iteration. The initial guess is the branch-point series
    ``-1 + q - q^2/3`` with ``q = sqrt(2(1 + e x))`` near -1/e, ``log1p(x)``
    on (-0.25, e], and ``L - log L`` with ``L = log x`` beyond e.
    """
    if x < -_INV_E:
        if x > -_INV_E - 1e-15:
            return -1.0
        raise DomainError(f"W0 undefined below -1/e: {x}")
    if x == 0.0:
        return 0.0
    if x < -0.25:
        q = math.sqrt(max(0.0, 2.0 * (1.0 + math.e * x)))
        w = -1.0 + q - q * q / 3.0
    elif x <= math.e:
        w = math.log1p(x)
    else:
        lx = math.log(x)
        w = lx - math.log(lx)
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            break
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= 1e-16 * (1.0 + abs(w)):
            break
    return w


def inverse_entropy_bisect(s: float) -> float:
    """The p in [0, 1/2] with H(p) = s.

    Runs a fixed number of halvings (until the bracket is narrower than
    BISECT_WIDTH) so the result is monotone in ``s``.
    """
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"entropy out of range: {s}")
    if s == 0.0:
        return 0.0
    if s == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= BISECT_WIDTH:
            break
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < s:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _u_over_w(u: float) -> float:
    if u == 0.0:
        return 1.0
    return u / lambert_w0(u)


def inverse_entropy_productlog(s: float) -> tuple[float, bool]:
    """Evaluate ``-s/W(s) - (1-s)/W(1-s)`` literally with the principal branch.

    Returns (value, in_range) where in_range says whether ``1 - value`` is a
    usable probability in [0, 1/2]. Kept for inspection only; it does not
    invert H on the principal branch, so callers use inverse_entropy_bisect.
    """
    if s <= 0.0:
        raise DomainError(f"formula needs s > 0: {s}")
    if s > 1.0:
        raise DomainError(f"entropy out of range: {s}")
    value = -_u_over_w(s) - _u_over_w(1.0 - s)
    return value, 0.0 <= 1.0 - value <= 0.5
