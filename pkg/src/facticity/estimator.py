"""Two-part code estimates of K2 and facticity for arbitrary bit strings.

Four model classes compete; each reports a model cost and a data cost in bits:

* ``empty``: no model, the data is sent verbatim.
* ``bernoulli``: framed length plus the count of ones, then the index of the
  string among all strings with that count.
* ``block_markov(m)``: framed length, ``m`` and one 8-bit quantized
  probability per length-``m`` context; data is the ideal code length under
  those probabilities.
* ``singleton``: the model is the string itself.

The winner minimizes ``model_bits + ceil(data_bits)``; ties go to the smaller
model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitcodec import BitString, sd_len
from .collapse import collapse_prob, facticity_threshold, log2_binomial
from .entropy import inverse_entropy_bisect
from .errors import DomainError
from .exact import FacticityReport, block_size_for, taxonomy_label

MARKOV_MAX_ORDER = 8
MARKOV_ORDER_BITS = 3
QUANT_LEVELS = 256


@dataclass(frozen=True)
class ModelCandidate:
    id: str
    model_bits: int
    data_bits: float

    @property
    def total(self) -> int:
        return self.model_bits + math.ceil(self.data_bits - 1e-9)


@dataclass(frozen=True)
class StochasticSpec:
    n: int
    s: float
    seed: int = 0


def _as_array(x) -> np.ndarray:
    if isinstance(x, np.ndarray):
        return x.astype(np.uint8, copy=False)
    return np.frombuffer(x.encode("ascii"), dtype=np.uint8) - ord("0")


def _to_bits(arr: np.ndarray) -> BitString:
    return (arr.astype(np.uint8) + ord("0")).tobytes().decode("ascii")


def gen_stochastic(spec: StochasticSpec) -> BitString:
    """i.i.d. Bernoulli(H^-1(s)) bits from a seeded generator."""
    if spec.n < 1 or not 0.0 <= spec.s <= 1.0:
        raise DomainError(f"bad stochastic spec: {spec}")
    p = inverse_entropy_bisect(spec.s)
    rng = np.random.default_rng(spec.seed)
    return _to_bits(rng.random(spec.n) < p)


def framed_length_bits(n: int) -> int:
    """Bits to send n as a self-delimiting binary numeral."""
    return sd_len(n.bit_length())


def _markov_candidate(a: np.ndarray, m: int) -> ModelCandidate:
    n = a.size
    # context index of each position j >= m: the previous m bits, MSB = oldest
    ctx = np.zeros(n - m, dtype=np.int64)
    for d in range(m):
        ctx = (ctx << 1) | a[d:n - m + d]
    nxt = a[m:].astype(np.int64)
    ones = np.bincount(ctx, weights=nxt, minlength=1 << m)
    total = np.bincount(ctx, minlength=1 << m)
    p_hat = (ones + 0.5) / (total + 1.0)
    q = np.clip(np.rint(p_hat * QUANT_LEVELS), 1, QUANT_LEVELS - 1) / QUANT_LEVELS
    data = m + float(np.sum(ones * -np.log2(q) + (total - ones) * -np.log2(1.0 - q)))
    model = MARKOV_ORDER_BITS + framed_length_bits(n) + (1 << m) * 8
    return ModelCandidate(f"block_markov({m})", model, data)


def markov_orders(n: int) -> list[int]:
    if n < 2:
        return []
    return [m for m in range(1, MARKOV_MAX_ORDER + 1) if m <= math.log2(n) - 2]


def model_costs(x) -> list[ModelCandidate]:
    a = _as_array(x)
    n = int(a.size)
    if n < 1:
        raise DomainError("need at least one bit")
    n1 = int(a.sum())
    out = [
        ModelCandidate("empty", 0, float(n)),
        ModelCandidate(
            "bernoulli",
            framed_length_bits(n) + math.ceil(math.log2(n + 1)),
            log2_binomial(n, n1),
        ),
    ]
    out.extend(_markov_candidate(a, m) for m in markov_orders(n))
    out.append(ModelCandidate("singleton", sd_len(n) + n, 0.0))
    return out


def best_candidate(cands: list[ModelCandidate]) -> ModelCandidate:
    return min(cands, key=lambda c: (c.total, c.model_bits))


def estimate(x) -> FacticityReport:
    """Estimated (K2, facticity, deficiency, residual entropy, label) of x."""
    a = _as_array(x)
    n = int(a.size)
    win = best_candidate(model_costs(a))
    k2 = win.total
    phi = win.model_bits
    rho = max(0, k2 - sd_len(phi))
    label = taxonomy_label(phi, k2, n, block_size_for(n))
    return FacticityReport(k2, phi, n - k2, rho, label, False, win.id)


def normalized_facticity(c_hat: float, n: int) -> float:
    if n < 1 or not 0 <= c_hat <= n:
        raise DomainError(f"need 0 <= c_hat <= n, n >= 1; got {c_hat}, {n}")
    r = c_hat / n
    return 4.0 * r * (1.0 - r)


SWEEP_COLUMNS = (
    "s", "p", "rep", "n", "k2_hat", "phi_hat", "rho_hat", "delta_hat",
    "label", "phi_collapse", "threshold_bits",
)


def _sweep_cell(args: tuple[int, float, int, int, int]) -> dict:
    k, s, rep, seed, cell = args
    n = k * 2 ** k
    x = gen_stochastic(StochasticSpec(n, s, int(np.random.SeedSequence([seed, cell]).generate_state(1)[0])))
    r = estimate(x)
    return {
        "s": s, "p": inverse_entropy_bisect(s), "rep": rep, "n": n,
        "k2_hat": r.k2, "phi_hat": r.phi, "rho_hat": r.rho, "delta_hat": r.delta,
        "label": r.label,
        "phi_collapse": collapse_prob(k, s),
        "threshold_bits": facticity_threshold(k, s, 0),
    }


def sweep(k: int, grid_points: int, reps: int, seed: int = 0, workers: int = 1) -> list[dict]:
    """Estimate facticity across an entropy grid for strings of length k * 2**k.

    Each (s, rep) cell draws its string from the seed sequence ``(seed, cell)``
    so the rows do not depend on how cells are scheduled.
    """
    if not 2 <= k <= 12:
        raise DomainError(f"k must be in [2, 12]: {k}")
    if grid_points < 2 or reps < 1:
        raise DomainError("need grid_points >= 2 and reps >= 1")
    cells = []
    for g in range(grid_points):
        s = g / (grid_points - 1)
        for rep in range(reps):
            cells.append((k, s, rep, seed, g * reps + rep))
    if workers <= 1:
        return [_sweep_cell(c) for c in cells]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_cell, cells))


def mean_phi_by_s(rows: list[dict]) -> dict[float, float]:
    acc: dict[float, list[float]] = {}
    for r in rows:
        acc.setdefault(r["s"], []).append(r["phi_hat"])
    return {s: float(np.mean(v)) for s, v in sorted(acc.items())}
