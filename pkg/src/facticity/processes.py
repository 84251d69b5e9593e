"""Classify an evolving string by the trends of its complexity and facticity."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError, TooShort
from .estimator import estimate

INFORMATION_DISCARDING = "information_discarding"
SELF_ORGANIZING = "self_organizing"
REVERSIBLE = "reversible"
RANDOM = "random"
FACTIC = "factic"
UNCLASSIFIED = "unclassified"

_CLASSES = {
    (-1, -1): INFORMATION_DISCARDING,
    (-1, 0): SELF_ORGANIZING,
    (-1, 1): SELF_ORGANIZING,
    (0, 0): REVERSIBLE,
    (1, -1): RANDOM,
    (1, 0): RANDOM,
    (1, 1): FACTIC,
    (0, 1): UNCLASSIFIED,
    (0, -1): UNCLASSIFIED,
}


def _sign(z: float, eta: float) -> int:
    if abs(z) <= eta:
        return 0
    return 1 if z > 0 else -1


def classify(slope_K: float, slope_phi: float, eta: float) -> str:
    if eta < 0:
        raise DomainError("dead-band must be non-negative")
    return _CLASSES[_sign(slope_K, eta), _sign(slope_phi, eta)]


@dataclass
class ProcessReport:
    series: list[tuple[int, int, int]]
    slope_K: float
    slope_phi: float
    eta: float
    label: str
    models: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["class"] = d.pop("label")
        return d


def ols_slope(y) -> float:
    y = np.asarray(y, dtype=float)
    t = np.arange(y.size, dtype=float)
    tc = t - t.mean()
    return float(np.dot(tc, y - y.mean()) / np.dot(tc, tc))


def default_eta(k2s, count: int) -> float:
    return 0.01 * float(np.mean(k2s)) / count


def series_report(xs, eta: float | None = None) -> ProcessReport:
    """Estimate every x_t, fit least-squares slopes over t, and classify.

    When ``eta`` is None the dead-band is 1% of the mean estimated K2 divided
    by the number of steps.
    """
    if len(xs) < 3:
        raise TooShort(f"need at least 3 strings, got {len(xs)}")
    reports = [estimate(x) for x in xs]
    k2s = [r.k2 for r in reports]
    phis = [r.phi for r in reports]
    if eta is None:
        eta = default_eta(k2s, len(xs))
    sk, sp = ols_slope(k2s), ols_slope(phis)
    return ProcessReport(
        series=[(t, r.k2, r.phi) for t, r in enumerate(reports)],
        slope_K=sk,
        slope_phi=sp,
        eta=eta,
        label=classify(sk, sp, eta),
        models=[r.model for r in reports],
    )
