"""Exact time- and length-bounded two-part complexity by exhaustive enumeration.

Every input ``w`` with ``|w| <= L_max`` is run on the micro-machine. For each
output ``x`` the table keeps a *profile*: the set of ``(|w|, |i|)`` pairs over
all successful runs, packed into one integer (bit ``|w| * 32 + |i|``). Every
quantity reported here (K2, facticity, K, C, sophistication, coarse
sophistication, witnesses) is a min over that set, and merging two partial
tables is a bitwise OR per string, so the merge is associative and
commutative and any partition of the input space gives the same table.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .bitcodec import BitString, TruncatedFrame, decode_sd, sd_len
from .collapse import K_MAX, facticity_threshold
from .errors import CapacityError, DomainError, Uncertified
from .microvm import DEFAULT_BUDGET, OK, Budget, _execute

L_MAX_CAP = 30
CHUNK = 1 << 15
_SLOT = 32

NON_STOCHASTIC = "non_stochastic"
PURELY_STOCHASTIC = "purely_stochastic"
STOCHASTIC_MIXED = "stochastic_mixed"
ABOVE_THRESHOLD_COMPUTABLE = "above_threshold_computable"
ABOVE_THRESHOLD_ABSOLUTE = "above_threshold_absolute"
TAXONOMY = (
    NON_STOCHASTIC,
    PURELY_STOCHASTIC,
    STOCHASTIC_MIXED,
    ABOVE_THRESHOLD_COMPUTABLE,
    ABOVE_THRESHOLD_ABSOLUTE,
)

SMALL_MODEL_CONST = 4
NON_STOCHASTIC_TOL = 0.05


@dataclass(frozen=True)
class FacticityReport:
    k2: int
    phi: int
    delta: int
    rho: int
    label: str
    certified: bool
    model: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TableEntry:
    x: BitString
    k2: int
    phi: int
    k1: int | None
    c: int
    witnesses: tuple[tuple[int, int], ...]
    certified: bool

    @property
    def delta(self) -> int:
        return len(self.x) - self.k2

    @property
    def rho(self) -> int:
        return self.k2 - sd_len(self.phi)


def _ceil_log2(v: int) -> int:
    return 0 if v <= 1 else (v - 1).bit_length()


def block_size_for(n: int) -> int:
    """Largest block size k (capped at K_MAX) with k * 2**k <= n, at least 1."""
    k = 1
    while k < K_MAX and (k + 1) * 2 ** (k + 1) <= n:
        k += 1
    return k


def taxonomy_label(
    phi: float,
    k2: float,
    n: int,
    k: int,
    c0: int = SMALL_MODEL_CONST,
    tau: float = NON_STOCHASTIC_TOL,
) -> str:
    """Place a string in the five-way taxonomy from its (phi, K2, |x|).

    Checked in order: non-stochastic (phi > 0 and within tau of K2), purely
    stochastic (phi on the small-model line log n + log k + c0), above the
    facticity threshold (absolute if phi is near n/2, else computable), and
    otherwise mixed.
    """
    if not 0 <= phi <= k2 <= n + 1 or k < 1:
        raise DomainError(f"inconsistent inputs phi={phi}, k2={k2}, n={n}, k={k}")
    if phi > 0 and phi >= (1.0 - tau) * k2:
        return NON_STOCHASTIC
    if phi <= _ceil_log2(n) + _ceil_log2(k) + c0:
        return PURELY_STOCHASTIC
    s = min(1.0, k2 / n) if n > 0 else 1.0
    if phi > facticity_threshold(min(k, K_MAX), s, c0):
        if phi >= (1.0 - tau) * n / 2:
            return ABOVE_THRESHOLD_ABSOLUTE
        return ABOVE_THRESHOLD_COMPUTABLE
    return STOCHASTIC_MIXED


def _pairs(mask: int):
    """Yield (total length, index length) pairs of a profile in ascending order."""
    while mask:
        low = mask & -mask
        yield divmod(low.bit_length() - 1, _SLOT)
        mask ^= low


def _enumerate_chunk(task: tuple[int, int, int, int, int]) -> dict[str, int]:
    length, start, stop, max_steps, max_output = task
    found: dict[str, int] = {}
    fmt = f"0{length}b"
    for v in range(start, stop):
        w = format(v, fmt) if length else ""
        try:
            i, p = decode_sd(w)
        except TruncatedFrame:
            continue
        res = _execute(i, p, max_steps, max_output)
        if res.status != OK:
            continue
        bit = 1 << (length * _SLOT + len(i))
        x = res.output
        found[x] = found.get(x, 0) | bit
    return found


def _tasks(L_max: int, budget: Budget) -> list[tuple[int, int, int, int, int]]:
    tasks = []
    for length in range(L_max + 1):
        size = 1 << length
        for start in range(0, size, CHUNK):
            tasks.append((length, start, min(size, start + CHUNK), budget.max_steps, budget.max_output))
    return tasks


def merge_profiles(into: dict[str, int], part: dict[str, int]) -> dict[str, int]:
    for x, mask in part.items():
        into[x] = into.get(x, 0) | mask
    return into


def default_workers() -> int:
    env = os.environ.get("FACTICITY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


class CodeTable:
    """Best known two-part codes for every output reached by the enumeration."""

    def __init__(self, L_max: int, budget: Budget, profiles: dict[str, int]):
        self.L_max = L_max
        self.budget = budget
        self.profiles = profiles

    def __contains__(self, x: BitString) -> bool:
        return x in self.profiles

    def __len__(self) -> int:
        return len(self.profiles)

    def is_certified(self, x: BitString) -> bool:
        return len(x) + 1 <= self.L_max

    def outputs(self) -> list[BitString]:
        """Every tabulated string, shortest first then lexicographic."""
        return sorted(self.profiles, key=lambda s: (len(s), s))

    def pairs(self, x: BitString) -> list[tuple[int, int]]:
        """All (total, |i|) pairs of successful codes for ``x``."""
        return list(_pairs(self.profiles.get(x, 0)))

    def entry(self, x: BitString) -> TableEntry:
        if len(x) > self.budget.max_output:
            raise DomainError(f"|x|={len(x)} exceeds max_output={self.budget.max_output}")
        certified = self.is_certified(x)
        pairs = self.pairs(x)
        identity_len = len(x) + 1
        if not pairs or pairs[0][0] > identity_len:
            # not reached inside L_max: the empty machine is the best known code
            return TableEntry(x, identity_len, 0, None, identity_len, ((0, len(x)),), certified)
        k2, phi = pairs[0]
        k1 = min((t for t, li in pairs if t == sd_len(li)), default=None)
        witnesses = tuple((li, k2 - sd_len(li)) for t, li in pairs if t == k2)
        c = min(t for t, _ in pairs)
        return TableEntry(x, k2, phi, k1, c, witnesses, certified)

    def facticity_of(self, x: BitString) -> tuple[int, bool]:
        e = self.entry(x)
        return e.phi, e.certified

    def _require_certified(self, x: BitString) -> None:
        if not self.is_certified(x):
            raise Uncertified(f"|x|+1={len(x) + 1} exceeds L_max={self.L_max}")

    def soph(self, x: BitString, c: int) -> int:
        """Smallest |i| among codes no more than ``c`` bits longer than K2."""
        self._require_certified(x)
        k2 = self.entry(x).k2
        return min(li for t, li in self.pairs(x) if t <= k2 + c)

    def csoph(self, x: BitString) -> int:
        """min over successful codes of 2|i_framed| + |p|, minus C(x)."""
        self._require_certified(x)
        e = self.entry(x)
        if e.c != e.k2:
            raise AssertionError(f"C != K2 for {x!r}: {e.c} vs {e.k2}")
        return min(t + sd_len(li) for t, li in self.pairs(x)) - e.c

    def report(self, x: BitString) -> FacticityReport:
        e = self.entry(x)
        n = len(x)
        label = taxonomy_label(e.phi, e.k2, n, block_size_for(n))
        return FacticityReport(e.k2, e.phi, e.delta, e.rho, label, e.certified)

    CSV_COLUMNS = ("x", "n", "k2", "phi", "k1", "delta", "rho", "certified", "label")

    def row(self, x: BitString) -> dict:
        e = self.entry(x)
        r = self.report(x)
        return {
            "x": x, "n": len(x), "k2": e.k2, "phi": e.phi,
            "k1": "" if e.k1 is None else e.k1,
            "delta": e.delta, "rho": e.rho,
            "certified": int(e.certified), "label": r.label,
        }

    def to_csv(self, xs: list[BitString] | None = None) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for x in self.outputs() if xs is None else xs:
            writer.writerow(self.row(x))
        return buf.getvalue()

    def to_bytes(self) -> bytes:
        """Canonical serialization of the raw profiles (for equality checks)."""
        body = {"L_max": self.L_max, "budget": asdict(self.budget),
                "profiles": [[x, format(self.profiles[x], "x")] for x in self.outputs()]}
        return json.dumps(body, separators=(",", ":")).encode()


def enumerate_codes(L_max: int, budget: Budget = DEFAULT_BUDGET, workers: int = 1) -> CodeTable:
    """Run U on every input of length <= L_max and tabulate the outputs."""
    if L_max > L_MAX_CAP:
        raise CapacityError(f"L_max={L_max} exceeds the cap of {L_MAX_CAP}")
    if L_max < 1:
        raise DomainError("L_max must be >= 1")
    tasks = _tasks(L_max, budget)
    profiles: dict[str, int] = {}
    if workers <= 1:
        for task in tasks:
            merge_profiles(profiles, _enumerate_chunk(task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_enumerate_chunk, tasks):
                merge_profiles(profiles, part)
    return CodeTable(L_max, budget, profiles)


def facticity_of(t: CodeTable, x: BitString) -> tuple[int, bool]:
    return t.facticity_of(x)


def soph(t: CodeTable, x: BitString, c: int) -> int:
    return t.soph(x, c)


def csoph(t: CodeTable, x: BitString) -> int:
    return t.csoph(x)


def universal_sample(
    L: int,
    n_samples: int,
    budget: Budget = DEFAULT_BUDGET,
    seed: int = 0,
    table: CodeTable | None = None,
) -> list[tuple[BitString, int]]:
    """Sample inputs (uniform length in [1, L], then uniform bits) and keep the
    successful outputs, each annotated with its tabulated K2."""
    if L > L_MAX_CAP:
        raise CapacityError(f"L={L} exceeds the cap of {L_MAX_CAP}")
    if table is None:
        table = enumerate_codes(L, budget)
    rng = np.random.default_rng(seed)
    lengths = rng.integers(1, L + 1, size=n_samples)
    out = []
    for length in lengths:
        w = "".join("1" if b else "0" for b in rng.integers(0, 2, size=int(length)))
        try:
            i, p = decode_sd(w)
        except TruncatedFrame:
            continue
        res = _execute(i, p, budget.max_steps, budget.max_output)
        if res.status == OK:
            out.append((res.output, table.entry(res.output).k2))
    return out


def decile_occupancy(samples: list[tuple[BitString, int]], lo: float, hi: float, bins: int = 10) -> int:
    """Number of equal-width K2 bins over [lo, hi] holding at least one sample."""
    k2s = np.array([k for _, k in samples], dtype=float)
    counts, _ = np.histogram(k2s, bins=bins, range=(lo, hi))
    return int(np.count_nonzero(counts))


__all__ = [
    "CodeTable", "FacticityReport", "TableEntry", "TAXONOMY",
    "block_size_for", "csoph", "decile_occupancy", "default_workers",
    "enumerate_codes", "facticity_of", "merge_profiles", "soph",
    "taxonomy_label", "universal_sample",
]
