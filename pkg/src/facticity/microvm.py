"""A tiny prefix-indexed universal machine.

An input ``w`` is read as ``encode_sd(i) + p``: the framed machine index ``i``
followed by a raw, non-framed program ``p``. Three kinds of index exist:

* ``i == ""``: the empty machine, which copies ``p`` to the output.
* ``i == "1"``: the swap machine. ``p`` must itself be ``encode_sd(q) + j``;
  the result is that of running index ``j`` on program ``q``.
* ``i == "0" + body`` with an even-length body: a program of 2-bit opcodes

  ====  =====  =============================================
  00    OUT0   append 0
  01    OUT1   append 1
  10    CPY    append the next unread bit of ``p``
  11    DBL    append a copy of the whole output so far
  ====  =====  =============================================

Every other index is invalid. A run succeeds only if the machine halts within
budget having read all of ``p``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .bitcodec import BitString, TruncatedFrame, decode_sd, encode_sd

OK = "ok"
INVALID_INDEX = "invalid_index"
ABORT_BUDGET = "abort_budget"
ABORT_SEMANTICS = "abort_semantics"

OPCODES = {"00": "OUT0", "01": "OUT1", "10": "CPY", "11": "DBL"}

SWAP_INDEX = "1"
SWAP_FRAME = encode_sd(SWAP_INDEX)


@dataclass(frozen=True)
class Budget:
    max_steps: int
    max_output: int

    def __post_init__(self):
        if self.max_steps < 1 or self.max_output < 1:
            raise ValueError("budgets must be >= 1")

    @classmethod
    def default(cls, max_output: int = 64) -> "Budget":
        return cls(max_steps=4 * max_output * max_output, max_output=max_output)


DEFAULT_BUDGET = Budget.default()


@dataclass(frozen=True)
class RunOutcome:
    output: BitString
    consumed_all: bool
    steps: int
    status: str

    @property
    def ok(self) -> bool:
        return self.status == OK

    def to_dict(self) -> dict:
        return asdict(self)


def parse_index(i: BitString):
    """Classify an index.

    Returns ``("identity",)``, ``("swap",)``, ``("program", opcodes)`` or
    ``("invalid",)``.
    """
    if i == "":
        return ("identity",)
    if i == SWAP_INDEX:
        return ("swap",)
    if i[0] == "0" and len(i) % 2 == 1:
        return ("program", tuple(OPCODES[i[j:j + 2]] for j in range(1, len(i), 2)))
    return ("invalid",)


def _execute(i: str, p: str, max_steps: int, max_output: int) -> RunOutcome:
    if i == "":
        n = len(p)
        if n > max_output or n > max_steps:
            return RunOutcome("", False, min(n, max_steps + 1), ABORT_BUDGET)
        return RunOutcome(p, True, n, OK)

    if i == SWAP_INDEX:
        # dispatching the swapped pair costs one step
        if max_steps < 1:
            return RunOutcome("", False, 1, ABORT_BUDGET)
        try:
            q, j = decode_sd(p)
        except TruncatedFrame:
            return RunOutcome("", False, 1, ABORT_SEMANTICS)
        inner = _execute(j, q, max_steps - 1, max_output)
        return RunOutcome(inner.output, inner.consumed_all, inner.steps + 1, inner.status)

    if i[0] != "0" or len(i) % 2 == 0:
        return RunOutcome("", False, 0, INVALID_INDEX)

    out = ""
    steps = 0
    read = 0
    for j in range(1, len(i), 2):
        op = i[j:j + 2]
        if op == "00":
            out += "0"
            steps += 1
        elif op == "01":
            out += "1"
            steps += 1
        elif op == "10":
            if read >= len(p):
                return RunOutcome(out, False, steps, ABORT_SEMANTICS)
            out += p[read]
            read += 1
            steps += 1
        else:
            if not out:
                return RunOutcome(out, False, steps, ABORT_SEMANTICS)
            steps += len(out)
            out += out
        if steps > max_steps or len(out) > max_output:
            return RunOutcome(out[:max_output], False, steps, ABORT_BUDGET)
    if read != len(p):
        return RunOutcome(out, False, steps, ABORT_SEMANTICS)
    return RunOutcome(out, True, steps, OK)


def run(w: BitString, budget: Budget = DEFAULT_BUDGET) -> RunOutcome:
    """Run U on the input ``w`` within ``budget``."""
    try:
        i, p = decode_sd(w)
    except TruncatedFrame:
        return RunOutcome("", False, 0, INVALID_INDEX)
    return _execute(i, p, budget.max_steps, budget.max_output)


def run_pair(i: BitString, p: BitString, budget: Budget = DEFAULT_BUDGET) -> RunOutcome:
    """Shorthand for ``run(encode_sd(i) + p, budget)``."""
    return _execute(i, p, budget.max_steps, budget.max_output)


def swap_code(i: BitString, p: BitString) -> BitString:
    """The input that makes the swap machine reproduce index ``i`` on ``p``."""
    return SWAP_FRAME + encode_sd(p) + i
