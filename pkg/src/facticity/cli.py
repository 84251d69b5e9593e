"""Command-line front end.

Exit status is 0 on success, 1 on a usage error and 2 on a runtime error.
Data goes to ``--out`` or stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import collapse, estimator, exact, processes
from .bitcodec import bytes_to_bits, check_bits, decode_sd, encode_sd, sd_len
from .errors import DomainError
from .microvm import Budget, run


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6f}"
    if isinstance(v, bool):
        return int(v)
    return v


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_bits(path: str, raw: bool) -> str:
    data = Path(path).read_bytes()
    if raw:
        return bytes_to_bits(data)
    return check_bits("".join(data.decode("ascii").split()))


def _bits_arg(s: str) -> str:
    try:
        return check_bits(s)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e))


def _int_list(s: str) -> list[int]:
    try:
        return [int(v) for v in s.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {s!r}")


def cmd_exact(a) -> None:
    if not 1 <= a.max_code_len <= exact.L_MAX_CAP:
        raise UsageError(f"--max-code-len must be in [1, {exact.L_MAX_CAP}] (enumeration cap), got {a.max_code_len}")
    steps = a.step_budget if a.step_budget is not None else 4 * a.max_output ** 2
    budget = Budget(steps, a.max_output)
    workers = a.workers if a.workers is not None else exact.default_workers()
    table = exact.enumerate_codes(a.max_code_len, budget, workers=workers)
    xs = table.outputs() if a.all else [a.string]
    if a.json:
        rows = []
        for x in xs:
            e = table.entry(x)
            row = table.row(x)
            row["k1"] = e.k1
            row["certified"] = e.certified
            row["witnesses"] = [list(w) for w in e.witnesses]
            if e.certified:
                row["csoph"] = table.csoph(x)
            rows.append(row)
        _emit(_json(rows if a.all else rows[0]), a.out)
    else:
        _emit(table.to_csv(xs), a.out)


def cmd_estimate(a) -> None:
    x = _read_bits(a.input, a.raw)
    if not x:
        raise DomainError("input holds no bits")
    _emit(_json(estimator.estimate(x).to_dict()), a.out)


def render_svg(rows: list[dict], width: int = 640, height: int = 400) -> str:
    """Mean estimated facticity and the analytic threshold against entropy."""
    means = estimator.mean_phi_by_s(rows)
    thresh: dict[float, float] = {}
    for r in rows:
        thresh[r["s"]] = r["threshold_bits"]
    ss = sorted(means)
    top = max(max(means.values()), max(thresh.values()), 1.0)
    pad = 40

    def pts(series):
        out = []
        for s in ss:
            px = pad + s * (width - 2 * pad)
            py = height - pad - series[s] / top * (height - 2 * pad)
            out.append(f"{px:.2f},{py:.2f}")
        return " ".join(out)

    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<text x="{width / 2:.0f}" y="{height - 8}" font-size="12">entropy s</text>\n'
        f'<text x="4" y="{pad - 10}" font-size="12">bits (max {top:.1f})</text>\n'
        f'<polyline fill="none" stroke="blue" points="{pts(means)}"/>\n'
        f'<polyline fill="none" stroke="red" points="{pts(thresh)}"/>\n'
        "</svg>\n"
    )


def cmd_sweep(a) -> None:
    if not 2 <= a.k <= 12:
        raise UsageError(f"--k must be in [2, 12], got {a.k}")
    workers = a.workers if a.workers is not None else 1
    rows = estimator.sweep(a.k, a.grid, a.reps, a.seed, workers=workers)
    _emit(_csv(estimator.SWEEP_COLUMNS, rows), a.out)
    if a.svg:
        Path(a.svg).write_text(render_svg(rows))


def cmd_classify(a) -> None:
    lines = [ln.strip() for ln in Path(a.input).read_text().splitlines() if ln.strip()]
    xs = [check_bits(ln) for ln in lines]
    rep = processes.series_report(xs, a.eta)
    _emit(_json(rep.to_dict()), a.out)


CURVE_COLUMNS = ("k", "s", "phi_collapse", "threshold_bits", "max_bound")


def cmd_curves(a) -> None:
    if a.grid < 2:
        raise UsageError("--grid must be >= 2")
    rows = []
    for k in a.k_list:
        if not 1 <= k <= collapse.K_MAX:
            raise UsageError(f"--k-list entries must be in [1, {collapse.K_MAX}], got {k}")
        for g in range(a.grid):
            s = g / (a.grid - 1)
            rows.append({
                "k": k, "s": s,
                "phi_collapse": collapse.collapse_prob(k, s),
                "threshold_bits": collapse.facticity_threshold(k, s, a.c),
                "max_bound": collapse.max_facticity_bound(k, a.c),
            })
    _emit(_csv(CURVE_COLUMNS, rows), a.out)


def cmd_codec(a) -> None:
    if a.action == "encode":
        enc = encode_sd(a.bits)
        _emit(_json({"payload": a.bits, "encoded": enc, "length": len(enc), "sd_len": sd_len(len(a.bits))}), a.out)
    else:
        payload, rest = decode_sd(a.bits)
        _emit(_json({"payload": payload, "rest": rest}), a.out)


def cmd_run(a) -> None:
    budget = Budget(a.max_steps if a.max_steps is not None else 4 * a.max_output ** 2, a.max_output)
    _emit(_json(run(a.code, budget).to_dict()), a.out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="facticity", description="Exact and estimated two-part complexity and facticity.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("exact", help="exhaustive enumeration over the micro-machine")
    e.add_argument("--max-code-len", type=int, default=18)
    e.add_argument("--step-budget", type=int, default=None)
    e.add_argument("--max-output", type=int, default=32)
    e.add_argument("--workers", type=int, default=None)
    which = e.add_mutually_exclusive_group(required=True)
    which.add_argument("--string", type=_bits_arg)
    which.add_argument("--all", action="store_true")
    fmt = e.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=cmd_exact)

    s = sub.add_parser("estimate", help="estimate facticity of a data file")
    s.add_argument("--input", required=True)
    s.add_argument("--raw", action="store_true", help="read bytes, 8 bits each")
    s.add_argument("--out")
    s.set_defaults(func=cmd_estimate)

    w = sub.add_parser("sweep", help="facticity estimates across an entropy grid")
    w.add_argument("--k", type=int, default=8)
    w.add_argument("--grid", type=int, default=21)
    w.add_argument("--reps", type=int, default=5)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--workers", type=int, default=None)
    w.add_argument("--out")
    w.add_argument("--svg")
    w.set_defaults(func=cmd_sweep)

    c = sub.add_parser("classify", help="classify a sequence of strings")
    c.add_argument("--input", required=True)
    c.add_argument("--eta", type=float, default=None)
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("curves", help="collapse probability and threshold curves")
    v.add_argument("--k-list", type=_int_list, default=[4, 8])
    v.add_argument("--grid", type=int, default=101)
    v.add_argument("--c", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_curves)

    d = sub.add_parser("codec", help="self-delimiting frame encode/decode")
    d.add_argument("action", choices=["encode", "decode"])
    d.add_argument("--bits", type=_bits_arg, required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_codec)

    r = sub.add_parser("run", help="run one input on the micro-machine")
    r.add_argument("--code", type=_bits_arg, required=True)
    r.add_argument("--max-steps", type=int, default=None)
    r.add_argument("--max-output", type=int, default=64)
    r.add_argument("--out")
    r.set_defaults(func=cmd_run)
    return p


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (OSError, ValueError, LookupError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(dispatch())
