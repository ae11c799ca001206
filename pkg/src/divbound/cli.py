"""Command-line front end.

Subcommands ``compute``, ``verify``, ``fuzz``, ``errata`` and ``table``.
Plain output is one ``label<TAB>value`` line per result with 9 significant
digits; ``--json`` prints a single document with the keys ``command``,
``inputs``, ``results`` and ``violations``.

Exit status is 0 on success, 1 when any inequality link is violated and 2 on
usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import harness, measures
from .bounds import constants_table
from .errors import DivergenceError
from .simplex import Distribution, RatioRange, validate

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Bad input file; the message names the file, line and entry."""


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.9g}"
    if value is None:
        return "none"
    return str(value)


def _json_value(value):
    return harness._jsonable(value)


# ---------------------------------------------------------------- input


def _parse_number(text: str, where: str) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise InputError(f"{where}: {text.strip()!r} is not a decimal number") from None


def _finish(values: list[float], where: str, normalize: bool) -> Distribution:
    if normalize:
        arr = np.asarray(values, dtype=np.float64)
        if arr.size and np.all(np.isfinite(arr)) and np.all(arr > 0):
            values = (arr / arr.sum()).tolist()
    try:
        return validate(values)
    except DivergenceError as exc:
        raise InputError(f"{where}: {type(exc).__name__}: {exc}") from None


def _read_csv(path: str, text: str, normalize: bool) -> list[Distribution]:
    out = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        values = [
            _parse_number(cell, f"{path}:{lineno}: entry {j + 1}") for j, cell in enumerate(row)
        ]
        out.append(_finish(values, f"{path}:{lineno}", normalize))
    return out


def _read_json(path: str, text: str, normalize: bool) -> list[Distribution]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, list) or not doc:
        raise InputError(f"{path}: expected an array of numbers or an array of arrays")
    rows = doc if all(isinstance(x, list) for x in doc) else [doc]
    out = []
    for i, row in enumerate(rows, start=1):
        where = f"{path}: distribution {i}" if len(rows) > 1 else path
        values = []
        for j, x in enumerate(row, start=1):
            if isinstance(x, bool) or not isinstance(x, (int, float, str)):
                raise InputError(f"{where}: entry {j} ({x!r}) is not a number")
            values.append(_parse_number(str(x), f"{where}: entry {j}"))
        out.append(_finish(values, where, normalize))
    return out


def read_distributions(path: str, normalize: bool = False) -> list[Distribution]:
    """Read one or more distributions from a CSV or JSON file."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError:
        raise InputError(f"{path}: not valid UTF-8") from None
    if path.lower().endswith(".json") or text.lstrip().startswith("["):
        out = _read_json(path, text, normalize)
    else:
        out = _read_csv(path, text, normalize)
    if not out:
        raise InputError(f"{path}: no distributions found")
    return out


def _pairs(args) -> list[tuple[Distribution, Distribution]]:
    ps = read_distributions(args.p, args.normalize)
    qs = read_distributions(args.q, args.normalize)
    if len(ps) == 1 and len(qs) > 1:
        ps = ps * len(qs)
    elif len(qs) == 1 and len(ps) > 1:
        qs = qs * len(ps)
    if len(ps) != len(qs):
        raise InputError(f"{args.p} has {len(ps)} distributions but {args.q} has {len(qs)}")
    for i, (P, Q) in enumerate(zip(ps, qs), start=1):
        if P.n != Q.n:
            raise InputError(f"pair {i}: LengthMismatch: P has {P.n} entries, Q has {Q.n}")
    return list(zip(ps, qs))


def _real_list(values: Sequence[str] | None) -> list[float] | None:
    if values is None:
        return None
    out = []
    for item in values:
        for part in item.split(","):
            if part.strip():
                out.append(float(part))
    return out


# ---------------------------------------------------------------- commands


def _emit(out, args, command: str, inputs: dict, results, rows, violations) -> None:
    if args.json:
        doc = {"command": command, "inputs": inputs, "results": results, "violations": violations}
        out.write(json.dumps(_json_value(doc), sort_keys=True, indent=2, allow_nan=False) + "\n")
    else:
        for label, value in rows:
            out.write(f"{label}\t{fmt(value)}\n")


def _cmd_compute(args, out) -> int:
    measure = args.measure
    if measure.startswith("phi_s:"):
        s = float(measure.split(":", 1)[1])
        if not math.isfinite(s):
            raise InputError(f"phi_s order must be finite, got {s!r}")
        fn = lambda P, Q: measures.phi_s(s, P, Q)  # noqa: E731
    else:
        try:
            kind = measures.MeasureKind(measure)
        except ValueError:
            kinds = ", ".join(k.value for k in measures.MeasureKind)
            raise InputError(f"unknown measure {measure!r}; expected phi_s:S or one of {kinds}") from None
        fn = lambda P, Q: measures.divergence(kind, P, Q)  # noqa: E731
    pairs = _pairs(args)
    values = [fn(P, Q) for P, Q in pairs]
    labels = [measure] if len(values) == 1 else [f"{measure}[{i}]" for i in range(len(values))]
    inputs = {"measure": measure, "p": args.p, "q": args.q, "normalize": args.normalize}
    _emit(out, args, "compute", inputs, values, list(zip(labels, values)), [])
    return EXIT_OK


def _link_dict(link) -> dict:
    return {
        "label": link.label, "lhs": link.lhs, "rhs": link.rhs, "slack": link.slack,
        "tolerance": link.tolerance, "passed": link.passed, "applicable": link.applicable,
        "equality": link.equality,
    }


def _cmd_verify(args, out) -> int:
    s_values = _real_list(args.s) or list(harness.DEFAULT_S_VALUES)
    pairs = _pairs(args)
    results, rows, violations = [], [], []
    for i, (P, Q) in enumerate(pairs):
        prefix = "" if len(pairs) == 1 else f"[{i}] "
        for rep in harness.verify_all(P, Q, s_values, tolerance_scale=args.tolerance_scale):
            results.append({
                "pair": i, "chain_id": rep.chain_id, "passed": rep.passed,
                "inputs": rep.inputs, "links": [_link_dict(l) for l in rep.links],
            })
            for link in rep.links:
                status = "skip" if not link.applicable else ("pass" if link.passed else "FAIL")
                rows.append((f"{prefix}{rep.chain_id}: {link.label}", f"{fmt(link.slack)}\t{status}"))
                if not link.passed:
                    violations.append({"pair": i, "chain_id": rep.chain_id, "label": link.label,
                                       "slack": link.slack})
    inputs = {"p": args.p, "q": args.q, "s_values": s_values, "normalize": args.normalize,
              "tolerance_scale": args.tolerance_scale}
    _emit(out, args, "verify", inputs, results, rows, violations)
    return EXIT_VIOLATION if violations else EXIT_OK


def _cmd_fuzz(args, out) -> int:
    kwargs = {}
    if args.dims is not None:
        kwargs["dims"] = tuple(int(d) for d in _real_list(args.dims))
    if args.conc is not None:
        kwargs["concentrations"] = tuple(_real_list(args.conc))
    if args.s is not None:
        kwargs["s_values"] = tuple(_real_list(args.s))
    if args.trials is not None:
        kwargs["trials_per_dim"] = args.trials
    if args.seed is not None:
        kwargs["seed"] = args.seed
    kwargs["tolerance_scale"] = args.tolerance_scale
    try:
        config = harness.FuzzConfig(**kwargs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    summary = harness.fuzz(config)
    doc = harness.summary_to_dict(summary)
    violations = doc.pop("violations")
    if args.json:
        _emit(out, args, "fuzz", doc.pop("config"), doc, [], violations)
    else:
        rows = [("total_links_checked", summary.total_links_checked),
                ("violations", len(summary.violations))]
        rows += [(f"min_slack[{cid}]", slack) for cid, (slack, _) in summary.min_slack_per_chain.items()]
        rows += [(f"errata[{eq}]", f"{fmt(a)}\t{fmt(d)}") for eq, a, d, _ in summary.errata_diffs]
        rows += [(f"violation[{v.chain_id}]: {v.label}", v.slack) for v in summary.violations]
        _emit(out, args, "fuzz", {}, None, rows, [])
    return EXIT_VIOLATION if summary.violations else EXIT_OK


def _cmd_errata(args, out) -> int:
    pairs = _pairs(args)
    results, rows = [], []
    for i, (P, Q) in enumerate(pairs):
        prefix = "" if len(pairs) == 1 else f"[{i}] "
        for e in harness.errata_compare(P, Q, s_delta=args.s_delta, s_psi=args.s_psi):
            results.append({"pair": i, "equation_id": e.equation_id, "as_printed": e.as_printed,
                            "derived": e.derived, "agree": e.agree, "printed_bound": e.printed_bound,
                            "derived_bound": e.derived_bound, "printed_holds": e.printed_holds,
                            "note": e.note})
            rows.append((f"{prefix}{e.equation_id}",
                         f"{fmt(e.as_printed)}\t{fmt(e.derived)}\t{'agree' if e.agree else 'disagree'}"))
    inputs = {"p": args.p, "q": args.q, "s_delta": args.s_delta, "s_psi": args.s_psi,
              "normalize": args.normalize}
    _emit(out, args, "errata", inputs, results, rows, [])
    return EXIT_OK


def _cmd_table(args, out) -> int:
    try:
        rng = RatioRange(args.r, args.R)
    except DivergenceError as exc:
        raise InputError(str(exc)) from None
    s_values = _real_list(args.s) or []
    rows = constants_table(rng, s_values)
    inputs = {"r": rng.r, "R": rng.R, "s_values": s_values}
    _emit(out, args, "table", inputs, dict(rows), rows, [])
    return EXIT_OK


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="divbound", description="Divergence measures and their inequality chains.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_args(p):
        p.add_argument("--p", required=True, help="CSV or JSON file with P")
        p.add_argument("--q", required=True, help="CSV or JSON file with Q")
        p.add_argument("--normalize", action="store_true", help="divide each input by its sum")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("compute", help="evaluate one measure")
    p.add_argument("--measure", required=True, help="measure name or phi_s:S")
    pair_args(p)

    p = sub.add_parser("verify", help="run every chain on the given pair(s)")
    pair_args(p)
    p.add_argument("--s", nargs="+", help="orders s (space or comma separated)")
    p.add_argument("--tolerance-scale", type=float, default=1.0)

    p = sub.add_parser("fuzz", help="run every chain on seeded random pairs")
    p.add_argument("--dims", nargs="+")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--conc", nargs="+")
    p.add_argument("--s", nargs="+")
    p.add_argument("--tolerance-scale", type=float, default=1.0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("errata", help="compare printed and derived coefficients")
    pair_args(p)
    p.add_argument("--s-delta", type=float, default=2.0)
    p.add_argument("--s-psi", type=float, default=2.0)

    p = sub.add_parser("table", help="bound constants at a ratio range")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--s", nargs="+")
    p.add_argument("--json", action="store_true")
    return parser


_COMMANDS = {
    "compute": _cmd_compute,
    "verify": _cmd_verify,
    "fuzz": _cmd_fuzz,
    "errata": _cmd_errata,
    "table": _cmd_table,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Execute one command and return its exit status."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        return _COMMANDS[args.command](args, out)
    except SystemExit as exc:
        # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (InputError, DivergenceError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
