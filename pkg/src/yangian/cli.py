"""Command-line front end: verify, spectrum, apply, sweep, tables.

Exit status 0 on success, 1 on invalid input, 2 on numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile

import numpy as np

from . import linalg, su2_yangian, su3_yangian
from .entanglement import PureState
from .errors import NumericalError, ValidationError
from .generators import RELATION_TOL, YangianParams
from .mesons import construct_eta, decay_report
from .transitions import (
    SL2_OPERATORS,
    apply_transition,
    qubit_initial_state,
    sl2_operator_catalog,
    su3_display,
    su3_operator_catalog,
    sweep_c1,
)

DIGITS = 12
_SU3_LABEL = re.compile(r"^([IUV])(tilde|bar)([+-]|3|8)$")


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for numerical failures here
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    text = f"{x:.{DIGITS}g}"
    return "0" if text == "-0" else text


def _num(x: float):
    x = float(x)
    if not math.isfinite(x):
        return fmt(x)
    return float(fmt(x)) + 0.0


def jsonable(obj):
    """Round floats to 12 significant digits and make everything JSON-safe."""
    if isinstance(obj, (bool, np.bool_)) or obj is None or isinstance(obj, str):
        return bool(obj) if isinstance(obj, np.bool_) else obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _num(obj.real), "im": _num(obj.imag)}
    if isinstance(obj, dict):
        return {fmt(k) if isinstance(k, float) else str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, PureState):
        return {"party_dims": list(obj.party_dims), "amplitudes": jsonable(obj.amplitudes)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump_json(doc) -> str:
    return json.dumps(jsonable(doc), indent=2, ensure_ascii=False) + "\n"


def _params(args) -> YangianParams:
    missing = [name for name in ("mu", "nu", "lam") if getattr(args, name) is None]
    if missing:
        raise UsageError("missing --" + ", --".join("lambda" if m == "lam" else m for m in missing))
    return YangianParams(args.mu, args.nu, args.lam)


def _parse_amps(text: str) -> np.ndarray:
    try:
        return np.array([complex(tok.strip().replace("i", "j")) for tok in text.split(",")])
    except ValueError as exc:
        raise UsageError(f"cannot parse amplitudes {text!r}: {exc}") from None


def _report_doc(report) -> dict:
    return {
        "algebra": report.algebra,
        "params": report.params.as_dict(),
        "relations": [{"name": r.name, "residual": r.residual} for r in report.relations],
        "max_residual": report.max_residual,
        "failing": [r.name for r in report.failing()],
        "diagnostics": report.diagnostics,
    }


def cmd_verify(args) -> str:
    p = _params(args)
    tol = RELATION_TOL if args.tol is None else args.tol
    if args.algebra == "su2":
        report = su2_yangian.verify_su2_relations(p, tol)
    else:
        report = su3_yangian.verify_su3_relations(p, tol)
    return dump_json(_report_doc(report))


def cmd_spectrum(args) -> str:
    p = _params(args)
    op = su3_yangian.tilde_operators(p)["I3"]
    poly = linalg.char_poly(op)
    closed = su3_yangian.i3_closed_form(p)
    return dump_json(
        {
            "operator": "Itilde3",
            "params": p.as_dict(),
            "char_poly": list(poly.coefficients),
            "roots": su3_yangian.i3_spectrum(p),
            "closed_form": closed,
            "char_poly_at_closed_form": [abs(poly(z)) for z in closed],
        }
    )


def _resolve_operator(label: str, p: YangianParams):
    """(matrix, display label, party dims) for a CLI operator label."""
    by_name = {v: k for k, v in SL2_OPERATORS.items()}
    key = by_name.get(label, label)
    if key in SL2_OPERATORS:
        catalog = sl2_operator_catalog(p, reduced=key in ("P4", "P5", "P6"))
        return catalog[key], SL2_OPERATORS[key], (2, 2)
    m = _SU3_LABEL.match(label)
    if m is None or (m.group(3) in "38" and m.group(1) != "I"):
        raise UsageError(f"unknown operator {label!r}")
    family = "tilde" if m.group(2) == "tilde" else "reduced"
    key = m.group(1) + m.group(3)
    return su3_operator_catalog(p, family)[key], su3_display(family, key), (3, 3)


def _initial_state(args, dims) -> PureState:
    if args.amps is not None:
        return PureState(dims, _parse_amps(args.amps))
    if dims == (2, 2):
        if args.alpha is None or args.beta is None:
            raise UsageError("qubit operators need --alpha and --beta, or --amps")
        return qubit_initial_state(complex(args.alpha), complex(args.beta))
    if args.alpha1 is None or args.alpha2 is None:
        raise UsageError("su(3) operators need --alpha1 and --alpha2, or --amps")
    return construct_eta(args.alpha1, args.alpha2)


def cmd_apply(args) -> str:
    if args.operator is None:
        raise UsageError("apply needs --operator")
    p = _params(args)
    op, label, dims = _resolve_operator(args.operator, p)
    out = apply_transition(op, _initial_state(args, dims), label)
    return dump_json(
        {
            "operator": out.operator_label,
            "params": p.as_dict(),
            "initial_state": out.initial_state,
            "raw_state": out.raw_state,
            "raw_norm": out.raw_norm,
            "annihilated": out.annihilated,
            "final_state": out.final_state,
            "entanglement_before": out.entanglement_before,
            "entanglement_after": out.entanglement_after,
            "channels": out.channels,
            "components": out.components,
        }
    )


def cmd_sweep(args) -> str:
    if args.lam is None:
        raise UsageError("sweep needs --lambda")
    result = sweep_c1(args.lam, args.mu_min, args.mu_max, args.steps)
    if args.format == "json":
        return dump_json(
            {
                "lambda": result.lam,
                "points": [{"mu": mu, "c1": c} for mu, c in result.points],
                "omitted": result.omitted,
                "peaks": result.peaks,
                "note": result.note,
            }
        )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["mu", "c1"])
    for mu, c in result.points:
        writer.writerow([fmt(mu), fmt(c)])
    return buf.getvalue()


def _tables_markdown(report) -> str:
    lines = [
        f"# Decay channels of eta (alpha1={fmt(report.alpha1)}, alpha2={fmt(report.alpha2)})",
        "",
        f"mu={fmt(report.params.mu)}, nu={fmt(report.params.nu)}, lambda={fmt(report.params.lam)}",
        "",
    ]
    titles = {"tilde": "General operators", "reduced": "Reduced operators"}
    for family in ("tilde", "reduced"):
        lines += [f"## {titles[family]}", "", "| Operator | Entanglement | Channel |", "|---|---|---|"]
        for row in report.rows:
            if row.family != family:
                continue
            ent = "annihilated" if row.entanglement is None else fmt(row.entanglement)
            channel = f"η → {row.channel}" if row.channel else "-"
            lines.append(f"| {row.display} | {ent} | {channel} |")
        lines.append("")
    cmp = report.eta8_comparison
    lines += [
        "## Notes",
        "",
        f"- Ī⁸ output: oracle channel {cmp['oracle_channel']}; reference alternative {cmp['reference_channel']} "
        f"deviates by {fmt(cmp['state_deviation'])} in state norm.",
        f"- Special mixing alpha1 = -sqrt(2) alpha2: {'yes' if report.special_mixing else 'no'}.",
        "",
    ]
    return "\n".join(lines)


def cmd_tables(args) -> str:
    p = _params(args)
    if args.alpha1 is None or args.alpha2 is None:
        raise UsageError("tables needs --alpha1 and --alpha2")
    report = decay_report(p, args.alpha1, args.alpha2)
    if args.format == "json":
        return dump_json(
            {
                "params": p.as_dict(),
                "alpha1": report.alpha1,
                "alpha2": report.alpha2,
                "special_mixing": report.special_mixing,
                "rows": [
                    {"family": r.family, "operator": r.display, "entanglement": r.entanglement,
                     "channel": r.channel, "final_state": r.final_state}
                    for r in report.rows
                ],
                "eta8_comparison": report.eta8_comparison,
            }
        )  # fmt: skip
    return _tables_markdown(report)


COMMANDS = {
    "verify": (cmd_verify, "json", ("json",)),
    "spectrum": (cmd_spectrum, "json", ("json",)),
    "apply": (cmd_apply, "json", ("json",)),
    "sweep": (cmd_sweep, "csv", ("csv", "json")),
    "tables": (cmd_tables, "markdown", ("markdown", "json")),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--mu", type=float)
    common.add_argument("--nu", type=float)
    common.add_argument("--lambda", dest="lam", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--alpha1", type=float)
    common.add_argument("--alpha2", type=float)
    common.add_argument("--amps", help="comma-separated amplitudes, complex as re+imi")
    common.add_argument("--operator")
    common.add_argument("--tol", type=float)
    common.add_argument("--format", choices=("json", "csv", "markdown"))
    common.add_argument("--out", help="write here instead of standard output")

    parser = _Parser(prog="yangian", description="Two-site Yangian workbench")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", parents=[common], help="relation residuals")
    v.add_argument("algebra", choices=("su2", "su3"))
    s = sub.add_parser("spectrum", parents=[common], help="spectrum of I~3")
    s.add_argument("target", choices=("i3",))
    sub.add_parser("apply", parents=[common], help="apply one transition operator")
    w = sub.add_parser("sweep", parents=[common], help="C1 against mu")
    w.add_argument("quantity", choices=("c1",))
    w.add_argument("--mu-min", type=float, default=0.01)
    w.add_argument("--mu-max", type=float, default=1.99)
    w.add_argument("--steps", type=int, default=199)
    sub.add_parser("tables", parents=[common], help="decay-channel tables")
    return parser


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".yangian-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        handler, default_format, allowed = COMMANDS[args.command]
        args.format = args.format or default_format
        if args.format not in allowed:
            raise UsageError(f"{args.command} does not support --format {args.format}")
        text = handler(args)
        if args.out:
            _write_atomic(args.out, text)
        else:
            sys.stdout.write(text)
        return 0
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
