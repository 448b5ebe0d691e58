"""Command-line interface.

Four subcommands: classify, check, transform, generate. Matrices come from
a file or standard input and go to a file or standard output; diagnostics go
to the error stream. Exit codes are part of the contract: 0 for success or
a passing check, 1 for a failed check or an unmet transform precondition,
2 for usage or input errors. Flags are validated before any input is read.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .checks import (
    DEFAULT_WITNESS_CAP,
    PropertyVerdict,
    Status,
    check_prequadrangle,
    check_strict,
    check_transition,
    check_triangle,
)
from .classify import classify
from .errors import InputError, ParseError, PreconditionError
from .generators import (
    GenSpec,
    gen_metric,
    gen_protometric,
    gen_quasi_semi_metric,
    gen_zero_protometric,
)
from .io import (
    MatrixFormat,
    _verdict_obj,
    detect_format,
    parse_gauge_csv,
    parse_matrix,
    serialize_matrix,
    serialize_report,
)
from .matrix import InequalityType, LabeledMatrix, ToleranceConfig
from . import transforms

TRANSFORM_OPS = (
    "transpose",
    "gauge",
    "add",
    "metrize",
    "compose",
    "decompose",
    "zerocoords",
    "potential",
    "preorder",
    "gromov",
    "farris",
    "minfarris",
    "log",
)

# Optional flags each transform op consumes; anything else provided is a
# usage error, and missing entries from _REQUIRED_FLAGS exit 2 by name.
_USED_FLAGS = {
    "gauge": {"alpha", "f_file"},
    "metrize": {"alpha"},
    "compose": {"f_file"},
    "add": {"other"},
    "gromov": {"base_label"},
    "minfarris": {"base_label"},
    "farris": {"base_label", "constant"},
}
_REQUIRED_FLAGS = {
    "gauge": ("alpha", "f_file"),
    "add": ("other",),
    "gromov": ("base_label",),
    "minfarris": ("base_label",),
    "farris": ("base_label", "constant"),
}
_OP_FLAG_NAMES = ("alpha", "f_file", "base_label", "constant", "other")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _tolerance(args: argparse.Namespace) -> ToleranceConfig:
    return ToleranceConfig(
        eps_ineq=args.tolerance_ineq,
        eps_eq=args.tolerance_eq,
        eps_strict=args.tolerance_strict,
    )


def _witness_cap(args: argparse.Namespace) -> int:
    cap = args.max_witnesses
    if cap < 1:
        raise InputError(f"--max-witnesses must be >= 1, got {cap}")
    return cap


def _matrix_format(args: argparse.Namespace, default: MatrixFormat) -> MatrixFormat:
    if args.format is None:
        return default
    if args.format == "text":
        raise InputError("matrix output supports csv or json, not text")
    return MatrixFormat.parse(args.format)


def _report_format(args: argparse.Namespace, default: str) -> str:
    fmt = args.format or default
    if fmt not in ("json", "text"):
        raise InputError(f"reports support json or text output, not {fmt!r}")
    return fmt


def run_classify(args: argparse.Namespace) -> int:
    fmt = _report_format(args, "json")
    tol = _tolerance(args)
    cap = _witness_cap(args)
    M = parse_matrix(_read_text(args.input))
    report = classify(M, tol, max_witnesses=cap)
    _write_text(args.output, serialize_report(report, fmt))
    return 0


def _parse_selector(selector: str) -> tuple[str, InequalityType | None]:
    kind, sep, rest = selector.partition(":")
    if kind in ("triangle", "prequad", "strict"):
        if not rest:
            raise InputError(f"selector {selector!r} needs a type, like {kind}:t")
        return kind, InequalityType.parse(rest)
    if kind == "transition":
        if sep:
            raise InputError("the transition selector does not take a type")
        return kind, None
    raise InputError(
        f"unknown property selector {selector!r}; expected triangle:TYPE, "
        "prequad:TYPE, strict:TYPE, or transition"
    )


def _render_verdict(selector: str, verdict: PropertyVerdict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_verdict_obj(verdict)) + "\n"
    slack = "n/a" if verdict.min_slack is None else repr(verdict.min_slack)
    lines = [
        f"{selector}: {verdict.status.value} min_slack={slack} "
        f"violations={verdict.count_violations}/{verdict.count_checked}"
    ]
    if verdict.witnesses:
        w = verdict.witnesses[0]
        lines.append(
            f"witness: x={w.x} y={w.y} z={w.z} "
            f"lhs={w.lhs!r} rhs={w.rhs!r} deficit={w.deficit!r}"
        )
    return "\n".join(lines) + "\n"


def run_check(args: argparse.Namespace) -> int:
    kind, ty = _parse_selector(args.selector)
    if args.for_log and kind != "transition":
        raise InputError("--for-log only applies to the transition selector")
    fmt = _report_format(args, "text")
    tol = _tolerance(args)
    cap = _witness_cap(args)
    M = parse_matrix(_read_text(args.input))
    if kind == "triangle":
        verdict = check_triangle(M, ty, tol, max_witnesses=cap)
    elif kind == "prequad":
        verdict = check_prequadrangle(M, ty, tol, max_witnesses=cap)
    elif kind == "strict":
        verdict = check_strict(M, ty, tol, max_witnesses=cap)
    else:
        verdict = check_transition(
            M, tol, for_log_transform=args.for_log, max_witnesses=cap
        )
    _write_text(args.output, _render_verdict(args.selector, verdict, fmt))
    return 1 if verdict.status is Status.FAIL else 0


def _matrix_from_json_obj(obj: object) -> LabeledMatrix:
    # Re-serialize and reuse the JSON matrix parser so both paths share
    # identical validation and error wording.
    return parse_matrix(json.dumps(obj), MatrixFormat.JSON)


def _gauge_from_json_obj(obj: object) -> dict[str, float]:
    if not isinstance(obj, dict):
        raise ParseError("decomposition field 'f' must be an object of label: value")
    out: dict[str, float] = {}
    for label, v in obj.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ParseError(f"gauge value for {label!r} must be a finite number, got {v!r}")
        out[label] = float(v)
    return out


def _compose_input(text: str, args: argparse.Namespace, tol: ToleranceConfig) -> LabeledMatrix:
    """Compose from a matrix plus --f-file, or from a decomposition object."""
    if detect_format(text) is MatrixFormat.JSON:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", row=e.lineno, col=e.colno) from None
        if isinstance(doc, dict) and "d" in doc and "f" in doc:
            d = _matrix_from_json_obj(doc["d"])
            f = _gauge_from_json_obj(doc["f"])
            return transforms.compose(d, f, tol)
    if args.f_file is None:
        raise InputError("transform compose requires --f-file when the input is a matrix")
    d = parse_matrix(text)
    f = parse_gauge_csv(_read_text(args.f_file))
    return transforms.compose(d, f, tol)


def run_transform(args: argparse.Namespace) -> int:
    op = args.op
    provided = {n for n in _OP_FLAG_NAMES if getattr(args, n) is not None}
    stray = sorted(provided - _USED_FLAGS.get(op, set()))
    if stray:
        raise InputError(f"transform {op} does not take --{stray[0].replace('_', '-')}")
    for name in _REQUIRED_FLAGS.get(op, ()):
        if getattr(args, name) is None:
            raise InputError(f"transform {op} requires --{name.replace('_', '-')}")
    tol = _tolerance(args)
    text = _read_text(args.input)
    in_format = detect_format(text)

    out_matrix: LabeledMatrix | None = None
    out_obj: object = None
    if op == "compose":
        out_matrix = _compose_input(text, args, tol)
    else:
        M = parse_matrix(text, in_format)
        if op == "transpose":
            out_matrix = transforms.transpose(M)
        elif op == "gauge":
            f = parse_gauge_csv(_read_text(args.f_file))
            out_matrix = transforms.affine_gauge(M, args.alpha, f)
        elif op == "add":
            out_matrix = transforms.add(M, parse_matrix(_read_text(args.other)))
        elif op == "metrize":
            alpha = 1.0 if args.alpha is None else args.alpha
            out_matrix = transforms.metrize(M, alpha, tol)
        elif op == "decompose":
            dec = transforms.decompose(M, tol)
            out_obj = {
                "d": {
                    "labels": list(dec.d.labels),
                    "matrix": [[float(v) for v in row] for row in dec.d.entries],
                },
                "f": {l: float(v) for l, v in dec.f.items()},
            }
        elif op == "zerocoords":
            zc = transforms.zero_coordinates(M, tol)
            out_obj = {"a": zc.a, "b": zc.b, "ref": zc.ref}
        elif op == "potential":
            out_obj = {"h": transforms.potential_of(M, tol), "ref": M.labels[0]}
        elif op == "preorder":
            pre = transforms.specialization_preorder(M, tol)
            out_obj = {
                "relation": [list(p) for p in pre.relation],
                "classes": [list(c) for c in pre.classes],
                "order": [list(p) for p in pre.quotient_order],
            }
        elif op == "gromov":
            out_matrix = transforms.gromov_product(M, args.base_label, tol)
        elif op == "farris":
            out_matrix = transforms.farris_transform(M, args.base_label, args.constant, tol)
        elif op == "minfarris":
            c = transforms.min_farris_constant(M, args.base_label, tol)
            if args.format == "csv":
                raise InputError("minfarris writes a bare number; use json or text")
            _write_text(args.output, repr(c) + "\n")
            return 0
        else:
            out_matrix = transforms.log_transform(M)

    if out_matrix is not None:
        fmt = _matrix_format(args, in_format)
        _write_text(args.output, serialize_matrix(out_matrix, fmt))
    else:
        if args.format not in (None, "json"):
            raise InputError(f"transform {op} output is always JSON")
        _write_text(args.output, json.dumps(out_obj) + "\n")
    return 0


def run_generate(args: argparse.Namespace) -> int:
    kind = args.kind
    if args.type is not None and kind != "protometric":
        raise InputError("--type only applies to generate protometric")
    if args.strict and kind != "protometric":
        raise InputError("--strict only applies to generate protometric")
    fmt = MatrixFormat.CSV if args.format is None else _matrix_format(args, MatrixFormat.CSV)
    spec = GenSpec(n=args.n, seed=args.seed, scale=args.scale)
    if kind == "metric":
        M = gen_metric(spec)
    elif kind == "qsm":
        M = gen_quasi_semi_metric(spec)
    elif kind == "protometric":
        ty = InequalityType.parse(args.type) if args.type else InequalityType.TRANSITIVE
        M = gen_protometric(spec, ty, strict=args.strict)
    else:
        M = gen_zero_protometric(spec)
    _write_text(args.output, serialize_matrix(M, fmt))
    return 0


def _add_io_flags(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        p.add_argument("-i", "--input", default="-", metavar="PATH",
                       help="input matrix file, or - for standard input (default)")
    p.add_argument("-o", "--output", default="-", metavar="PATH",
                   help="output file, or - for standard output (default)")
    p.add_argument("--format", choices=("csv", "json", "text"), default=None,
                   help="output format; defaults to the input format for "
                            "matrices, json for reports, text for checks")


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tolerance-ineq", type=float, default=1e-9, metavar="EPS",
                   help="absolute slack allowed on inequalities (default 1e-9)")
    p.add_argument("--tolerance-eq", type=float, default=1e-9, metavar="EPS",
                   help="absolute slack allowed on equalities (default 1e-9)")
    p.add_argument("--tolerance-strict", type=float, default=1e-9, metavar="EPS",
                   help="margin a strict inequality must exceed (default 1e-9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="protometrics",
        description="Classify, transform, and generate generalized distance matrices.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classify", help="full taxonomy report for a matrix")
    _add_io_flags(p)
    _add_tolerance_flags(p)
    p.add_argument("--max-witnesses", type=int, default=DEFAULT_WITNESS_CAP, metavar="N",
                   help="violation witnesses kept per check (default 10)")
    p.set_defaults(func=run_classify)

    p = sub.add_parser("check", help="run one property check; exit 1 on failure")
    p.add_argument("selector",
                   help="triangle:TYPE, prequad:TYPE, strict:TYPE (TYPE in o,i,t,c), "
                        "or transition")
    p.add_argument("--for-log", action="store_true",
                   help="transition only: report not-applicable when entries "
                        "are not strictly positive")
    _add_io_flags(p)
    _add_tolerance_flags(p)
    p.add_argument("--max-witnesses", type=int, default=DEFAULT_WITNESS_CAP, metavar="N",
                   help="violation witnesses kept (default 10)")
    p.set_defaults(func=run_check)

    p = sub.add_parser("transform", help="apply one matrix transformation")
    p.add_argument("op", choices=TRANSFORM_OPS)
    p.add_argument("--alpha", type=float, default=None,
                   help="positive scale factor (gauge; optional for metrize, default 1)")
    p.add_argument("--f-file", default=None, metavar="PATH",
                   help="two-column label,value CSV gauge (gauge, compose)")
    p.add_argument("--base-label", default=None, metavar="LABEL",
                   help="base point (gromov, farris, minfarris)")
    p.add_argument("--constant", type=float, default=None, metavar="C",
                   help="Farris constant (farris)")
    p.add_argument("--other", default=None, metavar="PATH",
                   help="second operand matrix file (add)")
    _add_io_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(func=run_transform)

    p = sub.add_parser("generate", help="emit a seeded random instance")
    p.add_argument("kind", choices=("metric", "qsm", "protometric", "zeroproto"))
    p.add_argument("--n", type=int, required=True, help="number of points (>= 1)")
    p.add_argument("--seed", type=int, default=0, help="64-bit stream seed (default 0)")
    p.add_argument("--scale", type=float, default=10.0,
                   help="magnitude of the drawn entries (default 10)")
    p.add_argument("--type", choices=("o", "i", "t", "c"), default=None,
                   help="protometric type (default t)")
    p.add_argument("--strict", action="store_true",
                   help="force strictness by keeping all points distinct")
    _add_io_flags(p, with_input=False)
    p.set_defaults(func=run_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
