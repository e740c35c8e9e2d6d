"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 precondition/domain error,
64 usage error, 65 malformed measure file. Reports go to stdout,
diagnostics to stderr. ``MOLCONV_FORMAT`` sets the default output format.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import numpy as np

from . import lab
from .errors import DomainError, MolconvError, PreconditionError
from .groups import Group, element, identity_like, parse_group
from .lipnorm import SOLVERS, blip_norm
from .measures import convolve, point_mass
from .pseudometrics import distortion_probe, make_pseudometric
from .scalars import to_json_scalar
from .serialize import (
    MeasureFormatError,
    dump_json,
    load_measure,
    measure_to_dict,
    measure_to_tsv,
    record_to_tsv,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PRECONDITION = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65
FORMAT_ENV = "MOLCONV_FORMAT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _scalar(text: str, exact: bool):
    return Fraction(text) if exact else float(text)


def parse_point(group: Group, text: str, exact: bool = False):
    if group.kind == "free":
        return element(group, text)
    parts = [p for p in text.replace("(", "").replace(")", "").split(",") if p.strip()]
    vals = [_scalar(p.strip(), exact) for p in parts]
    return element(group, vals[0] if group.kind == "real" and len(vals) == 1 else vals)


def _default_format() -> str:
    fmt = os.environ.get(FORMAT_ENV, "json").lower()
    return fmt if fmt in ("json", "tsv") else "json"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default=None)
    common.add_argument("--exact", action="store_true", help="rational arithmetic")

    parser = _Parser(prog="molconv", description="Seminorms and convolution of molecular measures.")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True

    p = sub.add_parser("norm", parents=[common], help="seminorm of a measure")
    p.add_argument("--group", required=True)
    p.add_argument("--pm", required=True, help="pseudometric spec")
    p.add_argument("--measure", required=True)
    p.add_argument("--solver", choices=SOLVERS, default="lp-simplex")

    p = sub.add_parser("convolve", parents=[common], help="convolve two measures")
    p.add_argument("--measure", required=True)
    p.add_argument("--measure2", required=True)

    p = sub.add_parser("example31", parents=[common], help="the j(δ(1/j²)-δ(0)) sequence")
    p.add_argument("--jmax", type=int, default=10)

    p = sub.add_parser("lemma25", parents=[common], help="convolution inequality check")
    p.add_argument("--group", required=True)
    p.add_argument("--pm", required=True)
    p.add_argument("--measure")
    p.add_argument("--measure2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--atoms", type=int, default=4)
    p.add_argument("--coeff-scale", type=float, default=10.0)
    p.add_argument("--point-scale", type=float, default=1.0)

    p = sub.add_parser("lemma24", parents=[common], help="f/sqrt(||f||) membership check")
    p.add_argument("--group", required=True)
    p.add_argument("--pm", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--atoms", type=int, default=5)
    p.add_argument("--point-scale", type=float, default=1.0)

    p = sub.add_parser("sin-probe", parents=[common], help="conjugation distortion of v")
    p.add_argument("--group", required=True)
    p.add_argument("--pm", required=True)
    p.add_argument("--v", required=True, help="element, e.g. 1,0.01 for affine")
    p.add_argument("--probe", action="append", default=None, help="conjugating element (repeatable)")

    p = sub.add_parser("witness", parents=[common], help="search a discontinuity witness")
    p.add_argument("--group", required=True)
    p.add_argument("--pm", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--eps", required=True)

    p = sub.add_parser("scan", parents=[common], help="witness search over a catalog")
    p.add_argument("--group", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--catalog", action="append", default=None, help="pseudometric spec (repeatable)")
    p.add_argument("--eps", nargs="*", default=["0.5", "0.1", "0.02"])

    p = sub.add_parser("demo-separate", parents=[common], help="separate-continuity bound table")
    p.add_argument("--group", required=True)
    p.add_argument("--pm", required=True)
    p.add_argument("--measure", required=True, help="positive measure m")
    p.add_argument("--sequence", nargs="*", default=[], help="measure files n_1, n_2, ...")
    p.add_argument("--kmax", type=int, default=0, help="append n_k = δ(1/k) - δ(0), k <= kmax (real only)")
    return parser


def _emit(record, fmt: str, tsv_text: str | None = None):
    if fmt == "tsv":
        sys.stdout.write(tsv_text if tsv_text is not None else record_to_tsv(record))
    else:
        sys.stdout.write(dump_json(record))


def _emit_table(table: lab.ExperimentTable, fmt: str):
    if fmt == "tsv":
        sys.stdout.write(table.to_tsv())
    else:
        sys.stdout.write(dump_json(table.to_dict()))


def _load_in(path, group: Group | None):
    m = load_measure(path)
    if group is not None and m.group != group:
        raise DomainError(f"{path}: measure lives in {m.group.tag}, expected {group.tag}")
    return m


def _cmd_norm(args, fmt):
    group = parse_group(args.group)
    delta = make_pseudometric(args.pm, group)
    m = _load_in(args.measure, group)
    rep = blip_norm(m, delta, method=args.solver, exact=True if args.exact else None)
    _emit(rep.to_dict(), fmt)


def _cmd_convolve(args, fmt):
    m = _load_in(args.measure, None)
    n = _load_in(args.measure2, m.group)
    out = convolve(m, n)
    if fmt == "tsv":
        sys.stdout.write(measure_to_tsv(out))
    else:
        sys.stdout.write(dump_json(measure_to_dict(out)))


def _cmd_example31(args, fmt):
    if args.jmax < 1:
        raise DomainError("--jmax must be at least 1")
    _emit_table(lab.run_example_31(args.jmax, exact=args.exact), fmt)


def _cmd_lemma25(args, fmt):
    group = parse_group(args.group)
    delta = make_pseudometric(args.pm, group)
    if args.measure or args.measure2:
        if not (args.measure and args.measure2):
            raise UsageError("lemma25 needs both --measure and --measure2, or neither")
        rep = lab.check_lemma_25(_load_in(args.measure, group), _load_in(args.measure2, group), delta)
        _emit(rep.to_dict(), fmt)
        return
    if not delta.bi_invariant:
        raise PreconditionError(f"{delta.description} is not flagged bi-invariant")
    rng = np.random.default_rng(args.seed)
    table = lab.ExperimentTable(
        ("index", "lhs", "rhs", "holds"),
        metadata={"group": group.tag, "pseudometric": delta.description, "seed": args.seed},
    )
    for k in range(args.count):
        m = lab.random_measure(rng, group, int(rng.integers(0, args.atoms + 1)),
                               args.coeff_scale, args.point_scale, args.exact)
        n = lab.random_measure(rng, group, int(rng.integers(0, args.atoms + 1)),
                               args.coeff_scale, args.point_scale, args.exact)
        rep = lab.check_lemma_25(m, n, delta)
        table.add(k, rep.lhs, rep.rhs, rep.holds)
    _emit_table(table, fmt)


def _cmd_lemma24(args, fmt):
    group = parse_group(args.group)
    delta = make_pseudometric(args.pm, group)
    rng = np.random.default_rng(args.seed)
    table = lab.ExperimentTable(
        ("index", "sup_norm", "member", "violation"),
        metadata={"group": group.tag, "pseudometric": delta.description, "seed": args.seed},
    )
    for k in range(args.count):
        pts = {lab.random_point(rng, group, args.point_scale).payload: None for _ in range(args.atoms)}
        f = lab.random_blip_function(rng, [element(group, p) for p in pts], delta)
        ok, worst = lab.check_lemma_24(f, delta)
        table.add(k, f.sup_norm, ok, worst)
    _emit_table(table, fmt)


def _cmd_sin_probe(args, fmt):
    group = parse_group(args.group)
    delta = make_pseudometric(args.pm, group)
    v = parse_point(group, args.v, args.exact)
    if args.probe:
        probes = [parse_point(group, text, args.exact) for text in args.probe]
    else:
        probes = list(lab.default_grid(group).xs)
    value = distortion_probe(delta, v, probes)
    record = {
        "group": group.tag,
        "pseudometric": delta.description,
        "v": str(v),
        "distance_to_identity": to_json_scalar(delta(v, identity_like(v))),
        "distortion": to_json_scalar(value),
        "probes": len(probes),
    }
    _emit(record, fmt)


def _cmd_witness(args, fmt):
    group = parse_group(args.group)
    delta = make_pseudometric(args.pm, group)
    theta = make_pseudometric(args.theta, group)
    rep = lab.sin_witness(group, delta, theta, _scalar(args.eps, args.exact))
    _emit(rep.to_dict(), fmt)


def _cmd_scan(args, fmt):
    group = parse_group(args.group)
    theta = make_pseudometric(args.theta, group)
    catalog = args.catalog or lab.default_catalog(args.theta)
    eps_list = [_scalar(e, args.exact) for e in args.eps]
    _emit_table(lab.joint_continuity_scan(group, catalog, theta, eps_list), fmt)


def _cmd_demo_separate(args, fmt):
    group = parse_group(args.group)
    delta = make_pseudometric(args.pm, group)
    m = _load_in(args.measure, group)
    seq = [_load_in(path, group) for path in args.sequence]
    if args.kmax:
        if group.kind != "real":
            raise DomainError("--kmax sequences are defined on the real line only")
        zero = group.identity(exact=args.exact)
        for k in range(1, args.kmax + 1):
            step = Fraction(1, k) if args.exact else 1.0 / k
            seq.append(point_mass(element(group, step)) - point_mass(zero))
    _emit_table(lab.separate_continuity_demo(m, delta, seq), fmt)


COMMANDS = {
    "norm": _cmd_norm,
    "convolve": _cmd_convolve,
    "example31": _cmd_example31,
    "lemma25": _cmd_lemma25,
    "lemma24": _cmd_lemma24,
    "sin-probe": _cmd_sin_probe,
    "witness": _cmd_witness,
    "scan": _cmd_scan,
    "demo-separate": _cmd_demo_separate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    fmt = args.format or _default_format()
    try:
        COMMANDS[args.command](args, fmt)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"molconv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MeasureFormatError as exc:
        print(f"molconv: malformed measure: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except (PreconditionError, DomainError) as exc:
        print(f"molconv: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"molconv: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except MolconvError as exc:
        print(f"molconv: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"molconv: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
