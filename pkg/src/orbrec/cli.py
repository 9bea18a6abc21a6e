"""Command line interface.

Exit status is 0 on success, 1 on a domain error (a one-line JSON object on
stderr) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .atlas import (
    InconsistentModel,
    UnsupportedDimension,
    local_descriptor,
    quotient_input_model,
    reconstruct_atlas,
    recover_order,
    round_trip,
)
from .documents import DocumentError, ModelDocument, parse_model, serialize_atlas, serialize_model
from .grouprec import (
    DEFAULT_TC_LIMIT,
    PresentationSyntaxError,
    hnd_local_presentation,
    parse_presentation,
    todd_coxeter,
)
from .localalg import DEFAULT_NMAX, NotCriticalError, milnor_codimension
from .poly import PolySyntaxError, parse_poly
from .quotients import make_group, semialgebraic_model
from .strata import PointClassDescriptor, point_class


class DomainError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise DomainError("usage", f"{name} must be an integer, got {value!r}") from None


def _germ(args):
    names = None
    if args.vars:
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
    try:
        return parse_poly(args.germ, names)
    except ValueError as exc:
        raise DomainError("syntax", str(exc)) from None


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError("io", f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _group(args):
    if args.group != "trivial" and args.k is None:
        raise DomainError("usage", f"--k is required for --group {args.group}")
    return make_group(args.group, args.k or 1)


def cmd_model(args) -> None:
    group = _group(args)
    m = quotient_input_model(group, keep_orders=not args.strip_orders)
    _emit(serialize_model(ModelDocument(m, semialgebraic_model(group))), args.out)


def cmd_codim(args) -> None:
    nmax = args.nmax if args.nmax is not None else _env_int("ORBREC_NMAX", DEFAULT_NMAX)
    print(milnor_codimension(_germ(args), nmax))


def cmd_order(args) -> None:
    nmax = args.nmax if args.nmax is not None else _env_int("ORBREC_NMAX", DEFAULT_NMAX)
    print(recover_order(_germ(args), nmax))


def cmd_fundamental_group(args) -> None:
    doc = parse_model(_read(args.input))
    m = doc.model
    try:
        pc = point_class(m.stratified, args.stratum)
    except KeyError as exc:
        raise DomainError("unknown-stratum", str(exc.args[0])) from None
    order = pc.order
    if pc.codim == 2 and args.stratum in m.germs:
        recovered = recover_order(m.germs[args.stratum], args.nmax or _env_int("ORBREC_NMAX", DEFAULT_NMAX))
        if order is not None and order != recovered:
            raise InconsistentModel(f"stratum {args.stratum!r}: stored order {order}, germ gives {recovered}")
        order = recovered
    if pc.codim > 2:
        raise UnsupportedDimension(f"codimension {pc.codim} strata are not supported")
    descriptor = local_descriptor(PointClassDescriptor(pc.codim, pc.mirror_adjacent, order))
    sys.stdout.write(str(hnd_local_presentation(descriptor)))


def cmd_group_order(args) -> None:
    limit = args.limit if args.limit is not None else _env_int("ORBREC_TC_LIMIT", DEFAULT_TC_LIMIT)
    p = parse_presentation(_read(args.input))
    table = todd_coxeter(p, limit)
    print(table.order if table.complete else "exceeded")


def cmd_reconstruct(args) -> None:
    nmax = args.nmax if args.nmax is not None else _env_int("ORBREC_NMAX", DEFAULT_NMAX)
    limit = args.limit if args.limit is not None else _env_int("ORBREC_TC_LIMIT", DEFAULT_TC_LIMIT)
    doc = parse_model(_read(args.input))
    _emit(serialize_atlas(reconstruct_atlas(doc.model, nmax, limit)), args.out)


def cmd_roundtrip(args) -> None:
    nmax = _env_int("ORBREC_NMAX", DEFAULT_NMAX)
    limit = _env_int("ORBREC_TC_LIMIT", DEFAULT_TC_LIMIT)
    print("ok" if round_trip(_group(args), n_max=nmax, tc_limit=limit) else "fail")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbrec", description="Recover orbifold atlases of R^2/G from quotient models."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def group_flags(p):
        p.add_argument("--group", required=True, choices=("trivial", "cyclic", "dihedral"))
        p.add_argument("--k", type=int, help="rotation order (required unless trivial)")

    def germ_flags(p):
        p.add_argument("--germ", required=True, help='polynomial, e.g. "t^2 - s^6"')
        p.add_argument("--vars", help="comma-separated variable order (default: sorted names in the germ)")
        p.add_argument("--nmax", type=int, help=f"truncation degree cap (default {DEFAULT_NMAX}, env ORBREC_NMAX)")

    p = sub.add_parser("model", help="emit the model document of R^2/G")
    group_flags(p)
    p.add_argument("--strip-orders", action="store_true", help="leave codim-2 orders to be recovered from germs")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("codim", help="codimension of a germ at 0, or 'infinite'")
    germ_flags(p)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("order", help="order of a codim-2 point, cod(germ) + 1")
    germ_flags(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("fundamental-group", help="local orbifold fundamental group presentation")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--stratum", required=True)
    p.add_argument("--nmax", type=int)
    p.set_defaults(func=cmd_fundamental_group)

    p = sub.add_parser("group-order", help="Todd-Coxeter order of a presentation")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--limit", type=int, help=f"coset limit (default {DEFAULT_TC_LIMIT}, env ORBREC_TC_LIMIT)")
    p.set_defaults(func=cmd_group_order)

    p = sub.add_parser("reconstruct", help="emit the atlas document of a model")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--nmax", type=int)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("roundtrip", help="rebuild R^2/G and compare the origin chart with G")
    group_flags(p)
    p.set_defaults(func=cmd_roundtrip)
    return parser


def _error_kind(exc: Exception) -> str:
    if isinstance(exc, DomainError):
        return exc.kind
    if isinstance(exc, DocumentError):
        return "document"
    if isinstance(exc, (PolySyntaxError, PresentationSyntaxError)):
        return "syntax"
    if isinstance(exc, NotCriticalError):
        return "not-critical"
    if isinstance(exc, UnsupportedDimension):
        return "unsupported"
    if isinstance(exc, InconsistentModel):
        return "inconsistent-model"
    return "domain"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (DomainError, ValueError) as exc:
        if isinstance(exc, DomainError) and exc.kind == "usage":
            parser.print_usage(sys.stderr)
            print(f"orbrec: error: {exc}", file=sys.stderr)
            return 2
        line = json.dumps({"error": _error_kind(exc), "message": str(exc)}, ensure_ascii=False)
        print(line, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
