"""Command line entry point: ``leibder check|der|family|verify``.

Exit codes: 0 success, 1 failed check or hard disagreement, 2 usage or
input error.
"""
import argparse
import json
import sys

from . import families as fam
from .algebra import (check_leibniz, gradation_dims, is_filiform, is_lie,
                      is_nilpotent, series_dims)
from .derivations import der_basis, der_dim
from .io import AlgebraFormatError, emit_algebra, parse_algebra, read_algebra
from .linalg import format_scalar, parse_scalar
from .report import verify


class UsageError(Exception):
    pass


def _load(path):
    try:
        if path == "-":
            return parse_algebra(sys.stdin.read())
        return read_algebra(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except AlgebraFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _vec(v):
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def cmd_check(args):
    A = _load(args.file)
    w = check_leibniz(A)
    if w is None:
        print("leibniz: ok")
    else:
        print(f"leibniz: fails at ({w.i},{w.j},{w.k}) defect {_vec(w.defect)}")
    print(f"lie: {str(is_lie(A)).lower()}")
    nil = is_nilpotent(A)
    print(f"nilpotent: {str(nil).lower()}")
    print(f"filiform: {str(is_filiform(A)).lower()}")
    print("series: " + ",".join(str(d) for d in series_dims(A)))
    if nil:
        print("gradation: " + ",".join(str(d) for d in gradation_dims(A)))
    else:
        print("gradation: n/a")
    return 0 if w is None else 1


def cmd_der(args):
    A = _load(args.file)
    if not (args.basis or args.json):
        print(f"dim Der = {der_dim(A)}")
        return 0
    basis = der_basis(A)
    if args.json:
        doc = {"dim": basis.dimension}
        if args.basis:
            doc["basis"] = [[[format_scalar(x) for x in D.row(r)] for r in range(D.rows)]
                            for D in basis.matrices]
        print(json.dumps(doc))
        return 0
    print(f"dim Der = {basis.dimension}")
    for idx, D in enumerate(basis.matrices, start=1):
        print(f"D{idx}:")
        for r in range(D.rows):
            print("  " + " ".join(format_scalar(x) for x in D.row(r)))
    return 0


def _indexed(values, flag):
    out = {}
    for item in values or ():
        i, sep, v = item.partition("=")
        if not sep:
            raise UsageError(f"{flag} expects i=v, got {item!r}")
        try:
            out[int(i)] = parse_scalar(v)
        except ValueError as exc:
            raise UsageError(f"{flag} {item!r}: {exc}") from None
    return out


def _scalar(text, flag):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def cmd_family(args):
    name, n = args.name, args.n
    params = None
    if name == "flb":
        params = fam.FLbParams(_indexed(args.alpha, "--alpha"),
                               theta=_scalar(args.theta, "--theta"),
                               alpha_n=_scalar(args.alpha_n, "--alpha-n"))
    elif name == "slb":
        params = fam.SLbParams(_indexed(args.beta, "--beta"), gamma=_scalar(args.gamma, "--gamma"))
    try:
        A = fam.make(name, n, params, args.ngf3_alpha)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    text = emit_algebra(A)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args):
    try:
        report = verify(args.family, args.n_min, args.n_max, args.samples, args.seed,
                        rational=args.rational, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.format == "csv" or args.output:
        sys.stderr.write(report.summary_text())
    return 0 if report.ok else 1


def build_parser():
    p = argparse.ArgumentParser(prog="leibder",
                                description="Derivation algebras of structure-constant algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="Leibniz/Lie/nilpotency/filiform report")
    c.add_argument("file", help="algebra JSON, or - for stdin")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("der", help="dimension (and basis) of Der(L)")
    d.add_argument("file", help="algebra JSON, or - for stdin")
    d.add_argument("--basis", action="store_true", help="print a basis")
    d.add_argument("--json", action="store_true", help="machine-readable output")
    d.set_defaults(func=cmd_der)

    f = sub.add_parser("family", help="write an algebra from one of the families")
    f.add_argument("name", choices=fam.FAMILIES)
    f.add_argument("-n", type=int, required=True)
    f.add_argument("--alpha", action="append", metavar="I=V", help="FLb alpha_i (repeatable)")
    f.add_argument("--alpha-n", default="0", help="FLb alpha_n")
    f.add_argument("--theta", default="0")
    f.add_argument("--beta", action="append", metavar="I=V", help="SLb beta_i (repeatable)")
    f.add_argument("--gamma", default="0")
    f.add_argument("--ngf3-alpha", type=int, choices=(0, 1), default=0)
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_family)

    v = sub.add_parser("verify", help="compare solver dimensions with the case tables")
    v.add_argument("--family", choices=fam.FAMILIES + ("all",), default="all")
    v.add_argument("--n-min", type=int, default=None)
    v.add_argument("--n-max", type=int, default=10)
    v.add_argument("--samples", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    v.add_argument("--rational", action="store_true", help="sample rational parameter values")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"leibder: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
