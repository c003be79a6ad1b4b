"""Command-line interface: ``wschur {schur,expand,restrict,verify}``.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 divisibility failure, 4 not in span, 5 membership violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import Family, LocalizedElem, MembershipViolation, NotDivisible, canonical
from .expansion import NotInSpan, change_of_basis, structure_constants, weighted_product
from .grassmann import IndexOutOfConfig, Mismatch, WeightConfig, build_table
from .partitions import NotInRectangle, Partition
from .schur import InternalNonDivisible, factorial_schur_det, factorial_schur_tableaux
from .verify import SUITES, default_itw, run_suite
from .weighted import weighted_factorial_schur, weighted_factorial_schur_det

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_DIVISIBILITY = 3
EXIT_SPAN = 4
EXIT_MEMBERSHIP = 5

VARIANTS = ("factorial", "ordinary", "weighted", "weighted-factorial")
BASES = ("factorial", "weighted", "weighted-factorial")


class InputError(ValueError):
    pass


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def parse_partition(text: str | None, d: int) -> Partition:
    if text is None:
        return Partition.empty(d)
    try:
        return Partition.of(d, parse_int_list(text))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def make_config(args) -> WeightConfig:
    n = args.n if args.n is not None else args.d + 2
    itw = parse_int_list(args.itw) if args.itw is not None else list(default_itw(n))
    try:
        return WeightConfig(args.d, n, tuple(itw), args.u)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_schur(args) -> int:
    lam = parse_partition(args.lambda_, args.d)
    if args.variant in ("factorial", "ordinary"):
        alphabet = None if args.variant == "ordinary" else Family.A
        fn = factorial_schur_det if args.form == "det" else factorial_schur_tableaux
        value = LocalizedElem(fn(lam, alphabet))
    else:
        a_family = Family.A if args.variant == "weighted-factorial" else None
        fn = weighted_factorial_schur_det if args.form == "det" else weighted_factorial_schur
        value = fn(lam, a_family)
    text = canonical(value)
    if args.format == "json":
        emit(args, dump_json({"partition": lam.to_json(), "variant": args.variant,
                              "form": args.form, "value": text,
                              "exact": value.normalize().to_json()}))
    else:
        emit(args, text + "\n")
    return EXIT_OK


def cmd_expand(args) -> int:
    lam = parse_partition(args.lambda_, args.d)
    mu = parse_partition(args.mu, args.d) if args.mu is not None else None
    if args.basis == "factorial":
        result = structure_constants(lam, mu or Partition.empty(args.d), args.same_alphabet)
    elif mu is None:
        # change of basis: s^w(v;x|a) over the weighted basis, or back
        result = change_of_basis(lam, args.basis == "weighted", args.route)
    else:
        result = weighted_product(lam, mu, args.basis == "weighted-factorial", args.route)
    if args.format == "json":
        emit(args, dump_json(result.to_json()))
    else:
        lines = [f"basis {result.basis}"]
        for nu in result.support():
            lines.append(f"{nu}: {canonical(result.coefficients[nu])}")
        lines.append(f"residual zero: {str(result.residual_zero).lower()}")
        emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if result.residual_zero else EXIT_SPAN


def cmd_restrict(args) -> int:
    cfg = make_config(args)
    table = build_table(cfg, not args.nonfactorial)
    if args.format == "csv":
        body = table.to_csv()
    elif args.format == "json":
        body = dump_json(table.to_json())
    else:
        lines = []
        for lam in table.partitions:
            lines.append(f"{lam}: " + " | ".join(canonical(p) for p in table.row(lam)))
        body = "\n".join(lines) + "\n"
    summary = table.summary()
    summary_line = " ".join(f"{k}={str(v).lower()}" for k, v in summary.items())
    if args.output:
        emit(args, body)
        print(summary_line)
    else:
        sys.stdout.write(body)
        print(summary_line, file=sys.stderr)
    return EXIT_OK if all(summary.values()) else EXIT_VERIFY


def cmd_verify(args) -> int:
    cfg = make_config(args)
    reports = run_suite(args.suite, args.d, args.max_size, cfg)
    if args.format == "json":
        emit(args, dump_json({"reports": [r.to_json() for r in reports],
                              "ok": all(r.ok for r in reports)}))
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.ok else "FAIL"
            lines.append(f"{status} {r.name} ({len(r.checks)} checks)")
            for label, _, detail in r.failures():
                lines.append(f"  counterexample: {label}" + (f": {detail}" if detail else ""))
        emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wschur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--d", type=int, default=2, help="number of rows (default 2)")
        p.add_argument("--output", help="write the result to this file")
        p.add_argument("--format", choices=formats, default=formats[0])

    def stage(p):
        p.add_argument("--n", type=int, help="stage n > d (default d + 2)")
        p.add_argument("--itw", help="comma-separated weights itw_1..itw_n "
                                     "(default cycles 1,0,2,1)")
        p.add_argument("--u", type=int, default=2, help="positive integer u (default 2)")

    p = sub.add_parser("schur", help="print a (weighted) factorial Schur function")
    common(p)
    p.add_argument("--lambda", dest="lambda_", required=True, help="rows, e.g. 2,1")
    p.add_argument("--variant", choices=VARIANTS, default="factorial")
    p.add_argument("--form", choices=("tableaux", "det"), default="tableaux")
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("expand", help="structure constants and weighted expansions")
    common(p)
    p.add_argument("--lambda", dest="lambda_", required=True)
    p.add_argument("--mu", help="second factor; omit with a weighted basis for a change of basis")
    p.add_argument("--basis", choices=BASES, default="factorial")
    p.add_argument("--route", choices=("interpolate", "pieri"), default="interpolate")
    p.add_argument("--same-alphabet", action="store_true",
                   help="factorial basis: use b = a instead of an independent b")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("restrict", help="fixed-point restriction table")
    common(p, ("text", "json", "csv"))
    stage(p)
    p.add_argument("--nonfactorial", action="store_true",
                   help="tabulate the a = 0 functions instead")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    stage(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-size", type=int, help="size bound (suite-specific default)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.d < 1:
            raise InputError("--d must be positive")
        return args.func(args)
    except (InputError, NotInRectangle, IndexOutOfConfig) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotDivisible, InternalNonDivisible) as exc:
        print(f"divisibility failure: {exc}", file=sys.stderr)
        return EXIT_DIVISIBILITY
    except NotInSpan as exc:
        print(f"not in span: {exc}", file=sys.stderr)
        return EXIT_SPAN
    except MembershipViolation as exc:
        print(f"membership violation: {exc}", file=sys.stderr)
        return EXIT_MEMBERSHIP
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
