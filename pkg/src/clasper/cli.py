"""``clasper`` command line.

Exit codes: 0 success or equivalent, 1 not equivalent or invalid,
2 unknown, 3 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .decide import IncompatibleModuli, InfiniteSearchSpace, decide
from .fgab import FgAbelianGroup, Homomorphism
from .invariants import validate_record
from .lemmas import LEMMAS
from .records import DocumentError, dumps_record, load_graphs, load_record
from .ygraph import SpecialPair, y_group

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False))


def _load_valid(*paths: str):
    """Load and validate records; on any violation print one report and return None."""
    records, invalid = [], []
    for path in paths:
        r = load_record(path)
        problems = validate_record(r)
        if problems:
            invalid.append({"file": path, "violations": [str(v) for v in problems]})
        records.append(r)
    if invalid:
        _emit({"result": "invalid", "valid": False, "invalid": invalid})
        return None
    return records


def _bits(s: str | None):
    if s is None:
        return None
    if any(c not in "01" for c in s):
        raise UsageError(f"spin index {s!r} is not a bitstring")
    return tuple(int(c) for c in s)


def cmd_validate(args) -> int:
    r = load_record(args.record)
    problems = validate_record(r)
    _emit({"file": args.record, "valid": not problems, "violations": [str(v) for v in problems]})
    return EXIT_NO if problems else EXIT_OK


def cmd_decide(args) -> int:
    loaded = _load_valid(args.first, args.second)
    if loaded is None:
        return EXIT_NO
    r, r2 = loaded
    candidates = None
    if args.candidates:
        with open(args.candidates, encoding="utf-8") as fh:
            mats = json.load(fh)
        try:
            candidates = [Homomorphism(r.group, r2.group, m) for m in mats]
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"bad candidate matrix: {exc}") from exc
    sigma, sigma2 = _bits(args.spin), _bits(args.spin_other)
    for s, rec in ((sigma, r), (sigma2, r2)):
        if s is not None and len(s) != rec.spin.dim:
            raise UsageError(f"spin index needs {rec.spin.dim} bits")
    try:
        d = decide(r, r2, args.mode, sigma, sigma2, candidates)
    except InfiniteSearchSpace as exc:
        _emit({"mode": args.mode, "result": "unknown", "reason": str(exc), "moduli_checked": list(r.moduli)})
        return EXIT_UNKNOWN
    except IncompatibleModuli as exc:
        raise UsageError(str(exc)) from exc
    report = {"mode": args.mode, "moduli_checked": list(d.moduli)}
    if d.equivalent:
        report.update(result="equivalent", certificate=d.certificate.to_dict())
        _emit(report)
        return EXIT_OK
    report.update(result="not equivalent", reason=d.reason)
    _emit(report)
    return EXIT_NO


def cmd_surger(args) -> int:
    loaded = _load_valid(args.record)
    if loaded is None:
        return EXIT_NO
    r = loaded[0]
    from .surgery import surgery_S

    graphs = load_graphs(args.graphs, r.spin)
    out = dumps_record(surgery_S(r, graphs))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    fn = LEMMAS[args.lemma]
    if args.lemma == "trivectors":
        rep = fn(args.bound if args.bound is not None else 64)
    elif args.lemma in ("cubic", "tri"):
        rep = fn(args.bound if args.bound is not None else 3)
    else:
        rep = fn(args.bound if args.bound is not None else 200, seed=args.seed)
    _emit({"lemma": rep.name, "ok": rep.ok, "cases": rep.cases, "counterexample": rep.counterexample})
    return EXIT_OK if rep.ok else EXIT_NO


def cmd_ygroup(args) -> int:
    A = FgAbelianGroup(args.orders)
    if len(args.orders) != A.rank:
        raise UsageError("orders must be 0 or >= 2")
    special = args.special if args.special is not None else [0] * A.rank
    if len(special) != A.rank:
        raise UsageError(f"--special needs {A.rank} coefficients")
    try:
        pair = SpecialPair(A, A.element(special))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    struct = y_group(pair)
    _emit({"orders": list(A.orders), "special": list(pair.s.coeffs), "invariant_factors": list(struct.group.invariant_factors())})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="clasper", description="Invariant records of closed 3-manifolds and their Y-equivalence.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="check a record against its constraints")
    v.add_argument("record")
    v.set_defaults(func=cmd_validate)

    d = sub.add_parser("decide", help="decide Y1/Y2-equivalence of two records")
    d.add_argument("--mode", choices=["y1-spin", "y2-spin", "y2"], default="y2")
    d.add_argument("--spin", help="spin index of the first record (spin modes; default all zeros)")
    d.add_argument("--spin-other", help="spin index of the second record")
    d.add_argument("--candidates", help="JSON list of candidate matrices for ψ (needed when H is infinite)")
    d.add_argument("first")
    d.add_argument("second")
    d.set_defaults(func=cmd_decide)

    s = sub.add_parser("surger", help="apply formal Y-surgeries to a record")
    s.add_argument("record")
    s.add_argument("--graphs", required=True)
    s.add_argument("--output")
    s.set_defaults(func=cmd_surger)

    w = sub.add_parser("verify", help="run a lemma oracle")
    w.add_argument("--lemma", choices=sorted(LEMMAS), required=True)
    w.add_argument("--bound", type=int, help="|H| bound (trivectors), generator count (cubic, tri) or cases per shape (square)")
    w.add_argument("--seed", type=int, default=0)
    w.set_defaults(func=cmd_verify)

    y = sub.add_parser("ygroup", help="invariant factors of Y(A, s)")
    y.add_argument("--orders", type=int, nargs="*", default=[])
    y.add_argument("--special", type=int, nargs="*")
    y.set_defaults(func=cmd_ygroup)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, UsageError, OSError) as exc:
        print(f"clasper: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
