"""Command line interface: classify surfaces, run flux computations and suites.

Exit codes: 0 success; 1 an --expect or corpus expectation mismatched;
2 parse or validation failure; 3 a property suite found a violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import flux
from .classify import classify
from .dsl import (
    ParseError,
    emit_report,
    parse,
    parse_perm_literal,
    parse_shift_literal,
    report_to_dict,
)
from .endspace import SpecError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3


def _default_seed() -> int:
    try:
        return int(os.environ.get("ENDCALC_SEED", "42"))
    except ValueError:
        return 42


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="endcalc",
        description="Classify infinite-type surface descriptions for "
                    "topological normal generation, and exercise the "
                    "shift-flux machinery on permutation models.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify one .surf file")
    c.add_argument("path", help="surface description file")
    c.add_argument("--json", action="store_true", help="emit the JSON report")
    c.add_argument("--witness", action="store_true",
                   help="include the obstruction witness")
    c.add_argument("--bounds", action="store_true",
                   help="include generator bounds in text output")
    c.add_argument("--expect", choices=["YES", "NO", "UNKNOWN"],
                   help="exit 1 unless the verdict matches")

    f = sub.add_parser("flux", help="permutation-model computations")
    fsub = f.add_subparsers(dest="flux_command", required=True)

    fp = fsub.add_parser("phi", help="flux of a permutation at a cut")
    fp.add_argument("--perm", required=True, help='e.g. "d=1 table={0:1,1:0}"')
    fp.add_argument("--cut", type=int, default=0)

    ft = fsub.add_parser("theta", help="per-strip flux tuple")
    ft.add_argument("--perms", required=True,
                    help="semicolon-separated permutation literals, "
                         "one per strip")
    ft.add_argument("--n", type=int, required=True,
                    help="number of maximal ends (expects n-1 strips)")

    fs = fsub.add_parser("shift", help="classify and normalize a shift")
    fs.add_argument("--spec", required=True,
                    help='e.g. "excluded=finite{0,5}" or '
                         '"excluded=periodic{N=1,p=3,r=0}"')
    fs.add_argument("--window", type=int, default=200)

    fw = fsub.add_parser("swindle", help="verify the commutator identity")
    fw.add_argument("--perm", required=True)
    fw.add_argument("--k", type=int, required=True)
    fw.add_argument("--window", type=int, default=200)

    fc = fsub.add_parser("check", help="run a randomized property suite")
    fc.add_argument("--suite", required=True,
                    choices=["additivity", "theta", "normalize", "swindle"])
    fc.add_argument("--n", type=int, default=1000, help="trial count")
    fc.add_argument("--seed", type=int, default=None)
    fc.add_argument("--window", type=int, default=200)

    k = sub.add_parser("corpus", help="classify every .surf file in a directory")
    k.add_argument("dir")
    k.add_argument("--expectations", help="JSON file of expected report fields")
    return p


def cmd_classify(args) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    try:
        spec = parse(text)
    except (ParseError, SpecError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    report = classify(spec)
    fmt = "JSON" if args.json else "TEXT"
    sys.stdout.write(emit_report(report, fmt,
                                 include_witness=args.witness,
                                 include_bounds=args.bounds or args.json))
    if args.expect and report.verdict.verdict.value != args.expect:
        print("expected verdict %s, got %s"
              % (args.expect, report.verdict.verdict.value), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _run_suite(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    n = args.n
    if args.suite == "additivity":
        errors = flux.suite_phi(n, seed)
    elif args.suite == "theta":
        errors = flux.suite_theta(n, seed)
    elif args.suite == "normalize":
        errors = flux.suite_normalize(n, seed, window=args.window)
    else:
        errors = flux.suite_swindle(window=args.window)
    print("suite=%s trials=%d seed=%d" % (args.suite, n, seed))
    if errors:
        for e in errors:
            print("violation: %s" % e)
        return EXIT_INVARIANT
    print("ok")
    return EXIT_OK


def cmd_flux(args) -> int:
    try:
        if args.flux_command == "phi":
            perm = parse_perm_literal(args.perm)
            print(flux.phi(perm, args.cut))
        elif args.flux_command == "theta":
            perms = [parse_perm_literal(t)
                     for t in args.perms.split(";") if t.strip()]
            print(flux.theta_z(perms, args.n))
        elif args.flux_command == "shift":
            spec = parse_shift_literal(args.spec)
            kind = flux.classify_shift(spec)
            print("kind: %s" % kind.value)
            if kind is not flux.ShiftKind.FULL:
                t = flux.normalizer(spec)
                print("normalizer: %s" % t.description)
                print("normalizes: %s"
                      % flux.verify_normalization(spec, t, args.window))
        elif args.flux_command == "swindle":
            perm = parse_perm_literal(args.perm)
            print(flux.swindle_check(perm, args.k, args.window))
        else:
            return _run_suite(args)
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


def _lookup(report: dict, key: str):
    if key == "budget":
        b = report["bounds"]["budget"]
        return [b["shifts"], b["dehn"], b["handles"]]
    if key in report:
        return report[key]
    if key in report["bounds"]:
        return report["bounds"][key]
    if key in ("free_rank", "torsion2"):
        w = report.get("witness")
        return None if w is None else w["target"][key]
    raise KeyError(key)


def cmd_corpus(args) -> int:
    directory = Path(args.dir)
    files = sorted(directory.glob("*.surf"))
    expectations = {}
    if args.expectations:
        try:
            expectations = json.loads(Path(args.expectations).read_text())
        except (OSError, json.JSONDecodeError) as e:
            print("error reading expectations: %s" % e, file=sys.stderr)
            return EXIT_PARSE

    rows: List[List[str]] = []
    parse_failed = False
    mismatches: List[str] = []
    for path in files:
        try:
            report = classify(parse(path.read_text(encoding="utf-8")))
        except (ParseError, SpecError) as e:
            print("parse failure in %s: %s" % (path.name, e), file=sys.stderr)
            parse_failed = True
            continue
        d = report_to_dict(report)
        rows.append([path.name, d["verdict"], d["rule"], str(d["M"]),
                     str(d["C"]), str(d["M_iso"]),
                     str(d["bounds"]["lower"]), str(d["bounds"]["upper"])])
        for key, expected in expectations.get(path.name, {}).items():
            try:
                actual = _lookup(d, key)
            except KeyError:
                mismatches.append("%s: unknown expectation key %r"
                                  % (path.name, key))
                continue
            if actual != expected:
                mismatches.append("%s: %s expected %r, got %r"
                                  % (path.name, key, expected, actual))

    known = {path.name for path in files}
    for name in expectations:
        if name not in known:
            mismatches.append("%s: expected file missing from corpus" % name)

    header = ["file", "verdict", "rule", "M", "C", "M_iso", "lower", "upper"]
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows
              else len(header[i]) for i in range(len(header))]
    fmt = "  ".join("%%-%ds" % w for w in widths)
    print(fmt % tuple(header))
    for r in rows:
        print(fmt % tuple(r))
    for m in mismatches:
        print("mismatch: %s" % m)

    if parse_failed:
        return EXIT_PARSE
    if mismatches:
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "classify":
        return cmd_classify(args)
    if args.command == "flux":
        return cmd_flux(args)
    return cmd_corpus(args)


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
