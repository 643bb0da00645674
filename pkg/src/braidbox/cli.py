"""Command line front-end: ``braidbox verify | list-checks | demo``.

Exit status: 0 when every check passes, 1 when any check fails, 2 on input
errors (unreadable or invalid scenario, bad flags).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .scenario import CHECKS, ScenarioError, load_scenario, run, shipped_path, shipped_scenarios

DEMOS = ("z2_koszul", "z4_nonsymmetric", "heisenberg_double", "partial_dual_s3",
         "semidirect_trivial")


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _jobs(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidbox",
                                description="Verify braided finite quantum group constructions.")
    sub = p.add_subparsers(dest="command", required=True)

    def run_flags(sp):
        sp.add_argument("--tolerance", type=_positive, default=None,
                        help="per-dimension tolerance factor (default 1e-9, "
                             "or BRAIDBOX_TOLERANCE)")
        sp.add_argument("--out", type=Path, default=None, help="write the certificate here")
        sp.add_argument("--jobs", type=_jobs, default=1, help="run checks on n threads")
        sp.add_argument("--timings", action="store_true",
                        help="include wall times (makes certificates non-reproducible)")
        sp.add_argument("--quiet", action="store_true", help="suppress the summary on stderr")

    v = sub.add_parser("verify", help="run a scenario file")
    v.add_argument("scenario", type=Path)
    run_flags(v)
    sub.add_parser("list-checks", help="list check identifiers and their anchors")
    d = sub.add_parser("demo", help="run a built-in scenario")
    d.add_argument("name", choices=sorted(set(DEMOS) | set(shipped_scenarios())))
    run_flags(d)
    return p


def _summary(cert, stream) -> None:
    for r in cert.records:
        status = "PASS" if r.passed else "FAIL"
        res = "error" if r.residual is None else f"{r.residual:.2e}"
        tag = "" if r.expected == "pass" else " (expected to fail)"
        print(f"{status}  {r.label:<24} residual {res}  [{r.anchor}]{tag}", file=stream)
        if r.message:
            print(f"      {r.message}", file=stream)
    verdict = "PASSED" if cert.passed else "FAILED"
    print(f"{cert.scenario}: {verdict} ({len(cert.records)} checks)", file=stream)


def _execute(path: Path, args) -> int:
    try:
        scenario = load_scenario(path)
        cert = run(scenario, tolerance=args.tolerance, jobs=args.jobs)
    except ScenarioError as exc:
        print(f"braidbox: input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:  # e.g. a malformed BRAIDBOX_TOLERANCE
        print(f"braidbox: input error: {exc}", file=sys.stderr)
        return 2
    text = cert.to_json(timings=args.timings)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if not args.quiet:
        _summary(cert, sys.stderr)
    return 0 if cert.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command == "list-checks":
        width = max(len(k) for k in CHECKS)
        for name in sorted(CHECKS):
            c = CHECKS[name]
            print(f"{name:<{width}}  {c.anchor}")
            args_txt = ", ".join(list(c.needs) + [f"[{o}]" for o in c.optional])
            print(f"{'':<{width}}  args: {args_txt}")
        return 0
    if args.command == "verify":
        return _execute(args.scenario, args)
    return _execute(shipped_path(args.name), args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
