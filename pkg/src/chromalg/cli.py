"""The `verify` command line.

    verify <suite...> [--max-degree N] [--series-prec N] [--two-adic-prec K]
           [--q-terms N] [--json PATH] [--out PATH] [--figures DIR] [--list]

Exit codes: 0 all checks pass, 1 failures, 2 usage errors.  VERIFY_SEED seeds
the randomized property checks (default 0)."""

from __future__ import annotations

import argparse
import sys

from .checks import SUITES
from .report import (RunConfig, env_seed, render_json, render_suite_table,
                     render_text, run_checks)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="verify",
        description="Run the exact-algebra verification suites.")
    p.add_argument("suites", nargs="*", default=["all"],
                   help=f"suites to run: {', '.join(SUITES)}, or 'all' "
                        "(use 'list' to show the table)")
    p.add_argument("--max-degree", type=int, default=32)
    p.add_argument("--series-prec", type=int, default=12)
    p.add_argument("--two-adic-prec", type=int, default=4)
    p.add_argument("--q-terms", type=int, default=16)
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--out", metavar="PATH", help="write the delimited report here")
    p.add_argument("--figures", metavar="DIR",
                   help="render summary figures (needs matplotlib) into DIR")
    p.add_argument("--list", action="store_true", help="list suites and exit")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    suites = tuple(args.suites) if args.suites else ("all",)
    if args.list or list(suites) == ["list"]:
        sys.stdout.write(render_suite_table())
        return 0
    cfg = RunConfig(
        max_degree=args.max_degree,
        series_prec=args.series_prec,
        two_adic_prec=args.two_adic_prec,
        q_terms=args.q_terms,
        suites=suites,
        seed=env_seed(),
    )
    try:
        cfg.validate()
    except ValueError as exc:
        parser.error(str(exc))     # exits with code 2
    report = run_checks(cfg)
    text = render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(render_json(report))
    if args.figures:
        from .figures import render_figures
        for path in render_figures(report, args.figures):
            sys.stderr.write(f"wrote {path}\n")
    return 0 if report["summary"]["fail"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
