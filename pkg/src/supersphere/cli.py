"""Command line entry point for the verification campaign.

    supersphere --generators 6 --band 3 --samples 50 --seed 7 --report out.json
    supersphere --check ns.jacobi
    supersphere --list

Exit codes: 0 all checks pass, 1 at least one failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .campaign import (
    CampaignConfig,
    UsageError,
    check_single,
    registry,
    report_bytes,
    run_campaign,
)


def parse_n_range(text):
    """Parse '-4..4' or a comma list like '-2,0,3' into a tuple of ints."""
    text = text.strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise UsageError(f"empty twist range {text!r}")
        return tuple(range(lo, hi + 1))
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise UsageError(f"bad twist range {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="supersphere",
        description="Exact verification campaign for N=2 superconformal "
                    "sphere geometry and the Neveu-Schwarz algebra.",
    )
    parser.add_argument("--generators", type=int, default=6, metavar="L",
                        help="Grassmann generator count (minimum 4)")
    parser.add_argument("--band", type=int, default=3,
                        help="index band for algebra-wide checks")
    parser.add_argument("--flow-order", type=int, default=8,
                        help="truncation order for formal flow parameters")
    parser.add_argument("--n-range", type=str, default="-4..4", metavar="LO..HI",
                        help="sphere twists to cover, e.g. -4..4 or -2,0,2")
    parser.add_argument("--samples", type=int, default=25,
                        help="random samples per suite")
    parser.add_argument("--seed", type=int, default=20100217,
                        help="campaign seed; reports are deterministic in it")
    parser.add_argument("--report", type=str, default=None, metavar="PATH",
                        help="write the JSON report here")
    parser.add_argument("--check", type=str, default=None, metavar="ID",
                        help="run a single registered check")
    parser.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in the report "
                             "(breaks byte-for-byte determinism)")
    parser.add_argument("--list", action="store_true", dest="list_checks",
                        help="list registered check ids and exit")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CampaignConfig(
            generators=args.generators,
            band=args.band,
            flow_order=args.flow_order,
            n_range=parse_n_range(args.n_range),
            samples=args.samples,
            seed=args.seed,
            timings=args.timings,
        )
        cfg.validate()
        if args.list_checks:
            for cid, (law, _) in registry(cfg).items():
                print(f"{cid:32s} {law}")
            return 0
        if args.check:
            report = check_single(args.check, cfg)
        else:
            report = run_campaign(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    for record in report["checks"]:
        marker = {"pass": "PASS", "fail": "FAIL",
                  "discrepancies": "NOTE"}[record["status"]]
        line = f"{marker} {record['id']} ({record['samples']} samples)"
        if record["failures"]:
            line += f" failures: {[f['law'] for f in record['failures']]}"
        if record["discrepancies"]:
            line += f" discrepancies: {len(record['discrepancies'])}"
        print(line)
    summary = report["summary"]
    print(f"{summary['total']} checks, {summary['failed']} failed")

    if args.report:
        try:
            with open(args.report, "wb") as handle:
                handle.write(report_bytes(report))
        except OSError as exc:
            print(f"cannot write report: {exc}", file=sys.stderr)
            return 2
    return 0 if summary["failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
