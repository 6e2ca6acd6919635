"""Run every sweep plan in a directory and print a one-line summary per plan.

    python3 scripts/run_plans.py                 # scripts/plans/*.json
    python3 scripts/run_plans.py my_plans/ --workers 4 --json-dir out/

Exit status is 1 if any plan recorded a violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from sumset_lab.search import SweepPlan, sweep

PLAN_DIR = Path(__file__).resolve().parent / "plans"


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("plan_dir", nargs="?", type=Path, default=PLAN_DIR)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--json-dir", type=Path, default=None, help="write each full report here")
    args = ap.parse_args(argv)

    paths = sorted(args.plan_dir.glob("*.json"))
    if not paths:
        print(f"no plans in {args.plan_dir}", file=sys.stderr)
        return 2
    if args.json_dir:
        args.json_dir.mkdir(parents=True, exist_ok=True)

    any_violation = False
    for path in paths:
        plan = SweepPlan.from_dict(json.loads(path.read_text()))
        start = time.perf_counter()
        report = sweep(plan, workers=args.workers)
        elapsed = time.perf_counter() - start
        tight = sum(c["tight"] for c in report.counts.values())
        status = "VIOLATION" if report.violations_total else "ok"
        any_violation |= bool(report.violations_total)
        partial = " partial" if report.partial else ""
        print(f"{status:9s} {path.stem:16s} {report.instances_checked:>10d} instances"
              f"  tight={tight:<8d} violated={report.violations_total:<4d} {elapsed:6.1f}s{partial}")
        if args.json_dir:
            (args.json_dir / f"{path.stem}.report.json").write_text(report.to_json() + "\n")
    return 1 if any_violation else 0


if __name__ == "__main__":
    sys.exit(main())
