"""Search small finite abelian groups for a violation of Lev's inequality.

    python3 scripts/hunt_lev.py                          # Z/n for n <= 10 plus a few products
    python3 scripts/hunt_lev.py "Z/3 x Z/3" Z/14 --max-a 5 --instance-cap 2000000

Prints the first violating instance per group, or the number of instances
examined when none is found.  Exit status is 1 if any group produced one.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from sumset_lab.groups import parse_group_spec
from sumset_lab.search import lev_hunt_plan, sweep

DEFAULT_GROUPS = [f"Z/{n}" for n in range(2, 11)] + ["Z/2 x Z/2", "Z/2 x Z/4", "Z/3 x Z/3", "Z/2 x Z/2 x Z/2"]


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("groups", nargs="*", default=DEFAULT_GROUPS)
    ap.add_argument("--max-a", type=int, default=None)
    ap.add_argument("--max-b", type=int, default=None)
    ap.add_argument("--instance-cap", type=int, default=None)
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args(argv)

    found = False
    for text in args.groups:
        group = parse_group_spec(text)
        plan = lev_hunt_plan(group, args.max_a, args.max_b, args.instance_cap)
        start = time.perf_counter()
        report = sweep(plan, workers=args.workers)
        elapsed = time.perf_counter() - start
        if report.violations:
            found = True
            witness = report.violations[0]["report"]["witness"]["instance"]
            print(f"{text:18s} VIOLATION after {report.instances_checked} instances: {json.dumps(witness)}")
        else:
            scope = "partial" if report.partial else "exhaustive"
            print(f"{text:18s} none ({scope}, {report.instances_checked} instances, {elapsed:.1f}s)")
    return 1 if found else 0


if __name__ == "__main__":
    sys.exit(main())
