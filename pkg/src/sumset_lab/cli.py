"""Command-line front end.

Exit codes: 0 success with nothing violated, 1 a violation or counterexample
was found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Sequence, TextIO

from .bounds import PUBLIC_THEOREMS, TheoremId, Verdict, check_instance
from .errors import InvalidInput, ResourceLimit
from .fields import FieldSpec
from .formats import (
    format_ambient,
    instance_from_dict,
    instance_to_dict,
    load_json,
    parse_ambient,
)
from .groups import GroupSpec
from .poly import cn_decompose, format_poly, lemma21_check, parse_poly, vanishes_on_grid
from .search import SweepPlan, SweepReport, default_workers, lev_hunt_plan, sweep
from .sumsets import element_text, profile

EXIT_OK, EXIT_FOUND, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Command:
    verb: str
    instance_path: str | None = None
    inline: dict | None = None
    theorems: tuple[TheoremId, ...] = ()
    output: str | None = None
    verbose: bool = False
    seed: int | None = None
    workers: int = 1
    fmt: str = "json"
    options: dict = field(default_factory=dict)


# -- argument parsing ------------------------------------------------------------------


def _theorem(text: str) -> TheoremId:
    try:
        return TheoremId(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown theorem {text!r}; choose from {', '.join(map(str, PUBLIC_THEOREMS))}"
        ) from None


def split_list(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses; a leading '[' means a JSON list."""
    text = text.strip()
    if text.startswith("["):
        try:
            return [str(x) for x in json.loads(text)]
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON list {text!r}: {exc}") from exc
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    if cur or out:
        out.append("".join(cur).strip())
    return [s for s in out if s]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json", dest="fmt",
                   help="output format (default: json)")
    p.add_argument("--output", "-o", help="write the result here instead of stdout")
    p.add_argument("--verbose", "-v", action="store_true",
                   help="stream per-instance records as JSON lines before the summary")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $SUMSET_LAB_WORKERS or 1)")
    p.add_argument("--seed", type=int, default=None, help="override the plan's random seed")


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", "-i", help="instance JSON file")
    p.add_argument("--ambient", help='inline ambient, e.g. "Z/5", "Z^2 x Z/3", "GF(7)", "Q"')
    p.add_argument("--A", dest="A", help="inline A, comma separated or a JSON list")
    p.add_argument("--B", dest="B", help="inline B, comma separated or a JSON list")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--distinct", action="store_true", help="restrict to a != b")
    g.add_argument("--S", dest="S", help="restrict to a - b not in S")
    g.add_argument("--poly", help="restrict to P(a, b) != 0 (fields)")
    g.add_argument("--linear", help='restrict to m*a - n*b != d for each "m,n,d" triple, separated by ";"')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sumset-lab", description="Restricted sumsets and their lower bounds.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="print A+B, the restricted sumset C and the nu values")
    _instance_args(p)
    _common(p)

    p = sub.add_parser("check", help="check one or more bounds on an instance")
    _instance_args(p)
    p.add_argument("--theorem", "-t", type=_theorem, action="append", required=True,
                   help=f"theorem id, repeatable: {', '.join(map(str, PUBLIC_THEOREMS))}")
    _common(p)

    p = sub.add_parser("sweep", help="run a sweep plan")
    p.add_argument("--plan", "-p", required=True, help="plan JSON file")
    p.add_argument("--range", dest="range", help="only A ranks START:STOP of the plan")
    _common(p)

    p = sub.add_parser("cn", help="grid decomposition f = sum g_i h_i + r")
    p.add_argument("--poly", required=True, help="polynomial in x, y, z, w or x1..xn")
    p.add_argument("--grid", action="append", required=True,
                   help="grid points of one variable, comma separated; repeat per variable "
                        "(a single grid is reused for every variable)")
    p.add_argument("--nvars", type=int, default=None, help="number of variables (default: number of grids)")
    p.add_argument("--field", default="Q", help="coefficient field (default: Q)")
    _common(p)

    p = sub.add_parser("lemma21", help="line-counting inequality k + min nu_i >= |A| + |B| - deg P")
    p.add_argument("--field", required=True)
    p.add_argument("--A", dest="A", required=True)
    p.add_argument("--B", dest="B", required=True)
    p.add_argument("--poly", required=True, help="P(x, y)")
    p.add_argument("--line", action="append", required=True, help='"lambda,mu" for the line a + lambda*b = mu; repeatable')
    _common(p)

    p = sub.add_parser("hunt", help="search a finite group for a counterexample to Lev's inequality")
    p.add_argument("--group", required=True, help='finite group, e.g. "Z/2 x Z/4"')
    p.add_argument("--max-a", type=int, default=None)
    p.add_argument("--max-b", type=int, default=None)
    p.add_argument("--instance-cap", type=int, default=None)
    _common(p)
    return parser


def _inline_instance(ns: argparse.Namespace) -> dict | None:
    given = [ns.ambient, ns.A, ns.B]
    if not any(given):
        return None
    if not all(given):
        raise UsageError("an inline instance needs --ambient, --A and --B")
    doc = {"ambient": ns.ambient, "A": split_list(ns.A), "B": split_list(ns.B)}
    if ns.distinct:
        doc["constraint"] = {"type": "distinct"}
    elif ns.S is not None:
        doc["constraint"] = {"type": "difference", "payload": split_list(ns.S)}
    elif ns.poly is not None:
        doc["constraint"] = {"type": "poly", "payload": ns.poly}
    elif ns.linear is not None:
        triples = []
        for chunk in split_list(ns.linear, ";"):
            parts = split_list(chunk)
            if len(parts) != 3:
                raise UsageError(f"linear term {chunk!r} must be m,n,d")
            triples.append(parts)
        doc["constraint"] = {"type": "linear", "payload": triples}
    return doc


def parse_command(argv: Sequence[str]) -> Command:
    """Parse argv into a Command; raises UsageError on anything malformed."""
    ns = build_parser().parse_args(list(argv))
    workers = ns.workers if ns.workers is not None else default_workers()
    if workers < 1:
        raise UsageError("--workers must be >= 1")
    cmd = Command(ns.verb, output=ns.output, verbose=ns.verbose, seed=ns.seed, workers=workers, fmt=ns.fmt)
    if ns.verb in ("compute", "check"):
        cmd.inline = _inline_instance(ns)
        cmd.instance_path = ns.instance
        if (cmd.inline is None) == (cmd.instance_path is None):
            raise UsageError("give exactly one of --instance or an inline --ambient/--A/--B")
        if ns.verb == "check":
            cmd.theorems = tuple(dict.fromkeys(ns.theorem))
    elif ns.verb == "sweep":
        cmd.options = {"plan": ns.plan}
        if ns.range:
            try:
                lo, hi = (int(x) for x in ns.range.split(":"))
            except ValueError:
                raise UsageError(f"--range must be START:STOP, got {ns.range!r}") from None
            cmd.options["range"] = (lo, hi)
    elif ns.verb == "cn":
        cmd.options = {"poly": ns.poly, "grids": [split_list(g) for g in ns.grid], "nvars": ns.nvars, "field": ns.field}
    elif ns.verb == "lemma21":
        lines = []
        for text in ns.line:
            parts = split_list(text)
            if len(parts) != 2:
                raise UsageError(f"--line {text!r} must be lambda,mu")
            lines.append(tuple(parts))
        cmd.options = {"field": ns.field, "A": split_list(ns.A), "B": split_list(ns.B), "poly": ns.poly, "lines": lines}
    elif ns.verb == "hunt":
        cmd.options = {"group": ns.group, "max_a": ns.max_a, "max_b": ns.max_b, "instance_cap": ns.instance_cap}
    return cmd


# -- execution -------------------------------------------------------------------------


def _load_instance(cmd: Command):
    if cmd.instance_path is not None:
        return instance_from_dict(load_json(cmd.instance_path))
    return instance_from_dict(cmd.inline)


def _run_compute(cmd: Command, out: TextIO, emit: Callable) -> int:
    inst = _load_instance(cmd)
    prof = profile(inst)
    amb = inst.ambient
    doc = {
        "instance": instance_to_dict(inst),
        "sumset": [element_text(amb, c) for c in prof.sumset],
        "restricted": [element_text(amb, c) for c in prof.restricted],
        "nu": {element_text(amb, c): prof.counts[c] for c in prof.sumset},
        "min_nu_sumset": prof.min_nu_sumset,
        "min_nu_restricted": prof.min_nu_restricted,
    }
    if cmd.fmt == "json":
        emit(doc)
    else:
        out.write(f"ambient      {format_ambient(amb)}\n")
        out.write(f"A+B   ({len(prof.sumset)})  {{{', '.join(doc['sumset'])}}}\n")
        out.write(f"C     ({len(prof.restricted)})  {{{', '.join(doc['restricted'])}}}\n")
        out.write("nu           " + "  ".join(f"{c}:{n}" for c, n in doc["nu"].items()) + "\n")
    return EXIT_OK


def _run_check(cmd: Command, out: TextIO, emit: Callable) -> int:
    inst = _load_instance(cmd)
    prof = profile(inst)
    reports = [check_instance(t, inst, prof) for t in cmd.theorems]
    if cmd.fmt == "json":
        emit(reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports])
    else:
        out.write(f"{'theorem':<18}{'predicted':>10}{'actual':>8}  verdict\n")
        for r in reports:
            pred = "-" if r.predicted is None else r.predicted
            out.write(f"{str(r.theorem):<18}{pred!s:>10}{r.actual!s:>8}  {r.verdict}\n")
            if r.verdict is Verdict.NOT_APPLICABLE:
                out.write(f"  ({r.detail})\n")
    return EXIT_FOUND if any(r.verdict is Verdict.VIOLATED for r in reports) else EXIT_OK


def _report_text(report: SweepReport, out: TextIO) -> None:
    out.write(f"instances checked  {report.instances_checked}{'  (partial)' if report.partial else ''}\n")
    out.write(f"{'theorem':<18}{'satisfied':>11}{'tight':>9}{'violated':>10}{'n/a':>9}\n")
    for t, c in report.counts.items():
        out.write(f"{t:<18}{c['satisfied']:>11}{c['tight']:>9}{c['violated']:>10}{c['not_applicable']:>9}\n")
    for rec in report.violations[:10]:
        w = rec["report"]["witness"]["instance"]
        out.write(f"violation at rank {rec['rank']}: {rec['report']['theorem']} A={w['A']} B={w['B']} "
                  f"constraint={w['constraint']}\n")
    out.write(f"elapsed  {report.elapsed_seconds:.2f}s\n")


def _run_sweep_report(cmd: Command, plan: SweepPlan, out: TextIO, emit: Callable) -> int:
    on_record = (lambda rec: emit(rec)) if cmd.verbose else None
    report = sweep(plan, workers=cmd.workers, on_record=on_record)
    if cmd.fmt == "json":
        emit(report.to_dict())
    else:
        _report_text(report, out)
    return EXIT_FOUND if report.violations_total else EXIT_OK


def _run_sweep(cmd: Command, out: TextIO, emit: Callable) -> int:
    plan = SweepPlan.from_dict(load_json(cmd.options["plan"]))
    if cmd.seed is not None:
        plan = replace(plan, seed=cmd.seed)
    if "range" in cmd.options:
        plan = replace(plan, a_range=cmd.options["range"])
    return _run_sweep_report(cmd, plan, out, emit)


def _run_hunt(cmd: Command, out: TextIO, emit: Callable) -> int:
    group = parse_ambient(cmd.options["group"])
    if not isinstance(group, GroupSpec):
        raise InvalidInput("hunt needs a group, not a field")
    plan = lev_hunt_plan(group, cmd.options["max_a"], cmd.options["max_b"], cmd.options["instance_cap"])
    return _run_sweep_report(cmd, plan, out, emit)


def _run_cn(cmd: Command, out: TextIO, emit: Callable) -> int:
    o = cmd.options
    field_ = parse_ambient(o["field"])
    if not isinstance(field_, FieldSpec):
        raise InvalidInput("--field must be a field")
    grids = o["grids"]
    nvars = o["nvars"] or len(grids)
    if len(grids) == 1 and nvars > 1:
        grids = grids * nvars
    f = parse_poly(o["poly"], field_, nvars)
    dec = cn_decompose(f, grids)
    vanishes = dec.remainder.is_zero()
    doc = {
        "field": format_ambient(field_),
        "poly": format_poly(f),
        "generators": [format_poly(g) for g in dec.generators],
        "quotients": [format_poly(h) for h in dec.quotients],
        "remainder": format_poly(dec.remainder),
        "vanishes_on_grid": vanishes,
        "brute_force_agrees": vanishes == vanishes_on_grid(f, grids),
    }
    if cmd.fmt == "json":
        emit(doc)
    else:
        for i, (g, h) in enumerate(zip(doc["generators"], doc["quotients"]), 1):
            out.write(f"g{i} = {g}\nh{i} = {h}\n")
        out.write(f"r  = {doc['remainder']}\n")
        out.write(f"vanishes on grid: {'yes' if vanishes else 'no'}\n")
    return EXIT_OK


def _run_lemma21(cmd: Command, out: TextIO, emit: Callable) -> int:
    o = cmd.options
    field_ = parse_ambient(o["field"])
    if not isinstance(field_, FieldSpec):
        raise InvalidInput("--field must be a field")
    P = parse_poly(o["poly"], field_, 2)
    rep = lemma21_check(o["A"], o["B"], o["lines"], P)
    if cmd.fmt == "json":
        emit(rep.to_dict())
    else:
        rows = [
            ("hypotheses", "ok" if rep.hypotheses_ok else f"failed: {rep.failure}"),
            ("nu", list(rep.nu_values)),
            ("k + min nu", rep.lhs),
            ("|A|+|B|-deg P", rep.rhs),
            ("holds", rep.inequality_holds),
            ("tight", rep.is_tight),
        ]
        for label, value in rows:
            out.write(f"{label:<15}{value}\n")
    return EXIT_FOUND if rep.hypotheses_ok and rep.inequality_holds is False else EXIT_OK


_RUNNERS = {
    "compute": _run_compute,
    "check": _run_check,
    "sweep": _run_sweep,
    "hunt": _run_hunt,
    "cn": _run_cn,
    "lemma21": _run_lemma21,
}


def execute(cmd: Command, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        out = open(cmd.output, "w") if cmd.output else stdout
    except OSError as exc:
        stderr.write(f"sumset-lab: cannot write {cmd.output}: {exc}\n")
        return EXIT_USAGE
    try:
        def emit(doc) -> None:
            out.write(json.dumps(doc, sort_keys=True) + "\n")
            out.flush()

        for path in (cmd.instance_path, cmd.options.get("plan")):
            if path is not None and not Path(path).is_file():
                raise InvalidInput(f"no such file: {path}")
        return _RUNNERS[cmd.verb](cmd, out, emit)
    except (InvalidInput, ResourceLimit, OSError, ZeroDivisionError) as exc:
        stderr.write(f"sumset-lab: {exc}\n")
        return EXIT_USAGE
    finally:
        if out is not stdout:
            out.close()


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cmd = parse_command(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        sys.stderr.write(f"sumset-lab: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return execute(cmd)


if __name__ == "__main__":
    sys.exit(main())
