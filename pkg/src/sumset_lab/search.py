"""Deterministic exhaustive and sampled sweeps over instance families.

The instance stream of a plan is ordered by rank::

    rank = (a_rank * n_constraints + constraint_rank) * n_B + b_rank

where A and B run over subsets of the ambient window (sizes ascending,
colexicographic within a size) and constraints over the plan's constraint
family.  The outer A stream can be split into contiguous ranges; running
the ranges separately and merging them in order gives the same report as a
single run.

Exhaustive sweeps are evaluated batch-wise by :mod:`sumset_lab.engine`.
Every instance the engine records (tight or violated) is re-checked with the
scalar :func:`~sumset_lab.bounds.check_instance`, and any disagreement
raises :class:`EngineMismatch`.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator

import numpy as np

from .bounds import TheoremId, Verdict, check_instance
from .engine import (
    NOT_APPLICABLE,
    TIGHT,
    VERDICT_CODES,
    VIOLATED,
    AKernel,
    Universe,
    evaluate_block,
    indicator_matrix,
    theorem_columns,
)
from .errors import InvalidInput, ResourceLimit
from .fields import FieldSpec
from .formats import format_ambient, instance_from_dict, parse_ambient
from .groups import GroupSpec
from .poly import MultiPoly, build_difference_poly, parse_poly
from .sumsets import (
    Ambient,
    Constraint,
    DifferenceConstraint,
    Distinct,
    Instance,
    LinearConstraint,
    NoConstraint,
    PolyConstraint,
    element_text,
    profile,
)

# cap on floats held by one (B family x constraint block x targets) product
_BLOCK_BUDGET = 1 << 22


class EngineMismatch(AssertionError):
    """The batch engine and the scalar checker disagree on an instance."""


# -- enumeration ---------------------------------------------------------------------


def colex_combinations(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """k-subsets of range(n) in colexicographic order."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, n):
        for rest in colex_combinations(top, k - 1):
            yield rest + (top,)


def _window(ambient: Ambient, box: int | None) -> list:
    if ambient.is_finite:
        return ambient.elements()
    if box is None or box < 1:
        raise InvalidInput(f"{format_ambient(ambient)} is infinite; a positive box bound is required")
    return ambient.elements(box)


def enumerate_subsets(ambient: Ambient, k: int, box: int | None = None) -> Iterator[tuple]:
    """k-element subsets of the ambient (or of its box window) in colex order."""
    elements = _window(ambient, box)
    if k < 1 or k > len(elements):
        raise InvalidInput(f"cannot choose {k} of {len(elements)} elements")
    for idx in colex_combinations(len(elements), k):
        yield tuple(elements[i] for i in idx)


def _index_subsets(n: int, sizes: tuple[int, int], require: int | None = None) -> list[tuple[int, ...]]:
    lo, hi = sizes
    out = []
    for k in range(max(lo, 1), min(hi, n) + 1):
        for sub in colex_combinations(n, k):
            if require is None or require in sub:
                out.append(sub)
    return out


# -- plans ----------------------------------------------------------------------------


def _size_range(value, default=(1, 1)) -> tuple[int, int]:
    if value is None:
        return default
    if isinstance(value, int):
        return (1, value)
    lo, hi = value
    return (int(lo), int(hi))


@dataclass(frozen=True)
class ConstraintFamily:
    """Which constraints a sweep iterates over.

    ``kind`` is one of none, distinct, difference, linear, poly.  Difference
    families run over every S with |S| in ``s_size``; linear families over
    every multiset of l triples (m, n, d) with l in ``l_size``; poly families
    over the explicit ``polys``, the difference products prod (x - y - s) with
    |S| in ``difference_products``, and ``random_polys`` seeded random
    polynomials of total degree <= ``max_degree``.
    """

    kind: str = "none"
    s_size: tuple[int, int] = (1, 1)
    s_box: int | None = None
    l_size: tuple[int, int] = (0, 1)
    m_max: int = 1
    n_max: int = 1
    d_box: int | None = None
    polys: tuple[str, ...] = ()
    difference_products: tuple[int, int] | None = None
    random_polys: int = 0
    max_degree: int = 2
    poly_seed: int = 0

    def to_dict(self) -> dict:
        doc = {"type": self.kind}
        if self.kind == "difference":
            doc.update(s_size=list(self.s_size), s_box=self.s_box)
        elif self.kind == "linear":
            doc.update(l_size=list(self.l_size), m_max=self.m_max, n_max=self.n_max, d_box=self.d_box)
        elif self.kind == "poly":
            doc.update(
                polys=list(self.polys),
                difference_products=list(self.difference_products) if self.difference_products else None,
                random_polys=self.random_polys,
                max_degree=self.max_degree,
                poly_seed=self.poly_seed,
            )
        return doc

    @classmethod
    def from_dict(cls, doc: dict | None) -> ConstraintFamily:
        if doc is None:
            return cls()
        doc = dict(doc)
        kind = doc.pop("type", "none")
        if kind not in ("none", "distinct", "difference", "linear", "poly"):
            raise InvalidInput(f"unknown constraint family {kind!r}")
        kw = {}
        for key in ("s_size", "l_size"):
            if key in doc:
                kw[key] = _size_range(doc.pop(key), (0, 0))
        if doc.get("difference_products") is not None:
            kw["difference_products"] = _size_range(doc.pop("difference_products"), (0, 0))
        else:
            doc.pop("difference_products", None)
        if "polys" in doc:
            kw["polys"] = tuple(doc.pop("polys"))
        for key in ("s_box", "m_max", "n_max", "d_box", "random_polys", "max_degree", "poly_seed"):
            if key in doc:
                kw[key] = doc.pop(key)
        if doc:
            raise InvalidInput(f"unknown constraint family keys {sorted(doc)}")
        return cls(kind, **kw)


@dataclass(frozen=True)
class SweepPlan:
    ambient: Ambient
    theorems: tuple[TheoremId, ...]
    a_size: tuple[int, int] = (1, 1)
    b_size: tuple[int, int] = (1, 1)
    constraint: ConstraintFamily = field(default_factory=ConstraintFamily)
    box: int | None = None
    instance_cap: int | None = None
    seed: int = 0
    samples: int | None = None
    normalize_translation: bool = False
    tight_cap: int = 100
    violation_cap: int = 100
    a_range: tuple[int, int] | None = None
    stop_on_violation: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "theorems", tuple(TheoremId(t) for t in self.theorems))
        if not self.theorems:
            raise InvalidInput("a plan needs at least one theorem")
        if not self.ambient.is_finite and (self.box is None or self.box < 1):
            raise InvalidInput("an infinite ambient needs a positive box bound")
        if self.instance_cap is not None and self.instance_cap < 1:
            raise InvalidInput("instance cap must be >= 1")
        if self.normalize_translation and self.constraint.kind not in ("none", "distinct", "difference"):
            raise InvalidInput("translation normalization is only sound for difference-type constraints")

    def to_dict(self) -> dict:
        return {
            "ambient": format_ambient(self.ambient),
            "theorems": [str(t) for t in self.theorems],
            "a_size": list(self.a_size),
            "b_size": list(self.b_size),
            "constraint": self.constraint.to_dict(),
            "box": self.box,
            "instance_cap": self.instance_cap,
            "seed": self.seed,
            "samples": self.samples,
            "normalize_translation": self.normalize_translation,
            "tight_cap": self.tight_cap,
            "violation_cap": self.violation_cap,
            "range": list(self.a_range) if self.a_range else None,
            "stop_on_violation": self.stop_on_violation,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> SweepPlan:
        doc = dict(doc)
        try:
            ambient = parse_ambient(str(doc.pop("ambient")))
            theorems = doc.pop("theorems")
        except KeyError as exc:
            raise InvalidInput(f"plan is missing {exc}") from exc
        if isinstance(theorems, str):
            theorems = [theorems]
        try:
            theorems = tuple(TheoremId(t) for t in theorems)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from exc
        kw = {
            "a_size": _size_range(doc.pop("a_size", None)),
            "b_size": _size_range(doc.pop("b_size", None)),
            "constraint": ConstraintFamily.from_dict(doc.pop("constraint", None)),
        }
        rng = doc.pop("range", None)
        if rng is not None:
            kw["a_range"] = (int(rng[0]), int(rng[1]))
        for key in ("box", "instance_cap", "seed", "samples", "normalize_translation", "tight_cap",
                    "violation_cap", "stop_on_violation"):
            if key in doc:
                kw[key] = doc.pop(key)
        if doc:
            raise InvalidInput(f"unknown plan keys {sorted(doc)}")
        return cls(ambient, theorems, **kw)


# -- constraint families ---------------------------------------------------------------


def _random_poly(rng: random.Random, field: FieldSpec, degree: int) -> MultiPoly:
    terms = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            if rng.random() < 0.5:
                if field.is_finite:
                    c = field.from_int(rng.randrange(1, field.p))
                else:
                    c = field.from_int(rng.choice([-3, -2, -1, 1, 2, 3]))
                terms[(i, j)] = c
    return MultiPoly(field, 2, terms)


def build_constraints(plan: SweepPlan) -> list[Constraint]:
    fam, amb = plan.constraint, plan.ambient
    if fam.kind == "none":
        return [NoConstraint()]
    if fam.kind == "distinct":
        return [Distinct()]
    if fam.kind == "difference":
        box = fam.s_box if fam.s_box is not None else (2 * plan.box if plan.box else None)
        window = _window(amb, box)
        return [DifferenceConstraint(tuple(window[i] for i in sub))
                for sub in _subsets_with_empty(len(window), fam.s_size)]
    if fam.kind == "linear":
        if isinstance(amb, FieldSpec):
            raise InvalidInput("linear constraints need a group ambient")
        box = fam.d_box if fam.d_box is not None else ((fam.m_max + fam.n_max) * plan.box if plan.box else None)
        window = _window(amb, box)
        triples = [(m, n, d) for m in range(fam.m_max + 1) for n in range(fam.n_max + 1) for d in window]
        lo, hi = fam.l_size
        return [LinearConstraint(tuple(combo))
                for l in range(lo, hi + 1)
                for combo in itertools.combinations_with_replacement(triples, l)]
    if fam.kind == "poly":
        if not isinstance(amb, FieldSpec):
            raise InvalidInput("polynomial constraints need a field ambient")
        polys = [parse_poly(text, amb, 2) for text in fam.polys]
        if fam.difference_products is not None:
            window = _window(amb, 2 * plan.box if plan.box else None)
            polys += [build_difference_poly([window[i] for i in sub], amb)
                      for sub in _subsets_with_empty(len(window), fam.difference_products)]
        rng = random.Random(fam.poly_seed)
        polys += [_random_poly(rng, amb, fam.max_degree) for _ in range(fam.random_polys)]
        return [PolyConstraint(P) for P in polys]
    raise InvalidInput(f"unknown constraint family {fam.kind!r}")


def _subsets_with_empty(n: int, sizes: tuple[int, int]) -> list[tuple[int, ...]]:
    lo, hi = sizes
    out = [()] if lo <= 0 else []
    return out + _index_subsets(n, (max(lo, 1), hi)) if hi >= 1 else out


# -- reports ----------------------------------------------------------------------------


@dataclass
class SweepReport:
    plan: dict
    instances_checked: int = 0
    partial: bool = False
    counts: dict = field(default_factory=dict)  # theorem -> verdict -> n
    violations: list = field(default_factory=list)
    violations_total: int = 0
    tight_instances: list = field(default_factory=list)
    tight_total: int = 0
    elapsed_seconds: float = 0.0

    @property
    def not_applicable(self) -> int:
        return sum(c.get("not_applicable", 0) for c in self.counts.values())

    def to_dict(self, include_elapsed: bool = True) -> dict:
        doc = {
            "plan": self.plan,
            "instances_checked": self.instances_checked,
            "partial": self.partial,
            "counts": self.counts,
            "not_applicable": self.not_applicable,
            "violations_total": self.violations_total,
            "violations": self.violations,
            "tight_total": self.tight_total,
            "tight_instances": self.tight_instances,
        }
        if include_elapsed:
            doc["elapsed_seconds"] = round(self.elapsed_seconds, 3)
        return doc

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True)


def _empty_counts(theorems) -> dict:
    return {str(t): {v: 0 for v in VERDICT_CODES} for t in theorems}


def merge_reports(plan: SweepPlan, parts: list[SweepReport]) -> SweepReport:
    """Combine reports of consecutive ranges, in order."""
    out = SweepReport(plan.to_dict(), counts=_empty_counts(plan.theorems))
    for part in parts:
        out.instances_checked += part.instances_checked
        out.partial = out.partial or part.partial
        for t, c in part.counts.items():
            for v, n in c.items():
                out.counts[t][v] += n
        out.violations_total += part.violations_total
        out.tight_total += part.tight_total
        out.violations.extend(part.violations)
        out.tight_instances.extend(part.tight_instances)
        out.elapsed_seconds += part.elapsed_seconds
    del out.violations[plan.violation_cap:]
    del out.tight_instances[plan.tight_cap:]
    return out


# -- sweep ------------------------------------------------------------------------------


@dataclass
class _Setup:
    universe: Universe
    a_family: list
    b_family: list
    b_mat: np.ndarray
    constraints: list
    adm: np.ndarray  # (nC, N, N)
    columns: list
    blocks: list  # (start, stop) over constraint ranks

    @property
    def per_a(self) -> int:
        return len(self.constraints) * len(self.b_family)


def _admissibility(universe: Universe, constraints: list[Constraint]) -> np.ndarray:
    n = universe.size
    adm = np.empty((len(constraints), n, n), dtype=bool)
    single: dict = {}
    for j, c in enumerate(constraints):
        if isinstance(c, LinearConstraint) and isinstance(universe.ambient, GroupSpec):
            mat = np.ones((n, n), dtype=bool)
            for term in c.terms:
                if term not in single:
                    single[term] = universe.admissible_matrix(LinearConstraint((term,)))
                mat &= single[term]
            adm[j] = mat
        else:
            adm[j] = universe.admissible_matrix(c)
    return adm


def _setup(plan: SweepPlan) -> _Setup:
    universe = Universe.build(plan.ambient, plan.box)
    n = universe.size
    if n * n * len(universe.targets) > 5 * 10**7:
        raise ResourceLimit(f"window of {n} elements is too large for exhaustive sweeps")
    require = 0 if plan.normalize_translation else None
    a_family = _index_subsets(n, plan.a_size, require)
    b_family = _index_subsets(n, plan.b_size)
    if not a_family or not b_family:
        raise InvalidInput("empty A or B family; check the size bounds")
    constraints = build_constraints(plan)
    adm = _admissibility(universe, constraints)
    columns = [theorem_columns(t, plan.ambient, constraints) for t in plan.theorems]
    per_block = max(1, _BLOCK_BUDGET // max(1, len(b_family) * len(universe.targets)))
    blocks = [(s, min(s + per_block, len(constraints))) for s in range(0, len(constraints), per_block)]
    return _Setup(universe, a_family, b_family, indicator_matrix(b_family, n), constraints, adm, columns, blocks)


def _instance(setup: _Setup, plan: SweepPlan, a_rank: int, c_rank: int, b_rank: int) -> Instance:
    els = setup.universe.elements
    return Instance(
        plan.ambient,
        tuple(els[i] for i in setup.a_family[a_rank]),
        tuple(els[i] for i in setup.b_family[b_rank]),
        setup.constraints[c_rank],
    )


def _verified_record(setup, plan, theorem, rank, a_rank, c_rank, b_rank, code, predicted, actual) -> dict:
    inst = _instance(setup, plan, a_rank, c_rank, b_rank)
    report = check_instance(theorem, inst)
    expected = VERDICT_CODES[code]
    if str(report.verdict) != expected or report.predicted != predicted or report.actual != actual:
        raise EngineMismatch(
            f"rank {rank}, {theorem}: engine says {expected} ({predicted} vs {actual}), "
            f"scalar check says {report.verdict} ({report.predicted} vs {report.actual})"
        )
    return {"rank": rank, "report": report.to_dict()}


def _run_range(plan: SweepPlan, a_start: int, a_stop: int, on_record: Callable | None = None) -> SweepReport:
    t0 = time.perf_counter()
    setup = _setup(plan)
    report = SweepReport(plan.to_dict(), counts=_empty_counts(plan.theorems))
    n_b = len(setup.b_family)
    first_rank = (plan.a_range[0] if plan.a_range else 0) * setup.per_a
    stop_rank = first_rank + plan.instance_cap if plan.instance_cap is not None else None
    b_rows = [tuple(sub) for sub in setup.b_family]

    for a_rank in range(a_start, a_stop):
        a_sub = setup.a_family[a_rank]
        base = a_rank * setup.per_a
        if stop_rank is not None and base >= stop_rank:
            report.partial = True
            break
        kernel = AKernel(setup.universe, a_sub, setup.b_mat)
        same_as_a = np.array([row == a_sub for row in b_rows], dtype=bool)
        for c0, c1 in setup.blocks:
            block_cols = [_slice_columns(col, c0, c1) for col in setup.columns]
            res = evaluate_block(kernel, setup.adm[c0:c1], block_cols, same_as_a)
            # ranks of this block laid out as (nB, nC)
            ranks = base + np.arange(c0, c1)[None, :] * n_b + np.arange(n_b)[:, None]
            live = np.ones(ranks.shape, dtype=bool)
            if stop_rank is not None and ranks.max() >= stop_rank:
                live = ranks < stop_rank
                report.partial = True
            report.instances_checked += int(live.sum())
            events = []
            for t_idx, theorem in enumerate(plan.theorems):
                codes = res.verdicts[theorem]
                counts = report.counts[str(theorem)]
                for code in range(4):
                    counts[VERDICT_CODES[code]] += int(np.count_nonzero((codes == code) & live))
                for code in (VIOLATED, TIGHT):
                    hit = (codes == code) & live
                    n_hit = int(np.count_nonzero(hit))
                    if not n_hit:
                        continue
                    if code == VIOLATED:
                        report.violations_total += n_hit
                    else:
                        report.tight_total += n_hit
                    bi, ci = np.nonzero(hit)
                    for b_i, c_i in zip(bi, ci):
                        events.append((int(ranks[b_i, c_i]), t_idx, code, int(b_i), int(c_i)))
                if on_record is not None:
                    _stream(on_record, setup, plan, theorem, res, ranks, live, a_rank, c0)
            events.sort()
            for rank, t_idx, code, b_i, c_i in events:
                target = report.violations if code == VIOLATED else report.tight_instances
                cap = plan.violation_cap if code == VIOLATED else plan.tight_cap
                if len(target) >= cap:
                    continue
                theorem = plan.theorems[t_idx]
                target.append(_verified_record(
                    setup, plan, theorem, rank, a_rank, c0 + c_i, b_i, code,
                    int(res.predicted[theorem][b_i, c_i]), int(res.size_c[b_i, c_i]),
                ))
            if plan.stop_on_violation and report.violations_total:
                report.partial = True
                report.elapsed_seconds = time.perf_counter() - t0
                return report
    report.elapsed_seconds = time.perf_counter() - t0
    return report


def _slice_columns(col, c0, c1):
    spec = col.spec
    if spec is not None:
        margin = spec.size_margin[:, c0:c1] if spec.size_margin is not None else None
        spec = replace(spec, offset=spec.offset[:, c0:c1], size_margin=margin)
    return replace(col, static_ok=col.static_ok[c0:c1], spec=spec, reasons=col.reasons[c0:c1])


def _stream(on_record, setup, plan, theorem, res, ranks, live, a_rank, c0) -> None:
    els = setup.universe.elements
    amb = plan.ambient
    a_txt = [element_text(amb, els[i]) for i in setup.a_family[a_rank]]
    codes = res.verdicts[theorem]
    for b_i, c_i in sorted(zip(*np.nonzero(live)), key=lambda bc: ranks[bc]):
        code = int(codes[b_i, c_i])
        on_record({
            "rank": int(ranks[b_i, c_i]),
            "theorem": str(theorem),
            "A": a_txt,
            "B": [element_text(amb, els[i]) for i in setup.b_family[b_i]],
            "constraint_rank": int(c0 + c_i),
            "predicted": None if code == NOT_APPLICABLE else int(res.predicted[theorem][b_i, c_i]),
            "actual": int(res.size_c[b_i, c_i]),
            "verdict": VERDICT_CODES[code],
        })


def _run_chunk(args) -> SweepReport:
    plan, start, stop = args
    return _run_range(plan, start, stop)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SUMSET_LAB_WORKERS", "1")))
    except ValueError:
        return 1


def sweep(plan: SweepPlan, workers: int | None = None, on_record: Callable | None = None) -> SweepReport:
    """Run a plan; exhaustive unless ``plan.samples`` is set."""
    if plan.samples is not None:
        return _sample(plan, on_record)
    t0 = time.perf_counter()
    workers = workers or default_workers()
    n_a = len(_setup_families(plan))
    start, stop = plan.a_range if plan.a_range else (0, n_a)
    if not 0 <= start <= stop <= n_a:
        raise InvalidInput(f"range {start}..{stop} outside the {n_a} sets of the A stream")
    if workers <= 1 or on_record is not None or plan.stop_on_violation or stop - start < 2:
        report = _run_range(plan, start, stop, on_record)
        report.elapsed_seconds = time.perf_counter() - t0
        return report
    n_chunks = min(stop - start, 4 * workers)
    edges = [start + (stop - start) * i // n_chunks for i in range(n_chunks + 1)]
    jobs = [(plan, edges[i], edges[i + 1]) for i in range(n_chunks) if edges[i] < edges[i + 1]]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_chunk, jobs))
    report = merge_reports(plan, parts)
    report.elapsed_seconds = time.perf_counter() - t0
    return report


def _setup_families(plan: SweepPlan) -> list:
    n = len(_window(plan.ambient, plan.box))
    return _index_subsets(n, plan.a_size, 0 if plan.normalize_translation else None)


def sweep_range(plan: SweepPlan, start: int, stop: int) -> SweepReport:
    """Run only A ranks [start, stop) of the plan (one partition chunk)."""
    return _run_range(plan, start, stop)


def _sample(plan: SweepPlan, on_record: Callable | None) -> SweepReport:
    """Seeded random instances, each checked with the scalar checker."""
    t0 = time.perf_counter()
    window = _window(plan.ambient, plan.box)
    n = len(window)
    a_family = _index_subsets(n, plan.a_size, 0 if plan.normalize_translation else None)
    b_family = _index_subsets(n, plan.b_size)
    constraints = build_constraints(plan)
    rng = random.Random(plan.seed)
    report = SweepReport(plan.to_dict(), counts=_empty_counts(plan.theorems))
    total = plan.samples if plan.instance_cap is None else min(plan.samples, plan.instance_cap)
    report.partial = total < plan.samples
    for rank in range(total):
        a = a_family[rng.randrange(len(a_family))]
        c = constraints[rng.randrange(len(constraints))]
        b = b_family[rng.randrange(len(b_family))]
        inst = Instance(plan.ambient, tuple(window[i] for i in a), tuple(window[i] for i in b), c)
        prof = profile(inst)
        report.instances_checked += 1
        for theorem in plan.theorems:
            rep = check_instance(theorem, inst, prof)
            report.counts[str(theorem)][str(rep.verdict)] += 1
            record = {"rank": rank, "report": rep.to_dict()}
            if on_record is not None:
                on_record(record)
            if rep.verdict is Verdict.VIOLATED:
                report.violations_total += 1
                if len(report.violations) < plan.violation_cap:
                    report.violations.append(record)
            elif rep.verdict is Verdict.TIGHT:
                report.tight_total += 1
                if len(report.tight_instances) < plan.tight_cap:
                    report.tight_instances.append(record)
        if plan.stop_on_violation and report.violations_total:
            report.partial = True
            break
    report.elapsed_seconds = time.perf_counter() - t0
    return report


# -- Lev counterexample hunt --------------------------------------------------------------


def lev_hunt_plan(
    spec: GroupSpec,
    max_a: int | None = None,
    max_b: int | None = None,
    instance_cap: int | None = None,
) -> SweepPlan:
    """Plan that stops at the first violation of Lev's inequality.

    A is normalized to contain 0, which loses nothing because the distinct
    restriction commutes with translating A and B together.
    """
    if not isinstance(spec, GroupSpec) or not spec.is_finite:
        raise InvalidInput("the hunt needs a finite group")
    n = int(spec.order)
    return SweepPlan(
        spec,
        (TheoremId.LEV_CONJECTURE,),
        a_size=(1, min(max_a or n, n)),
        b_size=(1, min(max_b or n, n)),
        constraint=ConstraintFamily("distinct"),
        instance_cap=instance_cap,
        normalize_translation=True,
        tight_cap=0,
        violation_cap=1,
        stop_on_violation=True,
    )


def hunt_lev_counterexample(
    spec: GroupSpec,
    max_a: int | None = None,
    max_b: int | None = None,
    instance_cap: int | None = None,
) -> Instance | None:
    """First instance (in normalized enumeration order) violating Lev's inequality, or None."""
    report = sweep(lev_hunt_plan(spec, max_a, max_b, instance_cap), workers=1)
    if not report.violations:
        return None
    return instance_from_dict(report.violations[0]["report"]["witness"]["instance"])
