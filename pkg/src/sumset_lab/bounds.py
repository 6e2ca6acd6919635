"""Predicted lower bounds on |C| and verdicts comparing them with the actual restricted sumset.

Every bound has the shape::

    min(cap, |A| + |B| - offset - [delta] - min nu)

where the min-ν term is taken over A+B or over C depending on the bound,
``cap`` is a prime for the Z/p-type results, and ``delta`` is the ANR
correction.  :func:`bound_spec` resolves the constant parts for an ambient
and constraint; :func:`bound_formula` evaluates the shape and works
elementwise on numpy arrays too, which the sweep engine relies on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .fields import FieldSpec
from .formats import instance_to_dict
from .groups import GroupSpec, classify, is_prime, prime_power_base
from .poly import total_degree
from .sumsets import (
    Ambient,
    Constraint,
    Instance,
    NoConstraint,
    Distinct,
    Profile,
    as_linear,
    as_poly,
    difference_set,
    element_text,
    profile,
)


class TheoremId(str, enum.Enum):
    CAUCHY_DAVENPORT = "cauchy_davenport"
    KEMPERMAN_SCHERK = "kemperman_scherk"
    ERDOS_HEILBRONN = "erdos_heilbronn"
    ANR = "anr"
    LEV_CONJECTURE = "lev_conjecture"
    THM_1_1 = "thm_1_1"
    THM_1_2 = "thm_1_2"
    THM_1_3_I = "thm_1_3_i"
    THM_1_3_II = "thm_1_3_ii"
    PS_BOUND = "ps_bound"
    KAROLYI_STYLE = "karolyi_style"
    # test-only: predicts |A| + |B|, so the violation path can be exercised
    TEST_OVERREACH = "test_overreach"

    def __str__(self) -> str:
        return self.value


PUBLIC_THEOREMS = tuple(t for t in TheoremId if t is not TheoremId.TEST_OVERREACH)
# results proven in the literature; a violation of one of these is a bug
PROVEN = frozenset(PUBLIC_THEOREMS) - {TheoremId.LEV_CONJECTURE}
COMPARISON_ONLY = frozenset({TheoremId.PS_BOUND, TheoremId.KAROLYI_STYLE})


class Verdict(str, enum.Enum):
    SATISFIED = "satisfied"
    TIGHT = "tight"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"

    def __str__(self) -> str:
        return self.value


# -- ambient facts ------------------------------------------------------------------


def additive_class(ambient: Ambient) -> tuple[str, int | None]:
    """Class tag of the additive group, with p for elementary abelian groups."""
    if isinstance(ambient, FieldSpec):
        return ("torsion_free", None) if not ambient.is_finite else ("elementary_abelian", ambient.p)
    cls = classify(ambient)
    return cls.tag, cls.p


def has_cyclic_torsion(ambient: Ambient) -> bool:
    if isinstance(ambient, FieldSpec):
        return not ambient.is_finite or ambient.n == 1
    return ambient.has_cyclic_torsion


def prime_cyclic_order(ambient: Ambient) -> int | None:
    """p when the additive group is Z/p with p prime."""
    if isinstance(ambient, FieldSpec):
        return ambient.p if ambient.is_finite and ambient.n == 1 else None
    if ambient.free_rank == 0 and len(ambient.invariant_factors) == 1 and is_prime(ambient.invariant_factors[0]):
        return ambient.invariant_factors[0]
    return None


def _largest_power_at_most(p: int, n: int) -> int:
    q = 1
    while q * p <= n:
        q *= p
    return q


# -- bound specs --------------------------------------------------------------------


@dataclass(frozen=True)
class BoundSpec:
    theorem: TheoremId
    offset: int
    nu_domain: str | None = None  # "A+B", "C" or None
    cap: int | None = None
    anr_delta: bool = False
    needs_nonempty_c: bool = False
    same_sets: bool = False
    size_margin: int | None = None  # require min(|A|, |B|) > size_margin


class NotApplicable(Exception):
    pass


def bound_spec(theorem: TheoremId, ambient: Ambient, constraint: Constraint, instance: Instance | None = None) -> BoundSpec:
    """Constant parts of a bound, or :class:`NotApplicable` with the reason."""
    theorem = TheoremId(theorem)
    if instance is None:
        instance = _shell(ambient, constraint)
    T = TheoremId
    tag, p_elem = additive_class(ambient)
    S = difference_set(instance)

    if theorem is T.TEST_OVERREACH:
        return BoundSpec(theorem, 0)
    if theorem in (T.KEMPERMAN_SCHERK, T.CAUCHY_DAVENPORT):
        if not isinstance(constraint, NoConstraint):
            raise NotApplicable("bound concerns the unrestricted sumset")
        if theorem is T.KEMPERMAN_SCHERK:
            return BoundSpec(theorem, 0, "A+B")
        p = _require_prime_cyclic(ambient)
        return BoundSpec(theorem, 1, cap=p)
    if theorem in (T.ERDOS_HEILBRONN, T.ANR):
        if not isinstance(constraint, Distinct):
            raise NotApplicable("bound concerns the distinct-summand restriction")
        p = _require_prime_cyclic(ambient)
        if theorem is T.ERDOS_HEILBRONN:
            return BoundSpec(theorem, 3, cap=p, same_sets=True)
        return BoundSpec(theorem, 2, cap=p, anr_delta=True)
    if theorem is T.LEV_CONJECTURE:
        if not isinstance(constraint, Distinct):
            raise NotApplicable("conjecture concerns the distinct-summand restriction")
        return BoundSpec(theorem, 2, "A+B", needs_nonempty_c=True)
    if theorem is T.THM_1_1:
        P = as_poly(instance)
        if P is None:
            raise NotApplicable("needs a field ambient and a polynomial-expressible constraint")
        if P.is_zero():
            raise NotApplicable("P is the zero polynomial, so C is empty")
        return BoundSpec(theorem, int(total_degree(P)), "C", needs_nonempty_c=True)
    if theorem is T.THM_1_2:
        if isinstance(ambient, FieldSpec):
            raise NotApplicable("stated for groups with cyclic torsion subgroup")
        if not has_cyclic_torsion(ambient):
            raise NotApplicable(f"torsion subgroup of {ambient} is not cyclic")
        lin = as_linear(instance)
        if lin is None:
            raise NotApplicable("constraint is not expressible as m_i*a - n_i*b != d_i")
        return BoundSpec(theorem, lin.weight, "C", needs_nonempty_c=True)

    # difference-restricted bounds
    if S is None:
        raise NotApplicable("needs a difference (or distinct) constraint")
    if theorem is T.THM_1_3_I:
        if not S:
            raise NotApplicable("S must be nonempty")
        if tag not in ("torsion_free", "elementary_abelian"):
            raise NotApplicable(f"{ambient} is neither torsion-free nor elementary abelian")
        return BoundSpec(theorem, len(S), "C", needs_nonempty_c=True)
    if theorem is T.THM_1_3_II:
        if not S:
            raise NotApplicable("S must be nonempty")
        if not has_cyclic_torsion(ambient):
            raise NotApplicable(f"torsion subgroup of {ambient} is not cyclic")
        return BoundSpec(theorem, 2 * len(S), "C", needs_nonempty_c=True)
    if theorem is T.PS_BOUND:
        if not S:
            raise NotApplicable("S must be nonempty")
        if tag != "elementary_abelian" or p_elem == 2:
            raise NotApplicable("needs odd characteristic")
        q = _largest_power_at_most(p_elem, len(S))
        return BoundSpec(theorem, len(S) + q + 1, cap=p_elem)
    if theorem is T.KAROLYI_STYLE:
        p = _prime_power_cyclic_base(ambient)
        return BoundSpec(theorem, 2 * len(S) + 1, cap=p, size_margin=len(S))
    raise NotApplicable(f"unknown theorem {theorem}")


def _shell(ambient: Ambient, constraint: Constraint) -> Instance:
    z = ambient.zero()
    return Instance(ambient, (z,), (z,), constraint)


def _require_prime_cyclic(ambient: Ambient) -> int:
    p = prime_cyclic_order(ambient)
    if p is None:
        raise NotApplicable(f"stated for Z/p with p prime, not {ambient}")
    return p


def _prime_power_cyclic_base(ambient: Ambient) -> int:
    if isinstance(ambient, GroupSpec) and ambient.free_rank == 0 and len(ambient.invariant_factors) == 1:
        p = prime_power_base(ambient.invariant_factors[0])
        if p is not None:
            return p
    p = prime_cyclic_order(ambient)
    if p is None:
        raise NotApplicable(f"stated for Z/q with q a prime power, not {ambient}")
    return p


def bound_formula(spec: BoundSpec, size_a, size_b, min_nu_sumset, min_nu_restricted):
    """Predicted value; arguments may be ints or equally shaped numpy arrays."""
    value = size_a + size_b - spec.offset
    if spec.anr_delta:
        value = value - (size_a == size_b) * 1
    if spec.nu_domain == "A+B":
        value = value - min_nu_sumset
    elif spec.nu_domain == "C":
        value = value - min_nu_restricted
    if spec.cap is not None:
        value = np.minimum(spec.cap, value)
    return value


def dynamic_reason(spec: BoundSpec, instance: Instance, prof: Profile) -> str | None:
    if spec.needs_nonempty_c and not prof.restricted:
        return "C is empty"
    if spec.same_sets and instance.A != instance.B:
        return "bound concerns A = B"
    if spec.size_margin is not None and min(len(instance.A), len(instance.B)) <= spec.size_margin:
        return "needs min(|A|, |B|) > |S|"
    return None


def verdict_of(predicted: int, actual: int) -> Verdict:
    if actual < predicted:
        return Verdict.VIOLATED
    if actual == predicted and predicted >= 1:
        return Verdict.TIGHT
    return Verdict.SATISFIED


# -- reports ----------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    theorem: TheoremId
    predicted: int | None
    actual: int | None
    min_nu: int | None
    min_nu_domain: str | None
    verdict: Verdict
    detail: str = ""
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "theorem": str(self.theorem),
            "predicted": self.predicted,
            "actual": self.actual,
            "min_nu": self.min_nu,
            "min_nu_domain": self.min_nu_domain,
            "verdict": str(self.verdict),
            "detail": self.detail,
            "witness": self.witness,
        }


def predicted_bound(theorem: TheoremId, instance: Instance, prof: Profile | None = None) -> int | None:
    """Right-hand side of the bound for ``instance``; None when it does not apply."""
    prof = prof or profile(instance)
    try:
        spec = bound_spec(theorem, instance.ambient, instance.constraint, instance)
    except NotApplicable:
        return None
    if dynamic_reason(spec, instance, prof) is not None:
        return None
    return int(bound_formula(spec, len(instance.A), len(instance.B), prof.min_nu_sumset, prof.min_nu_restricted))


def check_instance(theorem: TheoremId, instance: Instance, prof: Profile | None = None) -> BoundReport:
    theorem = TheoremId(theorem)
    prof = prof or profile(instance)
    actual = len(prof.restricted)
    witness = {
        "instance": instance_to_dict(instance),
        "C": [element_text(instance.ambient, c) for c in prof.restricted],
    }
    try:
        spec = bound_spec(theorem, instance.ambient, instance.constraint, instance)
        reason = dynamic_reason(spec, instance, prof)
    except NotApplicable as exc:
        spec, reason = None, str(exc)
    if reason is not None:
        return BoundReport(theorem, None, actual, None, None, Verdict.NOT_APPLICABLE, reason, witness)
    predicted = int(bound_formula(spec, len(instance.A), len(instance.B), prof.min_nu_sumset, prof.min_nu_restricted))
    min_nu = {"A+B": prof.min_nu_sumset, "C": prof.min_nu_restricted}.get(spec.nu_domain)
    verdict = verdict_of(predicted, actual)
    detail = f"|C| = {actual}, predicted {predicted}"
    if verdict is Verdict.VIOLATED and theorem in PROVEN:
        detail += "; a proven bound failed, which indicates an implementation bug"
    return BoundReport(theorem, predicted, actual, min_nu, spec.nu_domain, verdict, detail, witness)
