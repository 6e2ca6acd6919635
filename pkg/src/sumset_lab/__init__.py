"""Restricted sumsets, their lower bounds, and exhaustive checks of those bounds."""

from .bounds import BoundReport, TheoremId, Verdict, check_instance, predicted_bound
from .errors import InvalidInput, ResourceLimit
from .fields import (
    RATIONALS,
    FieldElement,
    FieldSpec,
    extension_field,
    find_irreducible,
    prime_field,
)
from .formats import instance_from_dict, instance_to_dict, parse_ambient
from .groups import GroupElement, GroupSpec, classify, normalize_group_spec, parse_group_spec
from .poly import MultiPoly, cn_decompose, lemma21_check, parse_poly
from .search import ConstraintFamily, SweepPlan, SweepReport, hunt_lev_counterexample, sweep
from .sumsets import (
    DifferenceConstraint,
    Distinct,
    Instance,
    LinearConstraint,
    NoConstraint,
    PolyConstraint,
    nu,
    restricted_sumset,
    sumset,
)

__all__ = [
    "BoundReport", "TheoremId", "Verdict", "check_instance", "predicted_bound",
    "InvalidInput", "ResourceLimit",
    "RATIONALS", "FieldElement", "FieldSpec", "extension_field", "find_irreducible", "prime_field",
    "instance_from_dict", "instance_to_dict", "parse_ambient",
    "GroupElement", "GroupSpec", "classify", "normalize_group_spec", "parse_group_spec",
    "MultiPoly", "cn_decompose", "lemma21_check", "parse_poly",
    "ConstraintFamily", "SweepPlan", "SweepReport", "hunt_lev_counterexample", "sweep",
    "DifferenceConstraint", "Distinct", "Instance", "LinearConstraint", "NoConstraint",
    "PolyConstraint", "nu", "restricted_sumset", "sumset",
]
