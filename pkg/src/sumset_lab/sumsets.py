"""Sumsets, restricted sumsets and representation counts.

An ambient is either a :class:`GroupSpec` or a :class:`FieldSpec`; both expose
``add``/``sub``/``coerce``/``zero``.  Everything here is plain enumeration of
A x B.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

from .errors import InvalidInput
from .fields import FieldSpec, format_field_element
from .groups import GroupSpec, format_element
from .poly import MultiPoly, build_difference_poly, poly_eval

Ambient = Union[GroupSpec, FieldSpec]


@dataclass(frozen=True)
class NoConstraint:
    kind = "none"


@dataclass(frozen=True)
class Distinct:
    """a != b."""

    kind = "distinct"


@dataclass(frozen=True)
class PolyConstraint:
    """P(a, b) != 0 (field ambients only)."""

    poly: MultiPoly
    kind = "poly"


@dataclass(frozen=True)
class LinearConstraint:
    """m_i*a - n_i*b != d_i for every listed (m_i, n_i, d_i) (group ambients only)."""

    terms: tuple = ()
    kind = "linear"

    @property
    def weight(self) -> int:
        return sum(m + n for m, n, _ in self.terms)


@dataclass(frozen=True)
class DifferenceConstraint:
    """a - b not in S."""

    S: tuple = ()
    kind = "difference"


Constraint = Union[NoConstraint, Distinct, PolyConstraint, LinearConstraint, DifferenceConstraint]


def is_field(ambient: Ambient) -> bool:
    return isinstance(ambient, FieldSpec)


def element_text(ambient: Ambient, x) -> str:
    return format_field_element(x, ambient) if is_field(ambient) else format_element(x)


def _coerce_set(ambient: Ambient, xs: Iterable, name: str) -> tuple:
    out = tuple(sorted({ambient.coerce(x) for x in xs}))
    if not out:
        raise InvalidInput(f"{name} must be nonempty")
    return out


def normalize_constraint(ambient: Ambient, constraint: Constraint | None) -> Constraint:
    """Coerce payload elements into ``ambient`` and check the constraint fits it."""
    if constraint is None:
        return NoConstraint()
    if isinstance(constraint, (NoConstraint, Distinct)):
        return constraint
    if isinstance(constraint, PolyConstraint):
        P = constraint.poly
        if not is_field(ambient):
            raise InvalidInput("a polynomial constraint needs a field ambient")
        if P.field != ambient or P.nvars != 2:
            raise InvalidInput("constraint polynomial must be bivariate over the ambient field")
        return constraint
    if isinstance(constraint, LinearConstraint):
        if is_field(ambient):
            raise InvalidInput("a linear constraint needs a group ambient")
        terms = []
        for m, n, d in constraint.terms:
            if int(m) < 0 or int(n) < 0:
                raise InvalidInput("m_i and n_i must be nonnegative")
            terms.append((int(m), int(n), ambient.coerce(d)))
        return LinearConstraint(tuple(terms))
    if isinstance(constraint, DifferenceConstraint):
        return DifferenceConstraint(tuple(sorted({ambient.coerce(s) for s in constraint.S})))
    raise InvalidInput(f"unknown constraint {constraint!r}")


@dataclass(frozen=True)
class Instance:
    ambient: Ambient
    A: tuple
    B: tuple
    constraint: Constraint = field(default_factory=NoConstraint)

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", _coerce_set(self.ambient, self.A, "A"))
        object.__setattr__(self, "B", _coerce_set(self.ambient, self.B, "B"))
        object.__setattr__(self, "constraint", normalize_constraint(self.ambient, self.constraint))


# -- constraint views -------------------------------------------------------------


def difference_set(instance: Instance) -> tuple | None:
    """S for distinct/difference constraints ({0} for distinct), else None."""
    c = instance.constraint
    if isinstance(c, Distinct):
        return (instance.ambient.zero(),)
    if isinstance(c, DifferenceConstraint):
        return c.S
    return None


def as_poly(instance: Instance) -> MultiPoly | None:
    """The polynomial P with C = {a+b : P(a,b) != 0}, for field ambients."""
    F, c = instance.ambient, instance.constraint
    if not is_field(F):
        return None
    if isinstance(c, PolyConstraint):
        return c.poly
    if isinstance(c, NoConstraint):
        return MultiPoly.constant(F, 2, 1)
    S = difference_set(instance)
    return build_difference_poly(S, F) if S is not None else None


def as_linear(instance: Instance) -> LinearConstraint | None:
    """The (m_i, n_i, d_i) list with the same admissible pairs, for group ambients."""
    G, c = instance.ambient, instance.constraint
    if is_field(G):
        return None
    if isinstance(c, LinearConstraint):
        return c
    if isinstance(c, NoConstraint):
        return LinearConstraint(())
    S = difference_set(instance)
    return LinearConstraint(tuple((1, 1, s) for s in S)) if S is not None else None


def admissible(instance: Instance) -> Callable[[object, object], bool]:
    """Predicate deciding whether the pair (a, b) contributes to C."""
    amb, c = instance.ambient, instance.constraint
    if isinstance(c, NoConstraint):
        return lambda a, b: True
    if is_field(amb):
        P = as_poly(instance)
        return lambda a, b: not amb.is_zero(poly_eval(P, (a, b)))
    if isinstance(c, LinearConstraint):
        terms = c.terms

        def ok(a, b) -> bool:
            return all(amb.sub(amb.scalar_mul(m, a), amb.scalar_mul(n, b)) != d for m, n, d in terms)

        return ok
    S = set(difference_set(instance))
    return lambda a, b: amb.sub(a, b) not in S


# -- operations ---------------------------------------------------------------------


def _check_nonempty(A, B) -> None:
    if not A or not B:
        raise InvalidInput("A and B must be nonempty")


def sumset(A: Iterable, B: Iterable, ambient: Ambient) -> tuple:
    A, B = list(A), list(B)
    _check_nonempty(A, B)
    return tuple(sorted({ambient.add(a, b) for a in A for b in B}))


def representation_counts(A: Iterable, B: Iterable, ambient: Ambient) -> Counter:
    """c -> ν(c) over the whole sumset."""
    return Counter(ambient.add(a, b) for a in A for b in B)


def nu(A: Iterable, B: Iterable, c, ambient: Ambient) -> int:
    """Number of ordered pairs (a, b) in A x B with a + b = c."""
    A, B = list(A), list(B)
    _check_nonempty(A, B)
    return sum(1 for a in A for b in B if ambient.add(a, b) == c)


def restricted_sumset(instance: Instance) -> tuple:
    ok = admissible(instance)
    add = instance.ambient.add
    return tuple(sorted({add(a, b) for a in instance.A for b in instance.B if ok(a, b)}))


def min_nu_over(A: Iterable, B: Iterable, target: Iterable, ambient: Ambient) -> int | None:
    """min of ν over ``target``; None (not applicable) when the target is empty."""
    counts = representation_counts(list(A), list(B), ambient)
    values = [counts[c] for c in target]
    return min(values) if values else None


@dataclass(frozen=True)
class Profile:
    """Everything the bound checks need about one instance."""

    sumset: tuple
    restricted: tuple
    counts: dict

    @property
    def min_nu_sumset(self) -> int:
        return min(self.counts.values())

    @property
    def min_nu_restricted(self) -> int | None:
        return min((self.counts[c] for c in self.restricted), default=None)


def profile(instance: Instance) -> Profile:
    counts = representation_counts(instance.A, instance.B, instance.ambient)
    return Profile(tuple(sorted(counts)), restricted_sumset(instance), dict(counts))
