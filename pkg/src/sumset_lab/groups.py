"""Finitely generated abelian groups Z^r x Z/n1 x ... x Z/nk.

Groups are kept in invariant-factor form (n1 | n2 | ... | nk, every ni >= 2).
Elements are pairs ``(free, torsion)`` of integer tuples; torsion residues
are always reduced.

>>> G = normalize_group_spec([4, 6], 0)
>>> G
GroupSpec(free_rank=0, invariant_factors=(2, 12))
>>> str(G)
'Z/2 x Z/12'
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInput

INFINITE = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_base(n: int) -> int | None:
    """Return p if n = p^e with e >= 1, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    while n % p == 0:
        n //= p
    return p if n == 1 else None


@dataclass(frozen=True, order=True)
class GroupElement:
    free: tuple[int, ...] = ()
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class GroupClass:
    tag: str
    p: int | None = None

    def __str__(self) -> str:
        return f"{self.tag}({self.p})" if self.p is not None else self.tag


@dataclass(frozen=True)
class GroupSpec:
    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        if self.free_rank < 0:
            raise InvalidInput("free rank must be nonnegative")
        ns = self.invariant_factors
        if any(n < 2 for n in ns):
            raise InvalidInput(f"invariant factors must be >= 2, got {ns}")
        if any(b % a for a, b in zip(ns, ns[1:])):
            raise InvalidInput(f"not a divisibility chain: {ns}; use normalize_group_spec")

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> float | int:
        return math.prod(self.invariant_factors) if self.is_finite else INFINITE

    @property
    def exponent(self) -> float | int:
        if not self.is_finite:
            return INFINITE
        return math.lcm(*self.invariant_factors) if self.invariant_factors else 1

    @property
    def has_cyclic_torsion(self) -> bool:
        return len(self.invariant_factors) <= 1

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.free_rank, (0,) * len(self.invariant_factors))

    zero = identity

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> GroupElement:
        """Build an element, reducing torsion residues."""
        free, torsion = tuple(free), tuple(torsion)
        if len(free) != self.free_rank or len(torsion) != len(self.invariant_factors):
            raise InvalidInput(f"element shape ({len(free)};{len(torsion)}) does not fit {self}")
        return GroupElement(
            tuple(int(f) for f in free),
            tuple(int(t) % n for t, n in zip(torsion, self.invariant_factors)),
        )

    def coerce(self, x) -> GroupElement:
        """Accept a GroupElement, a bare integer (cyclic or Z), or element text."""
        if isinstance(x, GroupElement):
            self.check(x)
            return x
        if isinstance(x, bool):
            raise InvalidInput(f"not a group element: {x!r}")
        if isinstance(x, int):
            if self.free_rank == 1 and not self.invariant_factors:
                return GroupElement((x,), ())
            if self.free_rank == 0 and len(self.invariant_factors) == 1:
                return self.element((), (x,))
            if self.free_rank == 0 and not self.invariant_factors and x == 0:
                return self.identity()
            raise InvalidInput(f"integer shorthand {x} is ambiguous in {self}")
        if isinstance(x, str):
            return parse_element(x, self)
        raise InvalidInput(f"not a group element: {x!r}")

    def check(self, g: GroupElement) -> None:
        if len(g.free) != self.free_rank or len(g.torsion) != len(self.invariant_factors):
            raise InvalidInput(f"element {g} does not belong to {self}")
        if any(not 0 <= t < n for t, n in zip(g.torsion, self.invariant_factors)):
            raise InvalidInput(f"element {g} has unreduced torsion part")

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return add(g, h, self)

    def neg(self, g: GroupElement) -> GroupElement:
        return scalar_mul(-1, g, self)

    def sub(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return add(g, scalar_mul(-1, h, self), self)

    def scalar_mul(self, c: int, g: GroupElement) -> GroupElement:
        return scalar_mul(c, g, self)

    def elements(self, box: int | None = None) -> list[GroupElement]:
        """All elements in canonical order; free coordinates range over [-box, box]."""
        if self.free_rank and box is None:
            raise InvalidInput(f"{self} is infinite; a box bound is required")
        free_range = range(-box, box + 1) if self.free_rank else range(0)
        frees = itertools.product(free_range, repeat=self.free_rank)
        tors = list(itertools.product(*(range(n) for n in self.invariant_factors)))
        return [GroupElement(f, t) for f in frees for t in tors]

    def __str__(self) -> str:
        return format_group_spec(self)


def normalize_group_spec(moduli: Sequence[int], free_rank: int = 0) -> GroupSpec:
    """Invariant-factor form of Z^r + sum of Z/m_i.

    Pairs are replaced by (gcd, lcm) until the list is a divisibility
    chain; factors equal to 1 are dropped.
    """
    ms = [int(m) for m in moduli]
    if any(m < 2 for m in ms):
        raise InvalidInput(f"moduli must be >= 2, got {list(moduli)}")
    if free_rank < 0:
        raise InvalidInput("free rank must be nonnegative")
    changed = True
    while changed:
        changed = False
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                a, b = ms[i], ms[j]
                if b % a:
                    ms[i], ms[j] = math.gcd(a, b), math.lcm(a, b)
                    changed = True
        ms = [m for m in ms if m != 1]
        ms.sort()
    return GroupSpec(free_rank, tuple(ms))


def _check_pair(g: GroupElement, spec: GroupSpec) -> None:
    if len(g.free) != spec.free_rank or len(g.torsion) != len(spec.invariant_factors):
        raise InvalidInput(f"element {g!r} does not fit {spec}")


def add(g: GroupElement, h: GroupElement, spec: GroupSpec) -> GroupElement:
    _check_pair(g, spec)
    _check_pair(h, spec)
    return GroupElement(
        tuple(a + b for a, b in zip(g.free, h.free)),
        tuple((a + b) % n for a, b, n in zip(g.torsion, h.torsion, spec.invariant_factors)),
    )


def scalar_mul(c: int, g: GroupElement, spec: GroupSpec) -> GroupElement:
    _check_pair(g, spec)
    return GroupElement(
        tuple(c * a for a in g.free),
        tuple((c * a) % n for a, n in zip(g.torsion, spec.invariant_factors)),
    )


def element_order(g: GroupElement, spec: GroupSpec) -> float | int:
    """Least m >= 1 with m*g = 0, or ``INFINITE``."""
    _check_pair(g, spec)
    if any(g.free):
        return INFINITE
    return math.lcm(1, *(n // math.gcd(t, n) for t, n in zip(g.torsion, spec.invariant_factors)))


def classify(spec: GroupSpec) -> GroupClass:
    ns = spec.invariant_factors
    if not ns:
        return GroupClass("torsion_free")
    if spec.free_rank == 0 and len(set(ns)) == 1 and is_prime(ns[0]):
        return GroupClass("elementary_abelian", ns[0])
    if len(ns) <= 1:
        return GroupClass("torsion_cyclic")
    return GroupClass("other")


# -- text forms -------------------------------------------------------------

_FACTOR = re.compile(r"^Z(?:\^(\d+))?$|^Z/(\d+)$")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``"Z^r x Z/n1 x ... x Z/nk"``; either part may be absent.

    >>> parse_group_spec("Z x Z/4 x Z/6")
    GroupSpec(free_rank=1, invariant_factors=(2, 12))
    """
    s = text.strip()
    if s in ("0", "1", "trivial", "{0}"):
        return GroupSpec()
    rank, moduli = 0, []
    for part in re.split(r"\s*[x×]\s*", s):
        m = _FACTOR.match(part.replace(" ", ""))
        if not m:
            raise InvalidInput(f"cannot parse group factor {part!r} in {text!r}")
        if m.group(2) is not None:
            moduli.append(int(m.group(2)))
        else:
            rank += int(m.group(1) or 1)
    return normalize_group_spec(moduli, rank)


def format_group_spec(spec: GroupSpec) -> str:
    parts = []
    if spec.free_rank == 1:
        parts.append("Z")
    elif spec.free_rank > 1:
        parts.append(f"Z^{spec.free_rank}")
    parts.extend(f"Z/{n}" for n in spec.invariant_factors)
    return " x ".join(parts) if parts else "0"


def parse_element(text: str, spec: GroupSpec) -> GroupElement:
    """Parse ``"(f1,...,fr; t1,...,tk)"``.

    The semicolon may be omitted when one of the two parts is empty, and the
    parentheses may be omitted for a single coordinate.
    """
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        if ";" in s:
            left, right = s.split(";")
            free = _ints(left)
            tors = _ints(right)
        elif spec.free_rank and spec.invariant_factors:
            raise InvalidInput(f"element {text!r} needs a ';' separator in {spec}")
        elif spec.free_rank:
            free, tors = _ints(s), []
        else:
            free, tors = [], _ints(s)
    except ValueError as exc:
        raise InvalidInput(f"cannot parse element {text!r}") from exc
    return spec.element(free, tors)


def _ints(s: str) -> list[int]:
    s = s.strip()
    return [int(x) for x in s.split(",")] if s else []


def format_element(g: GroupElement) -> str:
    free = ",".join(map(str, g.free))
    tors = ",".join(map(str, g.torsion))
    if not g.free:
        return tors if len(g.torsion) == 1 else f"({tors})"
    if not g.torsion:
        return free if len(g.free) == 1 else f"({free})"
    return f"({free}; {tors})"

