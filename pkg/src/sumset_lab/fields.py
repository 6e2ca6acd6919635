"""Exact field arithmetic: the rationals, GF(p) and GF(p^n).

Finite-field elements are coefficient vectors over GF(p) in the power basis
1, α, ..., α^(n-1), where α is a root of the (monic, irreducible) modulus.
Rationals are plain :class:`fractions.Fraction` values.

>>> F = extension_field(2, 2)
>>> a = F.generator()
>>> F.format_element(F.mul(a, a))
'1 + α'
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput, ResourceLimit
from .groups import GroupElement, GroupSpec, classify, is_prime, prime_power_base

MAX_FIELD_ORDER = 2**20

# -- univariate polynomials over GF(p), coefficient lists low -> high ---------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return a


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _frobenius_powers(m: Sequence[int], p: int, n: int) -> list[list[int]]:
    """x^(p^d) mod m for d = 0..n."""
    cur = _pmod([0, 1], m, p)
    out = [cur]
    for _ in range(n):
        # raise to the p-th power by square-and-multiply modulo m
        res, base, e = [1], cur, p
        while e:
            if e & 1:
                res = _pmod(_pmul(res, base, p), m, p)
            base = _pmod(_pmul(base, base, p), m, p)
            e >>= 1
        cur = res
        out.append(cur)
    return out


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    m is irreducible of degree n iff m divides x^(p^n) - x and
    gcd(x^(p^d) - x, m) = 1 for 1 <= d < n.
    """
    m = _trim([c % p for c in m])
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    frob = _frobenius_powers(m, p, n)
    if frob[n] != frob[0]:
        return False
    for d in range(1, n):
        g = _pgcd(m, _psub(frob[d], [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree n over GF(p).

    Candidates are ordered by their integer encoding sum(c_i * p^i), so the
    highest non-leading coefficient is the most significant.  Returns the
    coefficient tuple from the constant term upward (leading 1 included).

    >>> find_irreducible(2, 3)
    (1, 1, 0, 1)
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if n < 1:
        raise InvalidInput("degree must be >= 1")
    if p**n > MAX_FIELD_ORDER:
        raise ResourceLimit(f"GF({p}^{n}) exceeds the cap of {MAX_FIELD_ORDER} elements")
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# -- fields -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class FieldElement:
    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class FieldSpec:
    """A field: ``kind`` is ``"rationals"``, ``"prime"`` or ``"extension"``."""

    kind: str
    p: int = 0
    n: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "rationals":
            return
        if self.kind not in ("prime", "extension"):
            raise InvalidInput(f"unknown field kind {self.kind!r}")
        if not is_prime(self.p):
            raise InvalidInput(f"{self.p} is not prime")
        mod = tuple(c % self.p for c in self.modulus) if self.modulus else (0, 1)
        if self.kind == "prime" and self.n != 1:
            raise InvalidInput("a prime field has degree 1")
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise InvalidInput(f"modulus {mod} is not monic of degree {self.n}")
        if self.n > 1 and not is_irreducible(mod, self.p):
            raise InvalidInput(f"modulus {mod} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    @property
    def is_finite(self) -> bool:
        return self.kind != "rationals"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rationals" else self.p

    @property
    def order(self) -> float | int:
        return self.p**self.n if self.is_finite else float("inf")

    def zero(self):
        return Fraction(0) if not self.is_finite else FieldElement((0,) * self.n)

    def one(self):
        return self.from_int(1)

    def from_int(self, k: int):
        if not self.is_finite:
            return Fraction(k)
        return FieldElement((k % self.p,) + (0,) * (self.n - 1))

    def generator(self) -> FieldElement:
        """The class of x modulo the modulus (α)."""
        if not self.is_finite:
            raise InvalidInput("the rationals have no power-basis generator")
        return FieldElement(tuple(_pmod([0, 1], self.modulus, self.p) + [0] * self.n)[: self.n])

    def is_zero(self, a) -> bool:
        return a == 0 if not self.is_finite else not any(a.coeffs)

    def check(self, a) -> None:
        if not self.is_finite:
            if not isinstance(a, Fraction):
                raise InvalidInput(f"{a!r} is not a rational")
            return
        if not isinstance(a, FieldElement) or len(a.coeffs) != self.n:
            raise InvalidInput(f"{a!r} is not an element of {self}")
        if any(not 0 <= c < self.p for c in a.coeffs):
            raise InvalidInput(f"{a!r} has unreduced coefficients")

    def coerce(self, x):
        """Accept a field element, an int, a Fraction (for Q) or element text."""
        if isinstance(x, bool):
            raise InvalidInput(f"not a field element: {x!r}")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction) and not self.is_finite:
            return x
        if isinstance(x, FieldElement):
            self.check(x)
            return x
        if isinstance(x, str):
            return parse_field_element(x, self)
        raise InvalidInput(f"not an element of {self}: {x!r}")

    def add(self, a, b):
        if not self.is_finite:
            return a + b
        p = self.p
        return FieldElement(tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a):
        if not self.is_finite:
            return -a
        p = self.p
        return FieldElement(tuple(-x % p for x in a.coeffs))

    def sub(self, a, b):
        if not self.is_finite:
            return a - b
        p = self.p
        return FieldElement(tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def mul(self, a, b):
        if not self.is_finite:
            return a * b
        p = self.p
        if self.n == 1:
            return FieldElement((a.coeffs[0] * b.coeffs[0] % p,))
        prod = _pmod(_pmul(_trim(list(a.coeffs)), _trim(list(b.coeffs)), p), self.modulus, p)
        return FieldElement(tuple(prod + [0] * (self.n - len(prod))))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if not self.is_finite:
            return 1 / a
        if self.n == 1:
            return FieldElement((pow(a.coeffs[0], -1, self.p),))
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if not self.is_finite:
            return a**e
        if self.n == 1:
            return FieldElement((pow(a.coeffs[0], e, self.p),))
        result, base = self.one(), a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self, box: int | None = None) -> list:
        """All elements in canonical order; for Q, the integers in [-box, box]."""
        if not self.is_finite:
            if box is None:
                raise InvalidInput("the rationals are infinite; a box bound is required")
            return [Fraction(k) for k in range(-box, box + 1)]
        return [FieldElement(c) for c in itertools.product(range(self.p), repeat=self.n)]

    def format_element(self, a) -> str:
        return format_field_element(a, self)

    def __str__(self) -> str:
        return format_field_spec(self)


RATIONALS = FieldSpec("rationals")


def prime_field(p: int) -> FieldSpec:
    return FieldSpec("prime", p, 1, (0, 1))


def extension_field(p: int, n: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """GF(p^n); the modulus defaults to :func:`find_irreducible`."""
    if n == 1 and modulus is None:
        return prime_field(p)
    if modulus is None:
        modulus = find_irreducible(p, n)
    elif p**n > MAX_FIELD_ORDER:
        raise ResourceLimit(f"GF({p}^{n}) exceeds the cap of {MAX_FIELD_ORDER} elements")
    return FieldSpec("prime" if n == 1 else "extension", p, n, tuple(modulus))


_OPS = ("add", "sub", "mul", "inv", "pow")


def field_arith(op: str, a, b, spec: FieldSpec):
    """Dispatch one field operation; ``b`` is the exponent for ``pow`` and ignored for ``inv``."""
    if op not in _OPS:
        raise InvalidInput(f"unknown field operation {op!r}")
    spec.check(a)
    if op == "inv":
        return spec.inv(a)
    if op == "pow":
        return spec.pow(a, int(b))
    spec.check(b)
    return getattr(spec, op)(a, b)


def embed_elementary(g: GroupElement, group: GroupSpec, field: FieldSpec) -> FieldElement:
    """Coordinate map (Z/p)^n -> GF(p^n) onto the basis 1, α, ..., α^(n-1)."""
    cls = classify(group)
    if cls.tag != "elementary_abelian":
        raise InvalidInput(f"{group} is not elementary abelian")
    if not field.is_finite or field.p != cls.p or field.n != len(group.invariant_factors):
        raise InvalidInput(f"{group} does not match the additive group of {field}")
    group.check(g)
    return FieldElement(tuple(g.torsion))


def unembed_elementary(a: FieldElement, group: GroupSpec, field: FieldSpec) -> GroupElement:
    """Inverse of :func:`embed_elementary`."""
    field.check(a)
    return group.element((), a.coeffs)


def elementary_group_of(field: FieldSpec) -> GroupSpec:
    if not field.is_finite:
        raise InvalidInput("the rationals are not elementary abelian")
    return GroupSpec(0, (field.p,) * field.n)


# -- text forms ---------------------------------------------------------------

_GF = re.compile(r"^GF\(\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:;\s*(.+))?\)$")


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``"Q"``, ``"GF(7)"``, ``"GF(8)"``, ``"GF(2^3)"`` or ``"GF(2^3; x^3+x+1)"``."""
    s = text.strip()
    if s in ("Q", "QQ"):
        return RATIONALS
    m = _GF.match(s)
    if not m:
        raise InvalidInput(f"cannot parse field {text!r}")
    p, n = int(m.group(1)), int(m.group(2) or 1)
    if m.group(2) is None and not is_prime(p):
        base = prime_power_base(p)
        if base is None:
            raise InvalidInput(f"{p} is not a prime power")
        q, n = p, 0
        while q > 1:
            q //= base
            n += 1
        p = base
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    modulus = None
    if m.group(3):
        modulus = _parse_univariate(m.group(3), p, "x")
        if len(modulus) != n + 1:
            raise InvalidInput(f"modulus {m.group(3)!r} does not have degree {n}")
    return extension_field(p, n, modulus)


def format_field_spec(spec: FieldSpec) -> str:
    if not spec.is_finite:
        return "Q"
    if spec.n == 1:
        return f"GF({spec.p})"
    mod = _format_univariate(spec.modulus, "x", descending=True)
    return f"GF({spec.p}^{spec.n}; {mod})"


def _parse_univariate(text: str, p: int, var: str) -> list[int]:
    s = text.replace(" ", "").replace("α", var)
    if not s:
        raise InvalidInput("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, int] = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        m = re.fullmatch(rf"(\d+)?\*?({re.escape(var)}(?:\^(\d+))?)?", body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise InvalidInput(f"cannot parse term {body!r} in {text!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        e = 0 if m.group(2) is None else int(m.group(3) or 1)
        coeffs[e] = coeffs.get(e, 0) + (c if sign == "+" else -c)
    deg = max(coeffs)
    return [coeffs.get(i, 0) % p for i in range(deg + 1)]


def _format_univariate(coeffs: Sequence[int], var: str, descending: bool = False) -> str:
    terms = []
    order = range(len(coeffs))
    for i in (reversed(order) if descending else order):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def parse_field_element(text: str, spec: FieldSpec):
    """Rationals as ``"p/q"``; finite-field elements as polynomials in ``α`` (or ``a``)."""
    s = text.strip()
    if not spec.is_finite:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot parse rational {text!r}") from exc
    coeffs = _parse_univariate(s.replace("a", "α"), spec.p, "α")
    if spec.n == 1 and len(coeffs) > 1:
        raise InvalidInput(f"{text!r} is not an element of {spec}")
    coeffs = _pmod(coeffs, spec.modulus, spec.p) if len(coeffs) > spec.n else _trim(coeffs)
    return FieldElement(tuple(coeffs + [0] * (spec.n - len(coeffs))))


def format_field_element(a, spec: FieldSpec) -> str:
    if not spec.is_finite:
        return str(a)
    if spec.n == 1:
        return str(a.coeffs[0])
    return _format_univariate(a.coeffs, "α")
