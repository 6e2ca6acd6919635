"""Sparse multivariate polynomials over an exact field, and the grid machinery built on them.

The centrepiece is :func:`cn_decompose`, which writes a polynomial f as
``sum(g_i(x_i) * h_i) + r`` where ``g_i(x) = prod_{a in A_i} (x - a)`` and the
remainder r has degree < |A_i| in every x_i.  The remainder is zero exactly
when f vanishes on the grid A_1 x ... x A_n, so r = 0 certifies vanishing.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInput, ResourceLimit
from .fields import FieldSpec, format_field_element, parse_field_element

MINUS_INFINITY = -math.inf
MAX_GRID_POINTS = 10**6

Exponent = tuple[int, ...]


class MultiPoly:
    """Immutable sparse polynomial: a map from exponent vectors to nonzero coefficients."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.field = field
        self.nvars = nvars
        clean: dict[Exponent, object] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise InvalidInput(f"bad exponent vector {exp} for {nvars} variables")
            if not field.is_zero(c):
                clean[exp] = c
        self.terms = clean

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c=1) -> MultiPoly:
        return cls(field, nvars, {(0,) * nvars: field.coerce(c)})

    @classmethod
    def variable(cls, field: FieldSpec, nvars: int, i: int) -> MultiPoly:
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, {exp: field.one()})

    @classmethod
    def monomial(cls, field: FieldSpec, exp: Sequence[int], c=1) -> MultiPoly:
        return cls(field, len(exp), {tuple(exp): field.coerce(c)})

    def _same_ring(self, other: MultiPoly) -> None:
        if other.field != self.field or other.nvars != self.nvars:
            raise InvalidInput("polynomials live in different rings")

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._same_ring(other)
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other) -> MultiPoly:
        other = self._lift(other)
        F = self.field
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = F.add(out[exp], c) if exp in out else c
        return MultiPoly(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        F = self.field
        return MultiPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = self._lift(other)
        F = self.field
        out: dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                out[e] = F.add(out[e], c) if e in out else c
        return MultiPoly(F, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise InvalidInput("negative polynomial power")
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> float | int:
        return total_degree(self)

    def degree_in(self, i: int) -> float | int:
        return max((e[i] for e in self.terms), default=MINUS_INFINITY)

    def __call__(self, *point):
        return poly_eval(self, point)

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        """Terms in graded-lex order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, {self.field})"


def poly_eval(f: MultiPoly, point: Sequence):
    """Exact value of f at ``point``."""
    if len(point) != f.nvars:
        raise InvalidInput(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    F = f.field
    point = [F.coerce(x) for x in point]
    # cache powers per coordinate; exponents are tiny
    powers: list[dict[int, object]] = [{0: F.one()} for _ in point]
    total = F.zero()
    for exp, c in f.terms.items():
        term = c
        for i, e in enumerate(exp):
            if e:
                cache = powers[i]
                if e not in cache:
                    cache[e] = F.pow(point[i], e)
                term = F.mul(term, cache[e])
        total = F.add(total, term)
    return total


def total_degree(f: MultiPoly) -> float | int:
    return max((sum(e) for e in f.terms), default=MINUS_INFINITY)


def grid_poly(field: FieldSpec, nvars: int, i: int, points: Iterable) -> MultiPoly:
    """g(x_i) = prod_{a in points} (x_i - a) as a polynomial in ``nvars`` variables."""
    x = MultiPoly.variable(field, nvars, i)
    g = MultiPoly.constant(field, nvars, 1)
    for a in points:
        g = g * (x - field.coerce(a))
    return g


@dataclass(frozen=True)
class CnDecomposition:
    quotients: tuple[MultiPoly, ...]
    remainder: MultiPoly
    generators: tuple[MultiPoly, ...]

    def reconstruct(self) -> MultiPoly:
        total = self.remainder
        for g, h in zip(self.generators, self.quotients):
            total = total + g * h
        return total


def _grid_sets(field: FieldSpec, grids: Sequence[Iterable]) -> list[list]:
    sets = []
    for i, grid in enumerate(grids):
        pts = sorted({field.coerce(a) for a in grid})
        if not pts:
            raise InvalidInput(f"grid {i} is empty")
        sets.append(pts)
    return sets


def cn_decompose(f: MultiPoly, grids: Sequence[Iterable]) -> CnDecomposition:
    """Reduce f modulo the grid polynomials g_i, one variable at a time.

    Variables are processed in ascending index order, and within a variable
    the highest power is reduced first, so the quotients are deterministic.
    """
    if len(grids) != f.nvars:
        raise InvalidInput(f"{len(grids)} grids for {f.nvars} variables")
    F, n = f.field, f.nvars
    sets = _grid_sets(F, grids)
    gens = tuple(grid_poly(F, n, i, pts) for i, pts in enumerate(sets))
    work = dict(f.terms)
    quotients = []
    for i, g in enumerate(gens):
        d = len(sets[i])
        q: dict[Exponent, object] = {}
        while True:
            high = [e for e in work if e[i] >= d]
            if not high:
                break
            exp = max(high, key=lambda e: (e[i], sum(e), e))
            c = work[exp]
            shift = exp[:i] + (exp[i] - d,) + exp[i + 1 :]
            q[shift] = F.add(q[shift], c) if shift in q else c
            # work -= c * x^shift * g
            for ge, gc in g.terms.items():
                e = tuple(a + b for a, b in zip(shift, ge))
                v = F.mul(c, gc)
                nv = F.sub(work[e], v) if e in work else F.neg(v)
                if F.is_zero(nv):
                    work.pop(e, None)
                else:
                    work[e] = nv
        quotients.append(MultiPoly(F, n, q))
    return CnDecomposition(tuple(quotients), MultiPoly(F, n, work), gens)


def vanishes_on_grid(f: MultiPoly, grids: Sequence[Iterable]) -> bool:
    """Brute-force check that f is zero at every point of the grid."""
    if len(grids) != f.nvars:
        raise InvalidInput(f"{len(grids)} grids for {f.nvars} variables")
    sets = _grid_sets(f.field, grids)
    if math.prod(len(s) for s in sets) > MAX_GRID_POINTS:
        raise ResourceLimit(f"grid has more than {MAX_GRID_POINTS} points")
    F = f.field
    return all(F.is_zero(poly_eval(f, pt)) for pt in itertools.product(*sets))


def build_difference_poly(S: Iterable, field: FieldSpec) -> MultiPoly:
    """prod_{s in S} (x - y - s); the constant 1 when S is empty."""
    x = MultiPoly.variable(field, 2, 0)
    y = MultiPoly.variable(field, 2, 1)
    P = MultiPoly.constant(field, 2, 1)
    for s in sorted({field.coerce(s) for s in S}):
        P = P * (x - y - s)
    return P


def build_monomial_constraint_poly(constraints: Iterable[tuple[int, int, object]], field: FieldSpec) -> MultiPoly:
    """prod_i (x^m_i * y^n_i - d_i)."""
    P = MultiPoly.constant(field, 2, 1)
    for m, n, d in constraints:
        if m < 0 or n < 0:
            raise InvalidInput("exponents must be nonnegative")
        P = P * (MultiPoly.monomial(field, (m, n)) - field.coerce(d))
    return P


# -- Lemma-style line counting --------------------------------------------------


@dataclass(frozen=True)
class Lemma21Report:
    hypotheses_ok: bool
    failure: str | None
    nu_values: tuple[int, ...]
    lhs: int | None
    rhs: int | None
    inequality_holds: bool | None
    is_tight: bool | None

    def to_dict(self) -> dict:
        return {
            "hypotheses_ok": self.hypotheses_ok,
            "failure": self.failure,
            "nu_values": list(self.nu_values),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "inequality_holds": self.inequality_holds,
            "is_tight": self.is_tight,
        }


def lemma21_check(A: Iterable, B: Iterable, lines: Sequence[tuple[object, object]], P: MultiPoly) -> Lemma21Report:
    """Count pairs of A x B on the lines a + λ_i b = μ_i and compare k + min ν_i with |A| + |B| - deg P.

    The two hypotheses (every line carries a pair with P(a, b) != 0, and every
    such pair lies on exactly one line) are verified and reported in-band.
    """
    F = P.field
    if P.nvars != 2:
        raise InvalidInput("P must be a polynomial in two variables")
    A = sorted({F.coerce(a) for a in A})
    B = sorted({F.coerce(b) for b in B})
    if not A or not B:
        raise InvalidInput("A and B must be nonempty")
    lines = [(F.coerce(lam), F.coerce(mu)) for lam, mu in lines]
    if any(F.is_zero(lam) for lam, _ in lines):
        raise InvalidInput("every λ_i must be nonzero")
    if len(set(lines)) != len(lines):
        raise InvalidInput("lines must be pairwise distinct")

    k = len(lines)
    nu = [0] * k
    carries = [False] * k
    failure = None
    for a in A:
        for b in B:
            nonzero = not F.is_zero(poly_eval(P, (a, b)))
            on = [i for i, (lam, mu) in enumerate(lines) if F.add(a, F.mul(lam, b)) == mu]
            for i in on:
                nu[i] += 1
                if nonzero:
                    carries[i] = True
            if nonzero and len(on) != 1 and failure is None:
                where = "no line" if not on else f"{len(on)} lines"
                failure = (
                    f"pair ({format_field_element(a, F)}, {format_field_element(b, F)}) "
                    f"has P != 0 but lies on {where}"
                )
    if failure is None and k == 0:
        failure = "no lines given"
    if failure is None and not all(carries):
        i = carries.index(False)
        failure = f"line {i} carries no pair with P != 0"

    lhs = k + min(nu) if k else None
    deg = total_degree(P)
    rhs = len(A) + len(B) - deg if not P.is_zero() else None
    holds = lhs >= rhs if lhs is not None and rhs is not None else None
    tight = lhs == rhs if holds is not None else None
    return Lemma21Report(failure is None, failure, tuple(nu), lhs, rhs, holds, tight)


# -- text form ------------------------------------------------------------------

_VAR_NAMES = ("x", "y", "z", "w")
_TOKEN = re.compile(r"\s*(?:\(([^()]*)\)|(\d+(?:/\d+)?)|([a-z])(\d*)(?:\^(\d+))?)\s*(\*?)")


def _var_index(name: str, idx: str, nvars: int) -> int:
    if idx:
        i = int(idx) - 1
        if name != "x" or not 0 <= i < nvars:
            raise InvalidInput(f"unknown variable {name}{idx}")
        return i
    if name in _VAR_NAMES[:nvars]:
        return _VAR_NAMES.index(name)
    raise InvalidInput(f"unknown variable {name!r} for {nvars} variables")


def _split_terms(text: str) -> list[tuple[str, str]]:
    terms, depth, cur, sign = [], 0, "", "+"
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0:
            if cur.strip():
                terms.append((sign, cur))
            elif ch == "-":
                sign = "+" if sign == "-" else "-"
                continue
            cur, sign = "", ch
            continue
        cur += ch
    if cur.strip():
        terms.append((sign, cur))
    return terms


def parse_poly(text: str, field: FieldSpec, nvars: int = 2) -> MultiPoly:
    """Parse ``"c*x1^e1*x2^e2 + ..."``; variables are x, y, z, w or x1..xn.

    >>> from sumset_lab.fields import prime_field
    >>> str(parse_poly("x^2 - x", prime_field(5), 1))
    'x^2 + 4*x'
    """
    if not text.strip():
        raise InvalidInput("empty polynomial")
    total = MultiPoly(field, nvars)
    for sign, body in _split_terms(text):
        coeff = field.one()
        exp = [0] * nvars
        pos, body = 0, body.strip()
        while pos < len(body):
            m = _TOKEN.match(body, pos)
            if not m or m.end() == pos:
                raise InvalidInput(f"cannot parse {body!r} in polynomial {text!r}")
            paren, num, var, idx, power = m.group(1, 2, 3, 4, 5)
            if paren is not None:
                coeff = field.mul(coeff, parse_field_element(paren, field))
            elif num is not None:
                coeff = field.mul(coeff, _parse_number(num, field))
            else:
                exp[_var_index(var, idx, nvars)] += int(power or 1)
            pos = m.end()
        if sign == "-":
            coeff = field.neg(coeff)
        total = total + MultiPoly(field, nvars, {tuple(exp): coeff})
    return total


def _parse_number(num: str, field: FieldSpec):
    if "/" in num:
        a, b = num.split("/")
        return field.div(field.from_int(int(a)), field.from_int(int(b)))
    return field.from_int(int(num))


def _var_name(i: int, nvars: int) -> str:
    return _VAR_NAMES[i] if nvars <= len(_VAR_NAMES) else f"x{i + 1}"


def format_poly(f: MultiPoly) -> str:
    if f.is_zero():
        return "0"
    F = f.field
    parts = []
    for exp, c in f.sorted_terms():
        mono = "*".join(
            _var_name(i, f.nvars) + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e
        )
        negative = not F.is_finite and c < 0
        if negative:
            c = -c
        cs = format_field_element(c, F)
        if F.is_finite and F.n > 1 and any(c.coeffs[1:]):
            cs = f"({cs})"
        if not mono:
            body = cs
        elif c == F.one():
            body = mono
        else:
            body = f"{cs}*{mono}"
        parts.append(("- " if negative else "+ ") + body)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]
