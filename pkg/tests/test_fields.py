import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumset_lab.errors import InvalidInput, ResourceLimit
from sumset_lab.fields import (
    RATIONALS,
    elementary_group_of,
    embed_elementary,
    extension_field,
    field_arith,
    find_irreducible,
    format_field_element,
    format_field_spec,
    is_irreducible,
    parse_field_element,
    parse_field_spec,
    prime_field,
    unembed_elementary,
)
from sumset_lab.groups import normalize_group_spec, parse_group_spec

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (2, 6), (3, 3)]


def _brute_irreducible(m, p):
    """No monic factor of degree 1..n//2, by trial multiplication."""
    n = len(m) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            f = list(low) + [1]
            for glow in itertools.product(range(p), repeat=n - d):
                h = list(glow) + [1]
                prod = [0] * (n + 1)
                for i, a in enumerate(f):
                    for j, b in enumerate(h):
                        prod[i + j] = (prod[i + j] + a * b) % p
                if prod == list(m):
                    return False
    return True


@pytest.mark.parametrize(
    "p, n, expected", [(2, 2, (1, 1, 1)), (3, 1, (0, 1)), (2, 3, (1, 1, 0, 1)), (2, 1, (0, 1))]
)
def test_find_irreducible_examples(p, n, expected):
    assert find_irreducible(p, n) == expected


@pytest.mark.parametrize("p, n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_find_irreducible_is_first_in_scan(p, n):
    m = find_irreducible(p, n)
    assert _brute_irreducible(m, p)
    encode = lambda c: sum(x * p**i for i, x in enumerate(c))
    for low in itertools.product(range(p), repeat=n):
        cand = tuple(low) + (1,)
        if encode(cand) < encode(m):
            assert not _brute_irreducible(cand, p)


def test_find_irreducible_errors():
    with pytest.raises(InvalidInput):
        find_irreducible(4, 2)
    with pytest.raises(ResourceLimit):
        find_irreducible(2, 21)


@pytest.mark.parametrize("p, n", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 5)])
def test_irreducible_has_no_roots_and_divides_frobenius(p, n):
    F = extension_field(p, n)
    m = F.modulus
    assert all(sum(c * r**i for i, c in enumerate(m)) % p for r in range(p))
    # x^{p^n} = x in the quotient ring, i.e. m divides x^{p^n} - x
    alpha = F.generator()
    assert F.pow(alpha, p**n) == alpha


def test_is_irreducible_rejects_reducible():
    assert not is_irreducible((1, 0, 1), 2)  # (x+1)^2
    assert is_irreducible((1, 1, 1), 2)


def test_arith_examples():
    F4 = extension_field(2, 2, (1, 1, 1))
    a = F4.generator()
    assert field_arith("mul", a, a, F4) == F4.add(a, F4.one())
    F7 = prime_field(7)
    assert field_arith("inv", F7.coerce(3), None, F7) == F7.coerce(5)
    F8 = extension_field(2, 3, (1, 1, 0, 1))
    assert field_arith("pow", F8.generator(), 3, F8) == F8.add(F8.generator(), F8.one())
    with pytest.raises(ZeroDivisionError):
        F7.inv(F7.zero())


def test_prime_field_equals_degree_one_extension():
    F = prime_field(5)
    E = extension_field(5, 1)
    assert F.elements() == E.elements()
    for a in F.elements():
        for b in F.elements():
            assert F.mul(a, b) == E.mul(a, b)


@pytest.mark.parametrize("p, n", [pn for pn in SMALL_FIELDS if pn[0] ** pn[1] <= 64])
def test_field_axioms_exhaustive(p, n):
    F = extension_field(p, n)
    els = F.elements()
    q = p**n
    assert len(els) == q
    zero, one = F.zero(), F.one()
    for a in els:
        assert F.pow(a, q) == a
        if a != zero:
            assert F.mul(a, F.inv(a)) == one
        assert F.add(a, F.neg(a)) == zero
    sample = els if q <= 16 else els[:: max(1, q // 12)]
    for a, b, c in itertools.product(sample, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


fractions = st.fractions(min_value=-100, max_value=100, max_denominator=50)


@given(fractions, fractions, fractions)
def test_rational_axioms(a, b, c):
    Q = RATIONALS
    assert Q.mul(a, Q.add(b, c)) == Q.add(Q.mul(a, b), Q.mul(a, c))
    assert Q.add(Q.add(a, b), c) == Q.add(a, Q.add(b, c))
    if a != 0:
        assert Q.mul(a, Q.inv(a)) == 1
    assert isinstance(Q.add(a, b), Fraction)


def test_rational_canonical():
    x = RATIONALS.coerce("-4/6")
    assert (x.numerator, x.denominator) == (-2, 3)
    with pytest.raises(InvalidInput):
        RATIONALS.coerce("1/0")


@pytest.mark.parametrize("p, n", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (3, 1), (7, 2)])
def test_embed_is_additive_bijection(p, n):
    F = extension_field(p, n)
    G = normalize_group_spec([p] * n)
    assert elementary_group_of(F) == G
    images = {embed_elementary(x, G, F) for x in G.elements()}
    assert len(images) == p**n
    for x in G.elements():
        assert unembed_elementary(embed_elementary(x, G, F), G, F) == x
        for y in G.elements():
            assert embed_elementary(G.add(x, y), G, F) == F.add(embed_elementary(x, G, F), embed_elementary(y, G, F))


def test_embed_examples():
    G = parse_group_spec("Z/2 x Z/2")
    F4 = extension_field(2, 2)
    assert format_field_element(embed_elementary(G.coerce("(1,1)"), G, F4), F4) == "1 + α"
    assert embed_elementary(G.identity(), G, F4) == F4.zero()
    G3 = parse_group_spec("Z/3")
    F3 = prime_field(3)
    assert embed_elementary(G3.coerce(2), G3, F3) == F3.coerce(2)
    with pytest.raises(InvalidInput):
        embed_elementary(G3.coerce(1), G3, F4)


@pytest.mark.parametrize(
    "text, canonical",
    [("Q", "Q"), ("GF(7)", "GF(7)"), ("GF(2^3)", "GF(2^3; x^3 + x + 1)"), ("GF(8)", "GF(2^3; x^3 + x + 1)"),
     ("GF(2^3; x^3+x^2+1)", "GF(2^3; x^3 + x^2 + 1)")],
)
def test_field_spec_text(text, canonical):
    F = parse_field_spec(text)
    assert format_field_spec(F) == canonical
    assert parse_field_spec(format_field_spec(F)) == F


@pytest.mark.parametrize("bad", ["GF(6)", "GF(4; x^2+1)", "GF(2^2; x^2+1)", "R", "GF()"])
def test_field_spec_rejects(bad):
    with pytest.raises(InvalidInput):
        parse_field_spec(bad)


@pytest.mark.parametrize("p, n", [(2, 3), (3, 2), (5, 1)])
def test_element_text_roundtrip(p, n):
    F = extension_field(p, n)
    for a in F.elements():
        assert parse_field_element(format_field_element(a, F), F) == a


@given(fractions)
def test_rational_text_roundtrip(x):
    assert parse_field_element(format_field_element(x, RATIONALS), RATIONALS) == x
