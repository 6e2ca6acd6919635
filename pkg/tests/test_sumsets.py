import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracle import oracle_nu, oracle_restricted, oracle_sumset
from sumset_lab.errors import InvalidInput
from sumset_lab.fields import RATIONALS, prime_field
from sumset_lab.groups import parse_group_spec
from sumset_lab.poly import build_difference_poly, parse_poly
from sumset_lab.sumsets import (
    DifferenceConstraint,
    Distinct,
    Instance,
    LinearConstraint,
    NoConstraint,
    PolyConstraint,
    min_nu_over,
    nu,
    profile,
    representation_counts,
    restricted_sumset,
    sumset,
)

Z = parse_group_spec("Z")
Z3 = parse_group_spec("Z/3")
Z5 = parse_group_spec("Z/5")
GF7 = prime_field(7)


def els(ambient, xs):
    return [ambient.coerce(x) for x in xs]


def test_sumset_examples():
    assert sumset(els(Z, [0, 1]), els(Z, [0, 2]), Z) == tuple(els(Z, [0, 1, 2, 3]))
    assert sumset(els(Z3, [0, 1]), els(Z3, [0, 1]), Z3) == tuple(els(Z3, [0, 1, 2]))
    assert sumset(els(Z, [5]), els(Z, [7]), Z) == tuple(els(Z, [12]))
    with pytest.raises(InvalidInput):
        sumset([], els(Z, [1]), Z)


def test_nu_examples():
    A = els(Z5, [0, 1, 2])
    assert nu(A, A, Z5.coerce(2), Z5) == 3
    assert nu(els(Z, [0, 1]), els(Z, [0, 1]), Z.coerce(7), Z) == 0
    assert nu(els(Z, [4]), els(Z, [9]), Z.coerce(13), Z) == 1


def test_restricted_examples():
    A = els(Z5, [0, 1, 2])
    assert restricted_sumset(Instance(Z5, A, A, Distinct())) == tuple(els(Z5, [1, 2, 3]))
    inst = Instance(GF7, [0, 1], [0, 1], PolyConstraint(parse_poly("x - y", GF7)))
    assert restricted_sumset(inst) == (GF7.coerce(1),)
    inst = Instance(Z, [0, 1, 2], [0, 1], LinearConstraint(((1, 1, 0),)))
    assert restricted_sumset(inst) == tuple(els(Z, [1, 2, 3]))


def test_vacuous_constraints_give_full_sumset():
    A, B = [0, 1, 3], [0, 2]
    full = sumset(els(Z5, A), els(Z5, B), Z5)
    for c in (NoConstraint(), LinearConstraint(()), DifferenceConstraint(())):
        assert restricted_sumset(Instance(Z5, A, B, c)) == full
    one = PolyConstraint(parse_poly("1", GF7))
    assert restricted_sumset(Instance(GF7, A, B, one)) == sumset(els(GF7, A), els(GF7, B), GF7)


def test_degenerate_linear_term():
    # m = n = 0: vacuous unless d is the identity, which empties C
    assert restricted_sumset(Instance(Z5, [0, 1], [0, 1], LinearConstraint(((0, 0, 3),)))) != ()
    assert restricted_sumset(Instance(Z5, [0, 1], [0, 1], LinearConstraint(((0, 0, 0),)))) == ()


def test_min_nu_examples():
    A = els(Z5, [0, 1, 2])
    C = restricted_sumset(Instance(Z5, A, A, Distinct()))
    assert min_nu_over(A, A, C, Z5) == 2
    assert min_nu_over(A, A, sumset(A, A, Z5), Z5) == 1
    assert min_nu_over(A, A, [], Z5) is None


def test_instance_validation():
    with pytest.raises(InvalidInput):
        Instance(Z5, [], [1])
    with pytest.raises(InvalidInput):
        Instance(Z5, [0], [1], PolyConstraint(parse_poly("x", GF7)))
    with pytest.raises(InvalidInput):
        Instance(GF7, [0], [1], LinearConstraint(((1, 1, 0),)))
    inst = Instance(Z5, [3, 1, 8], [0])
    assert inst.A == tuple(els(Z5, [1, 3]))


# -- properties ------------------------------------------------------------------------

GROUPS = ["Z/2", "Z/5", "Z/6", "Z/12", "Z/2 x Z/2", "Z/2 x Z/6", "Z/3 x Z/3"]


def _subset(data, elements, max_size=4):
    return data.draw(st.lists(st.sampled_from(elements), min_size=1, max_size=max_size, unique=True))


@pytest.mark.parametrize("text", GROUPS)
@given(data=st.data())
def test_nu_sums_to_product(text, data):
    G = parse_group_spec(text)
    A, B = _subset(data, G.elements()), _subset(data, G.elements())
    counts = representation_counts(A, B, G)
    assert sum(counts.values()) == len(A) * len(B)
    assert set(counts) == set(sumset(A, B, G))


@pytest.mark.parametrize("text", GROUPS)
@given(data=st.data())
def test_restricted_subset_and_monotone(text, data):
    G = parse_group_spec(text)
    E = G.elements()
    A, B = _subset(data, E), _subset(data, E)
    S = _subset(data, E, 3)
    S2 = S + [x for x in _subset(data, E, 2) if x not in S]
    C = set(restricted_sumset(Instance(G, A, B, DifferenceConstraint(tuple(S)))))
    C2 = set(restricted_sumset(Instance(G, A, B, DifferenceConstraint(tuple(S2)))))
    assert C2 <= C <= set(sumset(A, B, G))
    if C:
        assert min_nu_over(A, B, C, G) >= min_nu_over(A, B, sumset(A, B, G), G)


@pytest.mark.parametrize("text", GROUPS)
def test_distinct_equals_difference_with_identity(text):
    G = parse_group_spec(text)
    E = G.elements()
    rng = random.Random(text)
    for _ in range(200):
        A, B = rng.sample(E, rng.randint(1, len(E))), rng.sample(E, rng.randint(1, len(E)))
        assert restricted_sumset(Instance(G, A, B, Distinct())) == restricted_sumset(
            Instance(G, A, B, DifferenceConstraint((G.identity(),)))
        )


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_difference_route_matches_poly_route(p):
    F = prime_field(p)
    E = F.elements()
    rng = random.Random(p)
    for _ in range(300):
        A = rng.sample(E, rng.randint(1, min(3, p)))
        B = rng.sample(E, rng.randint(1, min(3, p)))
        S = tuple(rng.sample(E, rng.randint(0, min(3, p))))
        by_diff = restricted_sumset(Instance(F, A, B, DifferenceConstraint(S)))
        by_poly = restricted_sumset(Instance(F, A, B, PolyConstraint(build_difference_poly(S, F))))
        assert by_diff == by_poly


def test_rationals_difference_route():
    A = [0, 1, 2]
    inst = Instance(RATIONALS, A, A, DifferenceConstraint((0, 1)))
    assert [int(x) for x in restricted_sumset(inst)] == [1, 2, 3]


@given(st.integers(0, 2**31), st.integers(2, 12))
def test_cyclic_matches_oracle(seed, n):
    rng = random.Random(seed)
    G = parse_group_spec(f"Z/{n}")
    A = rng.sample(range(n), rng.randint(1, n))
    B = rng.sample(range(n), rng.randint(1, n))
    S = rng.sample(range(n), rng.randint(0, min(3, n)))
    lin = [(rng.randint(0, 2), rng.randint(0, 2), rng.randrange(n)) for _ in range(rng.randint(0, 2))]
    to_int = lambda xs: {x.torsion[0] for x in xs}
    assert to_int(sumset(els(G, A), els(G, B), G)) == oracle_sumset(A, B, n)
    assert to_int(restricted_sumset(Instance(G, A, B, Distinct()))) == oracle_restricted(A, B, n, distinct=True)
    assert to_int(restricted_sumset(Instance(G, A, B, DifferenceConstraint(tuple(S))))) == oracle_restricted(A, B, n, S=S)
    assert to_int(restricted_sumset(Instance(G, A, B, LinearConstraint(tuple(lin))))) == oracle_restricted(
        A, B, n, linear=lin
    )
    c = rng.randrange(n)
    assert nu(els(G, A), els(G, B), G.coerce(c), G) == oracle_nu(A, B, c, n)


def test_profile_fields():
    A = els(Z5, [0, 1, 2])
    prof = profile(Instance(Z5, A, A, Distinct()))
    assert prof.min_nu_sumset == 1
    assert prof.min_nu_restricted == 2
    assert len(prof.sumset) == 5 and len(prof.restricted) == 3
