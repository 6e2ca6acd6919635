import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumset_lab.bounds import (
    COMPARISON_ONLY,
    PROVEN,
    PUBLIC_THEOREMS,
    TheoremId,
    Verdict,
    check_instance,
    predicted_bound,
)
from sumset_lab.fields import RATIONALS, extension_field, prime_field
from sumset_lab.groups import parse_group_spec
from sumset_lab.poly import grid_poly, parse_poly
from sumset_lab.sumsets import (
    DifferenceConstraint,
    Distinct,
    Instance,
    LinearConstraint,
    NoConstraint,
    PolyConstraint,
    restricted_sumset,
)

T = TheoremId
Z = parse_group_spec("Z")
Z5 = parse_group_spec("Z/5")
GF3 = prime_field(3)
GF7 = prime_field(7)


def test_theorem_ids():
    assert {str(t) for t in PUBLIC_THEOREMS} == {
        "cauchy_davenport", "kemperman_scherk", "erdos_heilbronn", "anr", "lev_conjecture",
        "thm_1_1", "thm_1_2", "thm_1_3_i", "thm_1_3_ii", "ps_bound", "karolyi_style",
    }
    assert T.LEV_CONJECTURE not in PROVEN
    assert T.TEST_OVERREACH not in PUBLIC_THEOREMS


def test_predicted_examples():
    A = [0, 1, 2]
    assert predicted_bound(T.LEV_CONJECTURE, Instance(Z5, A, A, Distinct())) == 3
    assert predicted_bound(T.THM_1_1, Instance(GF7, [0, 1], [0, 1], PolyConstraint(parse_poly("x - y", GF7)))) == 1
    assert predicted_bound(T.THM_1_3_II, Instance(Z, [0, 1], [0, 1], DifferenceConstraint((0,)))) == 0
    assert predicted_bound(T.KEMPERMAN_SCHERK, Instance(Z, [0, 1], [0, 2])) == 3


def test_check_examples():
    rep = check_instance(T.THM_1_3_I, Instance(GF3, [0, 1], [0, 1], DifferenceConstraint((0,))))
    assert (rep.predicted, rep.actual, rep.verdict) == (1, 1, Verdict.TIGHT)
    assert rep.min_nu_domain == "C"

    P = grid_poly(GF7, 2, 0, [GF7.coerce(0), GF7.coerce(1)])
    rep = check_instance(T.THM_1_1, Instance(GF7, [0, 1], [0, 1], PolyConstraint(P)))
    assert rep.verdict is Verdict.NOT_APPLICABLE and rep.predicted is None

    rep = check_instance(T.LEV_CONJECTURE, Instance(Z5, [0, 1, 2], [0, 1, 2], Distinct()))
    assert (rep.predicted, rep.actual, rep.verdict) == (3, 3, Verdict.TIGHT)
    assert (rep.min_nu, rep.min_nu_domain) == (1, "A+B")


def test_report_json_fields():
    rep = check_instance(T.LEV_CONJECTURE, Instance(Z5, [0, 1, 2], [0, 1, 2], Distinct()))
    doc = json.loads(json.dumps(rep.to_dict()))
    assert {"theorem", "predicted", "actual", "min_nu", "min_nu_domain", "verdict", "witness"} <= set(doc)
    assert doc["witness"]["instance"]["ambient"] == "Z/5"
    assert doc["witness"]["C"] == ["1", "2", "3"]


@pytest.mark.parametrize(
    "theorem, instance",
    [
        (T.CAUCHY_DAVENPORT, Instance(parse_group_spec("Z/6"), [0, 1], [0, 1])),
        (T.CAUCHY_DAVENPORT, Instance(Z5, [0, 1], [0, 1], Distinct())),
        (T.ERDOS_HEILBRONN, Instance(Z5, [0, 1], [0, 2], Distinct())),
        (T.ANR, Instance(parse_group_spec("Z/9"), [0, 1], [0, 2], Distinct())),
        (T.LEV_CONJECTURE, Instance(Z5, [0, 1], [0, 1])),
        (T.LEV_CONJECTURE, Instance(Z5, [2], [2], Distinct())),  # empty C
        (T.THM_1_1, Instance(Z5, [0, 1], [0, 1], Distinct())),
        (T.THM_1_2, Instance(parse_group_spec("Z/2 x Z/2"), ["(0,0)"], ["(0,1)"], LinearConstraint(()))),
        (T.THM_1_3_I, Instance(parse_group_spec("Z/6"), [0, 1], [0, 1], DifferenceConstraint((1,)))),
        (T.THM_1_3_I, Instance(Z5, [0, 1], [0, 1], DifferenceConstraint(()))),
        (T.THM_1_3_II, Instance(parse_group_spec("Z/2 x Z/2"), ["(0,0)"], ["(0,1)"], DifferenceConstraint(("(1,1)",)))),
        (T.PS_BOUND, Instance(parse_group_spec("Z/2"), [0, 1], [0, 1], DifferenceConstraint((1,)))),
        (T.KAROLYI_STYLE, Instance(parse_group_spec("Z/6"), [0, 1, 2], [0, 1, 2], DifferenceConstraint((1,)))),
        (T.KAROLYI_STYLE, Instance(Z5, [0], [0, 1, 2], DifferenceConstraint((1,)))),  # min |A|,|B| <= |S|
    ],
)
def test_not_applicable(theorem, instance):
    rep = check_instance(theorem, instance)
    assert rep.verdict is Verdict.NOT_APPLICABLE
    assert rep.predicted is None and rep.detail


def test_classical_values():
    # Cauchy-Davenport caps at p
    assert predicted_bound(T.CAUCHY_DAVENPORT, Instance(Z5, [0, 1, 2, 3], [0, 1, 2])) == 5
    # Erdos-Heilbronn: min{p, 2|A| - 3}
    A = [0, 1, 2, 3]
    assert predicted_bound(T.ERDOS_HEILBRONN, Instance(parse_group_spec("Z/11"), A, A, Distinct())) == 5
    # ANR: |A| + |B| - 2 - [|A| = |B|]
    Z11 = parse_group_spec("Z/11")
    assert predicted_bound(T.ANR, Instance(Z11, A, A, Distinct())) == 5
    assert predicted_bound(T.ANR, Instance(Z11, A, [0, 1, 2], Distinct())) == 5


def test_nonpositive_prediction_is_satisfied_not_tight():
    rep = check_instance(T.THM_1_3_II, Instance(Z, [0, 1], [0, 1], DifferenceConstraint((0,))))
    assert rep.predicted == 0 and rep.verdict is Verdict.SATISFIED


def test_overreach_always_violated():
    rep = check_instance(T.TEST_OVERREACH, Instance(Z5, [0, 1], [0, 1]))
    assert rep.verdict is Verdict.VIOLATED and rep.predicted == 4


def test_linear_offset_is_weight():
    Z7 = parse_group_spec("Z/7")
    inst = Instance(Z7, [0, 1, 2], [0, 1, 2], LinearConstraint(((1, 2, 3), (2, 0, 1))))
    C = restricted_sumset(inst)
    rep = check_instance(T.THM_1_2, inst)
    assert rep.predicted == 3 + 3 - 5 - rep.min_nu
    assert rep.actual == len(C)


FIELDS_AND_GROUPS = [Z5, parse_group_spec("Z/7"), parse_group_spec("Z/8"), GF3, GF7, extension_field(2, 2)]


@pytest.mark.parametrize("amb", FIELDS_AND_GROUPS, ids=str)
@given(data=st.data())
def test_thm_1_3_ii_never_exceeds_1_3_i(amb, data):
    E = amb.elements()
    pick = lambda k: data.draw(st.lists(st.sampled_from(E), min_size=1, max_size=k, unique=True))
    inst = Instance(amb, pick(4), pick(4), DifferenceConstraint(tuple(pick(3))))
    i, ii = predicted_bound(T.THM_1_3_I, inst), predicted_bound(T.THM_1_3_II, inst)
    if i is not None and ii is not None:
        assert ii <= i


@pytest.mark.parametrize("text", ["Z/7", "Z/8", "Z/3 x Z/3", "Z/12"])
@given(data=st.data())
def test_translation_invariance(text, data):
    G = parse_group_spec(text)
    E = G.elements()
    pick = lambda k: data.draw(st.lists(st.sampled_from(E), min_size=1, max_size=k, unique=True))
    A, B, S = pick(4), pick(4), tuple(pick(2))
    t = data.draw(st.sampled_from(E))
    base = Instance(G, A, B, DifferenceConstraint(S))
    moved = Instance(G, [G.add(a, t) for a in A], [G.add(b, t) for b in B], DifferenceConstraint(S))
    C, C2 = restricted_sumset(base), restricted_sumset(moved)
    shift = G.add(t, t)
    assert sorted(G.add(c, shift) for c in C) == list(C2)
    for theorem in PUBLIC_THEOREMS:
        r1, r2 = check_instance(theorem, base), check_instance(theorem, moved)
        assert (r1.predicted, r1.actual, r1.verdict) == (r2.predicted, r2.actual, r2.verdict)


@pytest.mark.parametrize("amb", [Z5, GF7, parse_group_spec("Z/9"), RATIONALS], ids=str)
def test_proven_bounds_hold_on_random_instances(amb):
    rng = random.Random(str(amb))
    E = amb.elements(2) if not amb.is_finite else amb.elements()
    constraints = [NoConstraint(), Distinct()] + [
        DifferenceConstraint(tuple(rng.sample(E, rng.randint(1, 3)))) for _ in range(5)
    ]
    for _ in range(300):
        inst = Instance(amb, rng.sample(E, rng.randint(1, 4)), rng.sample(E, rng.randint(1, 4)), rng.choice(constraints))
        for theorem in PROVEN - COMPARISON_ONLY:
            assert check_instance(theorem, inst).verdict is not Verdict.VIOLATED
