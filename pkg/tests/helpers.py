"""Seeded generators shared by the unit and acceptance tests."""

from __future__ import annotations

import random

from sumset_lab.fields import FieldSpec
from sumset_lab.poly import MultiPoly


def random_poly(rng: random.Random, field: FieldSpec, nvars: int, max_degree: int, density: float = 0.4) -> MultiPoly:
    """Random polynomial of total degree <= max_degree over a finite field."""
    terms = {}
    exps = [()]
    for _ in range(nvars):
        exps = [e + (k,) for e in exps for k in range(max_degree + 1)]
    for e in exps:
        if sum(e) <= max_degree and rng.random() < density:
            terms[e] = field.from_int(rng.randrange(1, field.p))
    return MultiPoly(field, nvars, terms)


def random_subset(rng: random.Random, elements: list, max_size: int) -> list:
    k = rng.randint(1, min(max_size, len(elements)))
    return rng.sample(elements, k)


def valid_lemma21_instance(rng: random.Random, field: FieldSpec, max_set: int = 4, max_degree: int = 3):
    """(A, B, lines, P) satisfying both hypotheses of the line-counting lemma.

    All lines share one slope λ and pass through every value a + λb reached by a
    pair with P(a, b) != 0, so each such pair lies on exactly one line.
    """
    els = field.elements()
    while True:
        A = random_subset(rng, els, max_set)
        B = random_subset(rng, els, max_set)
        P = random_poly(rng, field, 2, rng.randint(0, max_degree))
        if P.is_zero():
            continue
        lam = field.from_int(rng.randrange(1, field.p))
        mus = sorted({field.add(a, field.mul(lam, b)) for a in A for b in B if not field.is_zero(P(a, b))})
        if mus:
            return A, B, [(lam, mu) for mu in mus], P
