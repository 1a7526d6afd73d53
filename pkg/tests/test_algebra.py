import random

import pytest

from conftest import ideal_member_oracle, random_monomial, random_polynomial
from dlcalc.algebra import (
    Generator,
    Monomial,
    MonomialIdeal,
    Polynomial,
    ideal_member,
    mul,
    poly_pow,
    poly_to_json,
    poly_to_text,
)
from dlcalc.ops import DLOp


def gen(p, base, deg=0, seq=()):
    return Polynomial.from_generator(Generator(p, base, deg, seq))


def test_odd_square_is_zero():
    z = gen(3, "z", 1)
    assert mul(z, z).is_zero


def test_anticommutativity():
    z, w = gen(3, "z", 1), gen(3, "w", 1)
    assert (mul(z, w) + mul(w, z)).is_zero
    assert not mul(z, w).is_zero


def test_even_classes_commute():
    v, w = gen(3, "v", 2), gen(3, "w", 4)
    assert (mul(v, w) - mul(w, v)).is_zero


def test_p2_no_signs_no_exterior():
    v = gen(2, "v", 1)
    assert not mul(v, v).is_zero
    assert poly_pow(v, 5).terms


def test_freshman_dream():
    v, w = gen(3, "v", 0), gen(3, "w", 2)
    assert poly_pow(v + w, 3) == poly_pow(v, 3) + poly_pow(w, 3)


def test_pow_basics():
    z = gen(5, "z", 1)
    assert poly_pow(z, 2).is_zero
    a = gen(3, "a", 2)
    assert poly_pow(a, 0) == Polynomial.one(3)


def test_prime_context_mismatch():
    with pytest.raises(ValueError):
        mul(gen(3, "x"), gen(5, "x"))


def test_degree_weight_additive_under_mul():
    rng = random.Random(23)
    checked = 0
    while checked < 500:
        p = rng.choice((2, 3, 5))
        m1, m2 = random_monomial(rng, p), random_monomial(rng, p)
        a = Polynomial.from_monomial(p, m1)
        b = Polynomial.from_monomial(p, m2)
        prod = mul(a, b)
        if prod.is_zero:
            continue
        (m, _), = prod.terms.items()
        assert m.degree == m1.degree + m2.degree
        assert m.weight == m1.weight + m2.weight
        checked += 1


def test_mul_associative_and_unital():
    rng = random.Random(5)
    for _ in range(100):
        p = rng.choice((2, 3))
        a, b, c = (random_polynomial(rng, p, 3) for _ in range(3))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, Polynomial.one(p)) == a
        assert mul(Polynomial.one(p), a) == a


def test_graded_commutativity_sign():
    rng = random.Random(19)
    for _ in range(200):
        p = rng.choice((3, 5))
        m1, m2 = random_monomial(rng, p), random_monomial(rng, p)
        a = Polynomial.from_monomial(p, m1)
        b = Polynomial.from_monomial(p, m2)
        sign = -1 if (m1.degree * m2.degree) % 2 else 1
        assert mul(a, b) == mul(b, a).scale(sign)


def test_canonicalization_idempotent():
    rng = random.Random(31)
    for _ in range(100):
        a = random_polynomial(rng, 3)
        assert Polynomial(3, dict(a.terms)) == a
        for m in a.terms:
            assert Monomial.from_pairs(m.factors) == m


def test_ideal_membership_examples():
    p = 3
    x = Generator(p, "x")
    p1x = Generator(p, "x", 0, (DLOp(0, 2),))
    theta = Generator(p, "x", 0, (DLOp(1, 1), DLOp(1, 2)))
    ideal = MonomialIdeal(p, (
        Monomial(((x, 3),)),
        Monomial(((p1x, 3),)),
    ))
    assert ideal_member(Monomial(((x, 3), (p1x, 1))), ideal)
    assert not ideal_member(Monomial(((theta, 7),)), ideal)
    assert not ideal_member(Monomial.unit(), ideal)
    assert not ideal_member(Monomial(((p1x, 2), (x, 1))), ideal)


def test_ideal_membership_against_oracle():
    rng = random.Random(101)
    for _ in range(200):
        p = rng.choice((3, 5))
        gens = tuple(random_monomial(rng, p, 2) for _ in range(3))
        ideal = MonomialIdeal(p, gens)
        m = random_monomial(rng, p, 3)
        assert ideal_member(m, ideal) == ideal_member_oracle(m, gens)


def test_text_serialization():
    p = 3
    p1x = Generator(p, "x", 0, (DLOp(0, 2),))
    bp1x = Generator(p, "x", 0, (DLOp(1, 2),))
    poly = Polynomial(p, {Monomial.from_pairs([(p1x, 2), (bp1x, 1)]): 2})
    assert poly_to_text(poly) == "2*P_1[x]^2*bP_1[x]"
    assert poly_to_text(Polynomial.zero(p)) == "0"
    assert poly_to_text(Polynomial.one(p)) == "1"


def test_json_serialization():
    p = 3
    p1x = Generator(p, "x", 0, (DLOp(0, 2),))
    bp1x = Generator(p, "x", 0, (DLOp(1, 2),))
    poly = Polynomial(p, {Monomial.from_pairs([(p1x, 2), (bp1x, 1)]): 2})
    assert poly_to_json(poly) == {
        "terms": [{"coeff": 2, "factors": [["P_1[x]", 2], ["bP_1[x]", 1]]}]
    }


def test_zero_coefficients_dropped():
    p = 3
    x = Monomial(((Generator(p, "x"), 1),))
    assert Polynomial(p, {x: 3}).is_zero
    assert Polynomial(p, {x: 4}) == Polynomial(p, {x: 1})
