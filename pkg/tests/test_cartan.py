import random

import pytest

from conftest import random_polynomial
from dlcalc.algebra import Generator, Polynomial, mul, poly_pow
from dlcalc.cartan import (
    apply_op,
    apply_seq,
    total_operation,
    total_operation_product,
)
from dlcalc.ops import DLOp


def gen(p, base, deg=0, seq=()):
    return Polynomial.from_generator(Generator(p, base, deg, seq))


def test_p2_square_rule():
    v2 = poly_pow(gen(2, "v", 1), 2)
    assert apply_op(2, DLOp(0, 1), v2).value.is_zero
    q1 = apply_op(2, DLOp(0, 1), gen(2, "v", 1)).value
    assert apply_op(2, DLOp(0, 2), v2).value == poly_pow(q1, 2)
    for t in (0, 1, 2):
        v = gen(2, "v", t)
        sq = poly_pow(v, 2)
        for j in range(9):
            got = apply_op(2, DLOp(0, j), sq).value
            if j % 2:
                assert got.is_zero
            else:
                inner = apply_op(2, DLOp(0, j // 2), v).value
                assert got == poly_pow(inner, 2)


def test_cartan_product_example():
    v, w = gen(3, "v"), gen(3, "w")
    got = apply_op(3, DLOp(0, 2), mul(v, w)).value
    expected = mul(poly_pow(v, 3), apply_op(3, DLOp(0, 2), w).value) + mul(
        apply_op(3, DLOp(0, 2), v).value, poly_pow(w, 3)
    )
    assert got == expected


def test_frobenius_and_unit():
    v = gen(3, "v")
    assert apply_op(3, DLOp(0, 0), v).value == poly_pow(v, 3)
    assert apply_op(3, DLOp(0, 2), Polynomial.one(3)).value.is_zero
    assert apply_op(2, DLOp(0, 4), Polynomial.one(2)).value.is_zero
    assert apply_op(3, DLOp(0, 0), Polynomial.one(3)).value == Polynomial.one(3)
    # the Bockstein companion of the Frobenius acts by zero
    assert apply_op(3, DLOp(1, 0), v).value.is_zero


def test_frobenius_is_never_a_stored_symbol():
    p1x = gen(3, "x", 0, (DLOp(0, 2),))
    out = apply_op(3, DLOp(0, 0), p1x).value
    (m, _), = out.terms.items()
    ((g, e),) = m.factors
    assert e == 3 and len(g.seq) == 1


def test_parity_mismatch_acts_by_zero():
    z = gen(3, "z", 1)
    assert apply_op(3, DLOp(0, 2), z).value.is_zero  # integer index, odd class
    v = gen(3, "v", 0)
    assert apply_op(3, DLOp(0, 1), v).value.is_zero  # half index, even class


def test_apply_seq_p_power_examples():
    v = gen(3, "v")
    lhs = apply_seq(3, (DLOp(0, 6),), poly_pow(v, 3)).value
    rhs = poly_pow(apply_op(3, DLOp(0, 2), v).value, 3)
    assert lhs == rhs
    assert apply_seq(3, (DLOp(1, 4),), poly_pow(v, 3)).value.is_zero
    f = random_polynomial(random.Random(3), 3)
    assert apply_seq(3, (), f).value == f


def test_additivity():
    rng = random.Random(41)
    for _ in range(200):
        p = rng.choice((2, 3, 5))
        f, g = random_polynomial(rng, p), random_polynomial(rng, p)
        if p == 2:
            op = DLOp(0, rng.randrange(0, 6))
        else:
            op = DLOp(rng.randrange(2), rng.randrange(0, 6))
        lhs = apply_op(p, op, f + g).value
        rhs = apply_op(p, op, f).value + apply_op(p, op, g).value
        assert lhs == rhs


def _cartan_convolution(p, op, f, g):
    """The product rule evaluated factor-by-factor, as an independent route."""
    total = Polynomial.zero(p)
    deg_f = f.homogeneous_degree()
    sign = -1 if deg_f % 2 else 1
    for k in range(op.num + 1):
        l = op.num - k
        if op.eps == 0:
            total = total + mul(
                apply_op(p, DLOp(0, k), f).value, apply_op(p, DLOp(0, l), g).value
            )
        else:
            total = total + mul(
                apply_op(p, DLOp(1, k), f).value, apply_op(p, DLOp(0, l), g).value
            )
            total = total + mul(
                apply_op(p, DLOp(0, k), f).value, apply_op(p, DLOp(1, l), g).value
            ).scale(sign)
    return total


def test_cartan_consistency():
    rng = random.Random(43)
    checked = 0
    while checked < 200:
        p = rng.choice((2, 3))
        f, g = random_polynomial(rng, p, 2), random_polynomial(rng, p, 2)
        if f.homogeneous_degree() is None or g.homogeneous_degree() is None:
            continue
        if p == 2:
            op = DLOp(0, rng.randrange(0, 5))
        else:
            op = DLOp(rng.randrange(2), rng.randrange(0, 5))
        assert apply_op(p, op, mul(f, g)).value == _cartan_convolution(p, op, f, g)
        checked += 1


def test_bockstein_cartan_sign_on_odd_classes():
    z, w = gen(3, "y", 1), gen(3, "z", 1)
    got = apply_op(3, DLOp(1, 2), mul(z, w)).value
    t1 = mul(apply_op(3, DLOp(1, 1), z).value, apply_op(3, DLOp(0, 1), w).value)
    t2 = mul(apply_op(3, DLOp(0, 1), z).value, apply_op(3, DLOp(1, 1), w).value)
    assert got == t1 - t2
    assert not got.is_zero


def test_cartan_order_covariance():
    # swapping the factors multiplies the product, hence the additive
    # operation of it, by the Koszul sign of the swap
    rng = random.Random(77)
    for _ in range(100):
        p = rng.choice((3, 5))
        f, g = random_polynomial(rng, p, 2), random_polynomial(rng, p, 2)
        df, dg = f.homogeneous_degree(), g.homogeneous_degree()
        if df is None or dg is None:
            continue
        op = DLOp(rng.randrange(2), rng.randrange(0, 5))
        sign = -1 if (df * dg) % 2 else 1
        assert _cartan_convolution(p, op, g, f) == _cartan_convolution(
            p, op, f, g
        ).scale(sign)


def test_total_operation_product_associative():
    p = 3
    u, v, w = gen(p, "u", 0), gen(p, "v", 2), gen(p, "w", 0)
    max_i = 6
    pu, pv, pw = (total_operation(p, f, max_i) for f in (u, v, w))
    left = total_operation_product(p, total_operation_product(p, pu, pv, max_i), pw, max_i)
    right = total_operation_product(p, pu, total_operation_product(p, pv, pw, max_i), max_i)
    assert left == right
    assert left == total_operation(p, mul(mul(u, v), w), max_i)


def test_total_operation_examples():
    phi1 = total_operation(3, Polynomial.one(3), 4)
    assert phi1[(0, 0)] == Polynomial.one(3)
    assert all(
        poly.is_zero for key, poly in phi1.items() if key != (0, 0)
    )
    v = gen(3, "v")
    phi_v = total_operation(3, v, 4)
    assert phi_v[(0, 0)] == poly_pow(v, 3)
    assert phi_v[(0, 1)].is_zero
    with pytest.raises(ValueError):
        total_operation(3, gen(3, "z", 1), 2)
    with pytest.raises(ValueError):
        total_operation(2, gen(2, "v", 0), 2)


def test_total_operation_multiplicative_smoke():
    p = 3
    v, w = gen(p, "v", 0), gen(p, "w", 2)
    max_i = p * p
    lhs = total_operation(p, mul(v, w), max_i)
    rhs = total_operation_product(
        p, total_operation(p, v, max_i), total_operation(p, w, max_i), max_i
    )
    assert lhs == rhs


def test_adem_free_flag():
    # applying a larger index outside a smaller one leaves the basis
    p1x = gen(3, "x", 0, (DLOp(0, 2),))
    out = apply_op(3, DLOp(0, 4), p1x)
    assert not out.adem_free
    out = apply_op(3, DLOp(0, 2), p1x)
    assert out.adem_free
    # same at p = 2: Q_3 outside Q_2 violates the basis shape
    q2 = gen(2, "x", 1, (DLOp(0, 2),))
    assert not apply_op(2, DLOp(0, 3), q2).adem_free
    assert apply_op(2, DLOp(0, 1), q2).adem_free


def test_weight_bound_truncation():
    v, w = gen(3, "x"), gen(3, "y")
    full = apply_op(3, DLOp(0, 2), mul(v, w))
    assert not full.truncated
    cut = apply_op(3, DLOp(0, 2), mul(v, w), weight_bound=5)
    assert cut.truncated
    assert cut.value.is_zero  # every Cartan term has weight 3 * 2 = 6
    kept = apply_op(3, DLOp(0, 2), mul(v, w), weight_bound=6)
    assert kept.truncated is False
    assert kept.value == full.value


def test_mixed_degree_inputs_expand_termwise():
    # additivity lets inhomogeneous inputs go through term by term
    v, z = gen(3, "v", 0), gen(3, "z", 1)
    out = apply_op(3, DLOp(0, 2), v + z).value
    assert out == apply_op(3, DLOp(0, 2), v).value + apply_op(3, DLOp(0, 2), z).value
