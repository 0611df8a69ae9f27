"""Semifield carriers: axioms, sign grading, and text forms."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tylab.core_algebra import VertexId
from tylab.semifields import (
    CoeffPoly,
    PosRational,
    SignClass,
    TropMonomial,
    classify_sign,
    semifield_ops,
)

V = [VertexId(1, 1), VertexId(2, 1), VertexId(2, 2)]


def test_trop_monomial_basics():
    a = TropMonomial({V[0]: 2, V[1]: -1})
    b = TropMonomial({V[1]: 1})
    assert (a * b).exps == {V[0]: 2}
    assert a.inv().exps == {V[0]: -2, V[1]: 1}
    assert (a**3).exps == {V[0]: 6, V[1]: -3}
    assert a.trop_add(b).exps == {V[1]: -1}  # min(2,0)=0 drops V[0]
    assert TropMonomial().is_one()


def test_trop_add_is_min_convention():
    # y1 (+) y1^-1 = y1^-1, and m (+) 1 kills positive exponents
    y = TropMonomial.variable(V[0])
    assert y.trop_add(y.inv()) == y.inv()
    assert y.trop_add(TropMonomial()) == TropMonomial()
    assert y.inv().trop_add(TropMonomial()) == y.inv()


def test_classify_sign():
    assert classify_sign(TropMonomial()) is SignClass.One
    assert classify_sign(TropMonomial({V[0]: 2})) is SignClass.Positive
    assert classify_sign(TropMonomial({V[0]: -2, V[1]: -1})) is SignClass.Negative
    assert classify_sign(TropMonomial({V[0]: 1, V[1]: -1})) is SignClass.Mixed


def test_text_form_and_vector():
    m = TropMonomial({V[2]: -1, V[0]: 1})
    assert m.text_form() == "y[1,1] * y[2,2]^-1"
    assert m.exponent_vector(V) == [1, 0, -1]
    assert TropMonomial().text_form() == "1"


def test_exponent_overflow_guard():
    with pytest.raises(OverflowError):
        TropMonomial({V[0]: 2**63})


def test_pos_rational():
    x = PosRational(3, 4)
    assert x == Fraction(3, 4)
    with pytest.raises(ValueError):
        PosRational(-1, 2)
    with pytest.raises(ValueError):
        PosRational(0)


def test_coeff_poly_equality_by_cross_multiplication():
    # (1+y)/(1) equals ((1+y)^2)/(1+y) without cancellation
    one = CoeffPoly.one(1)
    y = CoeffPoly.variable(1, 0)
    a = one + y
    b = (one + y) * (one + y) * (one + y).inv()
    assert a == b
    assert a != a * y


def test_coeff_poly_rejects_nonpositive_coefficients():
    with pytest.raises(ValueError):
        CoeffPoly(1, {(0,): -1})
    with pytest.raises(ValueError):
        CoeffPoly(1, {})


def test_coeff_poly_evaluate():
    y = CoeffPoly.variable(1, 0)
    expr = (CoeffPoly.one(1) + y).inv() * y  # y/(1+y)
    assert expr.evaluate([Fraction(1, 2)]) == Fraction(1, 3)


def _ops_elements(tag, rng):
    if tag == "tropical":
        ops = semifield_ops("tropical")
        els = [
            TropMonomial({v: rng.randint(-3, 3) for v in V}) for _ in range(3)
        ]
    elif tag == "positive_rational":
        pt = {v: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for v in V}
        ops = semifield_ops("positive_rational", point=pt)
        els = [
            Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(3)
        ]
    elif tag == "coeff_poly":
        ops = semifield_ops("coeff_poly", vertices=V)
        els = []
        for _ in range(3):
            num = {
                tuple(rng.randint(0, 2) for _ in V): rng.randint(1, 3)
                for _ in range(2)
            }
            den = {tuple(rng.randint(0, 2) for _ in V): rng.randint(1, 3)}
            els.append(CoeffPoly(len(V), num, den))
    else:
        ops = semifield_ops("trivial")
        els = [1, 1, 1]
    return ops, els


@pytest.mark.parametrize(
    "tag", ["trivial", "tropical", "positive_rational", "coeff_poly"]
)
def test_semifield_axioms_randomized(tag):
    rng = random.Random(42)
    for _ in range(60):
        ops, (a, b, c) = _ops_elements(tag, rng)
        mul, oplus, inv = ops.mul, ops.oplus, ops.inv
        assert mul(a, ops.one) == a
        assert mul(a, inv(a)) == ops.one
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, b) == mul(b, a)
        assert oplus(a, b) == oplus(b, a)
        assert oplus(oplus(a, b), c) == oplus(a, oplus(b, c))
        # distributivity of * over (+)
        assert mul(a, oplus(b, c)) == oplus(mul(a, b), mul(a, c))


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
    st.lists(st.integers(-5, 5), min_size=3, max_size=3),
)
def test_tropical_axioms_property(ea, eb, ec):
    a = TropMonomial(dict(zip(V, ea)))
    b = TropMonomial(dict(zip(V, eb)))
    c = TropMonomial(dict(zip(V, ec)))
    assert a.trop_add(b) == b.trop_add(a)
    assert a.trop_add(b.trop_add(c)) == a.trop_add(b).trop_add(c)
    assert (a * b.trop_add(c)) == (a * b).trop_add(a * c)
    assert a.trop_add(a) == a  # idempotent addition


def test_power_helper():
    ops = semifield_ops("tropical")
    y = TropMonomial.variable(V[0])
    assert ops.power(y, 3) == y**3
    assert ops.power(y, -2) == y**-2
    assert ops.power(y, 0) == ops.one
