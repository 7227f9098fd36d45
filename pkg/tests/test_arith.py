"""Exact arithmetic: rationals, finite fields, polynomial rings"""

from fractions import Fraction

import numpy as np
import pytest

from symloops.arith import (
    FiniteField,
    PolynomialRing,
    RationalField,
    field_of_order,
    parse_ring,
    poly_divmod,
    poly_eval,
)
from symloops.errors import (
    DivisionByZeroError,
    InputFormatError,
    NotInvertibleError,
    RingMismatchError,
    UnsupportedRingError,
)

Q = RationalField()
FIELDS = [Q, FiniteField(7), FiniteField(3, 2)]


@pytest.fixture
def QT():
    return PolynomialRing(Q, ("T",))


def test_divmod_one_step(QT):
    T = QT.gen()
    q, r = poly_divmod(T * T + 1, T)
    assert q == T
    assert r == QT.one


def test_divmod_by_unit(QT):
    T = QT.gen()
    f = 3 * T ** 4 - T + Fraction(1, 2)
    q, r = poly_divmod(f, QT.one)
    assert q == f
    assert r.is_zero()


def test_divmod_over_f5():
    R = PolynomialRing(FiniteField(5), ("T",))
    T = R.gen()
    f = 2 * T ** 3 + T
    g = 3 * T + 1
    q, r = poly_divmod(f, g)
    assert q * g + r == f
    assert r.degree() < g.degree()


def test_leading_coefficient(QT):
    T = QT.gen()
    assert (Fraction(-2, 3) * T ** 3 + 5 * T + 1).leading_coefficient() == Fraction(-2, 3)
    assert QT.zero.leading_coefficient() == 0
    R = PolynomialRing(FiniteField(7), ("T",))
    assert (3 * R.gen() + 4).leading_coefficient() == 3


def test_equality_with_non_representable_rationals():
    F7 = FiniteField(7)
    assert F7.one != Fraction(1, 7)
    assert not (F7.parse("3") == Fraction(3, 14))
    R = PolynomialRing(F7, ("T",))
    assert R.one != Fraction(1, 7)
    assert F7.parse("4") == Fraction(1, 2)


@pytest.mark.parametrize("seed", range(5))
def test_divmod_round_trip(seed):
    rng = np.random.default_rng(seed)
    for base in (Q, FiniteField(7)):
        R = PolynomialRing(base, ("T",))
        f = R.random_element(rng, degree=5)
        g = R.random_element(rng, degree=3)
        if g.is_zero():
            continue
        q, r = poly_divmod(f, g)
        assert q * g + r == f
        assert r.is_zero() or r.degree() < g.degree()


def test_divmod_errors(QT):
    T = QT.gen()
    with pytest.raises(DivisionByZeroError):
        poly_divmod(T, QT.zero)
    other = PolynomialRing(FiniteField(5), ("T",))
    with pytest.raises(RingMismatchError):
        poly_divmod(T, other.gen())


def test_poly_eval(QT):
    T = QT.gen()
    f = T * (1 - T)
    assert poly_eval(f, {"T": 1}) == 0
    assert poly_eval(f, {"T": Fraction(1, 2)}) == Fraction(1, 4)


def test_partial_eval_keeps_remaining_variables():
    R = PolynomialRing(Q, ("X1", "X2"))
    X1, X2 = R.gens()
    g = poly_eval(X1 * X2 + X2, {"X1": 2})
    assert g.ring.variables == ("X2",)
    assert g == 3 * g.ring.gen("X2")


def test_eval_is_a_homomorphism():
    rng = np.random.default_rng(11)
    R = PolynomialRing(Q, ("S", "T"))
    for _ in range(50):
        f, g = R.random_element(rng), R.random_element(rng)
        point = {"S": Q.random_element(rng), "T": Q.random_element(rng)}
        assert poly_eval(f * g, point) == poly_eval(f, point) * poly_eval(g, point)
        assert poly_eval(f + g, point) == poly_eval(f, point) + poly_eval(g, point)


@pytest.mark.parametrize("k", FIELDS, ids=lambda k: k.descriptor)
def test_field_axioms(k):
    rng = np.random.default_rng(3)
    for _ in range(40):
        a, b, c = (k.random_element(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a - a == k.zero
        if a != 0:
            assert a * k.inv(a) == k.one


@pytest.mark.parametrize("k", [FiniteField(2), FiniteField(2, 3), FiniteField(3, 2), FiniteField(13)])
def test_characteristic(k):
    for x in k.elements():
        acc = k.zero
        for _ in range(k.p):
            acc = acc + x
        assert acc == k.zero


def test_f9_generator_is_primitive():
    k = FiniteField(3, 2)
    a = k.generator
    assert a * a == a + 1
    assert a ** 4 == -k.one
    assert a ** 8 == k.one


def test_units_are_invertible():
    for q in (4, 8, 9, 16):
        k = field_of_order(q)
        assert len(k.units()) == q - 1
        for u in k.units():
            assert u * u.inverse() == k.one


def test_zero_is_not_invertible():
    with pytest.raises(NotInvertibleError):
        Q.inv(0)
    with pytest.raises(NotInvertibleError):
        FiniteField(5).require_unit(10)


def test_rationals_are_normalized():
    x = Q.parse("-3/6")
    assert x == Fraction(-1, 2)
    assert Q.format(x) == "-1/2"
    assert Q.format(Q.parse("4/2")) == "2"


def test_finite_field_codecs():
    k = FiniteField(2, 2)
    x = k.parse("[1,1]")
    assert k.format(x) == "[1,1]"
    assert k.to_json(x) == [1, 1]
    assert FiniteField(7).parse("3/2") == FiniteField(7).from_int(5)


def test_parse_polynomial(QT):
    T = QT.gen()
    assert QT.parse("1 - T^2") == 1 - T * T
    assert QT.parse("T/2") == T * Fraction(1, 2)
    with pytest.raises(InputFormatError):
        QT.parse("1 + Y")


def test_polynomial_json_layout(QT):
    T = QT.gen()
    assert QT.to_json(T * T + 1) == [[[2], "1"], [[0], "1"]]
    assert QT.from_json([[[2], "1"], [[0], "1"]]) == T * T + 1


def test_substitute():
    R = PolynomialRing(Q, ("X1", "X2"))
    S = PolynomialRing(Q, ("T",))
    X1, X2 = R.gens()
    T = S.gen()
    f = X1 * X2 - X2
    assert f.substitute({"X1": T, "X2": 1 - T}, S) == -(T - 1) * (T - 1)
    with pytest.raises(InputFormatError):
        f.substitute({"X1": T}, S)


@pytest.mark.parametrize(
    "descriptor, expected",
    [
        ("Q", "Q"),
        ("Fq:7^1", "Fq:7^1"),
        ("Fq:9", "Fq:3^2"),
        ("poly:Q:T", "poly:Q:T"),
        ("poly:Fq:2^2:X1,X2", "poly:Fq:2^2:X1,X2"),
    ],
)
def test_parse_ring(descriptor, expected):
    assert parse_ring(descriptor).descriptor == expected


def test_parse_ring_rejects():
    with pytest.raises(InputFormatError):
        parse_ring("Z")
    with pytest.raises(UnsupportedRingError):
        parse_ring("Fq:6")
    with pytest.raises(UnsupportedRingError):
        parse_ring("Fq:2^5")
    with pytest.raises(InputFormatError):
        parse_ring("poly:Q:1x")


def test_mixed_fields_do_not_combine():
    with pytest.raises(RingMismatchError):
        FiniteField(5).one + FiniteField(7).one
    assert FiniteField(5).one != FiniteField(7).one
