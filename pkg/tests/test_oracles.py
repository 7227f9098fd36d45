"""K_2 oracles: tame symbols, Milnor K_2 of finite fields, Schur multipliers"""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from symloops.arith import FiniteField, RationalField
from symloops.chevalley import GroupMatrix, identity
from symloops.errors import (
    OrderBoundExceededError,
    PreconditionError,
    SizeMismatchError,
    UnsupportedRingError,
)
from symloops.oracles import (
    FINITE_FIELD_NOTE,
    AbelianGroupPresentation,
    bar_boundary,
    cyclic_group_generator,
    enumerate_group,
    group_h1,
    klein_four_generators,
    milnor_k2_finite_field,
    schur_multiplier,
    sl2_generators,
    tame_symbol,
)
from symloops.serialization import decode_generators
from symloops.snf import SparseIntMatrix
from tests.test_data import get_expected_result, get_test_data


def test_tame_symbol_2_3():
    assert tame_symbol(2, 3, 3) == get_expected_result("tame_2_3_at_3")


def test_tame_symbol_of_units_is_one():
    assert tame_symbol(Fraction(2, 5), 7, 3) == 1
    assert tame_symbol(-4, Fraction(5, 11), 13) == 1


def test_tame_symbol_sign():
    # v(a) = v(b) = 1: (-1) * 3 * 3^-1
    assert tame_symbol(3, 3, 3) == 2
    assert tame_symbol(-1, -1, 5) == 1


def test_steinberg_relation():
    for u in range(2, 51):
        for p in sympy.primerange(2, 98):
            assert tame_symbol(u, 1 - u, p) == 1, (u, p)


def test_bilinear_and_antisymmetric():
    rng = np.random.default_rng(17)

    def rational():
        num = 0
        while num == 0:
            num = int(rng.integers(-30, 31))
        return Fraction(num, int(rng.integers(1, 31)))

    for _ in range(100):
        a, b, c = rational(), rational(), rational()
        for p in (2, 3, 5, 7):
            assert tame_symbol(a * b, c, p) == tame_symbol(a, c, p) * tame_symbol(b, c, p) % p
            assert tame_symbol(a, b, p) * tame_symbol(b, a, p) % p == 1


def test_tame_symbol_preconditions():
    with pytest.raises(PreconditionError):
        tame_symbol(2, 3, 4)
    with pytest.raises(PreconditionError):
        tame_symbol(0, 3, 3)


@pytest.mark.parametrize("q", get_expected_result("milnor_fields"))
def test_milnor_k2_vanishes(q):
    presentation = milnor_k2_finite_field(q)
    assert presentation.is_trivial()
    assert presentation.order() == 1
    assert presentation.metadata["note"] == FINITE_FIELD_NOTE


def test_milnor_k2_of_f4_has_nine_generators():
    assert len(milnor_k2_finite_field(4).generators) == 9


def test_milnor_k2_rejects():
    with pytest.raises(UnsupportedRingError):
        milnor_k2_finite_field(6)
    with pytest.raises(UnsupportedRingError):
        milnor_k2_finite_field(17)


def test_presentation():
    relations = SparseIntMatrix.from_dense([[2, 0, 0], [0, 3, 0]])
    p = AbelianGroupPresentation.present(["a", "b", "c"], relations)
    assert p.invariant_factors == [6]
    assert p.free_rank == 1
    assert p.order() is None
    with pytest.raises(SizeMismatchError):
        AbelianGroupPresentation.present(["a"], relations)


def test_enumerate_group():
    group = enumerate_group(sl2_generators(3))
    assert group.order == 24
    assert group.elements[0].is_identity()
    assert (group.table[0] == np.arange(24)).all()


def test_order_bound():
    with pytest.raises(OrderBoundExceededError) as excinfo:
        enumerate_group(sl2_generators(5), bound=50)
    assert excinfo.value.partial_count > 50
    assert excinfo.value.bound == 50


def test_enumeration_needs_a_finite_field():
    with pytest.raises(UnsupportedRingError):
        enumerate_group([identity(2, RationalField())])
    with pytest.raises(PreconditionError):
        enumerate_group([])


def test_bar_complex_is_a_complex():
    group = enumerate_group(klein_four_generators())
    d2, d3 = bar_boundary(group, 2), bar_boundary(group, 3)
    assert (d2.nrows, d2.ncols, d3.ncols) == (3, 9, 27)
    assert d2.compose(d3).is_zero()


@pytest.mark.parametrize("n", range(1, 9))
def test_cyclic_groups(n):
    gens = cyclic_group_generator(n)
    h2 = schur_multiplier(gens)
    assert h2.metadata["order"] == n
    assert h2.is_trivial()
    h1 = group_h1(gens)
    assert h1.invariant_factors == ([n] if n > 1 else [])
    assert h1.free_rank == 0


def test_klein_four_group():
    h2 = schur_multiplier(klein_four_generators())
    assert h2.invariant_factors == get_expected_result("klein_h2")
    assert h2.free_rank == 0
    assert h2.metadata["order"] == 4


def test_klein_four_from_document():
    gens = decode_generators(get_test_data("klein_generators"))
    assert schur_multiplier(gens).invariant_factors == [2]


def test_sl2_f3():
    h2 = schur_multiplier(sl2_generators(3))
    assert h2.metadata["order"] == 24
    assert h2.is_trivial()


def test_cyclic_generator_shape():
    (g,) = cyclic_group_generator(6)
    assert isinstance(g.ring, FiniteField)
    assert (g.ring.p - 1) % 6 == 0
    assert g != GroupMatrix(g.ring, [[1, 0], [0, 1]])
