"""Chevalley core: root elements, Weyl and torus elements of SL_n"""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from symloops.arith import FiniteField, PolynomialRing, RationalField
from symloops.chevalley import (
    GroupMatrix,
    RootA,
    all_roots,
    chevalley_commutator,
    commutator,
    elem,
    eval_matrix,
    h_elem,
    identity,
    w_elem,
)
from symloops.errors import (
    DeterminantError,
    NotInvertibleError,
    RootError,
    SizeMismatchError,
)

Q = RationalField()
F11 = FiniteField(11)
ALPHA = RootA(1, 2)


def diag(*values):
    n = len(values)
    return GroupMatrix(Q, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])


def test_elem_zero_is_identity():
    assert elem(ALPHA, 0, 2).is_identity()


def test_elem_product_entry():
    m = elem(RootA(1, 2), 2, 3) * elem(RootA(2, 3), 5, 3)
    assert m[0, 2] == 10


def test_elem_is_additive():
    rng = np.random.default_rng(7)
    for root in all_roots(3):
        a, b = Q.random_element(rng), Q.random_element(rng)
        assert elem(root, a, 3) * elem(root, b, 3) == elem(root, a + b, 3)


def test_w_elem_sl2():
    assert w_elem(ALPHA, 1, 2) == GroupMatrix(Q, [[0, 1], [-1, 0]])


def test_w_elem_block_embedding():
    u = Fraction(3, 2)
    expected = GroupMatrix(Q, [[0, u, 0], [-1 / u, 0, 0], [0, 0, 1]])
    assert w_elem(ALPHA, u, 3) == expected


@pytest.mark.parametrize("root", all_roots(3), ids=str)
def test_w_inverse_is_w_of_negative(root):
    u = Fraction(-5, 7)
    assert (w_elem(root, u, 3) * w_elem(root, -u, 3)).is_identity()
    assert w_elem(root, u, 3).inverse() == w_elem(root, -u, 3)


def test_h_elem_is_diagonal():
    assert h_elem(ALPHA, 4, 3) == diag(4, Fraction(1, 4), 1)
    assert h_elem(RootA(3, 1), 2, 3) == diag(Fraction(1, 2), 1, 2)
    assert h_elem(ALPHA, 1, 3).is_identity()


def test_h_elem_is_multiplicative():
    rng = np.random.default_rng(5)
    for _ in range(20):
        u, v = F11.random_unit(rng), F11.random_unit(rng)
        assert h_elem(ALPHA, u, 3, F11) * h_elem(ALPHA, v, 3, F11) == h_elem(ALPHA, u * v, 3, F11)


def test_non_unit_parameters_are_rejected():
    with pytest.raises(NotInvertibleError):
        w_elem(ALPHA, 0, 2)
    with pytest.raises(NotInvertibleError):
        h_elem(ALPHA, 11, 2, F11)


def test_eval_matrix_endpoints():
    R = PolynomialRing(Q, ("T",))
    T = R.gen()
    m = elem(ALPHA, T * 3, 2, R)
    assert eval_matrix(m, 0).is_identity()
    assert eval_matrix(m, 1) == elem(ALPHA, 3, 2)


def test_eval_commutes_with_products():
    rng = np.random.default_rng(2)
    R = PolynomialRing(FiniteField(7), ("T",))
    roots = all_roots(3)
    for _ in range(10):
        a = elem(roots[int(rng.integers(0, 6))], R.random_element(rng), 3, R)
        b = elem(roots[int(rng.integers(0, 6))], R.random_element(rng), 3, R)
        t = int(rng.integers(0, 7))
        assert eval_matrix(a * b, t) == eval_matrix(a, t) * eval_matrix(b, t)


def test_commutator_relations_sl4():
    a, b = Fraction(2), Fraction(-3, 5)
    for alpha, beta in product(all_roots(4), repeat=2):
        if alpha.negative() == beta:
            continue
        lhs = commutator(elem(alpha, a, 4), elem(beta, b, 4))
        assert lhs == chevalley_commutator(alpha, a, beta, b, 4), (alpha, beta)


def test_commutator_relation_cases():
    assert chevalley_commutator(RootA(1, 2), 2, RootA(2, 3), 3, 3) == elem(RootA(1, 3), 6, 3)
    assert chevalley_commutator(RootA(2, 3), 2, RootA(1, 2), 3, 3) == elem(RootA(1, 3), -6, 3)
    assert chevalley_commutator(RootA(1, 2), 2, RootA(1, 3), 3, 3).is_identity()
    with pytest.raises(RootError):
        chevalley_commutator(RootA(1, 2), 1, RootA(2, 1), 1, 2)


def test_inverse_over_polynomials():
    R = PolynomialRing(Q, ("T",))
    T = R.gen()
    m = GroupMatrix(R, [[1 + T, T], [-T, 1 - T]])
    assert (m * m.inverse()).is_identity()


def test_construction_checks():
    with pytest.raises(DeterminantError):
        GroupMatrix(Q, [[1, 2], [2, 4]])
    with pytest.raises(SizeMismatchError):
        GroupMatrix(Q, [[1, 0]])
    with pytest.raises(SizeMismatchError):
        identity(2) * identity(3)


def test_roots():
    with pytest.raises(RootError):
        RootA(2, 2)
    with pytest.raises(RootError):
        RootA(1, 4).check(3)
    assert RootA.parse("2,3").negative() == RootA(3, 2)
    assert len(all_roots(4)) == 12
