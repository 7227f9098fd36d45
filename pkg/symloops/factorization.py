"""
symloops elementary factorization
Write a matrix of SL_n over a field or over k[T] as a product of elementary
matrices, and translate between paths y_T with y(0) = I and Steinberg words.
"""

import logging

from .arith import FiniteField, Poly, PolynomialRing, RationalField, poly_divmod
from .chevalley import RootA, elem, identity
from .errors import DeterminantError, PreconditionError, UnsupportedRingError
from .loops import PathMatrix, path_ring
from .steinberg import Letter, SteinbergWord

logger = logging.getLogger(__name__)


def _check_ring(ring):
    if isinstance(ring, (RationalField, FiniteField)):
        return
    if isinstance(ring, PolynomialRing) and ring.is_univariate:
        return
    raise UnsupportedRingError(
        f"elementary factorization needs a field or k[T], not {ring.descriptor}"
    )


def _degree(x):
    return x.degree() if isinstance(x, Poly) else 0


def _divmod(ring, a, b):
    if isinstance(ring, PolynomialRing):
        return poly_divmod(a, b)
    return a * ring.inv(b), ring.zero


class _RowReducer:
    """Row operations on a working copy, recorded as (root, a) for row_i += a * row_j"""

    def __init__(self, m):
        self.ring = m.ring
        self.n = m.n
        self.rows = [list(row) for row in m.entries]
        self.ops = []

    def add(self, i, j, a):
        if a == 0:
            return
        self.rows[i] = [x + a * y for x, y in zip(self.rows[i], self.rows[j])]
        self.ops.append((RootA(i + 1, j + 1), a))

    def swap_in(self, c, p):
        # (row_c, row_p) <- (row_p, -row_c)
        one = self.ring.one
        self.add(c, p, one)
        self.add(p, c, -one)
        self.add(c, p, one)

    def clear_column(self, c):
        ring = self.ring
        while True:
            live = [r for r in range(c, self.n) if self.rows[r][c] != 0]
            if not live:
                raise DeterminantError(f"column {c + 1} vanishes below the diagonal: matrix is singular")
            if live == [c]:
                return
            # minimal-degree pivot, lowest row on ties
            p = min(live, key=lambda r: (_degree(self.rows[r][c]), r))
            if p != c:
                self.swap_in(c, p)
            pivot = self.rows[c][c]
            for r in range(c + 1, self.n):
                a = self.rows[r][c]
                if a != 0:
                    q, _ = _divmod(ring, a, pivot)
                    self.add(r, c, -q)

    def clear_above(self):
        ring = self.ring
        for c in range(self.n):
            d_inv = ring.inv(self.rows[c][c])
            for r in range(c):
                a = self.rows[r][c]
                if a != 0:
                    self.add(r, c, -(a * d_inv))

    def diagonal(self):
        return [self.rows[i][i] for i in range(self.n)]


def torus_factors(diagonal, ring):
    """Elementary factors of diag(d_1, ..., d_n) (product 1)

    diag(d) = prod_i h_{i,i+1}(d_1 ... d_i), and each h(s) = w(s) w(-1) contributes
    x(s) x_-(-s^-1) x(s) x(-1) x_-(1) x(-1).
    """
    factors = []
    running = ring.one
    one = ring.one
    for i in range(1, len(diagonal)):
        running = running * ring.coerce(diagonal[i - 1])
        if running == one:
            continue
        alpha = RootA(i, i + 1)
        neg = alpha.negative()
        s_inv = ring.inv(running)
        factors += [
            (alpha, running), (neg, -s_inv), (alpha, running),
            (alpha, -one), (neg, one), (alpha, -one),
        ]
    return factors


def multiply_factors(factors, n, ring):
    result = identity(n, ring)
    for root, a in factors:
        result = result * elem(root, a, n, ring)
    return result


def factor_elementary(m):
    """Elementary factors [(root, param), ...] whose product is m"""
    ring = m.ring
    _check_ring(ring)
    d = m.det()
    if d != ring.one:
        raise DeterminantError(f"determinant is {ring.format(d)}, expected 1")
    reducer = _RowReducer(m)
    for c in range(m.n):
        reducer.clear_column(c)
    reducer.clear_above()
    # E_k ... E_1 m = D, so m = E_1^-1 ... E_k^-1 D
    factors = [(root, -a) for root, a in reducer.ops]
    factors += torus_factors(reducer.diagonal(), ring)
    logger.debug(f"factored an SL_{m.n} matrix over {ring.descriptor} into {len(factors)} elementaries")
    return factors


def word_to_path(w):
    """y_T = prod_i x_{alpha_i}(T u_i); a loop when w lies in K_2"""
    if not isinstance(w.ring, (RationalField, FiniteField)):
        raise UnsupportedRingError(f"word_to_path needs a word over a field, not {w.ring.descriptor}")
    R = path_ring(w.ring)
    T = R.gen()
    result = identity(w.n, R)
    for letter in w.letters:
        result = result * elem(letter.root, T * letter.param, w.n, R)
    return PathMatrix(result)


def path_to_steinberg(y):
    """Factor y = prod x_{alpha_i}(f_i(T)) and return prod x~_{alpha_i}(f_i(1))"""
    if not y.at(0).is_identity():
        raise PreconditionError("path_to_steinberg needs a path with y(0) = I")
    var = y.ring.variables[0]
    letters = [Letter(root, f.evaluate({var: 1})) for root, f in factor_elementary(y.matrix)]
    return SteinbergWord(y.n, y.base, letters)
