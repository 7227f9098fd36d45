"""
symloops symbol loops
Paths and loops in SL_n(k[T]) built from root-group paths X_T(u) = x(Tu),
the Weyl paths W_T, the torus paths H_T and the symbol loops C_T(a, b).
"""

import logging
from dataclasses import dataclass

from .arith import PolynomialRing, RationalField, ring_of
from .chevalley import GroupMatrix, RootA, elem, identity
from .errors import RingMismatchError, SizeMismatchError

logger = logging.getLogger(__name__)

PATH_VARIABLE = "T"


def path_ring(base):
    """k[T] over a base field"""
    return PolynomialRing(base, (PATH_VARIABLE,))


class PathMatrix:
    """A matrix over k[T], read as the path t -> M(t) in SL_n(k)"""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        ring = matrix.ring
        if not getattr(ring, "is_univariate", False):
            raise RingMismatchError(f"a path lives over k[T], not over {ring.descriptor}")
        self.matrix = matrix

    @property
    def ring(self):
        return self.matrix.ring

    @property
    def base(self):
        return self.matrix.ring.base

    @property
    def n(self):
        return self.matrix.n

    def at(self, t):
        """Evaluate the path at T = t"""
        return self.matrix.evaluate({self.ring.variables[0]: t})

    def endpoints(self):
        return self.at(0), self.at(1)

    @property
    def is_path(self):
        return self.at(0).is_identity()

    @property
    def is_loop(self):
        start, end = self.endpoints()
        return start.is_identity() and end.is_identity()

    def is_constant_identity(self):
        return self.matrix.is_identity()

    def __mul__(self, other):
        return PathMatrix(self.matrix * other.matrix)

    def inverse(self):
        return PathMatrix(self.matrix.inverse())

    def __eq__(self, other):
        if not isinstance(other, PathMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"PathMatrix({self.matrix!r})"


def constant_path(n, base):
    return PathMatrix(identity(n, path_ring(base)))


def _base(ring, *values):
    if ring is not None:
        return ring
    for v in values:
        r = ring_of(v)
        if r is not None:
            return r
    return RationalField()


def x_loop(root, u, n=2, ring=None):
    """X^alpha_T(u) = x_alpha(Tu)"""
    base = _base(ring, u)
    R = path_ring(base)
    return PathMatrix(elem(root, R.gen() * base.coerce(u), n, R))


BLOCK_ROOT = RootA(1, 2)


def _embed(block, root, n):
    """Place a 2 x 2 path matrix on rows and columns {i, j} of the n x n identity"""
    root.check(n)
    R = block.ring
    rows = [[R.one if r == c else R.zero for c in range(n)] for r in range(n)]
    p, q = root.i - 1, root.j - 1
    rows[p][p], rows[p][q] = block[0, 0], block[0, 1]
    rows[q][p], rows[q][q] = block[1, 0], block[1, 1]
    return PathMatrix(GroupMatrix._trusted(R, rows))


# W, H and C only touch the {i, j} block: build them in SL_2(k[T]) and embed

def _w_block(u, base):
    x = x_loop(BLOCK_ROOT, u, 2, base).matrix
    return x * x_loop(BLOCK_ROOT.negative(), -base.inv(u), 2, base).matrix * x


def _h_block(u, base):
    # W_T(1)^-1 = W_T(-1)
    return _w_block(u, base) * _w_block(-base.one, base)


def w_loop(root, u, n=2, ring=None):
    """W^alpha_T(u) = X^alpha_T(u) X^-alpha_T(-u^-1) X^alpha_T(u)"""
    base = _base(ring, u)
    u = base.require_unit(u, "W_T parameter")
    return _embed(_w_block(u, base), root, n)


def h_loop(root, u, n=2, ring=None):
    """H^alpha_T(u) = W^alpha_T(u) W^alpha_T(1)^-1, a path from I to h_alpha(u)"""
    base = _base(ring, u)
    u = base.require_unit(u, "H_T parameter")
    return _embed(_h_block(u, base), root, n)


def c_loop(root, a, b, n=2, ring=None):
    """C^alpha_T(a, b) = H^alpha_T(a) H^alpha_T(b) H^alpha_T(ab)^-1"""
    base = _base(ring, a, b)
    a = base.require_unit(a, "C_T first parameter")
    b = base.require_unit(b, "C_T second parameter")
    # H_T(ab)^-1 = W_T(1) W_T(-ab)
    h_ab_inv = _w_block(base.one, base) * _w_block(-(a * b), base)
    return _embed(_h_block(a, base) * _h_block(b, base) * h_ab_inv, root, n)


def sl2_closed_form(u, v, ring=None):
    """The printed SL_2 symbol loop, x_alpha = e_12:

    C_T(u, v) = I + T(T^2 - 1) (1 - u)(1 - v) / (u^2 v) * D_T(u, v)
    """
    base = _base(ring, u, v)
    u = base.require_unit(u, "closed-form parameter u")
    v = base.require_unit(v, "closed-form parameter v")
    R = path_ring(base)
    T = R.gen()
    one = base.one
    s = T * T
    t2m1 = s - 1
    t2m2 = s - 2
    d11 = u * (one - u) * T * t2m1 * t2m2
    d12 = -(v * u * u) * (t2m1 * t2m1 * (one - u) + u) * t2m2
    d21 = (one - u) * t2m1 * t2m1 - 1
    d22 = -(u * v) * (one - u) * T * t2m1 * t2m2
    scale = T * t2m1 * ((one - u) * (one - v) * base.inv(u * u * v))
    rows = [[1 + scale * d11, scale * d12], [scale * d21, 1 + scale * d22]]
    return PathMatrix(GroupMatrix(R, rows, check=False))


def torus_path(diagonal, ring=None):
    """Contract diag(d_1, ..., d_n) to I along the simple-root torus paths

    diag(d) = h_12(d_1) h_23(d_1 d_2) ... h_{n-1,n}(d_1 ... d_{n-1})
    """
    base = _base(ring, *diagonal)
    n = len(diagonal)
    path = constant_path(n, base)
    running = base.one
    for i in range(1, n):
        running = running * base.require_unit(diagonal[i - 1], "diagonal entry")
        path = path * h_loop(RootA(i, i + 1), running, n, base)
    return path


def path_product(factors, n=None, base=None):
    """Multiply a list of paths; the empty product needs n and base"""
    if not factors:
        if n is None or base is None:
            raise SizeMismatchError("an empty product needs an explicit size and ring")
        return constant_path(n, base)
    result = factors[0]
    for f in factors[1:]:
        result = result * f
    return result


@dataclass
class PathIdentityCheck:
    """Outcome of comparing two path products entry by entry"""

    holds: bool
    entry: tuple = None
    lhs_entry: object = None
    rhs_entry: object = None

    def __bool__(self):
        return self.holds

    def difference(self):
        if self.holds:
            return None
        return self.lhs_entry - self.rhs_entry


def verify_path_identity(lhs, rhs, n=None, base=None):
    """Check whether two products of paths agree as polynomial matrices"""
    left = path_product(list(lhs), n, base) if not isinstance(lhs, PathMatrix) else lhs
    right = path_product(list(rhs), n or left.n, base or left.base) if not isinstance(rhs, PathMatrix) else rhs
    if left.n != right.n:
        raise SizeMismatchError(f"cannot compare SL_{left.n} and SL_{right.n} paths")
    if left.ring != right.ring:
        raise RingMismatchError(f"cannot compare paths over {left.ring.descriptor} and {right.ring.descriptor}")
    for i, (row_l, row_r) in enumerate(zip(left.matrix.entries, right.matrix.entries)):
        for j, (a, b) in enumerate(zip(row_l, row_r)):
            if a != b:
                logger.debug(f"path identity fails at entry ({i + 1},{j + 1})")
                return PathIdentityCheck(False, (i + 1, j + 1), a, b)
    return PathIdentityCheck(True)
