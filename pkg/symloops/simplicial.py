"""
symloops simplicial resolution
The simplicial ring k[Delta^n] = k[X_0..X_n]/(sum X_i - 1) in the coordinates
X_1..X_n (X_0 = 1 - sum X_i is eliminated), its face and degeneracy maps, the
simplices of Sing(SL_m)(k) and Moore-complex checks of loops and homotopies.

Moore complex: N_n = intersection of ker d_i for i >= 1, boundary d_0.
Level 1 is identified with k[T] through T = X_1, so d_1 is T = 0 and d_0 is T = 1.
"""

import logging
from dataclasses import dataclass, field

from .arith import PolynomialRing, RationalField
from .chevalley import identity
from .errors import PreconditionError, RingMismatchError, SizeMismatchError
from .loops import PATH_VARIABLE, PathMatrix, path_ring

logger = logging.getLogger(__name__)


def coordinate_names(level, with_x0=False):
    start = 0 if with_x0 else 1
    return tuple(f"X{k}" for k in range(start, level + 1))


def simplex_ring(base, level):
    """k[Delta^level] in canonical coordinates"""
    if level < 0:
        raise SizeMismatchError(f"simplex level must be >= 0, got {level}")
    return PolynomialRing(base, coordinate_names(level))


def _x0(ring):
    result = ring.one
    for g in ring.gens():
        result = result - g
    return result


def _level_of(ring):
    if not isinstance(ring, PolynomialRing) or ring.variables != coordinate_names(ring.nvars):
        raise RingMismatchError(f"{ring.descriptor} is not a simplex coordinate ring X1..Xn")
    return ring.nvars


def _face_images(i, level, base):
    if not 0 <= i <= level:
        raise SizeMismatchError(f"face index {i} out of range 0..{level}")
    if level < 1:
        raise SizeMismatchError("level-0 simplices have no faces")
    target = simplex_ring(base, level - 1)
    images = {}
    for j in range(1, level + 1):
        if j < i:
            images[f"X{j}"] = target.gen(f"X{j}")
        elif j == i:
            images[f"X{j}"] = target.zero
        elif j - 1 == 0:
            images[f"X{j}"] = _x0(target)
        else:
            images[f"X{j}"] = target.gen(f"X{j - 1}")
    return images, target


def _degeneracy_images(i, level, base):
    if not 0 <= i <= level:
        raise SizeMismatchError(f"degeneracy index {i} out of range 0..{level}")
    target = simplex_ring(base, level + 1)
    images = {}
    for j in range(1, level + 1):
        if j < i:
            images[f"X{j}"] = target.gen(f"X{j}")
        elif j == i:
            images[f"X{j}"] = target.gen(f"X{j}") + target.gen(f"X{j + 1}")
        else:
            images[f"X{j}"] = target.gen(f"X{j + 1}")
    return images, target


class SimplexPoly:
    """An element of k[Delta^level] in the coordinates X_1..X_level"""

    __slots__ = ("level", "poly")

    def __init__(self, level, poly):
        if _level_of(poly.ring) != level:
            raise SizeMismatchError(f"{poly.ring.descriptor} is not the level-{level} coordinate ring")
        self.level = level
        self.poly = poly

    @property
    def base(self):
        return self.poly.ring.base

    @classmethod
    def from_coordinates(cls, poly, level=None):
        """Eliminate X_0 from a polynomial in X_0..X_n"""
        ring = poly.ring
        level = len(ring.variables) - 1 if level is None else level
        if ring.variables != coordinate_names(level, with_x0=True):
            raise RingMismatchError(f"expected variables X0..X{level}, got {ring.variables}")
        target = simplex_ring(ring.base, level)
        mapping = {v: target.gen(v) for v in coordinate_names(level)}
        mapping["X0"] = _x0(target)
        return cls(level, poly.substitute(mapping, target))

    def coordinates(self):
        """The same polynomial inside k[X_0..X_n]"""
        target = PolynomialRing(self.base, coordinate_names(self.level, with_x0=True))
        return self.poly.substitute({v: target.gen(v) for v in self.poly.ring.variables}, target)

    def face(self, i):
        images, target = _face_images(i, self.level, self.base)
        return SimplexPoly(self.level - 1, self.poly.substitute(images, target))

    def degeneracy(self, i):
        images, target = _degeneracy_images(i, self.level, self.base)
        return SimplexPoly(self.level + 1, self.poly.substitute(images, target))

    def _other(self, other):
        if isinstance(other, SimplexPoly):
            if other.level != self.level:
                raise SizeMismatchError(f"cannot combine levels {self.level} and {other.level}")
            return other.poly
        return other

    def __add__(self, other):
        return SimplexPoly(self.level, self.poly + self._other(other))

    def __sub__(self, other):
        return SimplexPoly(self.level, self.poly - self._other(other))

    def __mul__(self, other):
        return SimplexPoly(self.level, self.poly * self._other(other))

    def __neg__(self):
        return SimplexPoly(self.level, -self.poly)

    def __eq__(self, other):
        if not isinstance(other, SimplexPoly):
            return NotImplemented
        return self.level == other.level and self.poly == other.poly

    def __hash__(self):
        return hash((self.level, self.poly))

    def __repr__(self):
        return f"SimplexPoly(level={self.level}, {self.poly})"


def face(i, f):
    return f.face(i)


def degeneracy(i, f):
    return f.degeneracy(i)


class SimplexMatrix:
    """A level-n simplex of Sing(SL_m)(k): a matrix over k[Delta^n]"""

    __slots__ = ("level", "matrix")

    def __init__(self, level, matrix):
        if _level_of(matrix.ring) != level:
            raise SizeMismatchError(f"{matrix.ring.descriptor} is not the level-{level} coordinate ring")
        self.level = level
        self.matrix = matrix

    @property
    def base(self):
        return self.matrix.ring.base

    @property
    def n(self):
        return self.matrix.n

    def _apply(self, images, target, level):
        return SimplexMatrix(level, self.matrix.map_entries(lambda x: x.substitute(images, target), target))

    def face(self, i):
        images, target = _face_images(i, self.level, self.base)
        return self._apply(images, target, self.level - 1)

    def degeneracy(self, i):
        images, target = _degeneracy_images(i, self.level, self.base)
        return self._apply(images, target, self.level + 1)

    def faces(self):
        return [self.face(i) for i in range(self.level + 1)]

    def is_identity(self):
        return self.matrix.is_identity()

    def __mul__(self, other):
        if other.level != self.level:
            raise SizeMismatchError(f"cannot multiply simplices of levels {self.level} and {other.level}")
        return SimplexMatrix(self.level, self.matrix * other.matrix)

    def inverse(self):
        return SimplexMatrix(self.level, self.matrix.inverse())

    def __eq__(self, other):
        if not isinstance(other, SimplexMatrix):
            return NotImplemented
        return self.level == other.level and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.level, self.matrix))

    def __repr__(self):
        return f"SimplexMatrix(level={self.level}, {self.matrix!r})"

    @classmethod
    def from_path(cls, path):
        """Read a path over k[T] as a 1-simplex, T = X_1"""
        target = simplex_ring(path.base, 1)
        images = {PATH_VARIABLE: target.gen("X1")}
        return cls(1, path.matrix.map_entries(lambda x: x.substitute(images, target), target))

    def to_path(self):
        if self.level != 1:
            raise SizeMismatchError(f"only 1-simplices are paths, got level {self.level}")
        target = path_ring(self.base)
        images = {"X1": target.gen()}
        return PathMatrix(self.matrix.map_entries(lambda x: x.substitute(images, target), target))


def _as_simplex(x):
    if isinstance(x, PathMatrix):
        return SimplexMatrix.from_path(x)
    if isinstance(x, SimplexMatrix):
        return x
    raise TypeError(f"expected a PathMatrix or SimplexMatrix, got {type(x).__name__}")


def degenerate_simplex(g, level):
    """The constant level-n simplex at a matrix over k (iterated s_0 of a vertex)"""
    base = g.ring
    if not isinstance(base, PolynomialRing):
        R = simplex_ring(base, level)
        return SimplexMatrix(level, g.map_entries(R.constant, R))
    raise RingMismatchError(f"degenerate_simplex needs a matrix over a field, not {base.descriptor}")


def moore_is_loop(g):
    """A 1-simplex with d_0 g = d_1 g = I"""
    g = _as_simplex(g)
    if g.level != 1:
        raise SizeMismatchError(f"loops are 1-simplices, got level {g.level}")
    return all(f.is_identity() for f in g.faces())


def moore_boundary(sigma):
    return sigma.face(0)


@dataclass
class HomotopyCertificate:
    """Faces of a candidate witness sigma and the verdict"""

    certified: bool
    faces: list = field(default_factory=list)
    in_moore_complex: bool = False
    boundary_matches: bool = False
    expected_boundary: SimplexMatrix = None

    def __bool__(self):
        return self.certified


def verify_homotopy_witness(sigma, loop, other):
    """sigma in N_2 with d_0 sigma = other * loop^-1 certifies loop ~ other"""
    loop, other = _as_simplex(loop), _as_simplex(other)
    for name, g in (("from", loop), ("to", other)):
        if not moore_is_loop(g):
            raise PreconditionError(f"the '{name}' simplex is not a loop: a face differs from I")
    if sigma.level != 2:
        raise PreconditionError(f"a homotopy witness is a 2-simplex, got level {sigma.level}")
    if sigma.n != loop.n or sigma.n != other.n:
        raise SizeMismatchError("witness and loops have different matrix sizes")
    faces = sigma.faces()
    in_moore = faces[1].is_identity() and faces[2].is_identity()
    expected = other * loop.inverse()
    matches = faces[0] == expected
    certified = in_moore and matches
    if certified and not moore_is_loop(faces[0]):
        # the boundary of a Moore 2-simplex is always a loop
        raise PreconditionError("d_0 of an accepted witness is not a loop")
    logger.debug(f"witness: in N_2 {in_moore}, boundary matches {matches}")
    return HomotopyCertificate(certified, faces, in_moore, matches, expected)


def sample_simplex_poly(rng, level, base=None, degree=2, bound=5):
    """A random element of k[Delta^level]"""
    base = base or RationalField()
    R = simplex_ring(base, level)
    return SimplexPoly(level, R.random_element(rng, degree, bound))


def constant_identity(n, base, level):
    return SimplexMatrix(level, identity(n, simplex_ring(base, level)))
