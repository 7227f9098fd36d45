"""
symloops Chevalley core
Matrices of SL_n (type A_{n-1}) over the exact rings, with root-group,
Weyl and torus generators.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from .arith import RationalField, ring_of
from .errors import DeterminantError, RootError, SizeMismatchError, RingMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class RootA:
    """The type-A root (i, j), 1-based, i != j"""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise RootError(f"({self.i},{self.j}) is not a root: i = j")
        if self.i < 1 or self.j < 1:
            raise RootError(f"root indices are 1-based, got ({self.i},{self.j})")

    def negative(self):
        return RootA(self.j, self.i)

    def check(self, n):
        if max(self.i, self.j) > n:
            raise RootError(f"root ({self.i},{self.j}) does not exist in SL_{n}")
        return self

    @classmethod
    def parse(cls, text):
        i, j = (int(k) for k in str(text).split(","))
        return cls(i, j)

    def __str__(self):
        return f"{self.i},{self.j}"


def all_roots(n):
    return [RootA(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


class GroupMatrix:
    """An n x n determinant-one matrix over a declared ring"""

    __slots__ = ("ring", "entries")

    def __init__(self, ring, entries, check=True):
        rows = tuple(tuple(ring.coerce(x) for x in row) for row in entries)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise SizeMismatchError("a group matrix must be square and non-empty")
        self.ring = ring
        self.entries = rows
        if check:
            d = self.det()
            if d != ring.one:
                raise DeterminantError(f"determinant is {ring.format(d)}, expected 1")

    @classmethod
    def _trusted(cls, ring, rows):
        # Entries already coerced and det known to be 1 (products, evaluations)
        m = object.__new__(cls)
        m.ring = ring
        m.entries = tuple(tuple(row) for row in rows)
        return m

    @property
    def n(self):
        return len(self.entries)

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    def _same(self, other):
        if not isinstance(other, GroupMatrix):
            raise TypeError(f"expected a GroupMatrix, got {type(other).__name__}")
        if other.n != self.n:
            raise SizeMismatchError(f"cannot combine SL_{self.n} and SL_{other.n} matrices")
        if other.ring != self.ring:
            raise RingMismatchError(
                f"cannot combine matrices over {self.ring.descriptor} and {other.ring.descriptor}"
            )

    def __mul__(self, other):
        self._same(other)
        zero = self.ring.zero
        cols = list(zip(*other.entries))
        rows = []
        for row in self.entries:
            out = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
            rows.append(out)
        return GroupMatrix._trusted(self.ring, rows)

    def __eq__(self, other):
        if not isinstance(other, GroupMatrix):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring.descriptor, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"GroupMatrix({self.ring.descriptor}, [{body}])"

    def is_identity(self):
        one, zero = self.ring.one, self.ring.zero
        return all(
            x == (one if i == j else zero)
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
        )

    def map_entries(self, fn, ring):
        """Apply a ring homomorphism entrywise; the determinant stays 1"""
        return GroupMatrix._trusted(ring, [[ring.coerce(fn(x)) for x in row] for row in self.entries])

    def det(self):
        return _determinant(self.ring, self.entries)

    def inverse(self):
        """Adjugate of a determinant-one matrix: exact over any commutative ring"""
        n = self.n
        if n == 1:
            return self
        rows = []
        for i in range(n):
            out = []
            for j in range(n):
                # (i, j) entry of adj(M) is the (j, i) cofactor
                minor = [
                    [self.entries[r][c] for c in range(n) if c != i]
                    for r in range(n) if r != j
                ]
                cof = _determinant(self.ring, minor)
                out.append(cof if (i + j) % 2 == 0 else -cof)
            rows.append(out)
        return GroupMatrix._trusted(self.ring, rows)

    def evaluate(self, assignment):
        """Entrywise substitution of base-field values for polynomial variables"""
        result = [[x.evaluate(assignment) for x in row] for row in self.entries]
        target = ring_of(result[0][0])
        return GroupMatrix._trusted(target, [[target.coerce(x) for x in row] for row in result])


def _determinant(ring, rows):
    n = len(rows)
    if n == 0:
        return ring.one
    if ring.is_field:
        return _field_determinant(ring, rows)
    rows = [list(r) for r in rows]

    @lru_cache(maxsize=None)
    def expand(depth, used):
        # Laplace expansion along row `depth`, skipping the columns in the bitmask `used`
        if depth == n:
            return ring.one
        total = ring.zero
        sign = 1
        for c in range(n):
            if used & (1 << c):
                continue
            a = rows[depth][c]
            if a:
                term = a * expand(depth + 1, used | (1 << c))
                total = total + term if sign > 0 else total - term
            sign = -sign
        return total

    return expand(0, 0)


def _field_determinant(ring, rows):
    a = [list(r) for r in rows]
    n = len(a)
    det = ring.one
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return ring.zero
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det = det * a[c][c]
        inv = ring.inv(a[c][c])
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def identity(n, ring=None):
    ring = ring or RationalField()
    return GroupMatrix._trusted(
        ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    )


def _resolve_ring(ring, *values):
    if ring is not None:
        return ring
    for v in values:
        r = ring_of(v)
        if r is not None:
            return r
    return RationalField()


def elem(root, a, n, ring=None):
    """x_alpha(a): the identity with a at position (i, j)"""
    ring = _resolve_ring(ring, a)
    root.check(n)
    rows = [[ring.one if r == c else ring.zero for c in range(n)] for r in range(n)]
    rows[root.i - 1][root.j - 1] = ring.coerce(a)
    return GroupMatrix._trusted(ring, rows)


def w_elem(root, u, n, ring=None):
    """w_alpha(u) = x_alpha(u) x_{-alpha}(-u^-1) x_alpha(u)"""
    ring = _resolve_ring(ring, u)
    u = ring.require_unit(u, "w_alpha parameter")
    x = elem(root, u, n, ring)
    return x * elem(root.negative(), -ring.inv(u), n, ring) * x


def h_elem(root, u, n, ring=None):
    """h_alpha(u) = w_alpha(u) w_alpha(1)^-1 = diag(.., u at i, .., u^-1 at j, ..)"""
    ring = _resolve_ring(ring, u)
    u = ring.require_unit(u, "h_alpha parameter")
    # w_alpha(1)^-1 = w_alpha(-1)
    return w_elem(root, u, n, ring) * w_elem(root, -ring.one, n, ring)


def eval_matrix(m, t):
    """Evaluate a matrix over k[T] at T = t"""
    if not getattr(m.ring, "is_univariate", False):
        raise RingMismatchError(f"eval_matrix needs a matrix over k[T], not {m.ring.descriptor}")
    return m.evaluate({m.ring.variables[0]: t})


def commutator(g, h):
    return g * h * g.inverse() * h.inverse()


def chevalley_commutator(alpha, a, beta, b, n, ring=None):
    """Right-hand side of the type-A commutator relation [x_alpha(a), x_beta(b)]"""
    ring = _resolve_ring(ring, a, b)
    if alpha.negative() == beta:
        raise RootError(f"no commutator relation for opposite roots ({alpha}) and ({beta})")
    i, j, k, l = alpha.i, alpha.j, beta.i, beta.j
    if j == k and i != l:
        return elem(RootA(i, l), ring.coerce(a) * ring.coerce(b), n, ring)
    if i == l and j != k:
        return elem(RootA(k, j), -(ring.coerce(a) * ring.coerce(b)), n, ring)
    return identity(n, ring)
