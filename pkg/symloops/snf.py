"""
symloops Smith normal form
Exact invariant factors of sparse integer matrices.

The matrix is read as a map Z^ncols -> Z^nrows (boundary-matrix convention):
its columns span the relation lattice and the cokernel is the abelian group
Z^nrows / (column lattice). The columns are first compressed into an echelon
basis of the lattice (unit pivots kept fully reduced), the remaining small
non-unit block is diagonalised with minimal-absolute-value pivots, and the
rank is re-derived modulo random large primes as a consistency check.
"""

import logging
from dataclasses import dataclass, field
from math import gcd

import numpy as np
import sympy

from .config import config
from .errors import SmithFormConsistencyError, SizeMismatchError

logger = logging.getLogger(__name__)


class SparseIntMatrix:
    """Integer matrix stored as {row: {col: value}} without zeros"""

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.rows = {}
        for r, row in (rows or {}).items():
            clean = {int(c): int(x) for c, x in row.items() if x}
            if clean:
                self.rows[int(r)] = clean

    @classmethod
    def from_dense(cls, dense):
        dense = [list(r) for r in dense]
        ncols = len(dense[0]) if dense else 0
        return cls(len(dense), ncols, {r: dict(enumerate(row)) for r, row in enumerate(dense)})

    @classmethod
    def from_columns(cls, nrows, columns):
        """Build from a list of sparse columns {row: value}"""
        rows = {}
        for c, col in enumerate(columns):
            for r, x in col.items():
                if x:
                    rows.setdefault(r, {})[c] = x
        return cls(nrows, len(columns), rows)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in self.rows.items():
            for c, x in row.items():
                out[r][c] = x
        return out

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for r, row in self.rows.items():
            for c, x in row.items():
                cols[c][r] = x
        return cols

    def transpose(self):
        return SparseIntMatrix.from_columns(self.ncols, [self.rows.get(r, {}) for r in range(self.nrows)])

    def compose(self, other):
        """self @ other"""
        if self.ncols != other.nrows:
            raise SizeMismatchError(f"cannot compose {self.nrows}x{self.ncols} with {other.nrows}x{other.ncols}")
        out = {}
        for r, row in self.rows.items():
            acc = {}
            for k, x in row.items():
                for c, y in other.rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + x * y
            out[r] = acc
        return SparseIntMatrix(self.nrows, other.ncols, out)

    def permuted(self, row_perm, col_perm):
        """Rows and columns relabelled by the permutations r -> row_perm[r], c -> col_perm[c]"""
        return SparseIntMatrix(
            self.nrows,
            self.ncols,
            {row_perm[r]: {col_perm[c]: x for c, x in row.items()} for r, row in self.rows.items()},
        )

    def is_zero(self):
        return not self.rows

    def nnz(self):
        return sum(len(row) for row in self.rows.values())

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __repr__(self):
        return f"SparseIntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def xgcd(a, b):
    """Return (x, y, g) with x*a + y*b = g = gcd(a, b)"""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


class EchelonLattice:
    """Echelon basis of a sublattice of Z^N (or subspace of F_p^N when modulus is set)

    rows[j] is the basis vector whose smallest index is j. Pivots equal to +-1
    are kept fully reduced: no other basis vector has an entry in their column.
    """

    def __init__(self, modulus=None):
        self.modulus = modulus
        self.rows = {}
        self.units = set()

    @property
    def rank(self):
        return len(self.rows)

    def _axpy(self, vec, row, k):
        out = dict(vec)
        m = self.modulus
        for c, x in row.items():
            y = out.get(c, 0) + k * x
            if m:
                y %= m
            if y:
                out[c] = y
            else:
                out.pop(c, None)
        return out

    def _combine(self, u, v, a, b):
        # a*u + b*v
        out = {}
        for c in set(u) | set(v):
            y = a * u.get(c, 0) + b * v.get(c, 0)
            if y:
                out[c] = y
        return out

    def _clear_units(self, vec):
        for c in [c for c in vec if c in self.units]:
            row = self.rows[c]
            vec = self._axpy(vec, row, -vec[c] * row[c])
        return vec

    def _make_unit(self, j):
        self.units.add(j)
        pivot_row = self.rows[j]
        for c, row in list(self.rows.items()):
            if c != j and j in row:
                self.rows[c] = self._axpy(row, pivot_row, -row[j] * pivot_row[j])

    def add(self, vec):
        """Insert a vector; returns True when the rank grew"""
        m = self.modulus
        vec = {c: (x % m if m else x) for c, x in vec.items()}
        vec = {c: x for c, x in vec.items() if x}
        vec = self._clear_units(vec)
        while vec:
            j = min(vec)
            row = self.rows.get(j)
            if row is None:
                if m:
                    inv = pow(vec[j], -1, m)
                    vec = {c: x * inv % m for c, x in vec.items()}
                self.rows[j] = vec
                if abs(vec[j]) == 1:
                    self._make_unit(j)
                return True
            a, b = row[j], vec[j]
            if m:
                vec = self._axpy(vec, row, -b * pow(a, -1, m))
            elif b % a == 0:
                vec = self._axpy(vec, row, -(b // a))
            else:
                x, y, g = xgcd(a, b)
                self.rows[j] = self._combine(row, vec, x, y)
                vec = self._combine(row, vec, -b // g, a // g)
                if abs(g) == 1:
                    self._make_unit(j)
        return False


def _dense_invariant_factors(a):
    """Nonzero diagonal of the Smith form of a small dense integer matrix"""
    a = [list(r) for r in a if any(r)]
    diag = []
    while a and a[0]:
        entries = [(abs(x), r, c) for r, row in enumerate(a) for c, x in enumerate(row) if x]
        if not entries:
            break
        _, r, c = min(entries)
        a[0], a[r] = a[r], a[0]
        for row in a:
            row[0], row[c] = row[c], row[0]
        while True:
            p = a[0][0]
            for r in range(1, len(a)):
                if a[r][0]:
                    q = a[r][0] // p
                    a[r] = [x - q * y for x, y in zip(a[r], a[0])]
            for c in range(1, len(a[0])):
                if a[0][c]:
                    q = a[0][c] // p
                    for row in a:
                        row[c] -= q * row[0]
            rest = [(abs(a[r][0]), r, 0) for r in range(1, len(a)) if a[r][0]]
            rest += [(abs(a[0][c]), 0, c) for c in range(1, len(a[0])) if a[0][c]]
            if rest:
                # a smaller remainder becomes the new pivot
                _, r, c = min(rest)
                if r:
                    a[0], a[r] = a[r], a[0]
                else:
                    for row in a:
                        row[0], row[c] = row[c], row[0]
                continue
            bad = next((r for r in range(1, len(a)) if any(x % p for x in a[r][1:])), None)
            if bad is None:
                break
            a[0] = [x + y for x, y in zip(a[0], a[bad])]
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:]]
        a = [row for row in a if any(row)]
    return _divisibility_chain(diag)


def _divisibility_chain(diag):
    d = sorted(x for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return d


@dataclass
class SmithForm:
    """Invariant factors (ones included) of the cokernel Z^nrows / column lattice"""

    invariant_factors: list
    rank: int
    nrows: int
    checked_primes: list = field(default_factory=list)

    @property
    def free_rank(self):
        return self.nrows - self.rank

    @property
    def torsion(self):
        return [d for d in self.invariant_factors if d > 1]


def column_lattice(matrix, modulus=None):
    lattice = EchelonLattice(modulus)
    for col in matrix.columns():
        if col:
            lattice.add(col)
    return lattice


def smith_normal_form(matrix, check_primes=None, seed=None):
    """Invariant factors and free rank of the cokernel of an integer matrix"""
    if not isinstance(matrix, SparseIntMatrix):
        matrix = SparseIntMatrix.from_dense(matrix)
    lattice = column_lattice(matrix)
    non_unit = sorted(c for c in lattice.rows if c not in lattice.units)
    block_cols = sorted({k for c in non_unit for k in lattice.rows[c]})
    block = [[lattice.rows[c].get(k, 0) for k in block_cols] for c in non_unit]
    factors = [1] * len(lattice.units) + _dense_invariant_factors(block)
    factors = _divisibility_chain(factors)
    if len(factors) != lattice.rank:
        raise SmithFormConsistencyError(
            f"diagonal has {len(factors)} entries but the lattice has rank {lattice.rank}"
        )
    logger.debug(f"echelon pass: rank {lattice.rank}, {len(lattice.units)} unit pivots, block {len(block)}x{len(block_cols)}")

    n_checks = config.SNF_CHECK_PRIMES if check_primes is None else check_primes
    rng = np.random.default_rng(config.SEED if seed is None else seed)
    floor = max(factors + [1 << 16])
    primes = []
    for _ in range(n_checks):
        p = int(sympy.nextprime(floor + int(rng.integers(1, 1 << 20))))
        modular_rank = column_lattice(matrix, modulus=p).rank
        if modular_rank != lattice.rank:
            raise SmithFormConsistencyError(
                f"rank {lattice.rank} over Z but {modular_rank} modulo {p}, "
                f"although {p} divides no invariant factor"
            )
        primes.append(p)
    return SmithForm(factors, lattice.rank, matrix.nrows, primes)
