"""
symloops K2 oracles
Independent brute-force checks: tame symbols on K_2(Q), Milnor K_2 of small
finite fields by Smith normal form, and Schur multipliers H_2(G, Z) of small
matrix groups from the normalized bar complex.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np
import sympy

from .arith import FiniteField, field_of_order
from .chevalley import GroupMatrix, RootA, elem, identity
from .config import config
from .errors import (
    OrderBoundExceededError,
    PreconditionError,
    RingMismatchError,
    SizeMismatchError,
    SmithFormConsistencyError,
    UnsupportedRingError,
)
from .snf import SparseIntMatrix, smith_normal_form

logger = logging.getLogger(__name__)

FINITE_FIELD_NOTE = (
    "finite-field testbed: oracle validation only, the isomorphism pi_1 = H_2 "
    "is stated for infinite fields"
)
MAX_MILNOR_FIELD = 16


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass
class AbelianGroupPresentation:
    """Generators, relation rows and the resulting invariant factors (all >= 2)"""

    generators: list
    relations: SparseIntMatrix
    invariant_factors: list = field(default_factory=list)
    free_rank: int = 0
    metadata: dict = field(default_factory=dict)

    @classmethod
    def present(cls, generators, relations, metadata=None, check_primes=None, seed=None):
        """Compute the invariant factors of Z^generators / relations"""
        if relations.ncols != len(generators):
            raise SizeMismatchError(
                f"relation rows have {relations.ncols} columns for {len(generators)} generators"
            )
        form = smith_normal_form(relations.transpose(), check_primes=check_primes, seed=seed)
        return cls(
            list(generators),
            relations,
            form.torsion,
            form.free_rank,
            dict(metadata or {}),
        )

    def is_trivial(self):
        return not self.invariant_factors and self.free_rank == 0

    def order(self):
        """Order of the group, None when it is infinite"""
        if self.free_rank:
            return None
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result


# ---------------------------------------------------------------------------
# Tame symbols
# ---------------------------------------------------------------------------

def _valuation(x, p):
    num = sympy.multiplicity(p, abs(x.numerator)) if x.numerator else 0
    return num - sympy.multiplicity(p, x.denominator)


def tame_symbol(a, b, p):
    """(-1)^(v(a)v(b)) a^v(b) b^-v(a) reduced mod p, as an integer in 1..p-1"""
    p = int(p)
    if not sympy.isprime(p):
        raise PreconditionError(f"tame symbol needs a prime, got {p}")
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise PreconditionError(f"tame symbol entries must be nonzero, got {{{a}, {b}}}")
    va, vb = _valuation(a, p), _valuation(b, p)
    value = Fraction((-1) ** (va * vb)) * a ** vb * b ** (-va)
    # value is a p-adic unit by construction
    return value.numerator * pow(value.denominator, -1, p) % p


# ---------------------------------------------------------------------------
# Milnor K_2 of finite fields
# ---------------------------------------------------------------------------

def milnor_k2_finite_field(q, check_primes=None):
    """Presentation of K_2^M(F_q): symbols {u, v}, bilinear, {u, 1 - u} = 0"""
    q = int(q)
    if q > MAX_MILNOR_FIELD:
        raise UnsupportedRingError(f"milnor_k2_finite_field supports q <= {MAX_MILNOR_FIELD}, got {q}")
    k = field_of_order(q)
    units = k.units()
    index = {u: i for i, u in enumerate(units)}
    m = len(units)

    def gen(u, v):
        return index[u] * m + index[v]

    rows = set()

    def relate(coeffs):
        acc = {}
        for g, c in coeffs:
            acc[g] = acc.get(g, 0) + c
        acc = tuple(sorted((g, c) for g, c in acc.items() if c))
        if acc:
            rows.add(acc)

    for u1, u2, v in product(units, repeat=3):
        relate([(gen(u1 * u2, v), 1), (gen(u1, v), -1), (gen(u2, v), -1)])
        relate([(gen(v, u1 * u2), 1), (gen(v, u1), -1), (gen(v, u2), -1)])
    for u in units:
        if u != k.one:
            relate([(gen(u, k.one - u), 1)])

    ordered = sorted(rows)
    relations = SparseIntMatrix(len(ordered), m * m, {r: dict(row) for r, row in enumerate(ordered)})
    generators = [f"{{{k.format(u)},{k.format(v)}}}" for u in units for v in units]
    logger.info(f"🚀 K2 presentation of F_{q}: {len(generators)} generators, {len(ordered)} relations")
    return AbelianGroupPresentation.present(
        generators,
        relations,
        metadata={"q": q, "ring": k.descriptor, "note": FINITE_FIELD_NOTE},
        check_primes=check_primes,
    )


# ---------------------------------------------------------------------------
# Finite matrix groups
# ---------------------------------------------------------------------------

@dataclass
class FiniteGroup:
    """A finite group as its element list (identity first) and multiplication table"""

    elements: list
    table: np.ndarray

    @property
    def order(self):
        return len(self.elements)


def enumerate_group(gens, bound=None):
    """Breadth-first closure of gens under multiplication, identity first"""
    bound = config.ORDER_BOUND if bound is None else int(bound)
    if not gens:
        raise PreconditionError("need at least one generator")
    first = gens[0]
    if not isinstance(first.ring, FiniteField):
        raise UnsupportedRingError(f"group enumeration needs a finite field, not {first.ring.descriptor}")
    for g in gens:
        if g.n != first.n:
            raise SizeMismatchError(f"generators of sizes {first.n} and {g.n}")
        if g.ring != first.ring:
            raise RingMismatchError(f"generators over {first.ring.descriptor} and {g.ring.descriptor}")

    elements = [identity(first.n, first.ring)]
    index = {elements[0]: 0}
    frontier = 0
    while frontier < len(elements):
        g = elements[frontier]
        frontier += 1
        for s in gens:
            h = g * s
            if h not in index:
                index[h] = len(elements)
                elements.append(h)
                if len(elements) > bound:
                    raise OrderBoundExceededError(bound, len(elements))

    order = len(elements)
    table = np.empty((order, order), dtype=np.int64)
    for a, g in enumerate(elements):
        for b, h in enumerate(elements):
            table[a, b] = index[g * h]
    logger.info(f"✅ enumerated a group of order {order} over {first.ring.descriptor}")
    return FiniteGroup(elements, table)


def _tuple_index(parts, base):
    # parts are arrays of nonidentity element indices 1..base
    idx = np.zeros_like(parts[0])
    for part in parts:
        idx = idx * base + (part - 1)
    return idx


def bar_boundary(group, degree):
    """Boundary C_degree -> C_{degree-1} of the normalized bar complex, trivial Z coefficients

    Basis of C_k: k-tuples of nonidentity elements, numbered in base |G|-1.
    d(g_1..g_k) = (g_2..g_k) + sum_i (-1)^i (..g_i g_{i+1}..) + (-1)^k (g_1..g_{k-1})
    """
    if degree < 1:
        raise PreconditionError(f"bar boundary degree must be >= 1, got {degree}")
    base = group.order - 1
    n_src = base ** degree
    n_dst = base ** (degree - 1)
    if degree == 1 or base == 0:
        return SparseIntMatrix(n_dst, n_src)

    grid = np.indices((base,) * degree).reshape(degree, -1) + 1
    faces = []
    # (face tuple columns, sign, valid mask)
    faces.append((list(grid[1:]), 1, np.ones(n_src, dtype=bool)))
    for i in range(degree - 1):
        merged = group.table[grid[i], grid[i + 1]]
        parts = list(grid[:i]) + [merged] + list(grid[i + 2:])
        faces.append((parts, (-1) ** (i + 1), merged != 0))
    faces.append((list(grid[:-1]), (-1) ** degree, np.ones(n_src, dtype=bool)))

    columns = [dict() for _ in range(n_src)]
    for parts, sign, valid in faces:
        if parts:
            # dropping identity entries is the normalization; a merged identity kills the term
            target = _tuple_index([np.where(valid, p, 1) for p in parts], base)
        else:
            target = np.zeros(n_src, dtype=np.int64)
        for c in np.nonzero(valid)[0]:
            col = columns[c]
            t = int(target[c])
            col[t] = col.get(t, 0) + sign
    return SparseIntMatrix.from_columns(n_dst, columns)


def _require_complex(d_low, d_high):
    if not d_low.compose(d_high).is_zero():
        raise SmithFormConsistencyError("bar complex boundaries do not compose to zero")


def schur_multiplier(gens, order_bound=None, check_primes=None):
    """H_2(G, Z) for the finite group generated by gens"""
    group = enumerate_group(gens, order_bound)
    d2 = bar_boundary(group, 2)
    d3 = bar_boundary(group, 3)
    _require_complex(d2, d3)
    logger.debug(f"bar complex: C_2 has {d2.ncols} cells, C_3 has {d3.ncols}")
    rank2 = smith_normal_form(d2, check_primes=check_primes).rank
    form3 = smith_normal_form(d3, check_primes=check_primes)
    free_rank = d2.ncols - rank2 - form3.rank
    labels = [f"[{a}|{b}]" for a in range(1, group.order) for b in range(1, group.order)]
    result = AbelianGroupPresentation(
        labels,
        d3.transpose(),
        form3.torsion,
        free_rank,
        {
            "order": group.order,
            "ring": gens[0].ring.descriptor,
            "chain_ranks": [d2.nrows, d2.ncols, d3.ncols],
            "note": FINITE_FIELD_NOTE,
        },
    )
    logger.info(f"✅ H_2 of a group of order {group.order}: {result.invariant_factors or 'trivial'}")
    return result


def group_h1(gens, order_bound=None, check_primes=None):
    """H_1(G, Z), the abelianisation, from the same bar complex"""
    group = enumerate_group(gens, order_bound)
    d2 = bar_boundary(group, 2)
    form = smith_normal_form(d2, check_primes=check_primes)
    labels = [f"[{a}]" for a in range(1, group.order)]
    return AbelianGroupPresentation(
        labels,
        d2.transpose(),
        form.torsion,
        form.free_rank,
        {"order": group.order, "ring": gens[0].ring.descriptor, "note": FINITE_FIELD_NOTE},
    )


# ---------------------------------------------------------------------------
# Test groups
# ---------------------------------------------------------------------------

def cyclic_group_generator(n):
    """[diag(a, a^-1)] over F_p with a of multiplicative order n, p = 1 mod n"""
    n = int(n)
    if n < 1:
        raise PreconditionError(f"cyclic group order must be positive, got {n}")
    if n == 1:
        k = FiniteField(2)
        return [identity(2, k)]
    p = n + 1
    while not sympy.isprime(p):
        p += n
    k = FiniteField(p)
    a = pow(int(sympy.primitive_root(p)), (p - 1) // n, p)
    return [GroupMatrix(k, [[a, 0], [0, pow(a, -1, p)]])]


def klein_four_generators():
    k = FiniteField(3)
    return [
        GroupMatrix(k, [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
        GroupMatrix(k, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
    ]


def sl2_generators(p):
    """e_12(1), e_21(1): generators of SL_2(F_p)"""
    k = FiniteField(p)
    return [elem(RootA(1, 2), 1, 2, k), elem(RootA(2, 1), 1, 2, k)]
