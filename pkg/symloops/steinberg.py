"""
symloops Steinberg words
Formal words in the generators x~_alpha(u) of St(A_{n-1}, R), reduced only by
free cancellation and additivity. Commutator relations are explicit rewrite
steps (commute_letters) and are never applied automatically.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .arith import RationalField, ring_of
from .chevalley import RootA, elem, identity
from .errors import (
    NotInSymbolFormError,
    RingMismatchError,
    RootError,
    SizeMismatchError,
)
from .loops import path_ring
from .oracles import tame_symbol

logger = logging.getLogger(__name__)

RANK_ONE_NOTE = "rank-1: presentation not modeled"


@dataclass(frozen=True)
class Letter:
    """x~_root(param) raised to sign"""

    root: RootA
    param: object
    sign: int = 1

    def normalized(self):
        # x~(u)^-1 = x~(-u)
        if self.sign == 1:
            return self
        return Letter(self.root, -self.param, 1)


def reduce_letters(letters):
    """Free + additive reduction to canonical form (stack pass)"""
    stack = []
    for letter in letters:
        letter = letter.normalized()
        if letter.param == 0:
            continue
        if stack and stack[-1].root == letter.root:
            merged = stack.pop().param + letter.param
            if merged != 0:
                stack.append(Letter(letter.root, merged))
        else:
            stack.append(letter)
    return tuple(stack)


def reduce_letters_randomly(letters, rng):
    """Same rewrite rules as reduce_letters, applied at randomly chosen positions"""
    word = [l.normalized() for l in letters]
    while True:
        moves = [("drop", k) for k, l in enumerate(word) if l.param == 0]
        moves += [
            ("merge", k) for k in range(len(word) - 1) if word[k].root == word[k + 1].root
        ]
        if not moves:
            return tuple(word)
        kind, k = moves[int(rng.integers(0, len(moves)))]
        if kind == "drop":
            del word[k]
        else:
            word[k:k + 2] = [Letter(word[k].root, word[k].param + word[k + 1].param)]


class SteinbergWord:
    """An element of St(A_{n-1}, R) given as a canonical word"""

    __slots__ = ("n", "ring", "letters")

    def __init__(self, n, ring, letters=()):
        if n < 2:
            raise SizeMismatchError(f"Steinberg words need n >= 2, got {n}")
        checked = []
        for letter in letters:
            letter.root.check(n)
            if letter.sign not in (1, -1):
                raise RootError(f"letter sign must be +1 or -1, got {letter.sign}")
            checked.append(Letter(letter.root, ring.coerce(letter.param), letter.sign))
        self.n = n
        self.ring = ring
        self.letters = reduce_letters(checked)

    @property
    def rank_one(self):
        return self.n == 2

    @property
    def flags(self):
        return [RANK_ONE_NOTE] if self.rank_one else []

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return st_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SteinbergWord):
            return NotImplemented
        return (self.n, self.ring, self.letters) == (other.n, other.ring, other.letters)

    def __hash__(self):
        return hash((self.n, self.ring.descriptor, self.letters))

    def __repr__(self):
        body = " ".join(f"x{l.root.i}{l.root.j}({l.param})" for l in self.letters)
        return f"SteinbergWord(n={self.n}, {self.ring.descriptor}, [{body}])"


def generator(root, u, n=3, ring=None):
    ring = ring or ring_of(u) or RationalField()
    return SteinbergWord(n, ring, [Letter(root, u)])


def _check_compatible(a, b):
    if a.n != b.n:
        raise SizeMismatchError(f"cannot combine St(A_{a.n - 1}) and St(A_{b.n - 1}) words")
    if a.ring != b.ring:
        raise RingMismatchError(f"cannot combine words over {a.ring.descriptor} and {b.ring.descriptor}")


def st_mul(a, b):
    _check_compatible(a, b)
    return SteinbergWord(a.n, a.ring, a.letters + b.letters)


def st_inv(w):
    return SteinbergWord(w.n, w.ring, [Letter(l.root, -l.param) for l in reversed(w.letters)])


def st_pow(w, k):
    base = w if k >= 0 else st_inv(w)
    result = SteinbergWord(w.n, w.ring)
    for _ in range(abs(k)):
        result = st_mul(result, base)
    return result


def project(w):
    """The map St -> E: multiply out the elementary matrices"""
    result = identity(w.n, w.ring)
    for l in w.letters:
        result = result * elem(l.root, l.param, w.n, w.ring)
    return result


def in_k2(w):
    """Membership in K_2 = ker(St -> E)"""
    return project(w).is_identity()


def _symbol_letters(root, u, v, ring, scale):
    # h~(u) = w~(u) w~(1)^-1 with w~(u) = x~_a(u) x~_-a(-u^-1) x~_a(u)
    neg = root.negative()

    def w_tilde(t):
        return [Letter(root, scale * t), Letter(neg, -scale * ring.inv(t)), Letter(root, scale * t)]

    def inverse(letters):
        return [Letter(l.root, -l.param) for l in reversed(letters)]

    def h_tilde(t):
        return w_tilde(t) + inverse(w_tilde(ring.one))

    return h_tilde(u) + h_tilde(v) + inverse(h_tilde(u * v))


def symbol_word(root, u, v, n=3, ring=None):
    """c~(u, v) = h~(u) h~(v) h~(uv)^-1, a word in K_2 of at most 18 letters"""
    ring = ring or ring_of(u) or ring_of(v) or RationalField()
    u = ring.require_unit(u, "symbol parameter u")
    v = ring.require_unit(v, "symbol parameter v")
    return SteinbergWord(n, ring, _symbol_letters(root, u, v, ring, ring.one))


def tilde_c_loop(root, u, v, n=3, ring=None):
    """The lift C~_T(u, v) over k[T]; projects to c_loop and specialises to c~(u, v) at T = 1"""
    base = ring or ring_of(u) or ring_of(v) or RationalField()
    u = base.require_unit(u, "symbol parameter u")
    v = base.require_unit(v, "symbol parameter v")
    R = path_ring(base)
    letters = [
        Letter(l.root, l.param)
        for l in _symbol_letters(root, R.constant(u), R.constant(v), R, R.gen())
    ]
    return SteinbergWord(n, R, letters)


def specialize(w, t):
    """Evaluate the parameters of a word over k[T] at T = t"""
    base = w.ring.base
    var = w.ring.variables[0]
    return SteinbergWord(w.n, base, [Letter(l.root, l.param.evaluate({var: t})) for l in w.letters])


def commute_letters(w, position):
    """Swap the letters at position, position+1 using the Chevalley commutator relation

    x_a(s) x_b(t) = [x_a(s), x_b(t)] x_b(t) x_a(s)
    """
    if not 0 <= position < len(w.letters) - 1:
        raise RootError(f"no adjacent letter pair at position {position} in a word of length {len(w)}")
    first, second = w.letters[position], w.letters[position + 1]
    alpha, beta = first.root, second.root
    if alpha.negative() == beta:
        raise RootError(f"no commutator relation for opposite roots ({alpha}) and ({beta})")
    i, j, k, l = alpha.i, alpha.j, beta.i, beta.j
    correction = []
    if j == k and i != l:
        correction = [Letter(RootA(i, l), first.param * second.param)]
    elif i == l and j != k:
        correction = [Letter(RootA(k, j), -(first.param * second.param))]
    letters = list(w.letters[:position]) + correction + [second, first] + list(w.letters[position + 2:])
    return SteinbergWord(w.n, w.ring, letters)


@dataclass
class SymbolProduct:
    """An explicit product of Steinberg symbols {u_i, v_i}^e_i over Q"""

    factors: list = field(default_factory=list)

    def __post_init__(self):
        cleaned = []
        for u, v, *rest in self.factors:
            e = int(rest[0]) if rest else 1
            u, v = Fraction(u), Fraction(v)
            if u == 0 or v == 0:
                raise NotInSymbolFormError(f"symbol entries must be nonzero, got {{{u}, {v}}}")
            cleaned.append((u, v, e))
        self.factors = cleaned

    def __mul__(self, other):
        return SymbolProduct(self.factors + other.factors)

    def inverse(self):
        return SymbolProduct([(u, v, -e) for u, v, e in reversed(self.factors)])

    def primes(self):
        found = set()
        for u, v, _ in self.factors:
            for x in (u, v):
                found.update(sympy.primefactors(abs(x.numerator)))
                found.update(sympy.primefactors(x.denominator))
        return sorted(found)

    def to_word(self, root=None, n=3):
        """The Steinberg word of the product, one symbol_word per factor"""
        root = root or RootA(1, 2)
        ring = RationalField()
        word = SteinbergWord(n, ring)
        for u, v, e in self.factors:
            word = st_mul(word, st_pow(symbol_word(root, u, v, n, ring), e))
        return word


def tame_invariants(symbols):
    """Tame symbols of a product of symbols at every prime that occurs in it"""
    if not isinstance(symbols, SymbolProduct):
        raise NotInSymbolFormError(
            f"not in symbol form: expected an explicit product of symbols, got {type(symbols).__name__}"
        )
    values = {}
    for p in symbols.primes():
        acc = 1
        for u, v, e in symbols.factors:
            acc = acc * pow(tame_symbol(u, v, p), e, p) % p
        values[p] = acc
    return values
