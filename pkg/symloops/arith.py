"""
symloops exact arithmetic
Rationals, prime-power finite fields and polynomial rings over them.
No floating point is used anywhere; every value is immutable once built.
"""

import json
import logging
from fractions import Fraction

import sympy

from .errors import (
    DivisionByZeroError,
    InputFormatError,
    NotInvertibleError,
    RingMismatchError,
    UnsupportedRingError,
)

logger = logging.getLogger(__name__)

# Irreducible field polynomials for the non-prime fields with q <= 16,
# coefficients listed from the constant term up (monic).
CONWAY_POLYNOMIALS = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (2, 2, 1),        # x^2 + 2x + 2
}


class Ring:
    """Common surface of the coefficient rings"""

    descriptor = None
    is_field = False
    characteristic = 0

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"Ring({self.descriptor!r})"

    def is_unit(self, x):
        try:
            self.inv(x)
        except NotInvertibleError:
            return False
        return True

    def require_unit(self, x, what="element"):
        """Coerce x and return it, raising NotInvertibleError if it is not a unit"""
        x = self.coerce(x)
        if not self.is_unit(x):
            raise NotInvertibleError(f"{what} {self.format(x)} is not invertible in {self.descriptor}")
        return x


class RationalField(Ring):
    descriptor = "Q"
    is_field = True
    characteristic = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, bool):
            raise RingMismatchError(f"cannot read {x!r} as an element of Q")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, Poly) and x.is_constant() and x.ring.base == self:
            return x.constant_value()
        raise RingMismatchError(f"cannot read {x!r} as an element of Q")

    def from_int(self, n):
        return Fraction(n)

    def inv(self, x):
        x = self.coerce(x)
        if x == 0:
            raise NotInvertibleError("0 is not invertible in Q")
        return 1 / x

    def parse(self, text):
        text = str(text).strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputFormatError(f"not a rational number: {text!r}")

    def format(self, x):
        x = self.coerce(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def to_json(self, x):
        return self.format(x)

    def from_json(self, obj):
        if isinstance(obj, (int, str)):
            return self.parse(obj)
        raise InputFormatError(f"expected a rational string, got {obj!r}")

    def random_element(self, rng, bound=9):
        num = int(rng.integers(-bound, bound + 1))
        den = int(rng.integers(1, bound + 1))
        return Fraction(num, den)

    def random_unit(self, rng, bound=9):
        while True:
            x = self.random_element(rng, bound)
            if x != 0:
                return x


class FiniteField(Ring):
    """The field with q = p^e elements, as F_p[a]/(f) for a fixed irreducible f"""

    is_field = True

    def __init__(self, p, e=1):
        p, e = int(p), int(e)
        if not sympy.isprime(p):
            raise UnsupportedRingError(f"field characteristic {p} is not prime")
        if e < 1:
            raise UnsupportedRingError(f"field degree must be positive, got {e}")
        if e > 1 and (p, e) not in CONWAY_POLYNOMIALS:
            raise UnsupportedRingError(
                f"no field polynomial for q = {p}^{e}; extension fields are tabulated for q <= 16"
            )
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = CONWAY_POLYNOMIALS.get((p, e), (0, 1))
        self.characteristic = p
        self.descriptor = f"Fq:{p}^{e}"

    @property
    def zero(self):
        return FFElement(self, (0,) * self.e)

    @property
    def one(self):
        return self.from_int(1)

    @property
    def generator(self):
        """The class of the indeterminate a (equals 0 for prime fields)"""
        if self.e == 1:
            return self.zero
        return FFElement(self, (0, 1) + (0,) * (self.e - 2))

    def from_int(self, n):
        return FFElement(self, (int(n) % self.p,) + (0,) * (self.e - 1))

    def coerce(self, x):
        if isinstance(x, FFElement):
            if x.field != self:
                raise RingMismatchError(f"{x!r} is not an element of {self.descriptor}")
            return x
        if isinstance(x, bool):
            raise RingMismatchError(f"cannot read {x!r} as an element of {self.descriptor}")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise NotInvertibleError(f"denominator of {x} vanishes in {self.descriptor}")
            return self.from_int(x.numerator) * self.from_int(x.denominator).inverse()
        if isinstance(x, Poly) and x.is_constant() and x.ring.base == self:
            return x.constant_value()
        raise RingMismatchError(f"cannot read {x!r} as an element of {self.descriptor}")

    def element(self, coeffs):
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.e:
            raise InputFormatError(
                f"coefficient vector of length {len(coeffs)} for a degree-{self.e} field"
            )
        return FFElement(self, tuple(coeffs) + (0,) * (self.e - len(coeffs)))

    def element_from_index(self, k):
        """Element whose coefficient vector is the base-p expansion of k"""
        coeffs = []
        for _ in range(self.e):
            k, c = divmod(k, self.p)
            coeffs.append(c)
        return FFElement(self, tuple(coeffs))

    def elements(self):
        return [self.element_from_index(k) for k in range(self.q)]

    def units(self):
        return [x for x in self.elements() if x]

    def _reduce(self, coeffs):
        # Reduce a coefficient list modulo the field polynomial and p
        coeffs = [c % self.p for c in coeffs]
        m = self.modulus
        for top in range(len(coeffs) - 1, self.e - 1, -1):
            c = coeffs[top]
            if c:
                shift = top - self.e
                for k in range(self.e):
                    coeffs[shift + k] = (coeffs[shift + k] - c * m[k]) % self.p
                coeffs[top] = 0
        coeffs = coeffs[:self.e]
        return tuple(coeffs) + (0,) * (self.e - len(coeffs))

    def _mul(self, a, b):
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def inv(self, x):
        x = self.coerce(x)
        if not x:
            raise NotInvertibleError(f"0 is not invertible in {self.descriptor}")
        if self.e == 1:
            return FFElement(self, (pow(x.coeffs[0], self.p - 2, self.p),))
        return x ** (self.q - 2)

    def parse(self, text):
        text = str(text).strip()
        try:
            if text.startswith("["):
                return self.element(json.loads(text))
            if "," in text:
                return self.element([int(c) for c in text.split(",")])
            if "/" in text:
                return self.coerce(Fraction(text))
            return self.from_int(int(text))
        except (ValueError, TypeError):
            raise InputFormatError(f"not an element of {self.descriptor}: {text!r}")

    def format(self, x):
        x = self.coerce(x)
        if self.e == 1:
            return str(x.coeffs[0])
        return "[" + ",".join(str(c) for c in x.coeffs) + "]"

    def to_json(self, x):
        return list(self.coerce(x).coeffs)

    def from_json(self, obj):
        if isinstance(obj, list):
            if not all(isinstance(c, int) and not isinstance(c, bool) for c in obj):
                raise InputFormatError(f"coefficients of {self.descriptor} must be integers, got {obj!r}")
            return self.element(obj)
        if isinstance(obj, (int, str)):
            return self.parse(obj)
        raise InputFormatError(f"expected a coefficient vector for {self.descriptor}, got {obj!r}")

    def random_element(self, rng, bound=None):
        return self.element_from_index(int(rng.integers(0, self.q)))

    def random_unit(self, rng, bound=None):
        return self.element_from_index(int(rng.integers(1, self.q)))


class FFElement:
    """An element of a FiniteField, stored as reduced coefficients"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise RingMismatchError(
                    f"cannot combine {self.field.descriptor} and {other.field.descriptor}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        p = self.field.p
        return FFElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.field.e == 1:
            return FFElement(self.field, ((self.coeffs[0] * other.coeffs[0]) % self.field.p,))
        return FFElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self):
        return self.field.inv(self)

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            other = self._other(other)
        except (RingMismatchError, NotInvertibleError):
            return False
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.descriptor, self.coeffs))

    def __repr__(self):
        return f"FFElement({self.field.descriptor}, {self.field.format(self)})"

    def __str__(self):
        return self.field.format(self)


class PolynomialRing(Ring):
    """k[v1, ..., vm] over a field k, monomials ordered lexicographically"""

    def __init__(self, base, variables=("T",)):
        if not isinstance(base, (RationalField, FiniteField)):
            raise UnsupportedRingError(
                f"polynomial coefficients must lie in Q or a finite field, got {base!r}"
            )
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InputFormatError(f"repeated variable names in {variables}")
        self.base = base
        self.variables = variables
        self.characteristic = base.characteristic
        self.descriptor = f"poly:{base.descriptor}:{','.join(variables)}"

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def is_univariate(self):
        return len(self.variables) == 1

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.constant(self.base.one)

    def constant(self, c):
        c = self.base.coerce(c)
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, name=None):
        if name is None:
            if not self.is_univariate:
                raise InputFormatError(f"{self.descriptor} has several variables; name one")
            name = self.variables[0]
        if name not in self.variables:
            raise InputFormatError(f"{name!r} is not a variable of {self.descriptor}")
        exps = tuple(1 if v == name else 0 for v in self.variables)
        return Poly(self, {exps: self.base.one})

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.ring != self:
                raise RingMismatchError(f"{x.ring.descriptor} polynomial used in {self.descriptor}")
            return x
        return self.constant(x)

    def from_int(self, n):
        return self.constant(self.base.from_int(n))

    def inv(self, x):
        x = self.coerce(x)
        if not x.is_constant() or x.is_zero():
            raise NotInvertibleError(f"{x} is not a unit of {self.descriptor}")
        return self.constant(self.base.inv(x.constant_value()))

    def parse(self, text):
        """Read a polynomial written with + - * ^ / and integer constants, e.g. '1 - T^2'"""
        text = str(text).strip().replace("^", "**")
        symbols = sympy.symbols(self.variables) if self.variables else ()
        try:
            expr = sympy.sympify(text, locals={v: s for v, s in zip(self.variables, symbols)})
            if not self.variables:
                if not expr.is_Rational:
                    raise InputFormatError(f"not a constant: {text!r}")
                return self.constant(Fraction(int(expr.p), int(expr.q)))
            poly = sympy.Poly(expr, *symbols, domain="QQ")
        except Exception as e:
            raise InputFormatError(f"cannot read {text!r} as a polynomial in {self.descriptor}: {e}")
        terms = {}
        for monom, coeff in poly.terms():
            terms[tuple(int(k) for k in monom)] = self.base.coerce(Fraction(int(coeff.p), int(coeff.q)))
        return Poly(self, terms)

    def format(self, x):
        return str(self.coerce(x))

    def to_json(self, x):
        x = self.coerce(x)
        return [[list(exps), self.base.to_json(c)] for exps, c in x.sorted_terms()]

    def from_json(self, obj):
        if isinstance(obj, str):
            return self.parse(obj)
        if isinstance(obj, int):
            return self.from_int(obj)
        if not isinstance(obj, list):
            raise InputFormatError(f"expected a list of [exponents, coefficient] pairs, got {obj!r}")
        terms = {}
        for pair in obj:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not isinstance(pair[0], list)
                or len(pair[0]) != self.nvars
                or not all(isinstance(k, int) and not isinstance(k, bool) and k >= 0 for k in pair[0])
            ):
                raise InputFormatError(f"bad polynomial term {pair!r} for {self.descriptor}")
            exps = tuple(pair[0])
            c = self.base.from_json(pair[1])
            terms[exps] = terms[exps] + c if exps in terms else c
        return Poly(self, terms)

    def random_element(self, rng, degree=2, bound=5):
        terms = {}
        for _ in range(degree + 1):
            exps = tuple(int(rng.integers(0, degree + 1)) for _ in self.variables)
            terms[exps] = self.base.random_element(rng, bound)
        return Poly(self, terms)

    def random_unit(self, rng, bound=5):
        return self.constant(self.base.random_unit(rng, bound))


class Poly:
    """A polynomial: map from exponent vectors to nonzero base-field coefficients"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}

    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"cannot combine {self.ring.descriptor} and {other.ring.descriptor}"
                )
            return other
        if isinstance(other, (int, Fraction, FFElement)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.ring.inv(self) ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        # Only division by units (nonzero constants) is exact in k[...]
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * self.ring.inv(other)

    def __eq__(self, other):
        try:
            other = self._other(other)
        except (RingMismatchError, NotInvertibleError):
            return False
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.descriptor, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.base.zero)

    def sorted_terms(self):
        """Terms in decreasing lexicographic order of exponent vectors"""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def degree(self):
        """Degree of a univariate polynomial; -1 for the zero polynomial"""
        if not self.ring.is_univariate:
            raise UnsupportedRingError(f"degree() needs a univariate ring, not {self.ring.descriptor}")
        if not self.terms:
            return -1
        return max(e[0] for e in self.terms)

    def leading_coefficient(self):
        """Coefficient of the largest exponent vector; 0 for the zero polynomial"""
        if not self.terms:
            return self.ring.base.zero
        return self.terms[max(self.terms)]

    def coefficients(self):
        """Dense coefficient list of a univariate polynomial, constant term first"""
        dense = [self.ring.base.zero] * (self.degree() + 1)
        for e, c in self.terms.items():
            dense[e[0]] = c
        return dense

    @classmethod
    def from_coefficients(cls, ring, dense):
        return cls(ring, {(k,): c for k, c in enumerate(dense)})

    def evaluate(self, assignment):
        """Substitute base-ring values for some or all variables"""
        return poly_eval(self, assignment)

    def substitute(self, mapping, target):
        """Ring homomorphism sending each variable to a polynomial of the target ring"""
        if target.base != self.ring.base:
            raise RingMismatchError(
                f"substitution from {self.ring.descriptor} into {target.descriptor}"
            )
        missing = [v for v in self.ring.variables if v not in mapping]
        if missing:
            raise InputFormatError(f"no image given for variables {missing}")
        images = [target.coerce(mapping[v]) for v in self.ring.variables]
        powers = [{0: target.one} for _ in images]
        result = target.zero
        for exps, c in self.terms.items():
            term = target.constant(c)
            for k, d in enumerate(exps):
                if d:
                    cache = powers[k]
                    if d not in cache:
                        cache[d] = images[k] ** d
                    term = term * cache[d]
            result = result + term
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        base = self.ring.base
        parts = []
        for exps, c in self.sorted_terms():
            monomial = "*".join(
                v if d == 1 else f"{v}^{d}" for v, d in zip(self.ring.variables, exps) if d
            )
            coeff = base.format(c)
            if not monomial:
                parts.append(coeff)
            elif c == base.one:
                parts.append(monomial)
            else:
                parts.append(f"{coeff}*{monomial}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.ring.descriptor}, {self})"


def poly_divmod(f, g):
    """Euclidean division f = q*g + r in k[T] with deg r < deg g"""
    if not isinstance(f, Poly) or not isinstance(g, Poly):
        raise RingMismatchError("poly_divmod expects two polynomials")
    if f.ring != g.ring:
        raise RingMismatchError(f"cannot divide {f.ring.descriptor} by {g.ring.descriptor}")
    ring = f.ring
    if not ring.is_univariate:
        raise UnsupportedRingError(f"Euclidean division needs a univariate ring, not {ring.descriptor}")
    if g.is_zero():
        raise DivisionByZeroError("division by the zero polynomial")
    base = ring.base
    rem = f.coefficients()
    divisor = g.coefficients()
    dg = len(divisor) - 1
    lead_inv = base.inv(g.leading_coefficient())
    quot = [base.zero] * max(len(rem) - dg, 0)
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = c * lead_inv
        quot[k - dg] = c
        for j, d in enumerate(divisor):
            rem[k - dg + j] = rem[k - dg + j] - c * d
    return Poly.from_coefficients(ring, quot), Poly.from_coefficients(ring, rem[:dg])


def poly_eval(f, assignment):
    """Evaluate f at an assignment of base-ring values; partial assignments give a Poly"""
    ring = f.ring
    unknown = [v for v in assignment if v not in ring.variables]
    if unknown:
        raise RingMismatchError(f"variables {unknown} do not belong to {ring.descriptor}")
    values = {v: ring.base.coerce(x) for v, x in assignment.items()}
    keep = [k for k, v in enumerate(ring.variables) if v not in values]
    if keep:
        target = PolynomialRing(ring.base, [ring.variables[k] for k in keep])
    else:
        target = None
    terms = {}
    for exps, c in f.terms.items():
        for k, d in enumerate(exps):
            v = ring.variables[k]
            if d and v in values:
                c = c * values[v] ** d
        rest = tuple(exps[k] for k in keep)
        terms[rest] = terms[rest] + c if rest in terms else c
    if target is None:
        return terms.get((), ring.base.zero)
    return Poly(target, terms)


def parse_ring(descriptor):
    """Read a ring descriptor: 'Q', 'Fq:<p>^<e>', 'poly:<ring>:<vars>'"""
    text = str(descriptor).strip()
    if text == "Q":
        return RationalField()
    if text.startswith("Fq:"):
        spec = text[3:]
        try:
            if "^" in spec:
                p, e = spec.split("^")
                return FiniteField(int(p), int(e))
            q = int(spec)
        except ValueError:
            raise InputFormatError(f"bad finite field descriptor {text!r}")
        return field_of_order(q)
    if text.startswith("poly:"):
        body = text[5:]
        base_text, _, names = body.rpartition(":")
        if not base_text:
            raise InputFormatError(f"bad polynomial ring descriptor {text!r}")
        base = parse_ring(base_text)
        variables = [v.strip() for v in names.split(",") if v.strip()]
        for v in variables:
            if not v.isidentifier():
                raise InputFormatError(f"bad variable name {v!r} in {text!r}")
        return PolynomialRing(base, variables)
    raise InputFormatError(f"unknown ring descriptor {text!r} (expected Q, Fq:<p>^<e> or poly:<ring>:<vars>)")


def field_of_order(q):
    """The field with q elements, for q prime or a tabulated prime power"""
    q = int(q)
    factors = sympy.factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise UnsupportedRingError(f"{q} is not a prime power")
    (p, e), = factors.items()
    return FiniteField(p, e)


def ring_of(x):
    """The ring a value belongs to, or None for bare integers"""
    if isinstance(x, Poly):
        return x.ring
    if isinstance(x, FFElement):
        return x.field
    if isinstance(x, Fraction):
        return RationalField()
    return None
