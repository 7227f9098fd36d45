"""
symloops acceptance suite
Seeded, exact property checks over every module plus the oracle cross-checks.
Sizes come from acceptance.yaml (or SYMLOOPS_ACCEPTANCE_FILE).
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
import sympy
import yaml

from .arith import FiniteField, RationalField
from .chevalley import RootA, all_roots, elem, h_elem, identity, w_elem
from .config import config
from .errors import InputFormatError
from .factorization import factor_elementary, multiply_factors, path_to_steinberg, word_to_path
from .loops import (
    PathMatrix,
    c_loop,
    h_loop,
    path_ring,
    sl2_closed_form,
    verify_path_identity,
    w_loop,
)
from .oracles import (
    cyclic_group_generator,
    klein_four_generators,
    milnor_k2_finite_field,
    schur_multiplier,
    sl2_generators,
    tame_symbol,
)
from .simplicial import SimplexMatrix, sample_simplex_poly, simplex_ring, verify_homotopy_witness
from .steinberg import (
    Letter,
    SteinbergWord,
    in_k2,
    project,
    reduce_letters,
    reduce_letters_randomly,
    st_inv,
    st_mul,
    symbol_word,
)

logger = logging.getLogger(__name__)

DEFAULT_PARAMETERS = Path(__file__).with_name("acceptance.yaml")
MAX_REPORTED_FAILURES = 5

CRITERIA = {}


def criterion(key, title):
    """Register a criterion runner: fn(rng, **params) -> (checks, failures)"""

    def decorator(fn):
        CRITERIA[key] = (title, fn)
        return fn

    return decorator


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    checks: int
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def as_dict(self, timing=False):
        doc = {
            "criterion": self.key,
            "title": self.title,
            "status": "pass" if self.passed else "fail",
            "checks": self.checks,
            "failures": self.failures[:MAX_REPORTED_FAILURES],
        }
        if timing:
            doc["seconds"] = round(self.seconds, 3)
        return doc


def load_parameters(path=None, quick=False):
    path = Path(path or config.ACCEPTANCE_FILE or DEFAULT_PARAMETERS)
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise InputFormatError(f"cannot load acceptance parameters from {path}: {e}")
    mode = "quick" if quick else "full"
    params = {}
    for key in CRITERIA:
        entry = raw.get(key)
        if not isinstance(entry, dict) or mode not in entry:
            raise InputFormatError(f"acceptance parameters lack {key}.{mode}")
        params[key] = dict(entry[mode])
    return params


def _unit_pairs(rng, base, count):
    return [(base.random_unit(rng), base.random_unit(rng)) for _ in range(count)]


@criterion("closed-form", "SL_2 closed form equals H(u)H(v)H(uv)^-1")
def check_closed_form(rng, pairs, prime):
    failures, checks = [], 0
    alpha = RootA(1, 2)
    for base in (RationalField(), FiniteField(prime)):
        for u, v in _unit_pairs(rng, base, pairs):
            result = verify_path_identity(c_loop(alpha, u, v, 2, base), sl2_closed_form(u, v, base))
            checks += 1
            if not result:
                failures.append(
                    f"{base.descriptor} u={base.format(u)} v={base.format(v)}: "
                    f"entry {result.entry} differs by {result.difference()}"
                )
    return checks, failures


@criterion("loop-contract", "c_loop is a loop, h_loop(u != 1) ends at h(u)")
def check_loop_contract(rng, pairs, sizes, prime):
    failures, checks = [], 0
    for base in (RationalField(), FiniteField(prime), FiniteField(3, 2)):
        for n in sizes:
            for root in all_roots(n):
                for u, v in _unit_pairs(rng, base, pairs):
                    checks += 1
                    if not c_loop(root, u, v, n, base).is_loop:
                        failures.append(f"c_loop({root}; {u}, {v}) in SL_{n}({base.descriptor}) is not a loop")
                    if u == base.one:
                        continue
                    h = h_loop(root, u, n, base)
                    if h.is_loop or h.at(1) != h_elem(root, u, n, base):
                        failures.append(f"h_loop({root}; {u}) in SL_{n}({base.descriptor}) has the wrong endpoint")
    return checks, failures


@criterion("path-identities", "W(u)W(-u) = I, w(u)^-1 = w(-u), H(a)H(b) != H(b)H(a)")
def check_path_identities(rng, samples, prime):
    failures, checks = [], 0
    for base in (RationalField(), FiniteField(prime)):
        for n in (2, 3):
            for _ in range(samples):
                root = all_roots(n)[int(rng.integers(0, n * (n - 1)))]
                u = base.random_unit(rng)
                checks += 2
                if not verify_path_identity([w_loop(root, u, n, base), w_loop(root, -u, n, base)], [], n, base):
                    failures.append(f"W({root}; {u}) W(-u) != I over {base.descriptor}")
                if w_elem(root, u, n, base).inverse() != w_elem(root, -u, n, base):
                    failures.append(f"w({root}; {u})^-1 != w(-u) over {base.descriptor}")
    Q = RationalField()
    alpha = RootA(1, 2)
    lhs = [h_loop(alpha, 2, 2, Q), h_loop(alpha, 3, 2, Q)]
    rhs = [h_loop(alpha, 3, 2, Q), h_loop(alpha, 2, 2, Q)]
    result = verify_path_identity(lhs, rhs)
    checks += 1
    if result or result.entry is None:
        failures.append("H(2)H(3) = H(3)H(2) was not refuted with a certificate")
    return checks, failures


def _random_path(rng, base, n, max_factors):
    R = path_ring(base)
    T = R.gen()
    roots = all_roots(n)
    m = identity(n, R)
    for _ in range(int(rng.integers(1, max_factors + 1))):
        root = roots[int(rng.integers(0, len(roots)))]
        m = m * elem(root, T * R.random_element(rng, degree=1, bound=3), n, R)
    return PathMatrix(m)


def _random_loop(rng, base, n, max_factors, index):
    if index % 2 == 0:
        root = all_roots(n)[int(rng.integers(0, n * (n - 1)))]
        u, v = base.random_unit(rng), base.random_unit(rng)
        return c_loop(root, u, v, n, base)
    path = _random_path(rng, base, n, max_factors)
    # the second factor ends at path(1)^-1
    return path * word_to_path(st_inv(path_to_steinberg(path)))


@criterion("factorization", "elementary factorization and the path/word translation")
def check_factorization(rng, cases, loops, max_factors, prime):
    failures, checks = [], 0
    bases = (FiniteField(prime), RationalField())
    n = 3
    for k in range(cases):
        base = bases[k % 2]
        is_loop = k < loops
        y = _random_loop(rng, base, n, max_factors, k // 2) if is_loop else _random_path(rng, base, n, max_factors)
        checks += 1
        if multiply_factors(factor_elementary(y.matrix), n, y.ring) != y.matrix:
            failures.append(f"case {k} over {base.descriptor}: factors do not re-multiply to the input")
            continue
        w = path_to_steinberg(y)
        if project(w) != y.at(1):
            failures.append(f"case {k} over {base.descriptor}: projection differs from y(1)")
        if is_loop and not in_k2(w):
            failures.append(f"case {k} over {base.descriptor}: lifted loop is not in K_2")
    return checks, failures


def _simplicial_identities(rng, f):
    n = f.level

    def ri(lo, hi):
        return int(rng.integers(lo, hi + 1))

    j = ri(1, n)
    i = ri(0, j - 1)
    yield f"d{i} d{j} = d{j - 1} d{i}", f.face(j).face(i) == f.face(i).face(j - 1)
    j = ri(1, n)
    i = ri(0, j - 1)
    yield f"d{i} s{j} = s{j - 1} d{i}", f.degeneracy(j).face(i) == f.face(i).degeneracy(j - 1)
    j = ri(0, n)
    yield f"d{j} s{j} = id", f.degeneracy(j).face(j) == f
    yield f"d{j + 1} s{j} = id", f.degeneracy(j).face(j + 1) == f
    j = ri(0, n - 1)
    i = ri(j + 2, n + 1)
    yield f"d{i} s{j} = s{j} d{i - 1}", f.degeneracy(j).face(i) == f.face(i - 1).degeneracy(j)
    j = ri(0, n)
    i = ri(0, j)
    yield f"s{i} s{j} = s{j + 1} s{i}", f.degeneracy(j).degeneracy(i) == f.degeneracy(i).degeneracy(j + 1)


@criterion("simplicial", "simplicial identities and the explicit null-homotopy witness")
def check_simplicial(rng, samples, max_level):
    failures, checks = [], 0
    for _ in range(samples):
        level = int(rng.integers(2, max_level + 1))
        f = sample_simplex_poly(rng, level)
        g = sample_simplex_poly(rng, level)
        for name, holds in _simplicial_identities(rng, f):
            checks += 1
            if not holds:
                failures.append(f"{name} fails at level {level} on {f.poly}")
        i = int(rng.integers(0, level + 1))
        checks += 1
        if (f * g).face(i) != f.face(i) * g.face(i):
            failures.append(f"d{i} is not multiplicative at level {level}")

    Q = RationalField()
    R2, R1 = simplex_ring(Q, 2), simplex_ring(Q, 1)
    X1, X2 = R2.gen("X1"), R2.gen("X2")
    t = R1.gen("X1")
    alpha = RootA(1, 2)
    sigma = SimplexMatrix(2, elem(alpha, X1 * X2, 2, R2))
    loop = SimplexMatrix(1, identity(2, R1))
    target = SimplexMatrix(1, elem(alpha, t - t * t, 2, R1))
    checks += 1
    if not verify_homotopy_witness(sigma, loop, target):
        failures.append("e12(X1 X2) does not certify that e12(T - T^2) is null-homotopic")
    return checks, failures


def _random_rational(rng, bound=30):
    num = 0
    while num == 0:
        num = int(rng.integers(-bound, bound + 1))
    return Fraction(num, int(rng.integers(1, bound + 1)))


def _primes_of(*values):
    found = set()
    for x in values:
        found.update(sympy.primefactors(abs(x.numerator)))
        found.update(sympy.primefactors(x.denominator))
    return sorted(found) or [2]


@criterion("tame-symbols", "tame symbols: bilinear, antisymmetric, Steinberg, {2,3} nontrivial")
def check_tame_symbols(rng, triples, max_u, max_p):
    failures, checks = [], 0
    for _ in range(triples):
        a, b, c = (_random_rational(rng) for _ in range(3))
        for p in _primes_of(a, b, c):
            checks += 2
            if tame_symbol(a * b, c, p) != tame_symbol(a, c, p) * tame_symbol(b, c, p) % p:
                failures.append(f"bilinearity fails for ({a}, {b}, {c}) at {p}")
            if tame_symbol(a, b, p) * tame_symbol(b, a, p) % p != 1:
                failures.append(f"antisymmetry fails for ({a}, {b}) at {p}")
    for u in range(2, max_u + 1):
        for p in sympy.primerange(2, max_p + 1):
            checks += 1
            if tame_symbol(u, 1 - u, p) != 1:
                failures.append(f"tame symbol of {{{u}, {1 - u}}} at {p} is not 1")
    checks += 1
    if tame_symbol(2, 3, 3) != 2:
        failures.append("tame symbol of {2, 3} at 3 is not 2")
    return checks, failures


@criterion("milnor-k2", "K_2 of small finite fields vanishes")
def check_milnor_k2(rng, fields):
    failures = []
    for q in fields:
        presentation = milnor_k2_finite_field(q)
        if not presentation.is_trivial():
            failures.append(f"K_2(F_{q}) came out as {presentation.invariant_factors} + Z^{presentation.free_rank}")
    return len(fields), failures


@criterion("schur-multiplier", "bar-complex Schur multipliers of small matrix groups")
def check_schur_multiplier(rng, cyclic_max, sl2_prime, klein_four):
    failures, checks = [], 0
    for n in range(1, cyclic_max + 1):
        checks += 1
        h2 = schur_multiplier(cyclic_group_generator(n))
        if h2.metadata["order"] != n or not h2.is_trivial():
            failures.append(f"cyclic group of order {n}: H_2 = {h2.invariant_factors}")
    if klein_four:
        checks += 1
        h2 = schur_multiplier(klein_four_generators())
        if h2.invariant_factors != [2] or h2.free_rank:
            failures.append(f"Klein four group: H_2 = {h2.invariant_factors}")
    if sl2_prime:
        checks += 1
        h2 = schur_multiplier(sl2_generators(sl2_prime))
        if not h2.is_trivial():
            failures.append(f"SL_2(F_{sl2_prime}): H_2 = {h2.invariant_factors}")
    return checks, failures


def _random_letters(rng, ring, n, max_letters):
    roots = all_roots(n)
    return [
        Letter(roots[int(rng.integers(0, len(roots)))], ring.random_element(rng), int(rng.choice([1, -1])))
        for _ in range(int(rng.integers(0, max_letters + 1)))
    ]


@criterion("steinberg-words", "symbol words lie in K_2 and projection is a homomorphism")
def check_steinberg_words(rng, pairs, word_pairs, max_letters):
    failures, checks = [], 0
    n = 3
    for base in (RationalField(), FiniteField(5)):
        for u, v in _unit_pairs(rng, base, pairs):
            root = all_roots(n)[int(rng.integers(0, n * (n - 1)))]
            checks += 2
            if len(symbol_word(root, base.one, v, n, base)):
                failures.append(f"symbol_word({root}; 1, {v}) is not empty")
            if not in_k2(symbol_word(root, u, v, n, base)):
                failures.append(f"symbol_word({root}; {u}, {v}) over {base.descriptor} is not in K_2")
    F5 = FiniteField(5)
    for _ in range(word_pairs):
        la = _random_letters(rng, F5, n, max_letters)
        lb = _random_letters(rng, F5, n, max_letters)
        a, b = SteinbergWord(n, F5, la), SteinbergWord(n, F5, lb)
        checks += 2
        if project(st_mul(a, b)) != project(a) * project(b):
            failures.append(f"projection is not multiplicative on {a!r}, {b!r}")
        if reduce_letters_randomly(la + lb, rng) != reduce_letters(la + lb):
            failures.append(f"reduction order changes the canonical form of {a!r} {b!r}")
    return checks, failures


def run_acceptance(seed=None, quick=False, only=None, parameters=None):
    """Run the registered criteria in order; returns a list of CriterionResult"""
    seed = config.SEED if seed is None else int(seed)
    params = parameters or load_parameters(quick=quick)
    results = []
    for number, (key, (title, runner)) in enumerate(CRITERIA.items(), start=1):
        if only and key not in only:
            continue
        rng = np.random.default_rng([seed, number])
        start = time.perf_counter()
        checks, failures = runner(rng, **params[key])
        elapsed = time.perf_counter() - start
        result = CriterionResult(key, title, not failures, checks, failures, elapsed)
        marker = "✅" if result.passed else "❌"
        logger.info(f"{marker} {number}. {title}: {checks} checks in {elapsed:.2f}s")
        for failure in failures[:MAX_REPORTED_FAILURES]:
            logger.error(f"   {failure}")
        results.append(result)
    return results
