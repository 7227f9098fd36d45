#!/usr/bin/env python3
"""
symloops Demo Script
A short tour: symbol loops, Steinberg words, factorization, homotopy witnesses, K_2 oracles
"""

from symloops.arith import FiniteField, RationalField
from symloops.chevalley import RootA
from symloops.factorization import factor_elementary, path_to_steinberg
from symloops.loops import c_loop, sl2_closed_form
from symloops.oracles import klein_four_generators, milnor_k2_finite_field, schur_multiplier
from symloops.serialization import decode_matrix, decode_simplex
from symloops.simplicial import verify_homotopy_witness
from symloops.steinberg import SymbolProduct, in_k2, symbol_word, tame_invariants
from tests.test_data import get_expected_result, get_test_data


def demo_symbol_loops():
    print("\n➰ Symbol loops C_T(u, v) in SL_2(Q[T])")
    print("-" * 40)
    Q = RationalField()
    alpha = RootA(1, 2)
    for u, v in [(2, 3), (-1, 5), (1, 7)]:
        loop = c_loop(alpha, u, v, 2, Q)
        closed = sl2_closed_form(u, v, Q)
        marker = "✅" if loop.is_loop and loop == closed else "❌"
        print(f"{marker} C_T({u}, {v}): loop={loop.is_loop}, closed form agrees={loop == closed}")
    print(f"   C_T(2, 3) at T = 1/2: {c_loop(alpha, 2, 3, 2, Q).at(Q.parse('1/2'))!r}")


def demo_steinberg_words():
    print("\n🧮 Steinberg words")
    print("-" * 40)
    alpha = RootA(1, 2)
    w = symbol_word(alpha, 2, 3, 3, RationalField())
    print(f"   symbol word {{2, 3}} in St_3(Q): {len(w)} letters, in K_2: {in_k2(w)}")
    lifted = path_to_steinberg(c_loop(alpha, 2, 3, 3, RationalField()))
    print(f"   lift of C_T(2, 3): {len(lifted)} letters, in K_2: {in_k2(lifted)}")
    print(f"   rank-one flags: {symbol_word(alpha, 2, 3, 2, RationalField()).flags}")


def demo_factorization():
    print("\n🧩 Elementary factorization")
    print("-" * 40)
    for name in ("diagonal_f5", "qt_matrix"):
        m = decode_matrix(get_test_data(name))
        factors = factor_elementary(m)
        print(f"✅ {name} over {m.ring.descriptor}: {len(factors)} elementary factors")


def demo_homotopy():
    print("\n🔺 Null-homotopy witness")
    print("-" * 40)
    sigma = decode_simplex(get_test_data("witness"))
    cert = verify_homotopy_witness(
        sigma,
        decode_simplex(get_test_data("constant_loop")),
        decode_simplex(get_test_data("null_loop")),
    )
    marker = "✅" if cert else "❌"
    print(f"{marker} e_12(X1 X2) contracts e_12(T - T^2): certified={cert.certified}")


def demo_oracles():
    print("\n🔍 K_2 oracles")
    print("-" * 40)
    invariants = tame_invariants(SymbolProduct([(2, 3)]))
    expected = get_expected_result("tame_2_3_at_3")
    marker = "✅" if invariants[3] == expected else "❌"
    print(f"{marker} tame symbols of {{2, 3}}: {dict(invariants)}")
    for q in get_expected_result("milnor_fields"):
        presentation = milnor_k2_finite_field(q)
        print(f"   K_2(F_{q}): {len(presentation.generators)} generators, trivial={presentation.is_trivial()}")
    h2 = schur_multiplier(klein_four_generators())
    print(f"   H_2(Klein four group) = {h2.invariant_factors} (order {h2.metadata['order']})")
    print(f"   F_9 has {len(FiniteField(3, 2).units())} units")


def main():
    print("➰ symloops Demo")
    print("=" * 50)
    demo_symbol_loops()
    demo_steinberg_words()
    demo_factorization()
    demo_homotopy()
    demo_oracles()
    print("\n🎉 Demo complete. Run 'python -m symloops reproduce --quick' for the full checklist.")


if __name__ == "__main__":
    main()
