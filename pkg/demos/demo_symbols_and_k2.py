"""Walkthrough: Steinberg symbols, kernel membership, and the Milnor
symbol calculus with tame-symbol oracles.

Run:  python demos/demo_symbols_and_k2.py
"""

from fractions import Fraction

from steinberg_lab import (build_representation, build_root_system,
                           k2_membership, steinberg_symbol, torus_element)
from steinberg_lab.milnor import (relevant_odd_primes, steinberg_to_milnor,
                                  symbol, symbol_normalize, tame_symbol)
from steinberg_lab.rings import GF

A2 = build_root_system("A", 2)
F5 = GF(5)
alpha = A2.simple_roots[0]

# h(u) = w(u) w(-1) maps to a diagonal torus element...
defin = build_representation(A2, "defining")
h2 = torus_element(A2, F5, alpha, 2)
print("h(2) is a word of", len(h2), "generators")

# ... and the symbol {u, v} = h(uv) h(u)^-1 h(v)^-1 dies in every
# matrix representation: it is a kernel (unstable K2) class.
sym = steinberg_symbol(A2, F5, alpha, 2, 3)
print("symbol word length:", len(sym))
print("kernel membership in SL3(F5):", k2_membership(sym, defin))
print("kernel membership in adjoint:", k2_membership(sym, build_representation(A2, "adjoint")))

# Over a field the kernel is the Milnor K2 group; the word's
# constructor provenance maps it onto a formal symbol sum.
ms = steinberg_to_milnor(sym * steinberg_symbol(A2, F5, alpha, 2, 4))
print("as Milnor symbols:", ms)

# Over Q the tame symbols at odd primes give an independent oracle.
s = symbol(2, 3)
print("tame image of {2,3} at p=3:", tame_symbol(s, 3).value)

steinberg_rel = symbol(Fraction(5, 9), 1 - Fraction(5, 9))
for p in relevant_odd_primes(steinberg_rel):
    assert tame_symbol(steinberg_rel, p).value == 1
print("{u, 1-u} is trivial at all relevant odd primes")

# Simplification uses only sound relations; the tame images confirm it.
n = symbol_normalize(symbol(4, 5))
print("{4,5} simplifies to", n)
for p in (3, 5, 7):
    assert tame_symbol(symbol(4, 5), p).value == tame_symbol(n, p).value
print("normalization preserves all tame images")
