"""Walkthrough: root systems, structure constants, and the three
defining relations checked as matrix identities.

Run:  python demos/demo_roots_and_relations.py
"""

import random

from steinberg_lab import build_root_system, build_representation, verify_relations
from steinberg_lab.rings import GF, ZZ, quotient

# Build the rank-3 linear root system.  Roots are integer vectors
# e_i - e_j; the enumeration lists positive roots first.
A3 = build_root_system("A", 3)
print(f"A3 has {len(A3.roots)} roots; simple roots: {A3.simple_roots}")

# Structure constants are read off from commutators of the explicit
# Chevalley basis matrices (E_ij in sl_4), so every sign is checkable.
a1, a2 = A3.simple_roots[:2]
print(f"N({a1}, {a2}) = {A3.structure_constant(a1, a2):+d}")
print(f"N({a2}, {a1}) = {A3.structure_constant(a2, a1):+d}   (antisymmetry)")

# Relation sweeps: exhaustive over root pairs, randomized over ring
# elements, in two representations and over rings with zero divisors
# and nilpotents.
rng = random.Random(0)
for repkind in ("defining", "adjoint"):
    rep = build_representation(A3, repkind)
    for ring in (quotient(ZZ(), 6), GF(7)):
        rpt = verify_relations(rep, ring, 50, rng)
        status = "ok" if rpt.ok else "FAILED"
        print(f"relations {repkind:8s} over {ring.describe():8s}: "
              f"{rpt.pairs_checked} pairs, {status}")

# The same machinery covers the even orthogonal series.
D4 = build_root_system("D", 4)
vec = build_representation(D4, "vector")
rpt = verify_relations(vec, GF(7), 50, rng)
print(f"D4 vector relations over F7: {'ok' if rpt.ok else 'FAILED'}")
