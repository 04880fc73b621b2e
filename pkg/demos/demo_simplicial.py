"""Walkthrough: the standard simplicial ring, its face and degeneracy
maps, and the degree <= 2 Moore-complex generator lifts.

Run:  python demos/demo_simplicial.py
"""

from steinberg_lab import build_root_system
from steinberg_lab.rings import ZZ, product_ring
from steinberg_lab.simplicial import (MooreGenerator, crt_from_pair,
                                      crt_to_pair, face_hom,
                                      interval_square_ring, moore_lift,
                                      pi0_connectivity_witness, simplex_ring,
                                      simplicial_identity_report)
from steinberg_lab.words import identity_word, substitute

Z = ZZ()

# Level n is R[t1..tn] with t0 = 1 - sum(ti) eliminated; the face maps
# at the bottom levels evaluate the interval coordinate at its ends.
lvl1 = simplex_ring(Z, 1)
print("d0(t1) =", face_hom(Z, 1, 0)(lvl1.var("t1")))
print("d1(t1) =", face_hom(Z, 1, 1)(lvl1.var("t1")))
lvl2 = simplex_ring(Z, 2)
print("d0 on level 2:", face_hom(Z, 2, 0)(lvl2.var("t1")),
      "|", face_hom(Z, 2, 0)(lvl2.var("t2")))

report = simplicial_identity_report(Z, 3)
print(f"simplicial identities up to level 3: {len(report)} checked,",
      "all hold" if all(ok for _, ok in report) else "FAILURES")

# Connectivity: every generator x(r) is the d0-image of x(r t1), which
# d1 kills.
A2 = build_root_system("A", 2)
w = pi0_connectivity_witness(A2, Z, A2.simple_roots[0], 5)
print("witness:", w, "-> d1 kills it:", substitute(w, face_hom(Z, 1, 1)).is_empty)

# Level-1 loop generators x(t1(t1-1)f)^g lift to level 2 so that d0
# reproduces them and d1, d2 kill the lift: the Moore complex is exact
# in degree 1 on these generators.
m = MooreGenerator(A2, Z, 1, A2.simple_roots[0], lvl1.var("t1"),
                   identity_word(A2, lvl1))
lift = moore_lift(m)
print("lift core argument:", lift.core_argument())
print("d0(lift) == generator:", lift.face(0) == m.word())
print("d1, d2 kill the lift:", lift.face(1).is_empty and lift.face(2).is_empty)

# The interval ring R[t]/(t^2 - t) is a product of two copies of R.
sq = interval_square_ring(Z)
prod = product_ring(Z, Z)
x = sq.project(lvl1.var("t1") * lvl1.from_int(7) + lvl1.from_int(2))
pair = crt_to_pair(x, prod)
print("CRT image of 2 + 7 t1:", pair, "| round trip:",
      crt_from_pair(pair, sq) == x)
