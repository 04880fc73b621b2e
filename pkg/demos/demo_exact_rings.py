"""Walkthrough: the exact ring tower and the two splitting tricks used
everywhere else (Bezout decomposition and the reciprocal-polynomial
localization witness).

Run:  python demos/demo_exact_rings.py
"""

from steinberg_lab.rings import (GF, ZZ, bezout_decompose,
                                 coarser_localization_hom, localize,
                                 milnor_square_pullback,
                                 milnor_square_project_base,
                                 milnor_square_project_poly,
                                 milnor_square_ring, poly_ring,
                                 reciprocal_localization_witness)

Z = ZZ()

# Localizations carry canonical payloads (numerator, exponent); the
# exponent is minimized by trial division, so equality is structural.
L2 = localize(Z, 2)
x = L2.fraction(3, 1) + L2.fraction(1, 2)
print("3/2 + 1/4 =", x, "payload", x.payload)

# Bezout: with x*2 + y*3 = 1 (x = -1, y = 1), 5/2 splits into a part
# in 3*ZZ[1/2] and an integer; the sum is checked in ZZ[1/6].
principal, integral = bezout_decompose(L2.fraction(5, 1), Z.from_int(3), 1)
print("5/2 =", principal, "+", integral)
L6 = localize(Z, 6)
lift = coarser_localization_hom(L2, L6)
assert lift(principal) + lift(L2.from_base(integral)) == lift(L2.fraction(5, 1))

# A monic polynomial agrees with t^n times its reciprocal in the
# Laurent ring, so localizing at either gives the same ring.
P = poly_ring(Z, ("t",))
t = P.var("t")
f = t * t + 3 * t + 2
g = reciprocal_localization_witness(f)
print("f = t^2 + 3t + 2  ->  g =", g)
assert g.ring.from_base(t) ** 2 * g == g.ring.from_base(f)

# The pullback ring of the localization square: pairs (x, g) with
# matching images glue uniquely.
square = milnor_square_ring(Z, 2)
tv = square.poly.var("t")
g = square.poly.constant(square.loc.from_base(3)) + tv * square.poly.constant(
    square.loc.fraction(1, 1))
e = milnor_square_pullback(Z.from_int(3), g, square)
print("pullback of (3, 3 + t/2):", e)
assert milnor_square_project_base(e).payload == 3
assert milnor_square_project_poly(e) == g

# The same construction over a function field.
R = poly_ring(GF(3), ("s",))
s = R.var("s")
sq2 = milnor_square_ring(R, s)
g2 = sq2.poly.constant(sq2.loc.from_base(s * s)) + \
    sq2.poly.var("t") ** 2 * sq2.poly.constant(sq2.loc.fraction(R.one, 1))
e2 = milnor_square_pullback(s * s, g2, sq2)
print("pullback over F3[s]:", e2)
