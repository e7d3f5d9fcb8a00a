"""Intersection lattices and characteristic polynomials, exactly.

Build a few central arrangements, walk their intersection lattices, and
read off Moebius values, characteristic polynomials and Betti numbers.
Everything is exact rational arithmetic; no tolerances anywhere.
"""

from arrpd import (
    Arrangement,
    betti,
    betti0,
    build_lattice,
    char_poly,
    deletion_restriction_check,
    poincare_poly,
)
from arrpd import catalog

# Four planes in 3-space: the three coordinate planes plus their sum.
A = Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
lat = build_lattice(A)
print("levels by codimension:", [len(lat.flats(c)) for c in range(lat.max_codim() + 1)])

mu = lat.mobius()
for fl in lat.flats(2):
    print("codim-2 flat through", bin(lat.atom_mask(fl)), "mu =", mu[fl])

print("chi =", char_poly(A))                      # t^3 - 4t^2 + 6t - 3
print("poincare =", poincare_poly(A))             # [1, 4, 6, 3]
print("b2 =", betti(A, 2), " b2_0 =", betti0(A, 2))

# Deletion-restriction: chi(A) = chi(A') - chi(A^H), for every pivot.
for h in A.forms:
    ok, ca, cd, cr = deletion_restriction_check(A, h)
    assert ok
print("deletion-restriction holds for all four pivots")

# The 21-plane rank-5 arrangement: lattice plus the b2 numbers used in the
# addition-deletion analysis of its distinguished pivot.
er = catalog.edelman_reiner()
print("|ER| =", len(er), " chi(ER) =", char_poly(er))
print("b2(ER) =", betti(er, 2))
