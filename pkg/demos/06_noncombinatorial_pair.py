"""A lattice-isomorphic pair with different module behavior.

Two arrangements of nine lines share their intersection lattice (same
characteristic polynomial, same double/triple point counts), yet the
first has a degree-five derivation killing x and the second does not:
the surjectivity of the restriction map onto x = 0 differs across the
pair, so it is not a lattice invariant.  The geometric source: the six
triple points lie on a conic for the first arrangement only.
"""

from arrpd import build_lattice, catalog, char_poly
from arrpd.derivations import generator_degrees, graded_dim, mdr, surjectivity
from arrpd.linalg import nullspace_fraction, rank

z1, z2 = catalog.ziegler1(), catalog.ziegler2()
H = (1, 0, 0)

print("chi agree:", char_poly(z1) == char_poly(z2))
for name, arr in (("first", z1), ("second", z2)):
    lat = build_lattice(arr)
    sizes = sorted(bin(lat.atom_mask(f)).count("1") for f in lat.flats(2))
    print(name, "codim-2 multiplicities:", sizes)

print("dim D_H(first)_5  =", graded_dim(z1, 5, annihilate=H))
print("dim D_H(second)_5 =", graded_dim(z2, 5, annihilate=H))
print("mdr:", mdr(z1, H), "vs", mdr(z2, H))
print("generators:", generator_degrees(z1)[0], "vs", generator_degrees(z2)[0])
print("restriction map onto x=0 surjective:", surjectivity("euler", z1, H)[0],
      "vs", surjectivity("euler", z2, H)[0])

# the conic test behind the difference
for name, arr in (("first", z1), ("second", z2)):
    lat = build_lattice(arr)
    pts = []
    for fl in lat.flats(2):
        if bin(lat.atom_mask(fl)).count("1") == 3:
            pts.append(nullspace_fraction([list(r) for r in fl.rows], 3)[0])
    veronese = [[a * a, a * b, a * c, b * b, b * c, c * c] for (a, b, c) in pts]
    print(name, "conic through the triple points:", rank(veronese, 6) < 6)
