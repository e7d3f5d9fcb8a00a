"""Minimal free resolutions, projective dimension, plus-one shapes.

Resolutions are computed degree by degree: greedy minimal generators,
then syzygies as exact kernels, with surjectivity and minimality policed
at every degree.  Freeness is recognized by a Saito determinant; longer
resolutions are certified up to an explicit degree bound.
"""

from arrpd import Arrangement, Restriction, catalog
from arrpd.resolution import (
    minimal_free_resolution,
    projective_dimension_exact,
    spog_detect,
)

A = Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
print("four planes:", minimal_free_resolution(A))
print("pd =", projective_dimension_exact(A))

print("five generic planes in rank 4: pd =", projective_dimension_exact(catalog.generic(4, 5)))

# deleting one plane from a free arrangement: at most one syzygy appears
B = catalog.spog9()
rep = spog_detect(B)
print("spog9:", rep)
assert rep.is_spog and rep.poexp == (1, 3, 3, 3) and rep.level == 3

# the non-free restriction of the 21-plane free arrangement:
# one relation in degree six against generators 1, 5, 5, 5, 5
er = catalog.edelman_reiner()
rest = Restriction(er, (1, -1, -1, -1, -1)).restricted()
res = minimal_free_resolution(rest, bound=8)
print("ER restriction:", res)
assert res.pd == 1 and sorted(res.steps[1]) == [6]

# lattice-isomorphic pair, different resolutions
print("ziegler1:", minimal_free_resolution(catalog.ziegler1()))
print("ziegler2:", minimal_free_resolution(catalog.ziegler2()))
