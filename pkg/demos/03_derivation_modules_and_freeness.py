"""Graded pieces of logarithmic derivation modules and Saito certificates.

A derivation is logarithmic when it maps each defining form into its own
ideal; the graded pieces are exact kernels.  A square of candidates whose
coefficient determinant equals the defining polynomial (up to a scalar)
is a certified basis: that settles freeness with its exponents.
"""

from arrpd import Arrangement, catalog
from arrpd.derivations import (
    euler_derivation,
    find_free_basis,
    graded_dim,
    mdr,
    membership,
    minimal_generators,
    split_check,
)

A = Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])

print("graded dims of D(A):", [graded_dim(A, d) for d in range(5)])
gens, certified = minimal_generators(A)
print("minimal generator degrees:", sorted(d for d, _ in gens), "certified to", certified)

theta = euler_derivation(3)
print("Euler derivation is logarithmic:", membership(theta, A))
print("split off the Euler part works to degree 5:", split_check(A, (1, 1, 1), 5))
print("least degree killing x+y+z:", mdr(A, (1, 1, 1)))

# not free: the search is honest about it
print("Saito basis search:", find_free_basis(A))

# free examples with certified exponents
for name in ("boolean4", "braid5", "free1333"):
    cert = find_free_basis(catalog.get(name))
    print(f"{name}: exponents {cert.exponents}, determinant degree {cert.det.degree()}")

# the 21-plane example: certificate at exponents (1, 5, 5, 5, 5)
cert = find_free_basis(catalog.edelman_reiner(), bound=5)
print("edelman-reiner:", cert)
