"""Euler and Ziegler restrictions, and the three b2-style equalities.

The Ziegler restriction counts how many hyperplanes cut each trace; its
second Betti number (a sum of rank-two multiarrangement exponent
products) sits between b2_0(A) and a lattice expression, and the three
resulting equalities steer the whole addition-deletion calculus.
"""

from arrpd import Restriction, catalog, restriction, ziegler_restriction
from arrpd.multib2 import b2_equality_check, b2_local_check, rank2_exponents

B = catalog.spog9()
H = (0, 0, 0, 1)

rest = Restriction(B, H)
print("traces:", restriction(B, H).forms)
print("multiplicities:", ziegler_restriction(B, H).mult)

# rank-two multiarrangement exponents are algebraic, not combinatorial:
z = rest.ziegler()
for fl_mult in sorted(z.mult.items()):
    print("trace/mult:", fl_mult)

rep = b2_equality_check(B, H)
print(rep)
assert rep.b2 == 30 and rep.b2_zero == 22 == rep.b2_multirestriction
print("upper (multi-b2) equality holds:", rep.upper_equality)
print("plain b2 equality holds:", rep.b2_equality)

# the equalities are local: they hold globally iff they hold for every
# essentialized localization at a codim-2 flat of the restriction
glob, locals_ = b2_local_check(B, H)
print("local upper flags:", [r.upper_equality for _, r in locals_])

# a rank-two multiarrangement and its certified exponents
from arrpd import Arrangement, Multiarrangement

three = Arrangement(2, [(1, 0), (0, 1), (1, 1)])
m2 = Multiarrangement(three, {f: 2 for f in three.forms})
e = rank2_exponents(m2)
print("three doubled lines:", (e.d1, e.d2), "certified:", e.certificate.free)
