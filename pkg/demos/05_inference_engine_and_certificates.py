"""The theorem engine: combinatorial pd facts with replayable proofs.

Rules consume facts and emit facts; every emitted fact carries its
premise tree.  Serialized certificates replay from scratch: leaves are
recomputed, inference steps are re-validated, and tampering is caught.
"""

import json

from arrpd import catalog
from arrpd.engine import Engine
from arrpd.facts import Fact
from arrpd.verify import ReplayError, replay

eng = Engine()

# rank 3 is decided outright: upper b2 equality against the Ziegler side
lo, hi, facts = eng.infer(catalog.generic(3, 4))
print("four generic lines: pd =", lo, "by", facts[0].rule)

# freeness through the Ziegler restriction, no resolution involved
lo, hi, facts = eng.infer(catalog.edelman_reiner(), depth=0)
print("edelman-reiner: pd =", lo, "by", facts[0].rule)

# inductive classes: pd = 2 for the braid plus one plane, combinatorially
A = catalog.braid5().add((1, 1, 1, 1))
f = eng.ipd_fact(A)
print("braid5 + sum: class index", f.value, "with note", f.note)

lo, hi, facts = eng.infer(A)
cert = facts[0].certificate_json()
print("certificate bytes:", len(cert))

# replay it, then tamper and watch the replay fail
replay(facts[0], engine=eng)
print("certificate replays cleanly")
broken = json.loads(cert)["certificate"]
broken["value"] = 0
try:
    replay(Fact.from_dict(broken), engine=eng)
except ReplayError as e:
    print("tampered certificate rejected:", e)

# negative control: with maximal projective dimension the surjectivity
# rule refuses even though the b2 equality holds
g = catalog.generic(4, 5)
nm = eng.nmpd_fact(g, (1, 0, 0, 0))
print("five generic planes NMPD along x1:", nm.value)
