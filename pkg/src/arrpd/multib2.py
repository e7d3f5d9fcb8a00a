"""Rank-two multiarrangement exponents and the b2 bookkeeping.

Rank-two multiarrangements are always free; their exponents (d1, d2) with
d1 + d2 = |m| are found by the least degree carrying a nonzero logarithmic
derivation and certified by the Saito determinant.  Summing d1*d2 over the
codimension-two flats gives b2 of a multiarrangement, which feeds the
three equality tests relating an arrangement to its Ziegler restriction:

  plain:  b2(A)  = b2(A^H) + |A^H| (|A| - |A^H|)
  upper:  b2_0(A) = b2(A^H, m^H)          (the multi-b2-equality)
  lower:  b2(A^H, m^H) = b2(A^H) + (|A^H| - 1)(|A| - |A^H| - 1)

The plain equality holds exactly when upper and lower both hold.
"""

from __future__ import annotations

from .arrangement import (
    Multiarrangement,
    RankError,
    Restriction,
    as_multi,
    essentialize_multi,
    normalize,
)
from .derivations import graded_basis, saito_check
from .lattice import IntersectionLattice, betti, betti0


class Rank2Exponents:
    __slots__ = ("d1", "d2", "certificate")

    def __init__(self, d1, d2, certificate):
        assert d1 <= d2
        self.d1 = d1
        self.d2 = d2
        self.certificate = certificate

    def __iter__(self):
        return iter((self.d1, self.d2))

    def __repr__(self):
        return f"Rank2Exponents({self.d1}, {self.d2})"


def rank2_exponents(data, certify=True):
    """Exponents of an (essentially) rank-two multiarrangement.

    Searches degrees upward for the first nonzero piece, then certifies
    the complementary-degree partner with the Saito determinant.  With
    certify=False, simple rank-two arrangements use the classical closed
    form (1, n-1) and skip the certificate.
    """
    multi = as_multi(data)
    ess, _ = essentialize_multi(multi)
    if ess.dim != 2:
        raise RankError(f"essential rank is {ess.dim}, need 2")
    total = ess.size()
    if not certify and ess.is_simple():
        n = len(ess.base.forms)
        return Rank2Exponents(1, n - 1, None)
    d1 = None
    theta1 = None
    for d in range(total // 2 + 1):
        basis = graded_basis(ess, d)
        if basis:
            d1 = d
            theta1 = basis[0]
            break
    assert d1 is not None, "rank-two module must have an element by degree |m|/2"
    d2 = total - d1
    for theta2 in graded_basis(ess, d2):
        cert = saito_check(ess, [theta1, theta2])
        if cert.free:
            return Rank2Exponents(d1, d2, cert)
    raise AssertionError("no Saito partner found; rank-two modules are free")


def b2_multi(data):
    """b2 of a multiarrangement: sum of d1*d2 over codimension-two flats."""
    multi = as_multi(data)
    if multi.base.rank() < 2:
        return 0
    lat = IntersectionLattice(multi.base)
    total = 0
    for fl in lat.flats(2):
        local = multi.localize(fl)
        d1, d2 = rank2_exponents(local, certify=False)
        total += d1 * d2
    return total


class B2Report:
    """All b2-style integers for a pair (A, H) plus the equality flags."""

    __slots__ = (
        "n",
        "n_restricted",
        "b2",
        "b2_restricted",
        "b2_multirestriction",
        "b2_zero",
        "b2_equality",
        "upper_equality",
        "lower_equality",
    )

    def __init__(self, n, n_restricted, b2, b2_restricted, b2_multirestriction, b2_zero):
        self.n = n
        self.n_restricted = n_restricted
        self.b2 = b2
        self.b2_restricted = b2_restricted
        self.b2_multirestriction = b2_multirestriction
        self.b2_zero = b2_zero
        self.b2_equality = b2 == b2_restricted + n_restricted * (n - n_restricted)
        self.upper_equality = b2_zero == b2_multirestriction
        self.lower_equality = b2_multirestriction == b2_restricted + (
            n_restricted - 1
        ) * (n - n_restricted - 1)
        assert self.b2_equality == (self.upper_equality and self.lower_equality), (
            "b2 equality must match upper and lower together"
        )

    def to_dict(self):
        return {
            "n": self.n,
            "n_restricted": self.n_restricted,
            "b2": self.b2,
            "b2_restricted": self.b2_restricted,
            "b2_multirestriction": self.b2_multirestriction,
            "b2_zero": self.b2_zero,
            "b2_equality": self.b2_equality,
            "upper_equality": self.upper_equality,
            "lower_equality": self.lower_equality,
        }

    def __repr__(self):
        flags = []
        if self.b2_equality:
            flags.append("b2")
        if self.upper_equality:
            flags.append("upper")
        if self.lower_equality:
            flags.append("lower")
        return f"B2Report(b2={self.b2}, rest={self.b2_restricted}, multi={self.b2_multirestriction}, zero={self.b2_zero}, holds={'+'.join(flags) or 'none'})"


def b2_equality_check(arr, form):
    """Compute the full b2 ledger for the pair (A, H)."""
    rest = Restriction(arr, form)
    return B2Report(
        n=len(arr.forms),
        n_restricted=len(rest.sub.forms),
        b2=betti(arr, 2),
        b2_restricted=betti(rest.sub, 2) if rest.sub.dim >= 2 else 0,
        b2_multirestriction=b2_multi(rest.ziegler()),
        b2_zero=betti0(arr, 2),
    )


def codim3_flats_on(arr, form, lat=None):
    """Flats of codimension three (in V) lying on H: the codimension-two
    flats of the restricted arrangement."""
    h = normalize(form)
    lat = lat or IntersectionLattice(arr)
    return [fl for fl in lat.flats(3) if fl.contains_form(h)]


def b2_local_check(arr, form):
    """Per-flat equality reports over the codim-2 flats of A^H.

    The global equalities hold exactly when every localized essential pair
    satisfies them; returns (global B2Report, list of (flat, B2Report)).
    """
    h = normalize(form)
    glob = b2_equality_check(arr, h)
    lat = IntersectionLattice(arr)
    locals_ = []
    for fl in codim3_flats_on(arr, h, lat):
        sub = lat.localization(fl)
        ess, emb = essentialize_multi(as_multi(sub))
        hsmall = normalize(emb.push(h))
        locals_.append((fl, b2_equality_check(ess.base, hsmall)))
    return glob, locals_
