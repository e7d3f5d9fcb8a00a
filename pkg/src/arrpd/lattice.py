"""Intersection lattice, Moebius function, characteristic polynomial.

The lattice is built level by level: every flat of codimension k+1 is the
span of a codimension-k flat plus one more hyperplane, so no subset
enumeration is needed.  Each flat carries the bitmask of the hyperplanes
containing it; order relations are then subset tests on integers and the
Moebius recursion is cheap even for largish lattices.
"""

from __future__ import annotations

from fractions import Fraction

from .arrangement import Arrangement, Flat, NotMember, normalize, restriction


class EmptyArrangement(ValueError):
    pass


class IntersectionLattice:
    """All intersections of subsets of the arrangement, graded by codimension."""

    def __init__(self, arr):
        self.arr = arr
        top = Flat.whole_space(arr.dim)
        self.levels = [[top]]
        self.atoms = {top: 0}
        current = [top]
        while current:
            nxt = {}
            for flat in current:
                mask = self.atoms[flat]
                for i, f in enumerate(arr.forms):
                    if mask >> i & 1:
                        continue
                    key = flat.extend(f).rows
                    if key not in nxt:
                        nxt[key] = Flat(arr.dim, key)
            if not nxt:
                break
            level = sorted(nxt.values(), key=lambda fl: fl.rows)
            for flat in level:
                m = 0
                for i, f in enumerate(arr.forms):
                    if flat.contains_form(f):
                        m |= 1 << i
                self.atoms[flat] = m
            self.levels.append(level)
            current = level
        self._mask_index = {self.atoms[fl]: fl for lev in self.levels for fl in lev}
        self._mobius = None

    def flats(self, codim=None):
        if codim is None:
            return [fl for lev in self.levels for fl in lev]
        if codim < 0 or codim >= len(self.levels):
            return []
        return list(self.levels[codim])

    def max_codim(self):
        return len(self.levels) - 1

    def atom_mask(self, flat):
        return self.atoms[flat]

    def localization_forms(self, flat):
        mask = self.atoms[flat]
        return [f for i, f in enumerate(self.arr.forms) if mask >> i & 1]

    def localization(self, flat):
        return Arrangement(self.arr.dim, self.localization_forms(flat), normalized=True)

    def contains(self, upper, lower):
        """Order test: upper >= lower in reverse inclusion (upper is bigger subspace)."""
        return self.atoms[upper] & self.atoms[lower] == self.atoms[upper]

    def flat_of_mask(self, mask):
        return self._mask_index.get(mask)

    def mobius(self):
        """Moebius values, computed top-down from the whole space."""
        if self._mobius is not None:
            return self._mobius
        mu = {}
        mu[self.levels[0][0]] = 1
        for k in range(1, len(self.levels)):
            for fl in self.levels[k]:
                m = self.atoms[fl]
                s = 0
                for j in range(k):
                    for above in self.levels[j]:
                        am = self.atoms[above]
                        if am & m == am:
                            s += mu[above]
                mu[fl] = -s
        self._mobius = mu
        return mu

    def char_poly(self):
        return CharPoly.from_lattice(self)


class CharPoly:
    """chi(t) = sum_X mu(X) t^{dim X}, stored through its Betti numbers.

    chi(t) = sum_i (-1)^i betti[i] t^{l-i}; betti[0] = 1, betti[1] = |A|.
    """

    __slots__ = ("dim", "betti")

    def __init__(self, dim, betti):
        self.dim = dim
        self.betti = tuple(int(b) for b in betti)
        assert len(self.betti) == dim + 1

    @staticmethod
    def from_lattice(lat):
        mu = lat.mobius()
        dim = lat.arr.dim
        betti = [0] * (dim + 1)
        for k, lev in enumerate(lat.levels):
            betti[k] = (-1) ** k * sum(mu[fl] for fl in lev)
        return CharPoly(dim, betti)

    def coefficients(self):
        """Integer coefficients of chi in t, highest power first."""
        return [(-1) ** i * b for i, b in enumerate(self.betti)]

    def __eq__(self, other):
        return (
            isinstance(other, CharPoly)
            and self.dim == other.dim
            and self.betti == other.betti
        )

    def __hash__(self):
        return hash((self.dim, self.betti))

    def eval(self, t):
        t = Fraction(t)
        acc = Fraction(0)
        for c in self.coefficients():
            acc = acc * t + c
        return acc

    def reduced(self):
        """Coefficients of chi/(t-1), highest power first; exact division."""
        coeffs = self.coefficients()
        out = []
        acc = 0
        for c in coeffs[:-1]:
            acc += c
            out.append(acc)
        if coeffs[-1] + acc != 0:
            raise EmptyArrangement("chi is not divisible by t-1")
        return out

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coefficients()):
            if c == 0:
                continue
            p = self.dim - i
            term = f"t^{p}" if p > 1 else ("t" if p == 1 else "")
            if not term:
                parts.append(str(c))
            elif c == 1:
                parts.append(term)
            elif c == -1:
                parts.append("-" + term)
            else:
                parts.append(f"{c}*{term}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"CharPoly({self})"


def build_lattice(arr):
    return IntersectionLattice(arr)


def char_poly(arr_or_lat):
    if isinstance(arr_or_lat, IntersectionLattice):
        return arr_or_lat.char_poly()
    return IntersectionLattice(arr_or_lat).char_poly()


def _the_arr(arr_or_lat):
    return arr_or_lat.arr if isinstance(arr_or_lat, IntersectionLattice) else arr_or_lat


def reduced_char_poly(arr_or_lat):
    """chi_0 = chi/(t-1) as an integer coefficient list, highest power first."""
    if len(_the_arr(arr_or_lat).forms) == 0:
        raise EmptyArrangement("empty arrangement has no reduced characteristic polynomial")
    return char_poly(arr_or_lat).reduced()


def betti(arr_or_lat, i):
    cp = char_poly(arr_or_lat)
    if i < 0 or i > cp.dim:
        raise IndexError(f"betti index {i} out of range 0..{cp.dim}")
    return cp.betti[i]


def betti0(arr_or_lat, i):
    """i-th coefficient (unsigned) of chi_0; betti0(A,2) = b2(A) - |A| + 1."""
    red = reduced_char_poly(arr_or_lat)
    if i < 0 or i >= len(red):
        raise IndexError(f"reduced betti index {i} out of range")
    return (-1) ** i * red[i]


def poincare_poly(arr_or_lat):
    """Coefficients of pi(t) = sum b_i t^i, constant term first."""
    return list(char_poly(arr_or_lat).betti)


def deletion_restriction_check(arr, form):
    """chi(A) = chi(A') - chi(A^H); returns (ok, chi, chi', chi^H)."""
    h = normalize(form)
    if h not in arr._key[1]:
        raise NotMember(f"{h} not in arrangement")
    ca = char_poly(arr)
    cd = char_poly(arr.delete(h))
    cr = char_poly(restriction(arr, h))
    lhs = ca.coefficients()
    rhs = [a - b for a, b in zip(cd.coefficients(), [0] + cr.coefficients())]
    return lhs == rhs, ca, cd, cr


def complete_intersection_flats_on(arr, form):
    """Codim-2 flats on H whose localization is exactly two hyperplanes."""
    h = normalize(form)
    if h not in arr._key[1]:
        raise NotMember(f"{h} not in arrangement")
    lat = IntersectionLattice(arr)
    out = []
    for fl in lat.flats(2):
        mask = lat.atom_mask(fl)
        if bin(mask).count("1") == 2 and fl.contains_form(h):
            out.append(fl)
    return out


def int_poly_divides(small, big):
    """Divisibility of integer polynomials given as coefficient lists (highest first)."""
    small = list(small)
    big = list(big)
    while small and small[0] == 0:
        small = small[1:]
    if not small:
        return not any(big)
    rem = [Fraction(c) for c in big]
    lead = Fraction(small[0])
    k = len(small)
    while len(rem) >= k:
        if not rem[0]:
            rem = rem[1:]
            continue
        q = rem[0] / lead
        for i in range(k):
            rem[i] -= q * small[i]
        rem = rem[1:]
    return not any(rem)
