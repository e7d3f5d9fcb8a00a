"""Sparse multivariate polynomials over the rationals, with fixed monomial order.

Everything downstream (membership systems, Saito determinants, resolutions)
reduces to exact arithmetic on these objects, so coefficients are always
`fractions.Fraction` and no tolerance appears anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def monomials(nvars, degree):
    """All exponent tuples of total degree `degree`, graded-lex descending.

    The order is fixed globally: within one degree, x1-heavy monomials come
    first.  Length of the result is C(degree+nvars-1, nvars-1).
    """
    assert nvars >= 0
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars, degree):
    """Map exponent tuple -> position in monomials(nvars, degree)."""
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


def monomial_count(nvars, degree):
    if degree < 0:
        return 0
    if nvars == 0:
        return 1 if degree == 0 else 0
    return comb(degree + nvars - 1, nvars - 1)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Poly:
    """Sparse polynomial: dict from exponent tuple to nonzero Fraction."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        if terms is None:
            self.terms = {}
        else:
            self.terms = {m: c for m, c in terms.items() if c}

    @staticmethod
    def zero(n):
        return Poly(n)

    @staticmethod
    def const(n, c):
        c = Fraction(c)
        return Poly(n, {(0,) * n: c} if c else {})

    @staticmethod
    def variable(n, i):
        e = [0] * n
        e[i] = 1
        return Poly(n, {tuple(e): _ONE})

    @staticmethod
    def from_linear(coeffs):
        """Linear polynomial sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(n, terms)

    @staticmethod
    def monomial(n, expo, c=1):
        c = Fraction(c)
        return Poly(n, {tuple(expo): c} if c else {})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        assert self.n == other.n
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, _ZERO) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        p = Poly.__new__(Poly)
        p.n, p.terms = self.n, t
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly.__new__(Poly)
        p.n = self.n
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.const(self.n, -Fraction(other)))

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly.zero(self.n)
        p = Poly.__new__(Poly)
        p.n = self.n
        p.terms = {m: c * v for m, v in self.terms.items()}
        return p

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        assert self.n == other.n
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero(self.n)
        if len(a) > len(b):
            a, b = b, a
        # int fast path: most inputs are integer-normalized
        if all(c.denominator == 1 for c in a.values()) and all(
            c.denominator == 1 for c in b.values()
        ):
            ai = [(m, c.numerator) for m, c in a.items()]
            bi = [(m, c.numerator) for m, c in b.items()]
            acc = {}
            for ma, ca in ai:
                for mb, cb in bi:
                    k = mono_mul(ma, mb)
                    acc[k] = acc.get(k, 0) + ca * cb
            p = Poly.__new__(Poly)
            p.n = self.n
            p.terms = {m: Fraction(c) for m, c in acc.items() if c}
            return p
        acc = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                k = mono_mul(ma, mb)
                s = acc.get(k, _ZERO) + ca * cb
                acc[k] = s
        p = Poly.__new__(Poly)
        p.n = self.n
        p.terms = {m: c for m, c in acc.items() if c}
        return p

    __rmul__ = __mul__

    def __pow__(self, k):
        assert k >= 0
        result = Poly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def mul_monomial(self, expo, c=1):
        c = Fraction(c)
        if not c:
            return Poly.zero(self.n)
        p = Poly.__new__(Poly)
        p.n = self.n
        p.terms = {mono_mul(m, expo): c * v for m, v in self.terms.items()}
        return p

    def coeff(self, expo):
        return self.terms.get(tuple(expo), _ZERO)

    def eval(self, point):
        """Evaluate at a rational point (tuple of Fractions/ints)."""
        total = _ZERO
        for m, c in self.terms.items():
            v = c
            for e, x in zip(m, point):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def substitute_var(self, j, replacement):
        """Substitute x_j := replacement (a Poly in the same ring)."""
        out = Poly.zero(self.n)
        # group by exponent of x_j, cache powers
        powers = {0: Poly.const(self.n, 1)}

        def power(e):
            if e not in powers:
                powers[e] = power(e - 1) * replacement
            return powers[e]

        for m, c in self.terms.items():
            e = m[j]
            rest = list(m)
            rest[j] = 0
            out = out + power(e).mul_monomial(tuple(rest), c)
        return out

    def drop_var(self, j):
        """Forget variable j (must not occur); returns Poly in n-1 variables."""
        terms = {}
        for m, c in self.terms.items():
            assert m[j] == 0, "variable still occurs"
            terms[m[:j] + m[j + 1 :]] = c
        return Poly(self.n - 1, terms)

    def insert_var(self, j):
        """Inverse of drop_var: reinterpret in n+1 variables with x_j absent."""
        terms = {}
        for m, c in self.terms.items():
            terms[m[:j] + (0,) + m[j:]] = c
        return Poly(self.n + 1, terms)

    def divide_linear(self, coeffs):
        """Exact division by the linear form sum(coeffs[i] x_i).

        Returns the quotient Poly, or None when the form does not divide.
        """
        alpha = [Fraction(c) for c in coeffs]
        j = max(range(self.n), key=lambda i: (abs(alpha[i]), -i))
        if not alpha[j]:
            raise ZeroDivisionError("zero linear form")
        if self.is_zero():
            return Poly.zero(self.n)
        # long division in x_j: view P as sum_k p_k x_j^k with p_k in the other vars
        by_deg = {}
        for m, c in self.terms.items():
            e = m[j]
            rest = list(m)
            rest[j] = 0
            by_deg.setdefault(e, {})[tuple(rest)] = c
        dmax = max(by_deg)
        beta = {}  # remaining part of alpha as exponent dict
        for i, c in enumerate(alpha):
            if i != j and c:
                e = [0] * self.n
                e[i] = 1
                beta[tuple(e)] = c
        cj = alpha[j]
        quot = {}  # exponent -> coeff, quotient terms
        # peel off leading x_j powers
        for e in range(dmax, 0, -1):
            lead = by_deg.pop(e, None)
            if not lead:
                continue
            for m, c in lead.items():
                q = c / cj
                qm = list(m)
                qm[j] = e - 1
                qm = tuple(qm)
                quot[qm] = quot.get(qm, _ZERO) + q
                # subtract q * x_j^(e-1) * beta from lower layers
                for bm, bc in beta.items():
                    mm = mono_mul(m, bm)
                    layer = by_deg.setdefault(e - 1, {})
                    s = layer.get(mm, _ZERO) - q * bc
                    if s:
                        layer[mm] = s
                    else:
                        layer.pop(mm, None)
        rem = by_deg.get(0, {})
        if any(rem.values()):
            return None
        return Poly(self.n, quot)

    def div_exact(self, g):
        """Exact division by an arbitrary nonzero Poly; None if not divisible."""
        assert not g.is_zero()
        n = self.n
        gl = max(g.terms, key=_grlex_key)
        glc = g.terms[gl]
        rem = Poly(n, dict(self.terms))
        quot = Poly.zero(n)
        while rem.terms:
            rl = max(rem.terms, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(rl, gl))
            if any(d < 0 for d in diff):
                return None
            c = rem.terms[rl] / glc
            t = Poly.monomial(n, diff, c)
            quot = quot + t
            rem = rem - t * g
        return quot

    def __repr__(self):
        return f"Poly({self.n}, {poly_str(self)})"

    def __str__(self):
        return poly_str(self)


def _grlex_key(m):
    return (sum(m), m)


_VARNAMES = "xyzwuvabc"


def var_name(i, n):
    if n <= len(_VARNAMES):
        return _VARNAMES[i]
    return f"x{i + 1}"


def poly_str(p, names=None):
    if p.is_zero():
        return "0"
    if names is None:
        names = [var_name(i, p.n) for i in range(p.n)]
    parts = []
    for m in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        body = "*".join(factors)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


def poly_det(grid):
    """Determinant of a square grid of Polys.

    Expansion over column subsets (shared-minor dynamic programming); fine
    for the small fixed sizes that occur here (<= 6).
    """
    k = len(grid)
    assert all(len(row) == k for row in grid)
    if k == 0:
        raise ValueError("empty grid")
    n = grid[0][0].n
    # dets[mask] = det of rows 0..r-1 against column set `mask` (popcount r)
    dets = {0: Poly.const(n, 1)}
    for r in range(k):
        new = {}
        for mask, sub in dets.items():
            if sub.is_zero():
                continue
            pos = 0
            for j in range(k):
                bit = 1 << j
                if mask & bit:
                    pos += 1
                    continue
                entry = grid[r][j]
                if entry.is_zero():
                    continue
                contrib = entry * sub if (r + pos) % 2 == 0 else entry * sub.scale(-1)
                m2 = mask | bit
                if m2 in new:
                    new[m2] = new[m2] + contrib
                else:
                    new[m2] = contrib
        dets = new
        if not dets:
            return Poly.zero(n)
    return dets.get((1 << k) - 1, Poly.zero(n))


def product(polys, n=None):
    """Product of an iterable of Polys (1 for the empty product)."""
    polys = list(polys)
    if not polys:
        assert n is not None
        return Poly.const(n, 1)
    acc = polys[0]
    for p in polys[1:]:
        acc = acc * p
    return acc
