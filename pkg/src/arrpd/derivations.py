"""Graded pieces of logarithmic derivation modules, exactly.

A derivation of degree d is a tuple of degree-d polynomials (the
coefficients of the partials).  The membership condition "theta(alpha)
divisible by alpha^m" is linearized degree by degree: expand theta(alpha)
against the quotient basis of S_d / alpha^m S_{d-m} and require every
coordinate to vanish.  Kernels of those systems are the graded pieces.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .arrangement import (
    Arrangement,
    Multiarrangement,
    Restriction,
    as_multi,
    normalize,
    pivot_of,
)
from .exact import Poly, mono_mul, monomial_count, monomial_index, monomials, poly_det
from .linalg import SpanBasis, nullspace


class NotLogarithmic(ValueError):
    pass


class Derivation:
    """Homogeneous derivation sum_i components[i] * d/dx_i."""

    __slots__ = ("n", "components", "deg")

    def __init__(self, components, deg=None):
        self.components = tuple(components)
        self.n = len(self.components)
        if deg is None:
            degs = {p.degree() for p in self.components if not p.is_zero()}
            assert len(degs) <= 1, "inhomogeneous derivation"
            deg = degs.pop() if degs else -1
        self.deg = deg

    @staticmethod
    def euler(n):
        return Derivation([Poly.variable(n, i) for i in range(n)], deg=1)

    @staticmethod
    def from_vec(n, d, vec):
        md = monomial_count(n, d)
        mons = monomials(n, d)
        comps = []
        for i in range(n):
            terms = {}
            for k in range(md):
                c = Fraction(vec[i * md + k])
                if c:
                    terms[mons[k]] = c
            comps.append(Poly(n, terms))
        return Derivation(comps, deg=d)

    def to_vec(self, d=None):
        d = self.deg if d is None else d
        md = monomial_count(self.n, d)
        idx = monomial_index(self.n, d)
        vec = [Fraction(0)] * (self.n * md)
        for i, p in enumerate(self.components):
            for m, c in p.terms.items():
                vec[i * md + idx[m]] = c
        return vec

    def is_zero(self):
        return all(p.is_zero() for p in self.components)

    def value_on(self, form):
        """theta(alpha) for a linear form alpha."""
        acc = Poly.zero(self.n)
        for a, p in zip(form, self.components):
            if a:
                acc = acc + p.scale(a)
        return acc

    def apply(self, poly):
        """theta(f) for a polynomial f."""
        acc = Poly.zero(self.n)
        for i, comp in enumerate(self.components):
            if comp.is_zero():
                continue
            dterms = {}
            for m, c in poly.terms.items():
                if m[i]:
                    dm = list(m)
                    dm[i] -= 1
                    key = tuple(dm)
                    dterms[key] = dterms.get(key, Fraction(0)) + c * m[i]
            acc = acc + comp * Poly(self.n, dterms)
        return acc

    def scale(self, c):
        return Derivation([p.scale(c) for p in self.components], deg=self.deg)

    def __add__(self, other):
        assert self.n == other.n
        return Derivation([a + b for a, b in zip(self.components, other.components)])

    def __repr__(self):
        return f"Derivation(deg={self.deg}, [" + ", ".join(str(p) for p in self.components) + "])"


def membership(theta, data):
    """Is theta logarithmic for the (multi)arrangement? Exact divisibility."""
    multi = as_multi(data)
    for f, m in multi.pairs():
        val = theta.value_on(f)
        for _ in range(m):
            if val.is_zero():
                break
            val = val.divide_linear(f)
            if val is None:
                return False
    return True


# ---------------------------------------------------------------------------
# membership linear systems
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _neg_beta_power(form, e):
    """(-beta)^e where beta is the pivot-eliminated remainder of the form.

    beta lives in the ring without the pivot variable; coefficients carry
    the 1/a_j normalization so that x_j^1 -> (y - beta)/a_j has beta here
    scaled by a_j already: we return (-(sum_{k!=j} a_k x_k))^e / a_j^e.
    """
    j = pivot_of(form)
    aj = Fraction(form[j])
    coeffs = [-Fraction(a) / aj for i, a in enumerate(form) if i != j]
    base = Poly.from_linear(coeffs)
    return base**e


@lru_cache(maxsize=None)
def _reduce_table(n, d, form, mult):
    """Per-monomial reduction into the quotient basis of S_d/(alpha^mult).

    Quotient basis: layers i = 0..mult-1 of monomials of degree d-i in the
    non-pivot variables.  Returns (qdim, table) where table[k] maps quotient
    index -> Fraction for the k-th monomial of S_d.
    """
    j = pivot_of(form)
    mons = monomials(n, d)
    offsets = []
    total = 0
    for i in range(mult):
        offsets.append(total)
        total += monomial_count(n - 1, d - i)
    layer_index = [monomial_index(n - 1, d - i) for i in range(mult)]
    table = []
    for mu in mons:
        e = mu[j]
        rest = mu[:j] + mu[j + 1 :]
        entry = {}
        for i in range(min(mult, e + 1)):
            poly = _neg_beta_power(form, e - i)
            scale = comb(e, i)
            idx = layer_index[i]
            for m2, c in poly.terms.items():
                q = offsets[i] + idx[mono_mul(m2, rest)]
                entry[q] = entry.get(q, Fraction(0)) + scale * c
        if e >= mult:
            # terms with y-exponent >= mult are killed in the quotient;
            # only i < mult layers above survive
            pass
        table.append(entry)
    return total, table


def _hyperplane_rows(n, d, form, mult):
    md = monomial_count(n, d)
    qdim, table = _reduce_table(n, d, form, mult)
    rows = [dict() for _ in range(qdim)]
    for k in range(md):
        red = table[k]
        for i, ai in enumerate(form):
            if not ai:
                continue
            col = i * md + k
            for q, c in red.items():
                rows[q][col] = rows[q].get(col, Fraction(0)) + ai * c
    return rows


def _annihilator_rows(n, d, form):
    md = monomial_count(n, d)
    rows = []
    for k in range(md):
        row = {}
        for i, ai in enumerate(form):
            if ai:
                row[i * md + k] = Fraction(ai)
        rows.append(row)
    return rows


def graded_basis(data, d, annihilate=None, force=None):
    """Basis of the degree-d piece of D(A), D(A,m) or D_H(A).

    `annihilate`: a member hyperplane H; adds theta(alpha_H) = 0, giving
    D_H(A).  Basis vectors are primitive-integer derivations in the
    canonical kernel order.
    """
    multi = as_multi(data)
    n = multi.dim
    h = normalize(annihilate) if annihilate is not None else None
    rows = []
    for f, m in multi.pairs():
        if h is not None and f == h:
            continue  # the equality rows below are stronger
        rows.extend(_hyperplane_rows(n, d, f, m))
    if h is not None:
        assert h in multi.base, "annihilator must be a member hyperplane"
        rows.extend(_annihilator_rows(n, d, h))
    md = monomial_count(n, d)
    vecs = nullspace(rows, n * md, force=force)
    return [Derivation.from_vec(n, d, v) for v in vecs]


def graded_dim(data, d, annihilate=None):
    return len(graded_basis(data, d, annihilate=annihilate))


def euler_derivation(n):
    return Derivation.euler(n)


def split_check(arr, form, dmax):
    """dim D(A)_d = dim S_{d-1} + dim D_H(A)_d for all d <= dmax."""
    assert len(arr.forms) > 0
    n = arr.dim
    for d in range(dmax + 1):
        lhs = graded_dim(arr, d)
        rhs = (monomial_count(n, d - 1) if d >= 1 else 0) + graded_dim(
            arr, d, annihilate=form
        )
        if lhs != rhs:
            return False
    return True


def mdr(arr, form, cap=None):
    """Least degree with a nonzero derivation killing the pivot form."""
    h = normalize(form)
    if h not in arr._key[1]:
        from .arrangement import NotMember

        raise NotMember(f"{h} not in arrangement")
    cap = cap if cap is not None else len(arr.forms) + arr.dim
    for d in range(cap + 1):
        if graded_dim(arr, d, annihilate=h) > 0:
            return d
    raise RuntimeError(f"no kernel derivation found up to degree {cap}")


# ---------------------------------------------------------------------------
# Saito certificates
# ---------------------------------------------------------------------------


class SaitoCertificate:
    """Determinant test for a candidate homogeneous basis.

    The determinant of the coefficient matrix is always divisible by the
    defining polynomial; the candidates are a basis exactly when the
    quotient is a nonzero constant.
    """

    __slots__ = ("data", "candidates", "det", "quotient", "free", "exponents")

    def __init__(self, data, candidates, det, quotient):
        self.data = data
        self.candidates = tuple(candidates)
        self.det = det
        self.quotient = quotient
        self.free = quotient is not None and not quotient.is_zero() and quotient.degree() == 0
        self.exponents = (
            tuple(sorted(th.deg for th in candidates)) if self.free else None
        )

    def __repr__(self):
        if self.free:
            return f"SaitoCertificate(free, exp={self.exponents})"
        return "SaitoCertificate(not certified)"


def saito_check(data, candidates):
    """Run Saito's determinant test on `dim` candidate derivations."""
    multi = as_multi(data)
    n = multi.dim
    assert len(candidates) == n, "need exactly dim candidates"
    for th in candidates:
        if not membership(th, multi):
            raise NotLogarithmic("candidate fails the membership test")
    grid = [list(th.components) for th in candidates]
    det = poly_det(grid)
    if det.is_zero():
        return SaitoCertificate(multi, candidates, det, None)
    quotient = det
    for f, m in multi.pairs():
        for _ in range(m):
            quotient = quotient.divide_linear(f)
            assert quotient is not None, "determinant not divisible by defining polynomial"
    return SaitoCertificate(multi, candidates, det, quotient)


_EVAL_POINTS = (
    (2, 3, 5, 7, 11, 13, 17, 19),
    (13, 17, 19, 23, 29, 31, 37, 41),
    (97, 2, 3, 5, 7, 11, 13, 17),
    (101, 31, 57, 89, 23, 43, 71, 11),
    (1, 64, 129, 1031, 2053, 4099, 8209, 16411),
)


def find_free_basis(data, bound=None):
    """Greedy low-degree search for a Saito basis.

    Returns a free SaitoCertificate or None (inconclusive, not a disproof).
    Candidates are taken degree by degree, sparsest kernel vectors first.
    Independence over the polynomial ring is pre-screened by evaluating the
    coefficient matrix at one rational point (rank at a point never exceeds
    the rank over the ring); the determinant settles the verdict.
    """
    multi = as_multi(data)
    n = multi.dim
    total = multi.size()
    if n == 0:
        return SaitoCertificate(multi, [], Poly.const(0, 1), Poly.const(0, 1))
    bound = total if bound is None else bound
    for point in _EVAL_POINTS:
        pt = point[:n]
        # a point on a hyperplane caps the evaluation rank below n
        if any(sum(a * x for a, x in zip(f, pt)) == 0 for f in multi.base.forms):
            continue
        chosen = []
        span = SpanBasis(n)
        for d in range(0, bound + 1):
            missing = n - len(chosen)
            if missing == 0:
                break
            if sum(c.deg for c in chosen) + d * missing > total:
                break  # no exponent multiset can complete from here
            basis = graded_basis(multi, d)
            basis.sort(key=lambda th: sum(len(p.terms) for p in th.components))
            for th in basis:
                if len(chosen) == n:
                    break
                if sum(c.deg for c in chosen) + th.deg > total:
                    continue
                if span.add([p.eval(pt) for p in th.components]) is not None:
                    chosen.append(th)
        if len(chosen) == n and sum(c.deg for c in chosen) == total:
            cert = saito_check(multi, chosen)
            if cert.free:
                return cert
    return None


# ---------------------------------------------------------------------------
# restriction maps
# ---------------------------------------------------------------------------


def restrict_derivation(rest, theta):
    """Euler restriction of a derivation: drop the pivot component, reduce."""
    comps = [
        rest.reduce_poly(p) for i, p in enumerate(theta.components) if i != rest.pivot
    ]
    return Derivation(comps, deg=theta.deg)


def restriction_image(kind, arr, form, d):
    """Image of the degree-d restriction map, with exact dimensions.

    kind "euler":   D(A)_d   -> D(A^H)_d
    kind "ziegler": D_H(A)_d -> D(A^H, m^H)_d
    Returns dict with image/target bases and dimensions.
    """
    assert kind in ("euler", "ziegler")
    rest = Restriction(arr, form)
    if kind == "euler":
        source = graded_basis(arr, d)
        target = graded_basis(rest.restricted(), d)
    else:
        source = graded_basis(arr, d, annihilate=rest.alpha)
        target = graded_basis(rest.ziegler(), d)
    m = rest.sub.dim
    md = monomial_count(m, d)
    span = SpanBasis(m * md)
    image = []
    for th in source:
        r = restrict_derivation(rest, th)
        if span.add(r.to_vec(d)) is not None:
            image.append(r)
    return {
        "degree": d,
        "image_dim": span.dim,
        "target_dim": len(target),
        "image": image,
        "target": target,
        "source_dim": len(source),
    }


def surjectivity(kind, arr, form, gen_bound=None):
    """Exact surjectivity of the Euler or Ziegler restriction map.

    The image submodule has degree-d piece equal to the image of the
    degree-d source piece, so the map is onto iff image and target
    dimensions agree up to the largest minimal generator degree of the
    target.  Returns (verdict, report).
    """
    assert kind in ("euler", "ziegler")
    rest = Restriction(arr, form)
    target_data = rest.restricted() if kind == "euler" else rest.ziegler()
    gens, certified = minimal_generators(target_data, bound=gen_bound)
    maxdeg = max((d for d, _ in gens), default=0)
    per_degree = []
    ok = True
    for d in range(maxdeg + 1):
        info = restriction_image(kind, arr, form, d)
        per_degree.append((d, info["image_dim"], info["target_dim"]))
        if info["image_dim"] != info["target_dim"]:
            ok = False
            break
    return ok, {
        "kind": kind,
        "target_generator_degrees": sorted(d for d, _ in gens),
        "checked_degrees": per_degree,
        "certified_up_to": certified,
    }


# ---------------------------------------------------------------------------
# minimal generators (for D(A), D(A,m), D_H(A))
# ---------------------------------------------------------------------------


def minimal_generators(data, annihilate=None, bound=None, force=None):
    """Greedy minimal generators of the module, degree by degree.

    New generators at degree d are a basis of the complement of the span
    of ring multiples of earlier generators inside the degree-d piece.
    Returns (list of (degree, Derivation), certified_up_to).
    """
    multi = as_multi(data)
    n = multi.dim
    bound = multi.size() if bound is None else bound
    gens = []
    for d in range(bound + 1):
        piece = graded_basis(multi, d, annihilate=annihilate, force=force)
        if not piece:
            continue
        md = monomial_count(n, d)
        span = SpanBasis(n * md)
        for dg, g in gens:
            for gamma in monomials(n, d - dg):
                shifted = Derivation(
                    [p.mul_monomial(gamma) for p in g.components], deg=d
                )
                span.add(shifted.to_vec(d))
        for th in piece:
            if span.add(th.to_vec(d)) is not None:
                gens.append((d, th))
        assert span.dim == len(piece), "membership kernel not spanned"
    return gens, bound


def generator_degrees(data, annihilate=None, bound=None):
    gens, certified = minimal_generators(data, annihilate=annihilate, bound=bound)
    return sorted(d for d, _ in gens), certified


# ---------------------------------------------------------------------------
# Terao's B polynomial
# ---------------------------------------------------------------------------


class BadSection(ValueError):
    pass


def terao_B(arr, form, section=None):
    """Product of one chosen hyperplane over each trace on H.

    `section` maps each restricted hyperplane (trace) to an original form
    cutting it; default picks the first in arrangement order.  Returns
    (B as a Poly, threshold |A'| - |A^H|, section dict).  Derivations of
    the deletion with degree below the threshold stay logarithmic for the
    full arrangement.
    """
    rest = Restriction(arr, form)
    traces = rest.sub.forms
    chosen = {}
    if section is None:
        for f in arr.forms:
            if f == rest.alpha:
                continue
            t = rest.trace_of[f]
            chosen.setdefault(t, f)
    else:
        for t, f in section.items():
            tn = normalize(t)
            fn = normalize(f)
            if fn not in rest.trace_of or rest.trace_of[fn] != tn:
                raise BadSection(f"{fn} does not cut the trace {tn}")
            chosen[tn] = fn
    if set(chosen) != set(traces):
        raise BadSection("section must pick one hyperplane per trace")
    from .exact import product

    B = product([Poly.from_linear(chosen[t]) for t in traces], n=arr.dim)
    threshold = (len(arr.forms) - 1) - len(traces)
    return B, threshold, chosen


def in_ideal_form_plus(poly, arr, form, B):
    """Membership of a polynomial in the ideal (alpha_H, B), exactly."""
    rest = Restriction(arr, form)
    reduced = rest.reduce_poly(poly)
    if reduced.is_zero():
        return True
    bbar = rest.reduce_poly(B)
    if bbar.is_zero():
        return False
    q = reduced.div_exact(bbar)
    return q is not None
