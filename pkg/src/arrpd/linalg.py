"""Exact rational linear algebra.

Two routes to the same answers: a plain Fraction Gaussian elimination
(reference, always available) and a multi-prime modular elimination with
rational reconstruction whose output is verified exactly against the input
before it is returned.  The modular route is a pure speedup; any
verification failure falls back to the reference route, so results are
identical either way.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

_ZERO = Fraction(0)
_ONE = Fraction(1)

# 30-bit primes: products of two residues stay below 2^60 inside int64
PRIMES30 = [
    1073741789,
    1073741783,
    1073741741,
    1073741723,
    1073741719,
    1073741717,
    1073741689,
    1073741671,
    1073741663,
    1073741651,
    1073741621,
    1073741567,
]

# Matrices smaller than this (rows*cols) go straight to the Fraction path;
# everything else uses the verified modular route.
MODULAR_CUTOFF = 400


def _as_fraction_rows(rows, ncols):
    out = []
    for r in rows:
        if isinstance(r, dict):
            row = [_ZERO] * ncols
            for j, v in r.items():
                row[j] = Fraction(v)
        else:
            row = [Fraction(v) for v in r]
            assert len(row) == ncols
        out.append(row)
    return out


def rref(rows, ncols):
    """Reduced row echelon form over Q.

    Returns (pivot column list, reduced nonzero rows).  Canonical: leading
    entries are 1, pivot columns are cleared.
    """
    mat = [r[:] for r in _as_fraction_rows(rows, ncols)]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        inv = _ONE / pr[col]
        if inv != 1:
            mat[rank] = pr = [v * inv for v in pr]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], pr)]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return pivots, mat[:rank]


def rank(rows, ncols):
    return len(rref(rows, ncols)[0])


def primitive_int_vector(vec):
    """Scale a rational vector to coprime integers, first nonzero positive."""
    vec = [Fraction(v) for v in vec]
    den = 1
    for v in vec:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)


def nullspace_fraction(rows, ncols):
    """Kernel basis via RREF; vectors normalized to primitive integers."""
    pivots, red = rref(rows, ncols)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(primitive_int_vector(v))
    return basis


def _mod_elim(a, p):
    """In-place Gaussian elimination of int64 matrix mod p.

    Returns (pivot columns, echelon matrix restricted to pivot rows).
    """
    a = np.mod(a, p)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        rest = np.nonzero(a[:, c])[0]
        rest = rest[rest != r]
        if rest.size:
            a[rest] = (a[rest] - np.outer(a[rest, c], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots, a[: len(pivots)]


def _kernel_mod(a, p):
    """Kernel basis mod p in the standard free-column pattern."""
    pivots, red = _mod_elim(a, p)
    ncols = a.shape[1]
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-int(red[i, f])) % p
    return pivots, basis


def rational_reconstruct(c, m):
    """Rational number with small numerator/denominator congruent to c mod m.

    Standard lattice reduction on (m, c); returns Fraction or None.
    """
    c %= m
    if c == 0:
        return _ZERO
    bound = isqrt(m // 2)
    r0, t0 = m, 0
    r1, t1 = c, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if abs(t1) > bound or t1 == 0:
        return None
    if gcd(r1, abs(t1)) != 1:
        return None
    if t1 < 0:
        return Fraction(-r1, -t1)
    return Fraction(r1, t1)


def _verify_kernel(int_rows, vecs):
    """Exact check that every vector is killed by every (sparse int) row."""
    for vec in vecs:
        support = [(j, v) for j, v in enumerate(vec) if v]
        for row in int_rows:
            if isinstance(row, dict):
                s = sum(row.get(j, 0) * v for j, v in support)
            else:
                s = sum(row[j] * v for j, v in support)
            if s != 0:
                return False
    return True


def _to_int_rows(rows, ncols):
    """Clear denominators rowwise; keeps dict rows sparse.

    Works on ints and Fractions alike (ints expose denominator == 1).
    """
    out = []
    for r in rows:
        items = r.items() if isinstance(r, dict) else enumerate(r)
        pairs = [(j, v) for j, v in items if v]
        den = 1
        for _, v in pairs:
            d = v.denominator
            if d != 1:
                den = den * d // gcd(den, d)
        if den == 1:
            out.append({j: int(v) for j, v in pairs})
        else:
            out.append({j: int(v * den) for j, v in pairs})
    return out


def nullspace(rows, ncols, force=None):
    """Exact kernel basis of the matrix given by `rows` (lists or dicts).

    Vectors are primitive integer tuples; the basis is the canonical
    RREF kernel basis (identity pattern on the free columns).
    """
    rows = list(rows)
    if not rows or ncols == 0:
        return [tuple(int(i == k) for i in range(ncols)) for k in range(ncols)]
    method = force
    if method is None:
        method = "modular" if len(rows) * ncols > MODULAR_CUTOFF else "fraction"
    if method == "fraction":
        return nullspace_fraction(rows, ncols)

    int_rows = _to_int_rows(rows, ncols)
    dense = np.zeros((len(int_rows), ncols), dtype=np.int64)
    big = False
    for i, r in enumerate(int_rows):
        for j, v in r.items():
            if abs(v) >= 1 << 62:
                big = True
                break
            dense[i, j] = v
        if big:
            break
    if big:
        return nullspace_fraction(rows, ncols)

    used = []
    residues = []
    pivots0 = None
    for p in PRIMES30:
        pivots, basis = _kernel_mod(dense.copy(), p)
        if pivots0 is None:
            pivots0, shape_basis = pivots, basis
        elif pivots != pivots0:
            # rank differs between primes: restart from the larger-rank prime
            if len(pivots) > len(pivots0):
                pivots0, shape_basis = pivots, basis
                used, residues = [], []
            else:
                continue
        used.append(p)
        residues.append(basis)
        # CRT-combine and attempt reconstruction
        m = 1
        comb_arr = None
        for q, res in zip(used, residues):
            if comb_arr is None:
                comb_arr = [[int(x) for x in row] for row in res]
                m = q
            else:
                m2 = m * q
                inv = pow(m % q, q - 2, q)
                new = []
                for rowa, rowb in zip(comb_arr, res):
                    new.append(
                        [
                            (a + ((int(b) - a) * inv % q) * m) % m2
                            for a, b in zip(rowa, rowb)
                        ]
                    )
                comb_arr = new
                m = m2
        ok = True
        vecs = []
        for row in comb_arr or []:
            vec = []
            for c in row:
                f = rational_reconstruct(c, m)
                if f is None:
                    ok = False
                    break
                vec.append(f)
            if not ok:
                break
            vecs.append(primitive_int_vector(vec))
        if ok and _verify_kernel(int_rows, vecs):
            # count check: dim ker over Q <= ncols - rank_p = len(vecs); the
            # verified vectors are independent (identity pattern), so equality
            return vecs
    return nullspace_fraction(rows, ncols)


def solve_in_span(span_rows, target, ncols):
    """Express target as a combination of span_rows; None if impossible."""
    pivots, red = rref(span_rows, ncols)
    t = [Fraction(v) for v in target]
    coeffs = []
    for i, p in enumerate(pivots):
        c = t[p]
        coeffs.append(c)
        if c:
            t = [a - c * b for a, b in zip(t, red[i])]
    if any(t):
        return None
    return coeffs


def _select_extending_mod(base, cands, ncols, p):
    """Indices of candidate rows that enlarge the span, working mod p."""
    rows = np.zeros((len(base) + len(cands), ncols), dtype=np.int64)
    for i, r in enumerate(base):
        items = r.items() if isinstance(r, dict) else enumerate(r)
        for j, v in items:
            rows[i, j] = v % p
    for k, r in enumerate(cands):
        items = r.items() if isinstance(r, dict) else enumerate(r)
        for j, v in items:
            rows[len(base) + k, j] = v % p
    pivots = []  # (col, rowvec)
    picked = []
    for i in range(rows.shape[0]):
        v = rows[i].copy()
        for c, pr in pivots:
            f = int(v[c])
            if f:
                v = (v - f * pr) % p
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            continue
        c = int(nz[0])
        inv = pow(int(v[c]), p - 2, p)
        v = (v * inv) % p
        pivots.append((c, v))
        if i >= len(base):
            picked.append(i - len(base))
    return picked, len(pivots)


def select_extending(base_rows, cand_rows, ncols, force=None):
    """Greedy subset of candidate rows extending the row span of the base.

    Exact over Q below the size cutoff; otherwise two independent primes
    must agree (disagreement falls back to the exact path).  Rows are
    integer lists or sparse dicts.
    """
    total = (len(base_rows) + len(cand_rows)) * max(ncols, 1)
    method = force or ("modular" if total > MODULAR_CUTOFF else "fraction")
    if method == "modular":
        base_int = _to_int_rows(base_rows, ncols)
        cand_int = _to_int_rows(cand_rows, ncols)
        ok = True
        for r in base_int + cand_int:
            if any(abs(v) >= 1 << 62 for v in r.values()):
                ok = False
                break
        if ok:
            p1, r1 = _select_extending_mod(base_int, cand_int, ncols, PRIMES30[0])
            p2, r2 = _select_extending_mod(base_int, cand_int, ncols, PRIMES30[1])
            if p1 == p2 and r1 == r2:
                return p1
    picked = []
    span = SpanBasis(ncols)
    for r in base_rows:
        if isinstance(r, dict):
            v = [0] * ncols
            for j, x in r.items():
                v[j] = x
            span.add(v)
        else:
            span.add(list(r))
    for k, r in enumerate(cand_rows):
        if isinstance(r, dict):
            v = [0] * ncols
            for j, x in r.items():
                v[j] = x
        else:
            v = list(r)
        if span.add(v) is not None:
            picked.append(k)
    return picked


class SpanBasis:
    """Incrementally built row space over Q with exact reduction."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []  # echelon rows, leading 1
        self.pivots = []

    def reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for p, row in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, vec):
        """Reduce and insert; returns the residue or None when dependent."""
        v = self.reduce(vec)
        lead = None
        for j, x in enumerate(v):
            if x:
                lead = j
                break
        if lead is None:
            return None
        inv = _ONE / v[lead]
        if inv != 1:
            v = [x * inv for x in v]
        # keep rows reduced against the new one
        for i, row in enumerate(self.rows):
            c = row[lead]
            if c:
                self.rows[i] = [a - c * b for a, b in zip(row, v)]
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < lead:
            pos += 1
        self.pivots.insert(pos, lead)
        self.rows.insert(pos, v)
        return v

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, vec):
        return not any(self.reduce(vec))
