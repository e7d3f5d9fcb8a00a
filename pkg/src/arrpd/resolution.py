"""Minimal free resolutions of logarithmic modules, degree by degree.

The module is only ever touched through its graded pieces (exact kernels
of the membership systems), so a resolution step is: find minimal
generators greedily, then compute the syzygies among them as kernels of
explicit linear maps between graded pieces of free modules.  Exactness is
policed at every degree: the kernel dimensions must satisfy
dim K_e = sum_g dim S_{e-deg g} - dim M_e (surjectivity of the chosen
presentation) and no syzygy may carry a scalar entry (minimality).

Freeness of the current syzygy module is recognized either by a Saito
determinant (complete certificate) or by Hilbert-series agreement with the
free module on the found generators throughout the inspected window, in
which case the projective dimension is certified up to that degree bound.
"""

from __future__ import annotations

from fractions import Fraction

from .arrangement import as_multi, essentialize_multi, normalize
from .derivations import (
    Derivation,
    SaitoCertificate,
    graded_basis,
    saito_check,
)
from .exact import mono_mul, monomial_count, monomial_index, monomials
from .linalg import nullspace, select_extending


class Inconclusive(RuntimeError):
    """Degree bound exhausted before the resolution stabilized."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class BlockSpace:
    """Graded free module  +_k S[-b_k]  with sparse element vectors.

    A degree-d element is a dict (block, exponent tuple) -> Fraction where
    the exponent has total degree d - b_k.
    """

    def __init__(self, nvars, block_degs):
        self.n = nvars
        self.block_degs = tuple(block_degs)
        self._layout = {}

    def layout(self, d):
        """Index map for the degree-d piece: (block, expo) -> position."""
        if d not in self._layout:
            idx = {}
            pos = 0
            for b, bd in enumerate(self.block_degs):
                if d - bd < 0:
                    continue
                for m in monomials(self.n, d - bd):
                    idx[(b, m)] = pos
                    pos += 1
            self._layout[d] = idx
        return self._layout[d]

    def dim(self, d):
        return len(self.layout(d))

    def dense(self, vec, d):
        idx = self.layout(d)
        out = [Fraction(0)] * len(idx)
        for key, c in vec.items():
            out[idx[key]] = out[idx[key]] + c
        return out

    @staticmethod
    def shift(vec, gamma):
        """Multiply an element by the monomial x^gamma."""
        return {(b, mono_mul(m, gamma)): c for (b, m), c in vec.items()}


def derivation_to_vec(theta):
    return {(i, m): c for i, p in enumerate(theta.components) for m, c in p.terms.items()}


def vec_to_derivation(n, d, vec):
    from .exact import Poly

    comps = []
    for i in range(n):
        terms = {m: c for (b, m), c in vec.items() if b == i}
        comps.append(Poly(n, terms))
    return Derivation(comps, deg=d)


def _minimal_generators_in(space, pieces, nvars, bound):
    """Greedy minimal generators of a module given by per-degree bases."""
    gens = []
    for d in range(bound + 1):
        piece = pieces.get(d, [])
        if not piece:
            continue
        ncols = space.dim(d)
        base = []
        for dg, g in gens:
            for gamma in monomials(nvars, d - dg):
                base.append(space.dense(BlockSpace.shift(g, gamma), d))
        cands = [space.dense(v, d) for v in piece]
        picked = select_extending(base, cands, ncols)
        for k in picked:
            gens.append((d, piece[k]))
    return gens


def _syzygy_pieces(space, gens, nvars, bound):
    """Kernels of the presentation map at every degree <= bound.

    Returns (next_space, pieces) where pieces[e] is a list of sparse
    vectors over the blocks of the next free module (one per generator).
    """
    next_space = BlockSpace(nvars, [d for d, _ in gens])
    pieces = {}
    mindeg = min((d for d, _ in gens), default=0)
    for e in range(mindeg + 1, bound + 1):
        cols = []
        for gi, (dg, gvec) in enumerate(gens):
            if e - dg < 0:
                continue
            for gamma in monomials(nvars, e - dg):
                cols.append((gi, gamma))
        if not cols:
            continue
        layout = space.layout(e)
        rows = [dict() for _ in range(len(layout))]
        for ci, (gi, gamma) in enumerate(cols):
            shifted = BlockSpace.shift(gens[gi][1], gamma)
            for key, c in shifted.items():
                r = layout[key]
                rows[r][ci] = rows[r].get(ci, Fraction(0)) + c
        kernel = nullspace(rows, len(cols))
        if kernel:
            pieces[e] = [
                {
                    (cols[ci][0], cols[ci][1]): Fraction(v)
                    for ci, v in enumerate(vec)
                    if v
                }
                for vec in kernel
            ]
    return next_space, pieces


class FreeResolution:
    """Shape of a minimal free resolution, certified up to a degree bound."""

    def __init__(self, steps, pd, certified_up_to, dims, witnesses, saito=None, inconclusive=False):
        self.steps = steps  # generator degree lists per homological step
        self.pd = pd
        self.certified_up_to = certified_up_to
        self.dims = dims  # graded dims of the resolved module
        self.witnesses = witnesses  # per step: list of (degree, sparse vec)
        self.saito = saito
        self.inconclusive = inconclusive
        self.minimal = True

    def generator_degrees(self):
        return self.steps[0] if self.steps else []

    def __repr__(self):
        shape = " <- ".join(
            "F%d%s" % (i, sorted(s)) for i, s in enumerate(self.steps)
        )
        tag = "pd=%s" % self.pd if not self.inconclusive else "inconclusive"
        return f"FreeResolution({tag}, {shape}, certified<= {self.certified_up_to})"


def minimal_free_resolution(data, annihilate=None, bound=None, try_saito=True):
    """Resolve D(A), D(A,m) or D_H(A) over the ambient polynomial ring."""
    multi = as_multi(data)
    n = multi.dim
    if bound is None:
        bound = multi.size() if multi.size() > 0 else 1
    if n == 0:
        return FreeResolution([[]], 0, bound, {}, [[]])
    space = BlockSpace(n, [0] * n)
    pieces = {}
    dims_module = {}
    gens0 = []
    total = multi.size()
    for d in range(bound + 1):
        basis = graded_basis(multi, d, annihilate=annihilate)
        dims_module[d] = len(basis)
        if basis:
            pieces[d] = [derivation_to_vec(th) for th in basis]
            ncols = space.dim(d)
            base = []
            for dg, g in gens0:
                for gamma in monomials(n, d - dg):
                    base.append(space.dense(BlockSpace.shift(g, gamma), d))
            cands = [space.dense(v, d) for v in pieces[d]]
            for k in select_extending(base, cands, ncols):
                gens0.append((d, pieces[d][k]))
        # a full candidate basis with matching degree sum settles freeness
        # immediately, without exploring the rest of the window
        if (
            try_saito
            and annihilate is None
            and len(gens0) == n
            and sum(dg for dg, _ in gens0) == total
        ):
            cands = [vec_to_derivation(n, dg, v) for dg, v in gens0]
            cert = saito_check(multi, cands)
            if cert.free:
                return FreeResolution(
                    [sorted(dg for dg, _ in gens0)], 0, bound, dims_module, [gens0], cert
                )
    dims_cur = dict(dims_module)
    steps = []
    witnesses = []
    saito = None
    step = 0
    # rank bookkeeping: D has rank n (annihilating one form drops it by one),
    # each syzygy module has rank (#generators - rank of what they present);
    # a free module must have exactly rank many generators, which guards
    # against degree windows too small to see every generator
    expected_rank = n - (1 if annihilate is not None else 0)
    if all(v == 0 for v in dims_module.values()):
        expected_rank = 0
    while True:
        gens = gens0 if step == 0 else _minimal_generators_in(space, pieces, n, bound)
        degs = sorted(d for d, _ in gens)
        steps.append(degs)
        witnesses.append(gens)
        if not gens:
            # zero module: the previous presentation was an isomorphism
            pd = max(step - 1, 0)
            return FreeResolution(steps[:-1] or [[]], pd, bound, dims_module, witnesses[:-1] or [[]], saito)
        free_ok = all(
            dims_cur.get(d, 0)
            == sum(monomial_count(n, d - dg) for dg in degs if d >= dg)
            for d in range(bound + 1)
        )
        if free_ok:
            if len(gens) != expected_rank:
                return FreeResolution(
                    steps, None, bound, dims_module, witnesses, saito, inconclusive=True
                )
            return FreeResolution(steps, step, bound, dims_module, witnesses, saito)
        if step >= n:
            return FreeResolution(
                steps, None, bound, dims_module, witnesses, saito, inconclusive=True
            )
        next_space, next_pieces = _syzygy_pieces(space, gens, n, bound)
        # exact gates: chosen generators must present the module onto every
        # inspected degree, and no syzygy may cancel a generator
        for e in range(bound + 1):
            expected = sum(monomial_count(n, e - dg) for dg in degs if e >= dg) - dims_cur.get(e, 0)
            got = len(next_pieces.get(e, []))
            assert got == expected, (
                f"presentation not onto at degree {e}: kernel {got} != {expected}"
            )
        for e, vecs in next_pieces.items():
            for v in vecs:
                for (b, m), c in v.items():
                    assert sum(m) > 0 or not c, "syzygy cancels a generator"
        dims_cur = {e: len(vs) for e, vs in next_pieces.items()}
        expected_rank = len(gens) - expected_rank
        space, pieces = next_space, next_pieces
        step += 1


def projective_dimension_exact(data, bound=None):
    """Length of the certified minimal free resolution of D, after
    essentialization (direct free summands do not change pd)."""
    multi = as_multi(data)
    ess, _ = essentialize_multi(multi)
    if ess.dim <= 2:
        return 0  # rank <= 2 modules of this kind are reflexive, hence free
    res = minimal_free_resolution(ess, bound=bound)
    if res.inconclusive:
        raise Inconclusive("resolution did not stabilize below the degree bound", res)
    return res.pd


class SpogReport:
    __slots__ = ("is_pog", "is_spog", "poexp", "level", "alpha_is_nonzero", "resolution")

    def __init__(self, is_pog, is_spog, poexp, level, alpha_is_nonzero, resolution):
        self.is_pog = is_pog
        self.is_spog = is_spog
        self.poexp = poexp
        self.level = level
        self.alpha_is_nonzero = alpha_is_nonzero
        self.resolution = resolution

    def __repr__(self):
        if self.is_spog:
            return f"SpogReport(SPOG, poexp={self.poexp}, level={self.level})"
        if self.is_pog:
            return f"SpogReport(POG, poexp={self.poexp}, level={self.level})"
        return "SpogReport(not plus-one generated)"


def spog_detect(arr, bound=None):
    """Plus-one generated shape test on the minimal free resolution.

    Needs n+1 minimal generators, a single syzygy, and (for the strict
    verdict) a nonzero linear coefficient on a generator one degree below
    the syzygy.
    """
    multi = as_multi(arr)
    ess, _ = essentialize_multi(multi)
    n = ess.dim
    res = minimal_free_resolution(ess, bound=bound)
    if res.inconclusive:
        raise Inconclusive("resolution did not stabilize", res)
    no = SpogReport(False, False, None, None, False, res)
    if res.pd != 1 or len(res.steps[0]) != n + 1 or len(res.steps) < 2 or len(res.steps[1]) != 1:
        return no
    syzdeg, syzvec = res.witnesses[1][0]
    level = syzdeg - 1
    gens = res.witnesses[0]
    candidates = []
    for gi, (dg, _) in enumerate(gens):
        if dg != level:
            continue
        entry = {m: c for (b, m), c in syzvec.items() if b == gi}
        if any(c for c in entry.values()):
            candidates.append(gi)
    if not any(dg == level for dg, _ in gens):
        return no
    poexp_all = sorted(d for d, _ in gens)
    if not candidates:
        poexp = list(poexp_all)
        poexp.remove(level)
        return SpogReport(True, False, tuple(poexp), level, False, res)
    poexp = list(poexp_all)
    poexp.remove(level)
    return SpogReport(True, True, tuple(poexp), level, True, res)
