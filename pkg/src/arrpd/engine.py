"""Theorem-driven inference of freeness and projective dimension.

Every rule consumes facts (or direct computations) and emits a Fact whose
premise tree is a replayable certificate.  The calculus implemented here:

  * Yoshinaga's criterion: free  <=>  upper b2 equality and free Ziegler
    restriction (for rank three the restriction side is automatic).
  * Terao factorization used contrapositively: a characteristic polynomial
    without a full integer-linear factorization forbids freeness.
  * Addition-deletion bookkeeping of exponents, and the division theorem
    (free restriction + b2 equality => free).
  * The free-minus-one principle: deleting one hyperplane from a free
    arrangement leaves projective dimension at most one.
  * The addition / deletion / restriction comparison theorems for
    projective dimension, under local surjectivity in codimension three
    and the non-maximality hypotheses (NMPD), plus their division-style
    strengthening under the b2 equality.
  * Surjectivity of the Euler and Ziegler restriction maps from purely
    combinatorial premises when the relevant localizations are not of
    maximal projective dimension.
  * The combinatorial classes: divisional flags (DF), stair-free paths
    (SF, verification only), CS3 sufficient conditions, and the recursive
    classes of inductively determined projective dimension (IPD_k).

Exact algebra (kernels, Saito determinants, resolutions) enters only as
leaf facts; `infer` prefers combinatorial derivations and walks deletions
and restrictions under a depth budget.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arrangement import (
    Arrangement,
    Multiarrangement,
    Restriction,
    as_multi,
    essentialize,
    essentialize_multi,
    normalize,
    parse_arrangement,
)
from .derivations import (
    Derivation,
    find_free_basis,
    graded_basis,
    saito_check,
    surjectivity,
)
from .facts import Fact, arr_key, form_key, subject_of, subject_pair
from .lattice import (
    IntersectionLattice,
    char_poly,
    int_poly_divides,
    reduced_char_poly,
)
from .multib2 import b2_equality_check, b2_multi, rank2_exponents
from .resolution import Inconclusive, minimal_free_resolution, projective_dimension_exact


class NotApplicable(RuntimeError):
    pass


def _int_roots(coeffs):
    """Integer roots with multiplicity of a monic integer polynomial
    (highest coefficient first); returns (roots, residual degree)."""
    coeffs = [int(c) for c in coeffs]
    roots = []
    while len(coeffs) > 1:
        const = coeffs[-1]
        if const == 0:
            roots.append(0)
            coeffs = coeffs[:-1]
            continue
        cands = set()
        for d in range(1, abs(const) + 1):
            if d * d > abs(const):
                break
            if const % d == 0:
                cands.update({d, -d, const // d, -(const // d), abs(const) // d, -abs(const) // d})
        hit = None
        for r in sorted(cands):
            acc = 0
            for c in coeffs:
                acc = acc * r + c
            if acc == 0:
                hit = r
                break
        if hit is None:
            break
        roots.append(hit)
        out = []
        acc = 0
        for c in coeffs[:-1]:
            acc = acc * hit + c
            out.append(acc)
        coeffs = out
    return sorted(roots), len(coeffs) - 1


def serialize_derivation(theta):
    return [
        [[list(m), str(c)] for m, c in sorted(p.terms.items())] for p in theta.components
    ]


def deserialize_derivation(n, d, data):
    from .exact import Poly

    comps = []
    for terms in data:
        comps.append(Poly(n, {tuple(m): Fraction(c) for m, c in terms}))
    return Derivation(comps, deg=d if any(t for t in data) else -1)


class Engine:
    """Fact store plus rule applications over one session.

    All computations are memoized by the canonical text key of the
    (multi)arrangement, so repeated rule applications stay cheap.
    """

    def __init__(self, resolution_bound=None):
        self.resolution_bound = resolution_bound
        self._lattice = {}
        self._chi = {}
        self._b2 = {}
        self._exact_pd = {}
        self._free_cert = {}
        self._df = {}
        self._ipd = {}
        self._infer = {}

    # ---------------- leaf computations ----------------

    def lattice(self, arr):
        k = arr_key(arr)
        if k not in self._lattice:
            self._lattice[k] = IntersectionLattice(arr)
        return self._lattice[k]

    def chi(self, arr):
        k = arr_key(arr)
        if k not in self._chi:
            self._chi[k] = self.lattice(arr).char_poly()
        return self._chi[k]

    def b2_facts(self, arr, pivot):
        """Leaf facts for the three b2-style equalities of (A, H)."""
        k = (arr_key(arr), form_key(pivot))
        if k not in self._b2:
            rep = b2_equality_check(arr, pivot)
            subj = subject_of(arr, pivot)
            self._b2[k] = {
                "report": rep,
                "b2": Fact("b2_equality", subj, rep.b2_equality, "computed:b2",
                           note=json.dumps(rep.to_dict())),
                "upper": Fact("upper_b2_equality", subj, rep.upper_equality, "computed:b2",
                              note=json.dumps(rep.to_dict())),
                "lower": Fact("lower_b2_equality", subj, rep.lower_equality, "computed:b2",
                              note=json.dumps(rep.to_dict())),
            }
        return self._b2[k]

    def chi_divides_fact(self, arr, pivot):
        rest = Restriction(arr, pivot)
        ok = int_poly_divides(
            self.chi(rest.restricted()).coefficients(), self.chi(arr).coefficients()
        )
        return Fact("chi_divides", subject_of(arr, pivot), ok, "computed:lattice")

    def exact_pd_fact(self, data, bound=None):
        multi = as_multi(data)
        k = arr_key(multi)
        if k not in self._exact_pd:
            pd = projective_dimension_exact(multi, bound=bound or self.resolution_bound)
            self._exact_pd[k] = Fact("pd", subject_of(multi), pd, "computed:resolution")
        return self._exact_pd[k]

    def saito_fact(self, data, bound=None):
        """Freeness with witnesses via basis search; None when inconclusive.

        Exponent lists are ambient: essential exponents padded with zeros
        (free direct summands of degree zero), so the addition-deletion
        bookkeeping lines up across dimensions.
        """
        multi = as_multi(data)
        k = arr_key(multi)
        if k not in self._free_cert:
            ess, _ = essentialize_multi(multi)
            pad = [0] * (multi.dim - ess.dim)
            if ess.dim <= 2:
                exps = sorted(self._small_exponents(ess) + pad)
                self._free_cert[k] = Fact(
                    "free", subject_of(multi), True, "axiom:rank-le-2",
                    note=json.dumps({"exponents": exps}),
                )
            else:
                cert = find_free_basis(ess, bound=bound)
                if cert is None:
                    self._free_cert[k] = None
                else:
                    payload = {
                        "exponents": sorted(list(cert.exponents) + pad),
                        "witnesses": [serialize_derivation(t) for t in cert.candidates],
                        "degrees": [t.deg for t in cert.candidates],
                    }
                    self._free_cert[k] = Fact(
                        "free", subject_of(multi), True, "computed:saito",
                        note=json.dumps(payload),
                    )
        return self._free_cert[k]

    @staticmethod
    def _small_exponents(ess):
        """Exponents of an essential rank <= 2 multiarrangement."""
        if ess.dim == 0:
            return []
        if ess.dim == 1:
            return [ess.size()]
        return list(rank2_exponents(ess))

    def free_fact(self, arr):
        """Conclusive freeness verdict by the cheapest exact route.

        Rank <= 2: free.  Otherwise Yoshinaga's criterion (conclusive
        whenever the Ziegler restriction verdict is), then basis search,
        then the resolution.  Returns a Fact with value True/False.
        """
        multi = as_multi(arr)
        k = ("freeq", arr_key(multi))
        if k in self._free_cert:
            return self._free_cert[k]
        ess, _ = essentialize_multi(multi)
        out = None
        if ess.dim <= 2:
            out = Fact("free", subject_of(multi), True, "axiom:rank-le-2",
                       note=json.dumps({"exponents": self._small_exponents(ess)}))
        elif multi.is_simple():
            out = self.yoshinaga_fact(ess.base, ess.base.forms[0])
        if out is None:
            out = self.saito_fact(multi)
        if out is None:
            pf = self.exact_pd_fact(multi)
            out = Fact("free", subject_of(multi), pf.value == 0, "pd-zero-is-free", (pf,))
        self._free_cert[k] = out
        return out

    def pd_fact(self, arr):
        """Exact pd by the cheapest conclusive route (memoized).

        Rank <= 2 is free; rank 3 is decided by the Yoshinaga equivalence
        (pd is 0 or 1 there); higher ranks try freeness first and fall
        back to the resolution.
        """
        multi = as_multi(arr)
        k = ("pd", arr_key(multi))
        if k in self._exact_pd:
            return self._exact_pd[k]
        ess, _ = essentialize_multi(multi)
        out = None
        if ess.dim <= 2:
            out = Fact("pd", subject_of(multi), 0, "axiom:rank-le-2")
        elif ess.dim == 3 and multi.is_simple():
            free = self.yoshinaga_fact(ess.base, ess.base.forms[0])
            if free.value:
                out = Fact("pd", subject_of(multi), 0, "free-pd-zero", (free,))
            else:
                out = Fact("pd", subject_of(multi), 1, "yoshinaga-rank3", (free,))
        else:
            free = self.free_fact(multi)
            if free is not None and free.value:
                out = Fact("pd", subject_of(multi), 0, "free-pd-zero", (free,))
            else:
                out = self.exact_pd_fact(multi)
        self._exact_pd[k] = out
        return out

    def nonfactor_fact(self, arr):
        """Characteristic polynomial without full integer factorization
        forbids freeness (contrapositive of Terao factorization)."""
        roots, residual = _int_roots(self.chi(arr).coefficients())
        if residual == 0:
            return None
        return Fact(
            "free", subject_of(arr), False, "terao-nonfactor",
            note=json.dumps({"integer_roots": roots, "residual_degree": residual}),
        )

    def surjectivity_fact(self, kind, arr, pivot, gen_bound=None):
        ok, report = surjectivity(kind, arr, pivot, gen_bound=gen_bound)
        kindname = "surjective_rho" if kind == "euler" else "surjective_pi"
        return Fact(
            kindname, subject_of(arr, pivot), ok, "computed:surjectivity",
            note=json.dumps(report),
        )

    # ---------------- localization helpers ----------------

    def _flats_on_pivot(self, arr, pivot, min_codim=2):
        lat = self.lattice(arr)
        h = normalize(pivot)
        out = []
        for codim in range(min_codim, lat.max_codim() + 1):
            for fl in lat.flats(codim):
                if fl.contains_form(h):
                    out.append(fl)
        return out

    def _localized_pair(self, arr, pivot, flat):
        lat = self.lattice(arr)
        sub = lat.localization(flat)
        ess, emb = essentialize(sub)
        return ess, normalize(emb.push(normalize(pivot)))

    def nmpd_fact(self, arr, pivot, mode="exact", center_bound_fact=None):
        """A is NMPD along H: localizations at codim >= 3 flats on H are
        not of maximal projective dimension.

        A pd/pd_upper fact for A itself (`center_bound_fact`) discharges
        the center, and via localization monotonicity also every flat of
        codimension above its value + 2; the rest are computed exactly.
        """
        ess0, _ = essentialize(arr)
        r = ess0.dim
        if r == 3:
            # rank-three convention: every consumer's remaining premises
            # already force the center condition there
            return Fact("nmpd", subject_of(arr, pivot), True, "nmpd-exact",
                        note="rank-3 convention")
        bound_val = None
        premises = []
        if center_bound_fact is not None and center_bound_fact.kind in ("pd", "pd_upper"):
            bound_val = center_bound_fact.value
            premises.append(center_bound_fact)
        verdict = True
        for fl in self._flats_on_pivot(arr, pivot, min_codim=3):
            c = fl.codim
            if bound_val is not None and bound_val < c - 2:
                continue  # localization monotonicity covers this flat
            sub_ess, _ = self._localized_pair(arr, pivot, fl)
            if sub_ess.dim <= 2:
                continue
            if sub_ess.dim == r and len(sub_ess.forms) == len(ess0.forms):
                pf = self.pd_fact(sub_ess)
                premises.append(pf)
                if pf.value >= c - 2:
                    verdict = False
                continue
            pf = self.pd_fact(sub_ess)
            premises.append(pf)
            if pf.value >= c - 2:
                verdict = False
        rule = "nmpd-exact" if mode == "exact" else "nmpd-sufficient"
        note = "" if bound_val is None else "deep flats by localization monotonicity"
        return Fact("nmpd", subject_of(arr, pivot), verdict, rule, premises, note=note)

    def nmpd_sufficient_fact(self, arr, pivot, pd_fact=None):
        """Sufficient conditions for NMPD along H, cheapest first:
        (1) pd(A) <= 1; (2) every proper localization on H has pd <= 1 and
        pd(A) is below maximal; (3) the intermediate-rank clause.  Returns
        None when no clause fires (inconclusive)."""
        ess0, _ = essentialize(arr)
        r = ess0.dim
        subj = subject_of(arr, pivot)
        if pd_fact is not None and pd_fact.kind in ("pd", "pd_upper") and pd_fact.value <= 1:
            return Fact("nmpd", subj, True, "nmpd-sufficient", (pd_fact,),
                        note="clause 1: pd at most one")
        if pd_fact is not None and pd_fact.value < r - 2:
            prem = [pd_fact]
            ok = True
            for fl in self._flats_on_pivot(arr, pivot, min_codim=2):
                ess, _ = self._localized_pair(arr, pivot, fl)
                if ess.dim <= 2 or (ess.dim == r and len(ess.forms) == len(ess0.forms)):
                    continue
                pf = self.pd_fact(ess)
                prem.append(pf)
                if pf.value > 1:
                    ok = False
                    break
            if ok:
                return Fact("nmpd", subj, True, "nmpd-sufficient", tuple(prem),
                            note="clause 2: localizations of pd at most one, pd below maximal")
        if (
            pd_fact is not None
            and pd_fact.kind == "pd"
            and 1 < pd_fact.value < r - 2
        ):
            k = pd_fact.value
            prem = [pd_fact]
            ok = True
            for fl in self._flats_on_pivot(arr, pivot, min_codim=3):
                s = fl.codim + 1
                if not (2 <= s - 2 <= k):
                    continue
                ess, _ = self._localized_pair(arr, pivot, fl)
                if ess.dim <= 2:
                    continue
                pf = self.pd_fact(ess)
                prem.append(pf)
                if pf.value >= s - 2:
                    ok = False
                    break
            if ok:
                return Fact("nmpd", subj, True, "nmpd-sufficient", tuple(prem),
                            note="clause 3: intermediate localizations below the stated bound")
        return None

    def check_nmpd(self, arr, pivot, mode="exact", pd_fact=None, deleted=False):
        """Spec-level entry point for the NMPD checks.

        mode "exact" recomputes localization pd's; mode "sufficient" uses
        the three sufficient clauses and returns None when silent.
        `deleted` switches to the deletion variant.
        """
        if deleted:
            return self.nmpd_deleted_fact(arr, pivot, deleted_pd_fact=pd_fact)
        if mode == "exact":
            return self.nmpd_fact(arr, pivot, center_bound_fact=pd_fact)
        return self.nmpd_sufficient_fact(arr, pivot, pd_fact=pd_fact)

    def nmpd_deleted_fact(self, arr, pivot, deleted_pd_fact=None):
        """A' = A - H is NMPD along H: localizations of the deletion at the
        codim >= 3 flats of A lying on H are not of maximal pd.

        A known pd bound v for A' discharges every flat of codimension
        above v + 2 at once (localization can only lower pd); only the
        shallow flats then need their own computation.
        """
        h = normalize(pivot)
        deleted = arr.delete(h)
        bound_val = None
        premises = []
        if deleted_pd_fact is not None and deleted_pd_fact.kind in ("pd", "pd_upper"):
            bound_val = deleted_pd_fact.value
            premises.append(deleted_pd_fact)
        verdict = True
        for fl in self._flats_on_pivot(arr, pivot, min_codim=3):
            c = fl.codim
            if bound_val is not None and bound_val < c - 2:
                continue  # localization monotonicity covers this flat
            sub = [f for f in deleted.forms if fl.contains_form(f)]
            if not sub:
                continue
            loc = Arrangement(arr.dim, sub, normalized=True)
            ess, _ = essentialize(loc)
            if ess.dim <= 2:
                continue
            pf = self.pd_fact(ess)
            premises.append(pf)
            if pf.value >= c - 2:
                verdict = False
        note = "" if bound_val is None else "deep flats by localization monotonicity"
        return Fact("nmpd_deleted", subject_of(arr, pivot), verdict,
                    "nmpd-deleted-exact", premises, note=note)

    def local_rho_surjective_fact(self, arr, pivot):
        """rho locally surjective in codimension three: exact image check on
        every essentialized localization at a codim-3 flat on H, preferring
        the combinatorial CS3 sufficient conditions."""
        premises = []
        verdict = True
        for fl in self._flats_on_pivot(arr, pivot, min_codim=3):
            if fl.codim != 3:
                continue
            ess, hsmall = self._localized_pair(arr, pivot, fl)
            cs = self.cs3_fact(ess, hsmall)
            if cs is not None:
                premises.append(cs)
                continue
            sf = self.surjectivity_fact("euler", ess, hsmall)
            premises.append(sf)
            if not sf.value:
                verdict = False
        return Fact(
            "locally_surjective_rho", subject_of(arr, pivot), verdict,
            "local-surjectivity", premises,
        )

    def locally_free_fact(self, arr, pivot, parent_free_fact=None):
        """A_X free for every flat X on H except the center."""
        ess0, _ = essentialize(arr)
        r = ess0.dim
        if parent_free_fact is not None and parent_free_fact.value:
            # localizations of a free arrangement stay free
            return Fact("locally_free", subject_of(arr, pivot), True,
                        "local-freeness", (parent_free_fact,),
                        note="localization monotonicity")
        premises = []
        verdict = True
        for fl in self._flats_on_pivot(arr, pivot, min_codim=2):
            ess, _ = self._localized_pair(arr, pivot, fl)
            if ess.dim <= 2:
                continue
            if ess.dim == r and len(ess.forms) == len(ess0.forms):
                continue  # the center is excluded
            f = self.free_fact(ess)
            premises.append(f)
            if not f.value:
                verdict = False
        return Fact("locally_free", subject_of(arr, pivot), verdict, "local-freeness", premises)

    # ---------------- freeness rules ----------------

    def ziegler_free_fact(self, arr, pivot, exact_fallback=True):
        """Freeness of the Ziegler restriction (A^H, m^H); None if undecided."""
        rest = Restriction(arr, pivot)
        multi = rest.ziegler()
        ess, _ = essentialize_multi(multi)
        if ess.dim <= 2:
            exps = self._small_exponents(ess)
            return Fact("free", subject_of(multi), True, "axiom:rank-le-2",
                        note=json.dumps({"exponents": exps}))
        f = self.saito_fact(multi)
        if f is not None:
            return f
        if exact_fallback and ess.dim <= 3:
            pf = self.exact_pd_fact(ess)
            return Fact("free", subject_of(multi), pf.value == 0, "pd-zero-is-free", (pf,))
        return None

    def yoshinaga_fact(self, arr, pivot):
        """free(A) <=> upper b2 equality and free Ziegler restriction."""
        facts = self.b2_facts(arr, pivot)
        upper = facts["upper"]
        subj = subject_of(arr, pivot)
        if not upper.value:
            return Fact("free", subject_of(arr), False, "yoshinaga", (upper,),
                        note="multi-b2 equality fails")
        zf = self.ziegler_free_fact(arr, pivot)
        if zf is None:
            return None
        if zf.value:
            return Fact("free", subject_of(arr), True, "yoshinaga", (upper, zf))
        return Fact("free", subject_of(arr), False, "yoshinaga", (upper, zf),
                    note="Ziegler restriction not free")

    def division_fact(self, arr, pivot, restriction_free_fact):
        """Free restriction + b2 equality => free."""
        b2f = self.b2_facts(arr, pivot)["b2"]
        if not b2f.value or not restriction_free_fact.value:
            raise NotApplicable("division needs the b2 equality and a free restriction")
        return Fact("free", subject_of(arr), True, "division",
                    (b2f, restriction_free_fact))

    def terao_addition_deletion(self, arr, pivot, know):
        """Two freeness-with-exponents facts among {A, A', A^H} give the third.

        `know`: dict with up to two of "full", "deleted", "restricted"
        mapping to exponents facts; returns the derived fact.
        """
        n = len(arr.forms)
        rest = Restriction(arr, pivot)
        nH = len(rest.sub.forms)
        have = set(know)
        def exps(f):
            return sorted(json.loads(f.note)["exponents"])
        if have >= {"full", "deleted"}:
            a, d = exps(know["full"]), exps(know["deleted"])
            shared = _multiset_shared(a, d)
            if shared is None:
                raise NotApplicable("exponents do not differ in exactly one slot by one")
            return Fact("free", subject_of(rest.sub), True, "addition-deletion",
                        (know["full"], know["deleted"]),
                        note=json.dumps({"exponents": shared}))
        if have >= {"deleted", "restricted"}:
            d, r = exps(know["deleted"]), exps(know["restricted"])
            rem = _multiset_minus(d, r)
            if rem is None or len(rem) != 1:
                raise NotApplicable("restriction exponents must sit inside the deletion's")
            e = sorted(r + [rem[0] + 1])
            return Fact("free", subject_of(arr), True, "addition-deletion",
                        (know["deleted"], know["restricted"]),
                        note=json.dumps({"exponents": e}))
        if have >= {"full", "restricted"}:
            a, r = exps(know["full"]), exps(know["restricted"])
            rem = _multiset_minus(a, r)
            if rem is None or len(rem) != 1:
                raise NotApplicable("restriction exponents must sit inside the full set")
            e = sorted(r + [rem[0] - 1])
            return Fact("free", subject_of(arr.delete(pivot)), True, "addition-deletion",
                        (know["full"], know["restricted"]),
                        note=json.dumps({"exponents": e}))
        raise NotApplicable("need two of the three")

    # ---------------- pd comparison rules ----------------

    def pd_addition(self, arr, pivot, pd_deleted, pd_restricted, local_surj, nmpd_del):
        if not local_surj.value or not nmpd_del.value:
            raise NotApplicable("needs local surjectivity and NMPD of the deletion")
        k, s = pd_deleted.value, pd_restricted.value
        prem = (pd_deleted, pd_restricted, local_surj, nmpd_del)
        subj = subject_of(arr)
        def note(c):
            return json.dumps({"clause": c, "pivot": form_key(pivot)})
        if s == k:
            return Fact("pd_upper", subj, k + 1, "pd-addition", prem, note=note(1))
        if s > k:
            return Fact("pd", subj, s + 1, "pd-addition", prem, note=note(2))
        return Fact("pd", subj, k, "pd-addition", prem, note=note(3))

    def pd_deletion(self, arr, pivot, pd_full, pd_restricted, local_surj, nmpd_del):
        if not local_surj.value or not nmpd_del.value:
            raise NotApplicable("needs local surjectivity and NMPD of the deletion")
        k, s = pd_full.value, pd_restricted.value
        prem = (pd_full, pd_restricted, local_surj, nmpd_del)
        subj = subject_of(arr.delete(pivot))
        def note(c):
            return json.dumps({"clause": c, "pivot": form_key(pivot)})
        if s == k - 1:
            return Fact("pd_upper", subj, k, "pd-deletion", prem, note=note(1))
        if s > k - 1:
            return Fact("pd", subj, s, "pd-deletion", prem, note=note(2))
        return Fact("pd", subj, k, "pd-deletion", prem, note=note(3))

    def pd_restriction(self, arr, pivot, pd_full, pd_deleted, local_surj, nmpd_del):
        if not local_surj.value or not nmpd_del.value:
            raise NotApplicable("needs local surjectivity and NMPD of the deletion")
        p, k = pd_full.value, pd_deleted.value
        prem = (pd_full, pd_deleted, local_surj, nmpd_del)
        subj = subject_of(Restriction(arr, pivot).restricted())
        def note(c):
            return json.dumps({"clause": c, "pivot": form_key(pivot)})
        if p < k:
            return Fact("pd", subj, k, "pd-restriction", prem, note=note(1))
        if p == k:
            return Fact("pd_upper", subj, k, "pd-restriction", prem, note=note(2))
        return Fact("pd", subj, p - 1, "pd-restriction", prem, note=note(3))

    def pd_division(self, arr, pivot, nmpd_fact_, known_restricted=None, known_deleted=None):
        """b2 equality + NMPD: pd A' = pd A^H >= pd A, all below maximal.

        A known pd fact for the restriction or the deletion propagates
        along the equality; an upper bound on pd(A) is emitted either way.
        """
        b2f = self.b2_facts(arr, pivot)["b2"]
        if not b2f.value or not nmpd_fact_.value:
            raise NotApplicable("needs the b2 equality and NMPD along the pivot")
        ess0, _ = essentialize(arr)
        r = ess0.dim
        prem = [b2f, nmpd_fact_]
        out = []
        rest = Restriction(arr, pivot).restricted()
        note = json.dumps({"pivot": form_key(pivot)})
        if known_restricted is not None:
            p = tuple(prem + [known_restricted])
            s = known_restricted.value
            out.append(Fact("pd_upper", subject_of(arr), s, "pd-division", p, note=note))
            out.append(Fact("pd", subject_of(arr.delete(pivot)), s, "pd-division", p, note=note))
        elif known_deleted is not None:
            p = tuple(prem + [known_deleted])
            s = known_deleted.value
            out.append(Fact("pd_upper", subject_of(arr), s, "pd-division", p, note=note))
            out.append(Fact("pd", subject_of(rest), s, "pd-division", p, note=note))
        out.append(Fact("pd_upper", subject_of(arr.delete(pivot)), r - 3, "pd-division",
                        tuple(prem), note=note))
        return out

    def pd_zero_table(self, arr, pivot, known_zero):
        """When two of pd(A), pd(A'), pd(A^H) vanish the third is at most
        one, settled by the divisibility of characteristic polynomials.

        `known_zero`: dict with two of "full"/"deleted"/"restricted"
        mapping to pd-zero facts.
        """
        have = set(known_zero)
        rest = Restriction(arr, pivot).restricted()
        div = self.chi_divides_fact(arr, pivot)
        if have >= {"full", "deleted"}:
            prem = (known_zero["full"], known_zero["deleted"])
            return [Fact("pd", subject_of(rest), 0, "pd-zero-table", prem, note="clause 1")]
        if have >= {"full", "restricted"}:
            prem = (known_zero["full"], known_zero["restricted"], div)
            v = 0 if div.value else 1
            return [Fact("pd", subject_of(arr.delete(pivot)), v, "pd-zero-table", prem,
                         note="clause 2")]
        if have >= {"deleted", "restricted"}:
            prem = (known_zero["deleted"], known_zero["restricted"], div)
            v = 0 if div.value else 1
            return [Fact("pd", subject_of(arr), v, "pd-zero-table", prem, note="clause 3")]
        raise NotApplicable("need two zero pd facts")

    def free_minus_one(self, arr, pivot, free_fact, not_free_deleted):
        """Deleting one hyperplane from a free arrangement: pd at most one;
        exactly one when the deletion is not free."""
        if not free_fact.value:
            raise NotApplicable("needs freeness of the full arrangement")
        prem = [free_fact]
        subj = subject_of(arr.delete(pivot))
        if not_free_deleted is not None and not_free_deleted.value is False:
            prem.append(not_free_deleted)
            return Fact("pd", subj, 1, "free-minus-one", tuple(prem))
        return Fact("pd_upper", subj, 1, "free-minus-one", tuple(prem))

    def free_surjection(self, arr, pivot, deleted_free_fact):
        if not deleted_free_fact.value:
            raise NotApplicable("deletion must be free")
        return Fact("surjective_rho", subject_of(arr, pivot), True,
                    "free-surjection", (deleted_free_fact,))

    def surjectivity_by_b2(self, arr, pivot, nmpd_fact_):
        """Under NMPD along H the b2 equality makes both restriction maps
        onto.  A failed equality only denies the conjunction, so nothing
        is emitted about the individual maps then."""
        if not nmpd_fact_.value:
            raise NotApplicable("needs NMPD along the pivot")
        b2f = self.b2_facts(arr, pivot)["b2"]
        if not b2f.value:
            raise NotApplicable(
                "b2 equality fails: only the conjunction of the two maps is denied"
            )
        subj = subject_of(arr, pivot)
        prem = (nmpd_fact_, b2f)
        return [
            Fact("surjective_rho", subj, True, "surjectivity-by-b2", prem),
            Fact("surjective_pi", subj, True, "surjectivity-by-b2", prem),
        ]

    def pi_surjectivity_by_multib2(self, arr, pivot, nmpd_fact_, pd_fact):
        """pd(A) <= rank-3 and NMPD: the multi-b2 equality decides pi."""
        ess0, _ = essentialize(arr)
        r = ess0.dim
        if not nmpd_fact_.value:
            raise NotApplicable("needs NMPD along the pivot")
        if pd_fact.kind not in ("pd", "pd_upper") or pd_fact.value > r - 3:
            raise NotApplicable("projective dimension must be below maximal")
        upper = self.b2_facts(arr, pivot)["upper"]
        return Fact("surjective_pi", subject_of(arr, pivot), bool(upper.value),
                    "pi-surjectivity-by-multi-b2", (nmpd_fact_, pd_fact, upper))

    def yoshinaga_pd(self, arr, pivot, locally_free, multi_pd_fact,
                     lower_fact=None, pd_restricted=None):
        """Locally free along H and non-maximal Ziegler restriction pd:
        pi is onto and pd(A) <= pd(A^H, m^H); with the lower b2 equality
        also pd(A) <= pd(A^H)."""
        ess0, _ = essentialize(arr)
        r = ess0.dim
        if not locally_free.value:
            raise NotApplicable("needs local freeness along the pivot")
        if multi_pd_fact.value >= r - 1 - 2 + 1:
            pass
        if multi_pd_fact.value > r - 3:
            raise NotApplicable("Ziegler restriction pd must not be maximal")
        prem = [locally_free, multi_pd_fact]
        out = [
            Fact("surjective_pi", subject_of(arr, pivot), True, "yoshinaga-pd", tuple(prem)),
            Fact("pd_upper", subject_of(arr), multi_pd_fact.value, "yoshinaga-pd", tuple(prem)),
        ]
        if lower_fact is not None and lower_fact.value and pd_restricted is not None:
            if pd_restricted.value < (r - 1) - 2:
                prem2 = tuple(prem + [lower_fact, pd_restricted])
                out.append(Fact("pd_upper", subject_of(arr), pd_restricted.value,
                                "yoshinaga-pd", prem2, note="clause 2"))
        return out

    def pi_pd_deletion(self, arr, pivot, pi_fact, pd_fact):
        """pi onto: pd(A') <= pd(A), or <= 1 when A is free."""
        if not pi_fact.value:
            raise NotApplicable("needs surjective Ziegler restriction map")
        bound = max(pd_fact.value, 1)
        return Fact("pd_upper", subject_of(arr.delete(pivot)), bound,
                    "pi-pd-deletion", (pi_fact, pd_fact))

    def max_pd_propagation(self, arr, pivot, pd_deleted, local_nonmax):
        """Maximal deletion + b2 equality + non-maximal proper localizations
        force maximal pd."""
        ess0, _ = essentialize(arr)
        r = ess0.dim
        if pd_deleted.value != r - 2:
            raise NotApplicable("deletion must have maximal pd")
        if not local_nonmax.value:
            raise NotApplicable("all proper localizations must be non-maximal")
        b2f = self.b2_facts(arr, pivot)["b2"]
        if not b2f.value:
            raise NotApplicable("needs the b2 equality")
        return Fact("pd", subject_of(arr), r - 2, "max-pd",
                    (pd_deleted, b2f, local_nonmax))

    def local_nonmaximal_fact(self, arr):
        """pd(A_X) < codim X - 2 for every proper flat X (center excluded)."""
        lat = self.lattice(arr)
        ess0, _ = essentialize(arr)
        r = ess0.dim
        premises = []
        verdict = True
        for codim in range(3, lat.max_codim() + 1):
            for fl in lat.flats(codim):
                sub = lat.localization(fl)
                ess, _ = essentialize(sub)
                if ess.dim <= 2:
                    continue
                if ess.dim == r and len(ess.forms) == len(ess0.forms):
                    continue
                pf = self.pd_fact(ess)
                premises.append(pf)
                if pf.value >= fl.codim - 2:
                    verdict = False
        return Fact("locally_nonmaximal", subject_of(arr), verdict,
                    "local-nonmaximality", premises)

    # ---------------- combinatorial classes ----------------

    def df_fact(self, arr):
        """Divisional flag search: restriction chain with the b2 equality at
        every step.  Conclusive both ways (exhaustive over pivots)."""
        k = arr_key(arr)
        if k in self._df:
            return self._df[k]
        if arr.dim <= 2 or len(arr.forms) == 0 or arr.rank() <= 2:
            f = Fact("class_df", subject_of(arr), True, "df", note="rank at most two")
            self._df[k] = f
            return f
        for h in arr.forms:
            b2f = self.b2_facts(arr, h)["b2"]
            if not b2f.value:
                continue
            sub = self.df_fact(Restriction(arr, h).restricted())
            if sub.value:
                f = Fact("class_df", subject_of(arr), True, "df", (b2f, sub),
                         note=json.dumps({"pivot": form_key(h)}))
                self._df[k] = f
                return f
        f = Fact("class_df", subject_of(arr), False, "df", note="exhaustive search")
        self._df[k] = f
        return f

    def df_free_fact(self, arr):
        """DF members are free with exponents read off the characteristic
        polynomial."""
        dff = self.df_fact(arr)
        if not dff.value:
            return None
        roots, residual = _int_roots(self.chi(arr).coefficients())
        assert residual == 0, "free arrangements factor over the integers"
        return Fact("free", subject_of(arr), True, "df-free", (dff,),
                    note=json.dumps({"exponents": roots}))

    def cs3_fact(self, arr, pivot):
        """Sufficient conditions for combinatorial surjectivity in rank 3:
        DF deletion, at most one multiple trace, or the b2 equality.
        None when all three are silent (the full class is undecidable here)."""
        ess, emb = essentialize(arr)
        if ess.dim != 3:
            from .arrangement import RankError

            raise RankError("CS3 lives in rank three")
        h = normalize(emb.push(normalize(pivot))) if ess.dim != arr.dim else normalize(pivot)
        subj = subject_of(ess, h)
        b2f = self.b2_facts(ess, h)["b2"]
        if b2f.value:
            return Fact("class_cs3", subj, True, "cs3", (b2f,), note="b2 equality")
        rest = Restriction(ess, h)
        multiple = [t for t, m in rest.mult.items() if m > 1]
        if len(multiple) <= 1:
            return Fact("class_cs3", subj, True, "cs3",
                        note=json.dumps({"multiple_traces": len(multiple)}))
        dff = self.df_fact(ess.delete(h))
        if dff.value:
            return Fact("class_cs3", subj, True, "cs3", (dff,), note="deletion is DF")
        return None

    def sf_verify(self, arr, path):
        """Verify a stair-free path: free additions and division lifts.

        Path steps: {"op": "start", "dim": d}, {"op": "add", "form": [...]},
        {"op": "lift", "arrangement": <text>, "pivot": [...]}.  Freeness
        along the way is certified by Saito search (additions) or the
        division theorem (lifts).  Returns the SF fact for the final
        arrangement, which must equal `arr`.
        """
        current = None
        prem = []
        for idx, step in enumerate(path):
            op = step.get("op")
            if op == "start":
                current = Arrangement(int(step["dim"]), [])
            elif op == "add":
                if current is None:
                    raise PathInvalid(idx, "path must start with a start step")
                current = current.add(step["form"])
                if current.rank() <= 2:
                    continue
                cert = self.saito_fact(current)
                if cert is None or not cert.value:
                    raise PathInvalid(idx, "addition step lost freeness")
                prem.append(cert)
            elif op == "lift":
                bigger = parse_arrangement(step["arrangement"]).base
                pivot = normalize(step["pivot"])
                rest = Restriction(bigger, pivot).restricted()
                if arr_key(rest) != arr_key(current):
                    raise PathInvalid(idx, "restriction does not match the current floor")
                b2f = self.b2_facts(bigger, pivot)["b2"]
                if not b2f.value:
                    raise PathInvalid(idx, "lift step lacks the b2 equality")
                prem.append(b2f)
                current = bigger
            else:
                raise PathInvalid(idx, f"unknown op {op!r}")
        if current is None or arr_key(current) != arr_key(arr):
            raise PathInvalid(len(path), "path does not end at the target")
        return Fact("class_sf", subject_of(arr), True, "sf-path", tuple(prem),
                    note=json.dumps({"path": path}))

    def df_to_sf_path(self, arr):
        """Convert a divisional flag into a stair-free path."""
        chain = []
        cur = arr
        fact = self.df_fact(arr)
        if not fact.value:
            raise NotApplicable("not divisionally free")
        while cur.dim > 2 and cur.rank() > 2:
            found = False
            for h in cur.forms:
                if self.b2_facts(cur, h)["b2"].value:
                    sub = Restriction(cur, h).restricted()
                    if self.df_fact(sub).value:
                        chain.append((cur, h))
                        cur = sub
                        found = True
                        break
            assert found, "divisional flag disappeared"
        path = [{"op": "start", "dim": cur.dim}]
        for f in cur.forms:
            path.append({"op": "add", "form": list(f)})
        for bigger, pivot in reversed(chain):
            from .arrangement import dump_arrangement

            path.append({"op": "lift", "arrangement": dump_arrangement(bigger),
                         "pivot": list(pivot)})
        return path

    # ---------------- IPD classes ----------------

    def ipd_fact(self, arr, k=None, depth=3):
        """Membership in the inductive projective-dimension classes.

        Returns the fact for the smallest certifiable class index (or the
        requested k); None when the search is inconclusive.  Index
        collisions in the printed recursive clauses are resolved as
        recorded in the certificates' notes.
        """
        ess, _ = essentialize(arr)
        key = (arr_key(ess), k)
        if key in self._ipd:
            return self._ipd[key]
        result = self._ipd_search(ess, k, depth)
        self._ipd[key] = result
        return result

    def _ipd_search(self, ess, k, depth):
        r = ess.dim
        candidates = range(0, max(r - 2, 0) + 1) if k is None else [k]
        for kk in candidates:
            f = self._ipd_k(ess, kk, depth)
            if f is not None:
                return f
        return None

    def _ipd_k(self, ess, k, depth):
        r = ess.dim
        subj = subject_of(ess)
        if r <= 2:
            if k == 0:
                return Fact("class_ipd", subj, 0, "ipd", note="rank at most two")
            return None
        if k == 0:
            dff = self.df_fact(ess)
            if dff.value:
                return Fact("class_ipd", subj, 0, "ipd", (dff,),
                            note="stair-free via divisional flag")
            return None
        if k > r - 2 or depth < 0:
            return None
        if k == 1:
            f = self._ipd1(ess, depth)
            if f is not None:
                return f
        if r >= 4 and k >= 1:
            f = self._ipd_clause0(ess, k, depth)
            if f is not None:
                return f
            f = self._ipd_clause1(ess, k, depth)
            if f is not None:
                return f
            if k == r - 2:
                f = self._ipd_clause2(ess, k, depth)
                if f is not None:
                    return f
        return None

    def _ipd1(self, ess, depth):
        r = ess.dim
        subj = subject_of(ess)
        if r == 3:
            if len(ess.forms) == 0:
                return None
            red = reduced_char_poly(ess)
            roots, residual = _int_roots(red)
            if residual > 0 and len(red) == 3:
                return Fact("class_ipd", subj, 1, "ipd",
                            note="reduced characteristic polynomial irreducible over Z")
            for h in ess.forms:
                dff = self.df_fact(ess.delete(h))
                if not dff.value:
                    continue
                nH = len(Restriction(ess, h).restricted().forms)
                acc = 0
                for c in red:
                    acc = acc * (nH - 1) + c
                if acc != 0:
                    return Fact("class_ipd", subj, 1, "ipd", (dff,),
                                note=json.dumps({"pivot": form_key(h),
                                                 "chi0_value_at": nH - 1,
                                                 "clause": "df-deletion-nonroot"}))
            return None
        for h in ess.forms:
            dfa = self.df_fact(ess.delete(h))
            if not dfa.value:
                continue
            rest = Restriction(ess, h).restricted()
            dfr = self.df_fact(rest)
            if not dfr.value:
                continue
            div = self.chi_divides_fact(ess, h)
            if div.value:
                continue
            return Fact("class_ipd", subj, 1, "ipd", (dfa, dfr, div),
                        note=json.dumps({"pivot": form_key(h),
                                         "clause": "stair-free-sides-nondividing"}))
        return None

    def _ipd_clause0(self, ess, k, depth):
        if k < 2:
            return None
        subj = subject_of(ess)
        for h in ess.forms:
            del_f = self.ipd_fact(ess.delete(h), k=0, depth=depth - 1)
            if del_f is None:
                continue
            rest = Restriction(ess, h).restricted()
            rest_f = self.ipd_fact(rest, k=k - 1, depth=depth - 1)
            if rest_f is None:
                continue
            return Fact("class_ipd", subj, k, "ipd", (del_f, rest_f),
                        note=json.dumps({"pivot": form_key(h), "clause": "0"}))
        return None

    def _ipd_local_conditions(self, ess, h, depth):
        """Shared local premises of the recursive clauses: CS3 at the
        codim-3 flats on H, and localized deletions in non-maximal classes
        at the deeper flats (the printed index collision is read as: codim
        c localizations certified with class index below c - 2)."""
        prem = []
        deleted = ess.delete(h)
        for fl in self._flats_on_pivot(ess, h, min_codim=3):
            if fl.codim == 3:
                sub_ess, hsmall = self._localized_pair(ess, h, fl)
                if sub_ess.dim < 3:
                    continue
                cs = self.cs3_fact(sub_ess, hsmall)
                if cs is None:
                    return None
                prem.append(cs)
            else:
                sub = [f for f in deleted.forms if fl.contains_form(f)]
                if not sub:
                    continue
                loc = Arrangement(ess.dim, sub, normalized=True)
                less, _ = essentialize(loc)
                if less.dim <= 2:
                    continue
                got = None
                for j in range(0, fl.codim - 2):
                    cand = self.ipd_fact(less, k=j, depth=depth - 1)
                    if cand is not None:
                        got = cand
                        break
                if got is None:
                    return None
                prem.append(got)
        return prem

    def _ipd_clause1(self, ess, k, depth):
        if k < 2:
            return None
        subj = subject_of(ess)
        for h in ess.forms:
            local = self._ipd_local_conditions(ess, h, depth)
            if local is None:
                continue
            rest_f = self.ipd_fact(Restriction(ess, h).restricted(), k=k - 1, depth=depth - 1)
            if rest_f is None:
                continue
            del_f = None
            for j in range(2, k + 1):
                cand = self.ipd_fact(ess.delete(h), k=k - j, depth=depth - 1)
                if cand is not None:
                    del_f = cand
                    break
            if del_f is None:
                continue
            return Fact("class_ipd", subj, k, "ipd",
                        tuple(local + [del_f, rest_f]),
                        note=json.dumps({
                            "pivot": form_key(h),
                            "clause": "1",
                            "reading": "deletion class drop j read as j >= 2; localized-deletion indices read as codim-relative",
                        }))
        return None

    def _ipd_clause2(self, ess, k, depth):
        subj = subject_of(ess)
        r = ess.dim
        if k != r - 2:
            return None
        for h in ess.forms:
            b2f = self.b2_facts(ess, h)["b2"]
            if not b2f.value:
                continue
            local = self._ipd_local_conditions(ess, h, depth)
            if local is None:
                continue
            del_f = self.ipd_fact(ess.delete(h), k=k, depth=depth - 1)
            if del_f is None:
                continue
            nonmax = self.local_nonmaximal_fact(ess)
            if not nonmax.value:
                continue
            return Fact("class_ipd", subj, k, "ipd",
                        tuple([b2f] + local + [del_f, nonmax]),
                        note=json.dumps({
                            "pivot": form_key(h),
                            "clause": "2",
                            "reading": "class index read as rank-2; strengthened by checking all proper localizations non-maximal",
                        }))
        return None

    # ---------------- orchestrator ----------------

    def infer(self, arr, depth=2, pivots=None):
        """Saturate the rule set on A: returns (lo, hi, facts).

        The interval is the tightest derived range for pd(A); when lo ==
        hi the list contains an exact pd fact whose premise tree is the
        certificate.
        """
        multi = as_multi(arr)
        assert multi.is_simple(), "inference works on simple arrangements"
        ess, _ = essentialize(multi.base)
        key = (arr_key(ess), depth)
        if key in self._infer:
            return self._infer[key]
        r = ess.dim
        lo, hi = 0, max(r - 2, 0)
        facts = []
        self._infer[key] = (lo, hi, facts)  # cycle guard; refined below
        if r <= 2:
            f = Fact("pd", subject_of(ess), 0, "axiom:rank-le-2")
            out = (0, 0, [f])
            self._infer[key] = out
            return out
        # freeness via the Ziegler restriction (decides rank 3 completely)
        yos = self.yoshinaga_fact(ess, ess.forms[0])
        if yos is not None and yos.value:
            f = Fact("pd", subject_of(ess), 0, "free-pd-zero", (yos,))
            out = (0, 0, [f])
            self._infer[key] = out
            return out
        if yos is not None and not yos.value:
            lo = max(lo, 1)
            facts.append(Fact("pd_lower", subject_of(ess), 1, "not-free", (yos,)))
            if r == 3:
                f = Fact("pd", subject_of(ess), 1, "yoshinaga-rank3", (yos,))
                out = (1, 1, [f])
                self._infer[key] = out
                return out
        if yos is None:
            dff = self.df_free_fact(ess)
            if dff is not None:
                f = Fact("pd", subject_of(ess), 0, "free-pd-zero", (dff,))
                out = (0, 0, [f])
                self._infer[key] = out
                return out
            nonf = self.nonfactor_fact(ess)
            if nonf is not None:
                lo = max(lo, 1)
                facts.append(Fact("pd_lower", subject_of(ess), 1, "not-free", (nonf,)))
        # inductive classes
        ipdf = self.ipd_fact(ess, depth=min(depth + 1, 3))
        if ipdf is not None:
            f = Fact("pd", subject_of(ess), ipdf.value, "ipd-pd", (ipdf,))
            out = (ipdf.value, ipdf.value, [f])
            self._infer[key] = out
            return out
        if depth > 0:
            for h in list(pivots or ess.forms):
                h = normalize(h)
                dlo, dhi, dfacts = self.infer(ess.delete(h), depth=depth - 1)
                rest = Restriction(ess, h).restricted()
                rlo, rhi, rfacts = self.infer(rest, depth=depth)
                dexact = next((f for f in dfacts if f.kind == "pd"), None)
                rexact = next((f for f in rfacts if f.kind == "pd"), None)
                if dexact is not None and dexact.value == 0:
                    try:
                        sr = self.free_surjection(ess, h, _free_from_pd0(dexact))
                        facts.append(sr)
                    except NotApplicable:
                        pass
                if dexact is not None and rexact is not None:
                    if dexact.value == 0 and rexact.value == 0:
                        outs = self.pd_zero_table(
                            ess, h, {"deleted": dexact, "restricted": rexact}
                        )
                        for f in outs:
                            if f.subject["arrangement"] == arr_key(ess):
                                facts.append(f)
                                lo, hi = max(lo, f.value), min(hi, f.value)
                    else:
                        try:
                            local = self.local_rho_surjective_fact(ess, h)
                            nm = self.nmpd_deleted_fact(ess, h, deleted_pd_fact=dexact)
                            f = self.pd_addition(ess, h, dexact, rexact, local, nm)
                            facts.append(f)
                            if f.kind == "pd":
                                lo, hi = max(lo, f.value), min(hi, f.value)
                            else:
                                hi = min(hi, f.value)
                        except NotApplicable:
                            pass
                b2f = self.b2_facts(ess, h)["b2"]
                if b2f.value and rexact is not None and hi < r - 2:
                    try:
                        center = Fact("pd_upper", subject_of(ess), hi, "interval", tuple(facts))
                        nm = self.nmpd_fact(ess, h, center_bound_fact=center)
                        outs = self.pd_division(ess, h, nm, known_restricted=rexact)
                        for f in outs:
                            if f.subject["arrangement"] == arr_key(ess) and f.kind == "pd_upper":
                                facts.append(f)
                                hi = min(hi, f.value)
                    except NotApplicable:
                        pass
                if lo == hi:
                    break
        if lo == hi:
            f = Fact("pd", subject_of(ess), lo, "infer", tuple(facts))
            out = (lo, hi, [f] + facts)
        else:
            f = Fact("pd_interval", subject_of(ess), [lo, hi], "infer", tuple(facts))
            out = (lo, hi, [f] + facts)
        self._infer[key] = out
        return out


class PathInvalid(ValueError):
    def __init__(self, index, message):
        super().__init__(f"step {index}: {message}")
        self.index = index


def _free_from_pd0(pd_fact):
    return Fact("free", pd_fact.subject, True, "pd-zero-is-free", (pd_fact,))


def _multiset_shared(full, deleted):
    """exp(A) and exp(A') sharing all but one slot, off by one: the shared
    part (the restriction's exponents); None when incompatible."""
    if len(full) != len(deleted):
        return None
    from collections import Counter

    cf, cd = Counter(full), Counter(deleted)
    diff_f = list((cf - cd).elements())
    diff_d = list((cd - cf).elements())
    if len(diff_f) == 1 and len(diff_d) == 1 and diff_f[0] == diff_d[0] + 1:
        shared = list((cf & cd).elements())
        return sorted(shared)
    return None


def _multiset_minus(big, small):
    from collections import Counter

    cb, cs = Counter(big), Counter(small)
    if cs - cb:
        return None
    return sorted((cb - cs).elements())
