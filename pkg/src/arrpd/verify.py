"""Certificate replay.

A certificate is a Fact tree.  Replaying walks the tree bottom-up:
leaf computations are recomputed from scratch and compared; inference
steps are re-validated against the recomputed premises (subject
relations included).  Returns quietly on success, raises ReplayError
with the offending node otherwise.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arrangement import Restriction, as_multi, essentialize, essentialize_multi, normalize
from .derivations import saito_check, surjectivity
from .engine import Engine, _int_roots, _multiset_minus, _multiset_shared, deserialize_derivation
from .facts import Fact, arr_key, form_key, subject_pair
from .lattice import int_poly_divides, reduced_char_poly
from .multib2 import b2_equality_check
from .resolution import projective_dimension_exact


class ReplayError(ValueError):
    def __init__(self, fact, message):
        super().__init__(f"{fact.rule}/{fact.kind}: {message}")
        self.fact = fact


def _ess_key(data):
    multi = as_multi(data)
    ess, _ = essentialize_multi(multi)
    return arr_key(ess)


def _prem_by_kind(fact, kind, which=0):
    hits = [p for p in fact.premises if p.kind == kind]
    if len(hits) <= which:
        raise ReplayError(fact, f"missing premise of kind {kind}")
    return hits[which]


def replay(fact, engine=None, deep=True):
    """Validate a Fact tree; returns True or raises ReplayError."""
    if isinstance(fact, dict):
        fact = Fact.from_dict(fact)
    engine = engine or Engine()
    if deep:
        for p in fact.premises:
            replay(p, engine=engine, deep=True)
    multi, pivot = subject_pair(fact.subject)
    arr = multi.base
    rule = fact.rule

    def fail(msg):
        raise ReplayError(fact, msg)

    if rule == "computed:b2":
        flag = {"b2_equality": "b2", "upper_b2_equality": "upper",
                "lower_b2_equality": "lower"}[fact.kind]
        expect = engine.b2_facts(arr, pivot)[flag].value
        if expect != fact.value:
            fail(f"recomputed flag {expect} != {fact.value}")
    elif rule == "computed:lattice":
        rest = Restriction(arr, pivot)
        got = int_poly_divides(
            engine.chi(rest.restricted()).coefficients(), engine.chi(arr).coefficients()
        )
        if got != fact.value:
            fail("divisibility flag changed")
    elif rule == "computed:resolution":
        got = engine.exact_pd_fact(multi).value
        if got != fact.value:
            fail(f"recomputed pd {got} != {fact.value}")
    elif rule == "computed:saito":
        payload = json.loads(fact.note)
        ess, _ = essentialize_multi(multi)
        cands = [
            deserialize_derivation(ess.dim, d, w)
            for d, w in zip(payload["degrees"], payload["witnesses"])
        ]
        cert = saito_check(ess, cands)
        pad = [0] * (multi.dim - ess.dim)
        if not cert.free or sorted(list(cert.exponents) + pad) != sorted(payload["exponents"]):
            fail("witnesses no longer certify freeness")
        if fact.value is not True:
            fail("saito certificates carry value True")
    elif rule == "computed:surjectivity":
        kind = "euler" if fact.kind == "surjective_rho" else "ziegler"
        ok, _ = surjectivity(kind, arr, pivot)
        if ok != fact.value:
            fail("surjectivity verdict changed")
    elif rule == "axiom:rank-le-2":
        ess, _ = essentialize_multi(multi)
        if ess.dim > 2:
            fail("rank exceeds two")
        if fact.kind == "pd" and fact.value != 0:
            fail("rank <= 2 modules are free")
        if fact.kind == "free" and fact.value is not True:
            fail("rank <= 2 multiarrangements are free")
    elif rule == "terao-nonfactor":
        roots, residual = _int_roots(engine.chi(arr).coefficients())
        if residual == 0:
            fail("characteristic polynomial factors after all")
        if fact.value is not False:
            fail("nonfactor rule only denies freeness")
    elif rule == "yoshinaga":
        upper = _prem_by_kind(fact, "upper_b2_equality")
        if not upper.value:
            if fact.value is not False:
                fail("failed multi-b2 equality forbids freeness")
        else:
            zf = _prem_by_kind(fact, "free")
            if bool(zf.value) != bool(fact.value):
                fail("value must follow the Ziegler restriction verdict")
    elif rule == "pd-zero-is-free":
        p = _prem_by_kind(fact, "pd")
        if (p.value == 0) != bool(fact.value):
            fail("freeness equals vanishing pd")
    elif rule == "free-pd-zero":
        p = _prem_by_kind(fact, "free")
        if not p.value or fact.value != 0:
            fail("freeness gives pd zero")
    elif rule == "not-free":
        p = _prem_by_kind(fact, "free")
        if p.value or fact.kind != "pd_lower" or fact.value != 1:
            fail("non-freeness gives pd at least one")
    elif rule == "yoshinaga-rank3":
        ess, _ = essentialize(arr)
        if ess.dim != 3:
            fail("rank-3 rule applied off rank 3")
        p = _prem_by_kind(fact, "free")
        if p.value or fact.value != 1:
            fail("rank-3 non-free means pd exactly one")
    elif rule == "division":
        b2f = _prem_by_kind(fact, "b2_equality")
        rf = _prem_by_kind(fact, "free")
        if not b2f.value or not rf.value or fact.value is not True:
            fail("division needs the b2 equality and a free restriction")
        barr, bpiv = subject_pair(b2f.subject)
        rest = Restriction(barr.base, bpiv).restricted()
        if _ess_key(rest) != _ess_key(subject_pair(rf.subject)[0]):
            fail("free premise is not the restriction of the b2 premise")
    elif rule == "addition-deletion":
        exps = [sorted(json.loads(p.note)["exponents"]) for p in fact.premises]
        mine = sorted(json.loads(fact.note)["exponents"])
        for combine in (
            _multiset_shared(exps[0], exps[1]),
            _multiset_shared(exps[1], exps[0]),
        ):
            if combine == mine:
                break
        else:
            rem01 = _multiset_minus(exps[0], exps[1])
            rem10 = _multiset_minus(exps[1], exps[0])
            if not (
                (rem01 is not None and len(rem01) == 1 and sorted(exps[1] + [rem01[0] + 1]) == mine)
                or (rem01 is not None and len(rem01) == 1 and sorted(exps[1] + [rem01[0] - 1]) == mine)
                or (rem10 is not None and len(rem10) == 1 and sorted(exps[0] + [rem10[0] + 1]) == mine)
                or (rem10 is not None and len(rem10) == 1 and sorted(exps[0] + [rem10[0] - 1]) == mine)
            ):
                fail("exponent bookkeeping does not add up")
    elif rule == "free-minus-one":
        full = _prem_by_kind(fact, "free")
        if not full.value:
            fail("full arrangement must be free")
        fmulti, _ = subject_pair(full.subject)
        if not _is_deletion_of(fmulti.base, arr):
            fail("subject is not a one-hyperplane deletion of the free premise")
        negs = [p for p in fact.premises if p.kind == "free" and p.value is False]
        if fact.kind == "pd":
            if fact.value != 1 or not negs:
                fail("exact value one needs a non-freeness premise")
        elif fact.kind != "pd_upper" or fact.value != 1:
            fail("free minus one bounds pd by one")
    elif rule == "free-surjection":
        p = _prem_by_kind(fact, "free")
        if not p.value or fact.value is not True:
            fail("needs a free deletion")
        dmulti, _ = subject_pair(p.subject)
        if _ess_key(arr.delete(pivot)) != _ess_key(dmulti):
            fail("premise is not the deletion at the pivot")
    elif rule == "surjectivity-by-b2":
        nm = _prem_by_kind(fact, "nmpd")
        b2f = _prem_by_kind(fact, "b2_equality")
        if not nm.value or not b2f.value or fact.value is not True:
            fail("needs NMPD and the b2 equality; emits only positive verdicts")
    elif rule == "pi-surjectivity-by-multi-b2":
        nm = _prem_by_kind(fact, "nmpd")
        upper = _prem_by_kind(fact, "upper_b2_equality")
        pf = [p for p in fact.premises if p.kind in ("pd", "pd_upper")]
        ess, _ = essentialize(arr)
        if not nm.value or not pf or pf[0].value > ess.dim - 3:
            fail("needs NMPD and pd below maximal")
        if bool(upper.value) != bool(fact.value):
            fail("verdict must equal the multi-b2 equality flag")
    elif rule == "yoshinaga-pd":
        lf = _prem_by_kind(fact, "locally_free")
        pf = [p for p in fact.premises if p.kind in ("pd", "pd_upper")]
        if not lf.value or not pf:
            fail("needs local freeness and a Ziegler pd premise")
        if fact.kind == "pd_upper" and fact.value not in [p.value for p in pf]:
            fail("bound must come from a premise")
    elif rule == "pi-pd-deletion":
        pi = _prem_by_kind(fact, "surjective_pi")
        pf = _prem_by_kind(fact, "pd")
        if not pi.value or fact.value != max(pf.value, 1):
            fail("bound is max(pd, 1)")
    elif rule == "max-pd":
        pdd = _prem_by_kind(fact, "pd")
        b2f = _prem_by_kind(fact, "b2_equality")
        nonmax = _prem_by_kind(fact, "locally_nonmaximal")
        ess, _ = essentialize(arr)
        if not (b2f.value and nonmax.value and pdd.value == ess.dim - 2 and fact.value == ess.dim - 2):
            fail("maximal propagation premises unsatisfied")
    elif rule in ("nmpd-exact", "nmpd-sufficient", "nmpd-deleted-exact",
                  "local-surjectivity", "local-freeness", "local-nonmaximality"):
        got = _recompute_local(engine, rule, arr, pivot, fact)
        if got is not None and got != fact.value:
            fail(f"recomputed verdict {got} != {fact.value}")
    elif rule in ("pd-addition", "pd-deletion", "pd-restriction"):
        _replay_pd_comparison(engine, fact)
    elif rule == "pd-division":
        b2f = _prem_by_kind(fact, "b2_equality")
        nm = _prem_by_kind(fact, "nmpd")
        if not b2f.value or not nm.value:
            fail("needs the b2 equality and NMPD")
        known = [p for p in fact.premises if p.kind == "pd"]
        if fact.kind == "pd" and (not known or fact.value != known[0].value):
            fail("equality must transport a known pd value")
    elif rule == "pd-zero-table":
        zeros = [p for p in fact.premises if p.kind == "pd" and p.value == 0]
        if len(zeros) < 2:
            fail("needs two vanishing pd premises")
        div = [p for p in fact.premises if p.kind == "chi_divides"]
        clause = fact.note
        if div:
            expect = 0 if div[0].value else 1
            if fact.value != expect:
                fail("dichotomy must follow the divisibility flag")
        elif fact.value != 0:
            fail("clause 1 always concludes zero")
    elif rule == "df":
        got = engine.df_fact(arr)
        if got.value != fact.value:
            fail("divisional flag verdict changed")
    elif rule == "df-free":
        dff = _prem_by_kind(fact, "class_df")
        if not dff.value or fact.value is not True:
            fail("needs a divisional flag")
        roots, residual = _int_roots(engine.chi(arr).coefficients())
        if residual != 0 or sorted(roots) != sorted(json.loads(fact.note)["exponents"]):
            fail("exponents must be the integer roots")
    elif rule == "cs3":
        got = engine.cs3_fact(arr, pivot)
        if got is None or got.value != fact.value:
            fail("CS3 conditions no longer hold")
    elif rule == "sf-path":
        path = json.loads(fact.note)["path"]
        engine.sf_verify(arr, path)
    elif rule == "ipd":
        got = engine.ipd_fact(arr, k=fact.value)
        if got is None or got.value != fact.value:
            fail("class membership did not replay")
    elif rule == "ipd-pd":
        p = _prem_by_kind(fact, "class_ipd")
        if fact.value != p.value:
            fail("pd must equal the class index")
    elif rule == "interval":
        ess, _ = essentialize(arr)
        uppers = [p.value for p in fact.premises
                  if p.kind in ("pd", "pd_upper") and p.subject == fact.subject]
        bound = min(uppers + [max(ess.dim - 2, 0)])
        if fact.value < bound:
            fail("interval bound tighter than its premises")
    elif rule == "infer":
        ess, _ = essentialize(arr)
        mine = [p for p in fact.premises if p.subject.get("arrangement") == fact.subject["arrangement"]]
        lo = max([0] + [p.value for p in mine if p.kind in ("pd", "pd_lower")])
        hi = min([max(ess.dim - 2, 0)] + [p.value for p in mine if p.kind in ("pd", "pd_upper")])
        if fact.kind == "pd" and not (lo == hi == fact.value):
            fail(f"interval [{lo},{hi}] does not pin {fact.value}")
        if fact.kind == "pd_interval" and fact.value != [lo, hi]:
            fail("interval endpoints changed")
    else:
        fail(f"unknown rule {rule!r}")
    return True


def _is_deletion_of(big, small):
    if len(big.forms) != len(small.forms) + 1:
        return False
    return set(small.forms) <= set(big.forms)


def _recompute_local(engine, rule, arr, pivot, fact):
    if rule in ("nmpd-exact", "nmpd-sufficient"):
        centers = [p for p in fact.premises
                   if p.kind in ("pd", "pd_upper") and p.subject.get("arrangement") == _ess_key(arr)]
        return engine.nmpd_fact(
            arr, pivot, center_bound_fact=centers[0] if centers else None
        ).value
    if rule == "nmpd-deleted-exact":
        delkey = _ess_key(arr.delete(pivot))
        hints = [p for p in fact.premises
                 if p.kind in ("pd", "pd_upper") and p.subject.get("arrangement") == delkey]
        return engine.nmpd_deleted_fact(
            arr, pivot, deleted_pd_fact=hints[0] if hints else None
        ).value
    if rule == "local-surjectivity":
        return engine.local_rho_surjective_fact(arr, pivot).value
    if rule == "local-freeness":
        frees = [p for p in fact.premises
                 if p.kind == "free" and p.value and p.subject.get("arrangement") in (
                     fact.subject["arrangement"], _ess_key(arr))]
        return engine.locally_free_fact(
            arr, pivot, parent_free_fact=frees[0] if frees else None
        ).value
    if rule == "local-nonmaximality":
        return engine.local_nonmaximal_fact(arr).value
    return None


def _replay_pd_comparison(engine, fact):
    note = json.loads(fact.note)
    clause = note["clause"]
    pivot = normalize([Fraction(x) for x in note["pivot"].split()])
    pds = [p for p in fact.premises if p.kind == "pd"]
    ls = _prem_by_kind(fact, "locally_surjective_rho")
    nm = _prem_by_kind(fact, "nmpd_deleted")
    if not ls.value or not nm.value:
        raise ReplayError(fact, "premise flags must hold")
    if len(pds) != 2:
        raise ReplayError(fact, "need two exact pd premises")
    a, b = pds[0].value, pds[1].value
    rule = fact.rule
    ok = False
    if rule == "pd-addition":
        k, s = a, b
        ok = (
            (clause == 1 and s == k and fact.kind == "pd_upper" and fact.value == k + 1)
            or (clause == 2 and s > k and fact.kind == "pd" and fact.value == s + 1)
            or (clause == 3 and s < k and fact.kind == "pd" and fact.value == k)
        )
    elif rule == "pd-deletion":
        k, s = a, b
        ok = (
            (clause == 1 and s == k - 1 and fact.kind == "pd_upper" and fact.value == k)
            or (clause == 2 and s > k - 1 and fact.kind == "pd" and fact.value == s)
            or (clause == 3 and s < k - 1 and fact.kind == "pd" and fact.value == k)
        )
    elif rule == "pd-restriction":
        p, k = a, b
        ok = (
            (clause == 1 and p < k and fact.kind == "pd" and fact.value == k)
            or (clause == 2 and p == k and fact.kind == "pd_upper" and fact.value == k)
            or (clause == 3 and p > k and fact.kind == "pd" and fact.value == p - 1)
        )
    if not ok:
        raise ReplayError(fact, f"clause {clause} arithmetic failed")
