"""Facts and replayable certificates.

A Fact records one derived statement about an arrangement (optionally a
pivot hyperplane or flat): its kind, its value, the rule that produced
it, and the premise Facts.  Leaves are direct computations (lattice
counts, b2 reports, kernels, resolutions) tagged with rule "computed:*"
or "axiom:*"; everything else must be replayable: re-running the rule on
the recomputed premises has to reproduce the value.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arrangement import parse_arrangement, as_multi, normalize

FORMAT_VERSION = "1"


def arr_key(arr):
    """Canonical text form of an arrangement (sorted, normalized)."""
    multi = as_multi(arr)
    base = multi.base.sorted()
    lines = [f"dim {base.dim}"]
    for f in base.forms:
        m = multi.mult[f]
        body = " ".join(str(c) for c in f)
        lines.append(body if m == 1 else f"{body} * {m}")
    return "\n".join(lines) + "\n"


def form_key(form):
    return " ".join(str(c) for c in normalize(form))


class Fact:
    __slots__ = ("kind", "subject", "value", "rule", "premises", "note")

    def __init__(self, kind, subject, value, rule, premises=(), note=""):
        self.kind = kind
        self.subject = subject  # dict with 'arrangement' and optional 'pivot'/'flat'
        self.value = value
        self.rule = rule
        self.premises = tuple(premises)
        self.note = note

    def key(self):
        return (
            self.kind,
            json.dumps(self.subject, sort_keys=True),
            json.dumps(self.value, sort_keys=True),
            self.rule,
        )

    def to_dict(self):
        return {
            "kind": self.kind,
            "subject": self.subject,
            "value": self.value,
            "rule": self.rule,
            "premises": [p.to_dict() for p in self.premises],
            "note": self.note,
        }

    @staticmethod
    def from_dict(d):
        return Fact(
            d["kind"],
            d["subject"],
            d["value"],
            d["rule"],
            [Fact.from_dict(p) for p in d.get("premises", [])],
            d.get("note", ""),
        )

    def certificate_json(self):
        return json.dumps(
            {"format_version": FORMAT_VERSION, "certificate": self.to_dict()},
            indent=2,
            sort_keys=True,
        )

    def walk(self):
        yield self
        for p in self.premises:
            yield from p.walk()

    def __repr__(self):
        subj = self.subject.get("name") or f"n={len(parse_arrangement(self.subject['arrangement']).base.forms)}"
        piv = f", pivot={self.subject['pivot']}" if self.subject.get("pivot") else ""
        return f"Fact({self.kind}={self.value} [{self.rule}] {subj}{piv})"


def subject_of(arr, pivot=None, name=None):
    s = {"arrangement": arr_key(arr)}
    if pivot is not None:
        s["pivot"] = form_key(pivot)
    if name:
        s["name"] = name
    return s


def subject_pair(subject):
    """Recover (multiarrangement, pivot form or None) from a subject dict."""
    multi = parse_arrangement(subject["arrangement"])
    pivot = None
    if subject.get("pivot"):
        pivot = normalize([Fraction(x) for x in subject["pivot"].split()])
    return multi, pivot
