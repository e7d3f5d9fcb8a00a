"""Command line front end.

    arr chi FILE                  characteristic polynomial
    arr lattice FILE              intersection lattice report
    arr b2 FILE --pivot H         b2 ledger and equality flags
    arr ziegler FILE --pivot H    Ziegler restriction
    arr free FILE                 Saito basis search
    arr pd FILE --exact|--infer|--both
    arr classify FILE [--ipd K]   DF / IPD classification
    arr restrict FILE --pivot H   Euler restriction
    arr localize FILE --flat SPEC localization at a flat
    arr resolve FILE              minimal free resolution
    arr surject FILE --pivot H --map euler|ziegler
    arr verify CERT.json          replay a certificate
    arr examples [list|dump NAME]

FILE is a path, '-' for stdin, or 'examples:NAME'.  Pivots are given by a
1-based index or the coefficient tuple ("1 -1 0").  Exit codes: 0 ok,
2 inconclusive, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .arrangement import (
    Multiarrangement,
    ParseError,
    Restriction,
    as_multi,
    dump_arrangement,
    flat_of,
    normalize,
    parse_arrangement,
)
from .derivations import find_free_basis, surjectivity
from .engine import Engine
from .exact import poly_str
from .facts import Fact
from .lattice import IntersectionLattice, char_poly
from .multib2 import b2_equality_check
from .resolution import Inconclusive, minimal_free_resolution
from .verify import ReplayError, replay

FORMAT_VERSION = "1"

OK, ERROR, INCONCLUSIVE = 0, 1, 2


class CliError(ValueError):
    pass


def load_input(spec):
    if spec.startswith("examples:"):
        name = spec[len("examples:"):]
        try:
            return as_multi(catalog.get(name))
        except catalog.UnknownExample:
            raise CliError(f"unknown example {name!r}")
    if spec == "-":
        return parse_arrangement(sys.stdin.read())
    try:
        with open(spec) as fh:
            return parse_arrangement(fh.read())
    except OSError as e:
        raise CliError(f"cannot read {spec}: {e}")


def pick_pivot(multi, spec):
    if spec is None:
        raise CliError("this command needs --pivot")
    forms = multi.base.forms
    s = spec.strip()
    if all(ch.isdigit() for ch in s):
        idx = int(s)
        if not 1 <= idx <= len(forms):
            raise CliError(f"pivot index {idx} out of range 1..{len(forms)}")
        return forms[idx - 1]
    try:
        h = normalize([Fraction(x) for x in s.replace(",", " ").split()])
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad pivot {spec!r}")
    if len(h) != multi.dim:
        raise CliError("pivot has the wrong number of coefficients")
    if h not in multi.base:
        raise CliError(f"pivot {h} is not a hyperplane of the arrangement")
    return h


def pick_flat(multi, spec):
    if spec is None:
        raise CliError("this command needs --flat")
    forms = multi.base.forms
    parts = [p.strip() for p in spec.split(";") if p.strip()]
    chosen = []
    if len(parts) == 1 and all(ch.isdigit() or ch in ", " for ch in parts[0]):
        for tok in parts[0].replace(",", " ").split():
            idx = int(tok)
            if not 1 <= idx <= len(forms):
                raise CliError(f"flat index {idx} out of range")
            chosen.append(forms[idx - 1])
    else:
        for p in parts:
            chosen.append(normalize([Fraction(x) for x in p.split()]))
    return flat_of(multi.base, chosen)


def emit(report, json_path, lines):
    for line in lines:
        print(line)
    if json_path:
        report = {"format_version": FORMAT_VERSION, **report}
        with open(json_path, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")


def chi_str(cp):
    return str(cp)


def cmd_chi(args):
    multi = load_input(args.file)
    cp = char_poly(multi.base)
    lines = [f"chi = {cp}", f"coefficients (highest first): {cp.coefficients()}"]
    emit(
        {"command": "chi", "coefficients": cp.coefficients(), "betti": list(cp.betti)},
        args.json,
        lines,
    )
    return OK


def cmd_lattice(args):
    multi = load_input(args.file)
    lat = IntersectionLattice(multi.base)
    mu = lat.mobius()
    flats = []
    for codim in range(lat.max_codim() + 1):
        for fl in lat.flats(codim):
            flats.append(
                {
                    "codim": codim,
                    "rows": [[str(c) for c in row] for row in fl.rows],
                    "mobius": mu[fl],
                    "hyperplanes": [i + 1 for i in range(len(multi.base.forms))
                                    if lat.atom_mask(fl) >> i & 1],
                }
            )
    cp = lat.char_poly()
    lines = [
        f"levels: {[len(lat.flats(c)) for c in range(lat.max_codim() + 1)]}",
        f"chi = {cp}",
    ]
    emit(
        {"command": "lattice", "flats": flats, "chi": cp.coefficients()},
        args.json,
        lines,
    )
    return OK


def cmd_b2(args):
    multi = load_input(args.file)
    h = pick_pivot(multi, args.pivot)
    rep = b2_equality_check(multi.base, h)
    lines = [
        f"b2 = {rep.b2}   b2(restriction) = {rep.b2_restricted}   "
        f"b2(Ziegler) = {rep.b2_multirestriction}   b2_0 = {rep.b2_zero}",
        f"b2 equality: {rep.b2_equality}   upper (multi): {rep.upper_equality}   lower: {rep.lower_equality}",
    ]
    emit({"command": "b2", "pivot": list(h), **rep.to_dict()}, args.json, lines)
    return OK


def cmd_ziegler(args):
    multi = load_input(args.file)
    h = pick_pivot(multi, args.pivot)
    z = Restriction(multi.base, h).ziegler()
    lines = [dump_arrangement(z).rstrip()]
    emit(
        {"command": "ziegler", "pivot": list(h), "restriction": dump_arrangement(z)},
        args.json,
        lines,
    )
    return OK


def cmd_restrict(args):
    multi = load_input(args.file)
    h = pick_pivot(multi, args.pivot)
    sub = Restriction(multi.base, h).restricted()
    lines = [dump_arrangement(sub).rstrip()]
    emit(
        {"command": "restrict", "pivot": list(h), "restriction": dump_arrangement(sub)},
        args.json,
        lines,
    )
    return OK


def cmd_localize(args):
    multi = load_input(args.file)
    fl = pick_flat(multi, args.flat)
    from .arrangement import localization

    sub = localization(multi.base, fl)
    lines = [dump_arrangement(sub).rstrip()]
    emit(
        {
            "command": "localize",
            "flat_rows": [[str(c) for c in row] for row in fl.rows],
            "localization": dump_arrangement(sub),
        },
        args.json,
        lines,
    )
    return OK


def cmd_free(args):
    multi = load_input(args.file)
    cert = find_free_basis(multi, bound=args.degree_bound)
    if cert is None:
        emit(
            {"command": "free", "free": None, "note": "no Saito basis found (inconclusive)"},
            args.json,
            ["inconclusive: no Saito basis found up to the degree bound"],
        )
        return INCONCLUSIVE
    lines = [
        f"free with exponents {list(cert.exponents)}",
        "basis degrees: " + ", ".join(str(t.deg) for t in cert.candidates),
    ]
    emit(
        {
            "command": "free",
            "free": True,
            "exponents": list(cert.exponents),
            "basis": [
                [poly_str(p) for p in t.components] for t in cert.candidates
            ],
        },
        args.json,
        lines,
    )
    return OK


def cmd_pd(args):
    multi = load_input(args.file)
    mode = "both" if args.both else ("infer" if args.infer else "exact")
    report = {"command": "pd", "mode": mode}
    lines = []
    code = OK
    exact = None
    if mode in ("exact", "both"):
        from .resolution import projective_dimension_exact

        exact = projective_dimension_exact(multi, bound=args.degree_bound)
        report["exact"] = exact
        lines.append(f"exact pd = {exact}")
    if mode in ("infer", "both"):
        eng = Engine()
        lo, hi, facts = eng.infer(multi.base, depth=args.depth)
        report["inferred_interval"] = [lo, hi]
        report["certificate"] = facts[0].to_dict()
        if lo == hi:
            lines.append(f"inferred pd = {lo}  (rule {facts[0].rule})")
        else:
            lines.append(f"inferred pd in [{lo}, {hi}]")
            code = INCONCLUSIVE
        if exact is not None and not (lo <= exact <= hi):
            raise AssertionError("engine interval contradicts the exact computation")
        if mode == "both" and lo == hi:
            lines.append(f"agreement: {lo == exact}")
    emit(report, args.json, lines)
    return code


def cmd_classify(args):
    multi = load_input(args.file)
    eng = Engine()
    report = {"command": "classify"}
    lines = []
    dff = eng.df_fact(multi.base)
    report["df"] = bool(dff.value)
    lines.append(f"divisionally free: {dff.value}")
    k = args.ipd
    f = eng.ipd_fact(multi.base, k=k)
    if f is None:
        report["ipd"] = None
        lines.append("ipd: inconclusive")
        emit(report, args.json, lines)
        return INCONCLUSIVE
    report["ipd"] = f.value
    report["certificate"] = f.to_dict()
    lines.append(f"ipd class index: {f.value} (pd = {f.value})")
    emit(report, args.json, lines)
    return OK


def cmd_resolve(args):
    multi = load_input(args.file)
    from .arrangement import essentialize_multi

    ess, _ = essentialize_multi(multi)
    res = minimal_free_resolution(ess, bound=args.degree_bound)
    report = {
        "command": "resolve",
        "steps": [sorted(s) for s in res.steps],
        "pd": res.pd,
        "certified_up_to": res.certified_up_to,
        "inconclusive": res.inconclusive,
        "graded_dims": {str(k): v for k, v in sorted(res.dims.items())},
    }
    lines = [repr(res)]
    emit(report, args.json, lines)
    return INCONCLUSIVE if res.inconclusive else OK


def cmd_surject(args):
    multi = load_input(args.file)
    h = pick_pivot(multi, args.pivot)
    ok, rep = surjectivity(args.map, multi.base, h, gen_bound=args.degree_bound)
    lines = [f"{args.map} restriction map surjective: {ok}"]
    emit({"command": "surject", "pivot": list(h), "surjective": ok, **rep}, args.json, lines)
    return OK


def cmd_verify(args):
    try:
        with open(args.cert) as fh:
            data = json.load(fh)
    except OSError as e:
        raise CliError(f"cannot read {args.cert}: {e}")
    cert = data.get("certificate", data)
    try:
        replay(Fact.from_dict(cert))
    except ReplayError as e:
        print(f"REPLAY FAILED: {e}")
        return ERROR
    print("certificate replays cleanly")
    return OK


def cmd_examples(args):
    if args.action == "list" or args.action is None:
        for name in catalog.names():
            print(f"{name:18s} {catalog.describe(name) if '<' not in name else catalog.describe(name.split('<')[0] + '3')}")
        return OK
    if args.action == "dump":
        if not args.name:
            raise CliError("dump needs a name")
        try:
            arr = catalog.get(args.name)
        except catalog.UnknownExample:
            raise CliError(f"unknown example {args.name!r}")
        sys.stdout.write(dump_arrangement(arr))
        return OK
    raise CliError(f"unknown action {args.action!r}")


def build_parser():
    ap = argparse.ArgumentParser(prog="arr", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, pivot=False, flat=False, bound=False):
        p.add_argument("file")
        p.add_argument("--json", help="write a JSON report to this path")
        if pivot:
            p.add_argument("--pivot", help="1-based index or coefficient tuple")
        if flat:
            p.add_argument("--flat", help="hyperplane indices 'i,j' or forms 'a b c; d e f'")
        if bound:
            p.add_argument("--degree-bound", type=int, default=None)

    common(sub.add_parser("chi"))
    common(sub.add_parser("lattice"))
    common(sub.add_parser("b2"), pivot=True)
    common(sub.add_parser("ziegler"), pivot=True)
    common(sub.add_parser("restrict"), pivot=True)
    common(sub.add_parser("localize"), flat=True)
    common(sub.add_parser("free"), bound=True)
    p = sub.add_parser("pd")
    common(p, bound=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--infer", action="store_true")
    g.add_argument("--both", action="store_true")
    p.add_argument("--depth", type=int, default=2)
    p = sub.add_parser("classify")
    common(p)
    p.add_argument("--ipd", type=int, default=None)
    common(sub.add_parser("resolve"), bound=True)
    p = sub.add_parser("surject")
    common(p, pivot=True, bound=True)
    p.add_argument("--map", choices=["euler", "ziegler"], default="euler")
    p = sub.add_parser("verify")
    p.add_argument("cert")
    p = sub.add_parser("examples")
    p.add_argument("action", nargs="?", choices=["list", "dump"], default="list")
    p.add_argument("name", nargs="?")
    return ap


_HANDLERS = {
    "chi": cmd_chi,
    "lattice": cmd_lattice,
    "b2": cmd_b2,
    "ziegler": cmd_ziegler,
    "restrict": cmd_restrict,
    "localize": cmd_localize,
    "free": cmd_free,
    "pd": cmd_pd,
    "classify": cmd_classify,
    "resolve": cmd_resolve,
    "surject": cmd_surject,
    "verify": cmd_verify,
    "examples": cmd_examples,
}


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (CliError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR
    except Inconclusive as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
