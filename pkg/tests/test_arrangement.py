from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrpd import catalog
from arrpd.arrangement import (
    AlreadyMember,
    Arrangement,
    InvalidForm,
    Multiarrangement,
    NotAFlat,
    NotMember,
    ParseError,
    Restriction,
    as_multi,
    dump_arrangement,
    essentialize,
    essentialize_multi,
    flat_of,
    localization,
    normalize,
    parse_arrangement,
    restriction,
    ziegler_restriction,
)
from arrpd.exact import Poly


def test_normalize_examples():
    assert normalize((Fraction(1, 2), Fraction(-1, 2), 0)) == (1, -1, 0)
    assert normalize((-2, 4, -6)) == (1, -2, 3)
    with pytest.raises(InvalidForm):
        normalize((0, 0, 0))


@given(
    st.lists(st.integers(-6, 6), min_size=3, max_size=3).filter(lambda v: any(v)),
    st.fractions(min_value=Fraction(-5), max_value=Fraction(5)).filter(lambda f: f != 0),
)
def test_normalize_is_scaling_invariant(vec, scale):
    assert normalize(vec) == normalize([scale * c for c in vec])


def test_delete_add():
    A = Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    B = A.delete((1, 1, 1))
    assert len(B) == 3 and (1, 1, 1) not in B
    assert B.add((1, 1, 1)) == A
    b3 = catalog.boolean(3)
    assert len(b3.delete((1, 0, 0))) == 2
    with pytest.raises(NotMember):
        A.delete((1, 2, 3))
    with pytest.raises(AlreadyMember):
        A.add((2, 2, 2))


def test_localization_brute_force(rng):
    from tests.conftest import random_arrangement

    for _ in range(10):
        A = random_arrangement(rng, 3, 6)
        if len(A) < 3:
            continue
        fl = flat_of(A, [A.forms[0], A.forms[1]])
        loc = localization(A, fl)
        expect = [f for f in A.forms if fl.contains_form(f)]
        assert sorted(loc.forms) == sorted(expect)


def test_localization_trivial_cases():
    b3 = catalog.boolean(3)
    fl = flat_of(b3, [(1, 0, 0), (0, 1, 0)])
    assert sorted(localization(b3, fl).forms) == [(0, 1, 0), (1, 0, 0)]
    from arrpd.arrangement import Flat

    whole = Flat.whole_space(3)
    assert len(localization(b3, whole)) == 0
    with pytest.raises(NotAFlat):
        localization(b3, Flat.from_forms(3, [(1, 1, 0)]))


def test_localization_idempotent():
    A = catalog.generic(3, 5)
    fl = flat_of(A, [A.forms[0], A.forms[3]])
    loc = localization(A, fl)
    assert localization(loc, fl) == loc


def test_restriction_examples():
    A = Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    r = restriction(A, (0, 0, 1))
    assert len(r) == 3  # xy(x+y) in coordinates on the plane
    assert sorted(r.forms) == [(0, 1), (1, 0), (1, 1)]
    b3 = catalog.boolean(3)
    assert sorted(restriction(b3, (1, 0, 0)).forms) == [(0, 1), (1, 0)]


def test_restriction_edelman_reiner_size():
    er = catalog.edelman_reiner()
    r = restriction(er, (1, -1, -1, -1, -1))
    assert len(r) == 15


def test_ziegler_restriction():
    A = Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    z = ziegler_restriction(A, (0, 0, 1))
    assert all(m == 1 for m in z.mult.values())
    assert z.size() == 3
    b3 = catalog.boolean(3)
    z2 = ziegler_restriction(b3, (1, 0, 0))
    assert sorted(z2.mult.items()) == [((0, 1), 1), ((1, 0), 1)]


def test_ziegler_multiplicities_sum(rng):
    from tests.conftest import random_arrangement

    for _ in range(8):
        A = random_arrangement(rng, 3, 7)
        if len(A) < 2:
            continue
        for h in A.forms[:3]:
            z = ziegler_restriction(A, h)
            assert z.size() == len(A) - 1


def test_ziegler_restriction_rank5_example():
    # seven planes restricted onto y - w - u = 0: seven simple traces,
    # squarefree degree-7 restricted defining polynomial
    A = catalog.xw7().add((0, 1, 0, -1, -1))
    rest = Restriction(A, (0, 1, 0, -1, -1))
    z = rest.ziegler()
    assert z.size() == 7
    assert len(z.base) == 7
    assert all(m == 1 for m in z.mult.values())
    q = z.defining_polynomial()
    assert q.degree() == 7 and q.is_homogeneous()


def test_essentialize():
    small, emb = essentialize(Arrangement(3, [(1, 0, 0), (0, 1, 0)]))
    assert small.dim == 2 and len(small) == 2
    b3 = catalog.boolean(3)
    ess, _ = essentialize(b3)
    assert ess == b3
    # pullback round trip
    A = Arrangement(3, [(1, 0, 0), (1, 1, 0), (1, -1, 0)])
    ess, emb = essentialize(A)
    assert ess.dim == 2
    for f in A.forms:
        assert normalize(emb.pull(emb.push(f))) == f


def test_essentialize_er_localization_rank():
    er = catalog.edelman_reiner()
    from arrpd.lattice import IntersectionLattice

    lat = IntersectionLattice(er)
    fl = lat.flats(3)[0]
    loc = lat.localization(fl)
    ess, _ = essentialize(loc)
    assert ess.dim == 3 == loc.rank()


def test_defining_polynomial():
    b2 = catalog.boolean(2)
    assert b2.defining_polynomial() == Poly.variable(2, 0) * Poly.variable(2, 1)
    m = Multiarrangement(b2, {(1, 0): 2, (0, 1): 1})
    q = m.defining_polynomial()
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    assert q == x * x * y
    er = catalog.edelman_reiner()
    q = er.defining_polynomial()
    assert q.degree() == 21 and q.is_homogeneous()


def test_parse_dump_roundtrip():
    text = "dim 3\n1 0 -1\n0 1 1 * 2\n1 2 3\n"
    m = parse_arrangement(text)
    assert dump_arrangement(m) == text
    # comments and rationals normalize
    m2 = parse_arrangement("# c\n dim 2 \n1/2 -1/2\n0 3\n")
    assert m2.base.forms == ((1, -1), (0, 1))


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=6))
def test_dump_parse_is_identity_on_arrangements(rows):
    forms = set()
    for r in rows:
        if any(r):
            forms.add(normalize(r))
    if not forms:
        return
    m = as_multi(Arrangement(3, sorted(forms), normalized=True))
    assert parse_arrangement(dump_arrangement(m)) == m


def test_parse_errors_with_line_numbers():
    with pytest.raises(ParseError, match="line 1"):
        parse_arrangement("1 0 0\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_arrangement("dim 3\n1 0\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_arrangement("dim 2\n0 0\n")
    with pytest.raises(ParseError, match="multiplicity"):
        parse_arrangement("dim 2\n1 0 * 0\n")


def test_restriction_not_member():
    with pytest.raises(NotMember):
        restriction(catalog.boolean(3), (1, 1, 1))
