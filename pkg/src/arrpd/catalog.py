"""Built-in example arrangements, constructed programmatically.

Names are stable CLI identifiers (`examples:NAME`); each entry carries a
short mathematical description.  Parametric families accept suffixes:
boolean<l>, generic-<l>-<n>.
"""

from __future__ import annotations

import itertools

from .arrangement import Arrangement


def boolean(dim):
    return Arrangement(dim, [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)])


def generic(dim, n):
    """n hyperplanes in general position: coordinates plus Vandermonde rows."""
    assert n >= dim
    forms = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    for t in range(1, n - dim + 1):
        forms.append(tuple(t**i for i in range(dim)))
    return Arrangement(dim, forms)


def braid5():
    """Pairwise differences of five coordinates, essentialized to rank 4;
    free with exponents (1, 2, 3, 4)."""
    forms = [tuple(1 if j == i else 0 for j in range(4)) for i in range(4)]
    for i, j in itertools.combinations(range(4), 2):
        v = [0] * 4
        v[i] = 1
        v[j] = -1
        forms.append(tuple(v))
    return Arrangement(4, forms)


def free1333():
    """Ten planes in rank 4, free with exponents (1, 3, 3, 3)."""
    return spog9().add((0, 1, 0, -1))


def spog9():
    """Nine planes in rank 4 whose derivation module needs five generators
    and one relation; obtained from free1333 by deleting one plane."""
    return Arrangement(
        4,
        [
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (0, 0, 1, 0),
            (0, 0, 0, 1),
            (1, -1, 0, 0),
            (0, 1, -1, 0),
            (1, 0, -1, 0),
            (1, 0, 0, -1),
            (0, 1, -1, -1),
        ],
    )


def edelman_reiner():
    """Coordinate hyperplanes plus all sign patterns x1 +- x2 +- x3 +- x4
    +- x5: free, with a non-free restriction."""
    forms = [tuple(1 if j == i else 0 for j in range(5)) for i in range(5)]
    for signs in itertools.product([1, -1], repeat=4):
        forms.append((1,) + signs)
    return Arrangement(5, forms)


def ziegler1():
    """Nine lines whose six triple points lie on a conic."""
    return Arrangement(
        3,
        [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, 1, 1),
            (2, 1, 1),
            (2, 3, 1),
            (2, 3, 4),
            (1, 0, 3),
            (1, 2, 3),
        ],
    )


def ziegler2():
    """Same intersection lattice as ziegler1, triple points off any conic."""
    return Arrangement(
        3,
        [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, 1, 1),
            (2, 1, 1),
            (2, 3, 1),
            (2, 3, 4),
            (3, 0, 5),
            (3, 4, 5),
        ],
    )


def xw7():
    """Seven planes in rank 5 with projective dimension one."""
    return Arrangement(
        5,
        [
            (1, 0, 0, 0, 0),
            (0, 1, 0, 0, 0),
            (0, 0, 1, 0, 0),
            (0, 0, 0, 1, 0),
            (0, 0, 0, 0, 1),
            (1, 0, 0, 1, 0),
            (1, 1, 1, 1, 0),
        ],
    )


_FIXED = {
    "braid5": (braid5, "pairwise differences of five coordinates (rank 4, free, exponents 1,2,3,4)"),
    "free1333": (free1333, "ten planes in rank 4, free with exponents (1,3,3,3)"),
    "spog9": (spog9, "free1333 minus one plane: plus-one generated, pd 1"),
    "edelman-reiner": (edelman_reiner, "21 planes in rank 5: free with a non-free restriction"),
    "ziegler1": (ziegler1, "nine lines, triple points on a conic"),
    "ziegler2": (ziegler2, "lattice-isomorphic to ziegler1, triple points off any conic"),
    "xw7": (xw7, "seven planes in rank 5, pd 1, certified by the inductive classes"),
}


class UnknownExample(KeyError):
    pass


def get(name):
    if name in _FIXED:
        return _FIXED[name][0]()
    if name.startswith("boolean"):
        try:
            return boolean(int(name[len("boolean"):]))
        except ValueError:
            pass
    if name.startswith("generic-"):
        parts = name.split("-")
        if len(parts) == 3:
            try:
                return generic(int(parts[1]), int(parts[2]))
            except ValueError:
                pass
    raise UnknownExample(name)


def names():
    fixed = sorted(_FIXED)
    return fixed + ["boolean<l>", "generic-<l>-<n>"]


def describe(name):
    if name in _FIXED:
        return _FIXED[name][1]
    if name.startswith("boolean"):
        return "coordinate hyperplanes"
    if name.startswith("generic-"):
        return "coordinates plus Vandermonde rows in general position"
    raise UnknownExample(name)
