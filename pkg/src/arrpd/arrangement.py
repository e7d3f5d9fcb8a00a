"""Central arrangements and multiarrangements over Q, with exact surgery.

A hyperplane is stored as its canonical linear form: coprime integer
coefficients, first nonzero entry positive.  Flats are identified by the
reduced row echelon form of the span of the forms containing them, which
gives every subspace a unique hashable key.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Poly, product
from .linalg import primitive_int_vector, rref


class InvalidForm(ValueError):
    pass


class NotMember(ValueError):
    pass


class AlreadyMember(ValueError):
    pass


class NotAFlat(ValueError):
    pass


class RankError(ValueError):
    pass


def normalize(coeffs):
    """Canonical integer representative of a linear form (a hyperplane).

    Any rational rescaling of the input yields the identical output.
    """
    vec = [Fraction(c) for c in coeffs]
    if not any(vec):
        raise InvalidForm("all coefficients are zero")
    return primitive_int_vector(vec)


class Arrangement:
    """Finite set of distinct linear hyperplanes through the origin."""

    __slots__ = ("dim", "forms", "_key")

    def __init__(self, dim, forms, normalized=False):
        self.dim = dim
        seen = []
        have = set()
        for f in forms:
            nf = tuple(f) if normalized else normalize(f)
            assert len(nf) == dim
            if nf in have:
                raise AlreadyMember(f"duplicate hyperplane {nf}")
            have.add(nf)
            seen.append(nf)
        self.forms = tuple(seen)
        self._key = (dim, frozenset(self.forms))

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __contains__(self, form):
        return normalize(form) in self._key[1]

    def __eq__(self, other):
        return isinstance(other, Arrangement) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Arrangement(dim={self.dim}, n={len(self.forms)})"

    def sorted(self):
        """Same arrangement with forms in a canonical order."""
        return Arrangement(self.dim, sorted(self.forms), normalized=True)

    def delete(self, form):
        h = normalize(form)
        if h not in self._key[1]:
            raise NotMember(f"{h} is not a hyperplane of the arrangement")
        return Arrangement(self.dim, [f for f in self.forms if f != h], normalized=True)

    def add(self, form):
        h = normalize(form)
        if h in self._key[1]:
            raise AlreadyMember(f"{h} already present")
        return Arrangement(self.dim, self.forms + (h,), normalized=True)

    def defining_polynomial(self):
        return product([Poly.from_linear(f) for f in self.forms], n=self.dim)

    def rank(self):
        from .linalg import rank as _rank

        return _rank([list(f) for f in self.forms], self.dim)


class Multiarrangement:
    """Arrangement with a positive integer multiplicity on each hyperplane."""

    __slots__ = ("base", "mult")

    def __init__(self, base, mult):
        self.base = base
        m = {}
        for f in base.forms:
            v = int(mult[f])
            assert v >= 1
            m[f] = v
        self.mult = m

    @property
    def dim(self):
        return self.base.dim

    def size(self):
        """|m| = total multiplicity."""
        return sum(self.mult.values())

    def is_simple(self):
        return all(v == 1 for v in self.mult.values())

    def pairs(self):
        return [(f, self.mult[f]) for f in self.base.forms]

    def __eq__(self, other):
        return (
            isinstance(other, Multiarrangement)
            and self.base == other.base
            and self.mult == other.mult
        )

    def __hash__(self):
        return hash((self.base, frozenset(self.mult.items())))

    def __repr__(self):
        return f"Multiarrangement(dim={self.dim}, n={len(self.base)}, |m|={self.size()})"

    def defining_polynomial(self):
        return product(
            [Poly.from_linear(f) ** m for f, m in self.pairs()], n=self.dim
        )

    def localize(self, flat):
        sub = localization(self.base, flat)
        return Multiarrangement(sub, {f: self.mult[f] for f in sub.forms})


def as_multi(arr):
    if isinstance(arr, Multiarrangement):
        return arr
    return Multiarrangement(arr, {f: 1 for f in arr.forms})


class Flat:
    """Element of the intersection lattice.

    Identified with the span of the forms vanishing on it; `rows` is the
    canonical RREF basis of that span, `codim` its dimension.
    """

    __slots__ = ("dim", "rows", "codim")

    def __init__(self, dim, rows):
        self.dim = dim
        self.rows = tuple(tuple(r) for r in rows)
        self.codim = len(self.rows)

    @staticmethod
    def from_forms(dim, forms):
        _, red = rref([list(f) for f in forms], dim)
        return Flat(dim, red)

    @staticmethod
    def whole_space(dim):
        return Flat(dim, [])

    def contains_form(self, form):
        """Whether the hyperplane of `form` contains this flat."""
        vec = [Fraction(c) for c in form]
        for row in self.rows:
            lead = next(j for j, x in enumerate(row) if x)
            c = vec[lead]
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
        return not any(vec)

    def __eq__(self, other):
        return isinstance(other, Flat) and self.dim == other.dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.dim, self.rows))

    def __repr__(self):
        return f"Flat(codim={self.codim})"

    def extend(self, form):
        """Flat of the span enlarged by one more form (or self if dependent)."""
        if self.contains_form(form):
            return self
        _, red = rref([list(r) for r in self.rows] + [list(form)], self.dim)
        return Flat(self.dim, red)


def flat_of(arr, forms):
    """The flat of L(arr) cut out by the given member hyperplanes."""
    for f in forms:
        if normalize(f) not in arr._key[1]:
            raise NotMember(f"{f} is not in the arrangement")
    return Flat.from_forms(arr.dim, [normalize(f) for f in forms])


def localization(arr, flat):
    """Sub-arrangement of the hyperplanes containing the flat."""
    if not isinstance(flat, Flat) or flat.dim != arr.dim:
        raise NotAFlat("flat does not live in the ambient space")
    sub = [f for f in arr.forms if flat.contains_form(f)]
    check = Flat.from_forms(arr.dim, sub) if sub else Flat.whole_space(arr.dim)
    if check != flat:
        raise NotAFlat("subspace is not an intersection of member hyperplanes")
    return Arrangement(arr.dim, sub, normalized=True)


def pivot_of(form):
    """Index of the largest-magnitude coefficient (ties: lowest index)."""
    return max(range(len(form)), key=lambda i: (abs(Fraction(form[i])), -i))


class Restriction:
    """Restriction of an arrangement onto one of its hyperplanes.

    Coordinates on H drop the pivot variable of the defining form; the
    object keeps everything needed to push polynomials and derivations
    from the ambient space onto H.
    """

    __slots__ = ("arr", "alpha", "pivot", "sub", "mult", "trace_of")

    def __init__(self, arr, form):
        h = normalize(form)
        if h not in arr._key[1]:
            raise NotMember(f"{h} is not a hyperplane of the arrangement")
        self.arr = arr
        self.alpha = h
        self.pivot = pivot_of(h)
        traces = {}
        trace_of = {}
        for f in arr.forms:
            if f == h:
                continue
            t = self._trace(f)
            trace_of[f] = t
            traces[t] = traces.get(t, 0) + 1
        order = sorted(traces)
        self.sub = Arrangement(arr.dim - 1, order, normalized=True)
        self.mult = {t: traces[t] for t in order}
        self.trace_of = trace_of

    def _trace(self, form):
        j = self.pivot
        aj = Fraction(self.alpha[j])
        fj = Fraction(form[j])
        vec = [
            Fraction(c) - fj * Fraction(a) / aj
            for i, (c, a) in enumerate(zip(form, self.alpha))
            if i != j
        ]
        return normalize(vec)

    def restricted(self):
        """The underlying simple arrangement on H."""
        return self.sub

    def ziegler(self):
        """Restriction weighted by how many hyperplanes cut each trace."""
        return Multiarrangement(self.sub, self.mult)

    def reduce_poly(self, p):
        """Image of an ambient polynomial in the coordinate ring of H."""
        j = self.pivot
        aj = Fraction(self.alpha[j])
        repl = Poly.from_linear(
            [(-Fraction(a) / aj if i != j else 0) for i, a in enumerate(self.alpha)]
        )
        return p.substitute_var(j, repl).drop_var(j)


def restriction(arr, form):
    return Restriction(arr, form).restricted()


def ziegler_restriction(arr, form):
    return Restriction(arr, form).ziegler()


class Embedding:
    """Coordinates of an essentialization: new variable i reads off the
    original coordinate `pivot_cols[i]`, basis rows span the forms."""

    __slots__ = ("dim", "pivot_cols", "rows")

    def __init__(self, dim, pivot_cols, rows):
        self.dim = dim
        self.pivot_cols = tuple(pivot_cols)
        self.rows = tuple(tuple(r) for r in rows)

    def push(self, form):
        """Essential coordinates of an ambient form in the span."""
        return tuple(Fraction(form[j]) for j in self.pivot_cols)

    def pull(self, small_form):
        """Ambient form with the given essential coordinates."""
        vec = [Fraction(0)] * self.dim
        for c, row in zip(small_form, self.rows):
            c = Fraction(c)
            if c:
                vec = [a + c * b for a, b in zip(vec, row)]
        return tuple(vec)


def essentialize(arr):
    """Quotient by the common intersection of all hyperplanes.

    Returns (essential arrangement, Embedding).  Essential inputs come back
    unchanged (up to the identity embedding).
    """
    pivots, red = rref([list(f) for f in arr.forms], arr.dim)
    emb = Embedding(arr.dim, pivots, red)
    small = Arrangement(len(pivots), [emb.push(f) for f in arr.forms])
    return small, emb


def essentialize_multi(multi):
    small, emb = essentialize(multi.base)
    mult = {}
    for f, m in multi.pairs():
        mult[normalize(emb.push(f))] = m
    return Multiarrangement(small, mult), emb


def defining_polynomial(arr):
    if isinstance(arr, Multiarrangement):
        return arr.defining_polynomial()
    return arr.defining_polynomial()


# ---------------------------------------------------------------------------
# text format
#
#   # comment
#   dim 3
#   1 0 -1
#   0 1/2 1 * 2      <- multiplicity 2
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    pass


def parse_arrangement(text):
    """Parse the arrangement text format; returns a Multiarrangement."""
    dim = None
    forms = []
    mults = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError(f"line {lineno}: expected 'dim <l>'")
            try:
                dim = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad dimension {parts[1]!r}")
            if dim < 0:
                raise ParseError(f"line {lineno}: negative dimension")
            continue
        mult = 1
        if "*" in line:
            body, _, mstr = line.partition("*")
            try:
                mult = int(mstr.strip())
            except ValueError:
                raise ParseError(f"line {lineno}: bad multiplicity {mstr.strip()!r}")
            if mult < 1:
                raise ParseError(f"line {lineno}: multiplicity must be >= 1")
            line = body.strip()
        parts = line.split()
        if len(parts) != dim:
            raise ParseError(f"line {lineno}: expected {dim} coefficients, got {len(parts)}")
        try:
            coeffs = [Fraction(p) for p in parts]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: bad rational coefficient")
        try:
            forms.append(normalize(coeffs))
        except InvalidForm:
            raise ParseError(f"line {lineno}: zero linear form")
        mults.append(mult)
    if dim is None:
        raise ParseError("missing 'dim <l>' header")
    seen = {}
    for f, m in zip(forms, mults):
        if f in seen:
            raise ParseError(f"duplicate hyperplane {f}")
        seen[f] = m
    arr = Arrangement(dim, forms, normalized=True)
    return Multiarrangement(arr, seen)


def dump_arrangement(obj):
    """Serialize to the text format; bit-exact round trip with parse."""
    multi = as_multi(obj)
    lines = [f"dim {multi.dim}"]
    for f, m in multi.pairs():
        body = " ".join(str(c) for c in f)
        lines.append(body if m == 1 else f"{body} * {m}")
    return "\n".join(lines) + "\n"
