"""Sparse multivariate polynomials over tower fields, plus the polynomial
geometry the resolution engine runs on: weighted orders, Newton polygons,
face polynomials, weighted blow-up transforms, squarefree (Yun)
factorization, and resultants.

Coefficients are exactnum representations (nested tuples over Fraction); a
polynomial never stores a structural zero coefficient.  Whether a nonzero
representation is actually invertible is the caller's concern: the engine
validates coefficients before reading supports, everything here is purely
structural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exactnum
from .errors import (
    DegeneratePolygon,
    InternalInconsistency,
    NonExactDivision,
    PolySyntaxError,
    UnknownVariable,
    ZeroPolynomial,
)
from .exactnum import ExtField, Rat

MAX_EXPONENT = 2 ** 31


class SparsePoly:
    """Polynomial with named variables and tower coefficients.

    terms maps exponent tuples to coefficient representations; canonical form
    drops structural zeros, so `not self.terms` is the zero test.
    """

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: ExtField, variables, terms):
        self.field = field
        self.vars = tuple(variables)
        n = len(self.vars)
        levels, k = field.levels, field.depth
        clean = {}
        for exps, coeff in terms.items():
            if len(exps) != n:
                raise ValueError("exponent tuple %r does not match %r" % (exps, self.vars))
            if not exactnum._is_zero(levels, k, coeff):
                clean[tuple(exps)] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables, {})

    @classmethod
    def const(cls, field, variables, c):
        rep = c if not isinstance(c, (int, Fraction)) else field.from_rat(c)
        return cls(field, variables, {(0,) * len(tuple(variables)): rep})

    @classmethod
    def variable(cls, field, variables, name):
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable("unknown variable %r" % (name,))
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(field, variables, {tuple(e): field.one()})

    @classmethod
    def monomial(cls, field, variables, exps, c=1):
        rep = c if not isinstance(c, (int, Fraction)) else field.from_rat(c)
        return cls(field, variables, {tuple(exps): rep})

    @classmethod
    def from_univariate(cls, field, var, coeffs):
        return cls(field, (var,), {(i,): c for i, c in enumerate(coeffs)})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), self.field.zero())

    def support(self):
        return sorted(self.terms)

    def total_order(self) -> int:
        """Minimum total degree of a term (the multiplicity at the origin)."""
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no order")
        return min(sum(e) for e in self.terms)

    def degree_in(self, var) -> int:
        i = self._vi(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def min_exp(self, var) -> int:
        i = self._vi(var)
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no order")
        return min(e[i] for e in self.terms)

    def _vi(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.vars.index(var)
        except ValueError:
            raise UnknownVariable("unknown variable %r" % (var,))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.field != other.field or self.vars != other.vars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        self._check(other)
        levels, k = self.field.levels, self.field.depth
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                out[e] = exactnum._add(levels, k, out[e], c)
            else:
                out[e] = c
        return SparsePoly(self.field, self.vars, out)

    def __neg__(self):
        levels, k = self.field.levels, self.field.depth
        return SparsePoly(self.field, self.vars,
                          {e: exactnum._neg(levels, k, c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self.__add__(other.__neg__())

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        self._check(other)
        levels, k = self.field.levels, self.field.depth
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = exactnum._mul(levels, k, c1, c2)
                if e in out:
                    out[e] = exactnum._add(levels, k, out[e], p)
                else:
                    out[e] = p
        return SparsePoly(self.field, self.vars, out)

    __rmul__ = __mul__

    def scale(self, c):
        levels, k = self.field.levels, self.field.depth
        rep = self.field.from_rat(c) if isinstance(c, (int, Fraction)) else c
        return SparsePoly(self.field, self.vars,
                          {e: exactnum._mul(levels, k, rep, v) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.field == other.field and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.vars, tuple(sorted(self.terms.items()))))

    # -- substitutions ------------------------------------------------------

    def set_var_zero(self, var):
        i = self._vi(var)
        return SparsePoly(self.field, self.vars,
                          {e: c for e, c in self.terms.items() if e[i] == 0})

    def coeff_list(self, var=None):
        """Coefficients (low to high) of a polynomial that only involves `var`."""
        i = self._vi(var) if var is not None else 0
        for e in self.terms:
            for j, x in enumerate(e):
                if j != i and x:
                    raise ValueError("polynomial is not univariate in %r" % (self.vars[i],))
        d = self.degree_in(i)
        out = [self.field.zero()] * (d + 1 if d >= 0 else 0)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    def translate(self, var, root):
        """Substitute var -> var + root."""
        i = self._vi(var)
        levels, k = self.field.levels, self.field.depth
        maxe = max((e[i] for e in self.terms), default=0)
        powers = [self.field.one()]
        for _ in range(maxe):
            powers.append(exactnum._mul(levels, k, powers[-1], root))
        out = {}
        for e, c in self.terms.items():
            n = e[i]
            for t in range(n + 1):
                coeff = exactnum._smul(levels, k, Fraction(math.comb(n, t)),
                                       exactnum._mul(levels, k, c, powers[n - t]))
                e2 = list(e)
                e2[i] = t
                e2 = tuple(e2)
                if e2 in out:
                    out[e2] = exactnum._add(levels, k, out[e2], coeff)
                else:
                    out[e2] = coeff
        return SparsePoly(self.field, self.vars, out)

    def divide_var_exponents(self, var, m: int):
        i = self._vi(var)
        if m == 1:
            return self
        out = {}
        for e, c in self.terms.items():
            if e[i] % m:
                raise NonExactDivision(
                    "exponent %d of %s is not divisible by %d" % (e[i], self.vars[i], m))
            e2 = list(e)
            e2[i] = e[i] // m
            out[tuple(e2)] = c
        return SparsePoly(self.field, self.vars, out)

    def shift_down(self, var, m: int):
        """Divide by var^m (exactly)."""
        i = self._vi(var)
        if m == 0:
            return self
        out = {}
        for e, c in self.terms.items():
            if e[i] < m:
                raise NonExactDivision("cannot divide by %s^%d" % (self.vars[i], m))
            e2 = list(e)
            e2[i] = e[i] - m
            out[tuple(e2)] = c
        return SparsePoly(self.field, self.vars, out)

    def derivative(self, var):
        i = self._vi(var)
        levels, k = self.field.levels, self.field.depth
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] = e[i] - 1
            out[tuple(e2)] = exactnum._smul(levels, k, Fraction(e[i]), c)
        return SparsePoly(self.field, self.vars, out)

    def eval_at(self, reps):
        """Full evaluation at a point given by one rep per variable."""
        levels, k = self.field.levels, self.field.depth
        maxes = [0] * len(self.vars)
        for e in self.terms:
            for i, x in enumerate(e):
                maxes[i] = max(maxes[i], x)
        pows = []
        for i, r in enumerate(reps):
            col = [self.field.one()]
            for _ in range(maxes[i]):
                col.append(exactnum._mul(levels, k, col[-1], r))
            pows.append(col)
        acc = self.field.zero()
        for e, c in self.terms.items():
            term = c
            for i, x in enumerate(e):
                if x:
                    term = exactnum._mul(levels, k, term, pows[i][x])
            acc = exactnum._add(levels, k, acc, term)
        return acc

    def with_vars(self, names):
        names = tuple(names)
        if len(names) != len(self.vars):
            raise ValueError("variable count mismatch")
        return SparsePoly(self.field, names, dict(self.terms))

    def permute_vars(self, order):
        """Reorder variables; order[i] = index in the old tuple."""
        names = tuple(self.vars[i] for i in order)
        out = {tuple(e[i] for i in order): c for e, c in self.terms.items()}
        return SparsePoly(self.field, names, out)

    def map_coeffs(self, fn, new_field):
        return SparsePoly(new_field, self.vars, {e: fn(c) for e, c in self.terms.items()})

    def lift_to(self, new_field: ExtField):
        old_depth = self.field.depth
        if new_field.levels[:old_depth] != self.field.levels:
            raise InternalInconsistency("target tower does not extend the current one")
        return self.map_coeffs(
            lambda c: exactnum.lift(new_field.levels, old_depth, new_field.depth, c),
            new_field)

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            c = self.terms[e]
            cs = exactnum.format_rep(self.field, c)
            mono = "*".join(
                v if x == 1 else "%s^%d" % (v, x)
                for v, x in zip(self.vars, e) if x)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                if "+" in cs or " - " in cs or "*" in cs:
                    cs = "(" + cs + ")"
                parts.append("%s*%s" % (cs, mono))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return "SparsePoly(%s)" % (self,)


# ---------------------------------------------------------------------------
# parsing


def parse_poly(text: str, variables) -> SparsePoly:
    """Recursive-descent parser for +, -, *, ^ over integers, rational
    literals n/m, and the given variables.  Errors carry the offset."""
    variables = tuple(variables)
    field = ExtField()
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def peek():
        skip()
        return text[pos] if pos < n else ""

    def expect(ch):
        nonlocal pos
        if peek() != ch:
            raise PolySyntaxError("expected %r at position %d" % (ch, pos))
        pos += 1

    def natural() -> int:
        nonlocal pos
        skip()
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise PolySyntaxError("expected a number at position %d" % (start,))
        value = int(text[start:pos])
        if value > MAX_EXPONENT:
            raise PolySyntaxError("number too large at position %d" % (start,))
        return value

    def base() -> SparsePoly:
        nonlocal pos
        ch = peek()
        if ch == "(":
            pos += 1
            e = expr()
            expect(")")
            return e
        if ch.isdigit():
            num = natural()
            skip()
            if pos < n and text[pos] == "/":
                pos += 1
                den = natural()
                if den == 0:
                    raise PolySyntaxError("zero denominator at position %d" % (pos,))
                return SparsePoly.const(field, variables, Fraction(num, den))
            return SparsePoly.const(field, variables, Fraction(num))
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            name = text[start:pos]
            if name not in variables:
                raise UnknownVariable(
                    "unknown variable %r at position %d (expected one of %s)"
                    % (name, start, ", ".join(variables)))
            return SparsePoly.variable(field, variables, name)
        raise PolySyntaxError("unexpected %r at position %d" % (ch or "end of input", pos))

    def factor() -> SparsePoly:
        nonlocal pos
        b = base()
        skip()
        if pos < n and text[pos] == "^":
            pos += 1
            e = natural()
            b = b ** e
        return b

    def term() -> SparsePoly:
        nonlocal pos
        f = factor()
        while peek() == "*":
            pos += 1
            f = f * factor()
        return f

    def expr() -> SparsePoly:
        nonlocal pos
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        t = term()
        if sign < 0:
            t = -t
        while peek() in ("+", "-"):
            op = text[pos]
            pos += 1
            t2 = term()
            t = t - t2 if op == "-" else t + t2
        return t

    result = expr()
    skip()
    if pos != n:
        raise PolySyntaxError("unexpected %r at position %d" % (text[pos], pos))
    return result


# ---------------------------------------------------------------------------
# weighted orders and Newton polygons


def weighted_order(f: SparsePoly, p: int, q: int) -> int:
    """min(p*i + q*j) over the support of a two-variable polynomial."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no weighted order")
    return min(p * e[0] + q * e[1] for e in f.terms)


@dataclass(frozen=True)
class Face:
    """A compact face of the Newton polygon.

    right/left are the endpoints with larger/smaller first coordinate; the
    primitive inward normal (p, q) has p, q > 0; length is the number of
    lattice steps along the face; nu is the weighted order it computes.
    """

    right: tuple
    left: tuple
    p: int
    q: int
    length: int
    nu: int


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    faces: tuple


def newton_polygon(f: SparsePoly) -> NewtonPolygon:
    """Lower-left hull of the support.  Faces are ordered by decreasing
    slope, i.e. from the bottom-right end to the top-left end."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    return support_polygon(f.terms, what=str(f))


def support_polygon(points, what="the given support") -> NewtonPolygon:
    """Newton polygon of a bare support set.  The polygon of a product of
    germs is the one of the sumset of their supports, so products never
    need coefficient arithmetic here."""
    pts = sorted(set(points))
    # lower hull, left to right
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    faces = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if y2 >= y1:
            continue
        g = math.gcd(x2 - x1, y1 - y2)
        faces.append(Face(right=(x2, y2), left=(x1, y1),
                          p=(y1 - y2) // g, q=(x2 - x1) // g,
                          length=g, nu=((y1 - y2) // g) * x2 + ((x2 - x1) // g) * y2))
    if not faces:
        raise DegeneratePolygon(
            "the Newton polygon of %s has no compact face (monomial times a unit)" % (what,))
    faces.reverse()
    verts = [faces[0].right]
    for fc in faces:
        verts.append(fc.left)
    return NewtonPolygon(tuple(verts), tuple(faces))


def choose_face(np_: NewtonPolygon) -> Face:
    """Default face selection: maximize p + q, break ties by the
    lexicographically largest (p, q)."""
    return max(np_.faces, key=lambda fc: (fc.p + fc.q, fc.p, fc.q))


def choose_weights(f: SparsePoly):
    fc = choose_face(newton_polygon(f))
    return fc.p, fc.q


def face_poly(f: SparsePoly, face: Face, var: str = "t") -> SparsePoly:
    """The face's terms as a univariate polynomial in the root parameter t,
    where a branch on this face satisfies y^p = t * x^q."""
    i0, j0 = face.right
    coeffs = []
    for k in range(face.length + 1):
        coeffs.append(f.terms.get((i0 - k * face.q, j0 + k * face.p), f.field.zero()))
    return SparsePoly.from_univariate(f.field, var, coeffs)


def blowup_transform(f: SparsePoly, p: int, q: int, chart: int):
    """Total transform of f under the (p, q) blow-up in the given chart,
    divided by the exceptional multiplicity.  Returns (nu, strict).

    Chart 1 is (x, y) -> (x^p, x^q y) with exceptional locus x = 0; chart 2
    is (x, y) -> (x y^p, y^q) with exceptional locus y = 0.
    """
    if chart not in (1, 2):
        raise ValueError("chart must be 1 or 2")
    nu = weighted_order(f, p, q)
    out = {}
    for (i, j), c in f.terms.items():
        w = p * i + q * j - nu
        e = (w, j) if chart == 1 else (i, w)
        if e in out:
            raise InternalInconsistency("blow-up transform collided on %r" % (e,))
        out[e] = c
    return nu, SparsePoly(f.field, f.vars, out)


# ---------------------------------------------------------------------------
# univariate algebra over the coefficient tower


def _ucoeffs(f: SparsePoly, var=None):
    return f.coeff_list(var)


def _ufrom(field, var, coeffs):
    return SparsePoly.from_univariate(field, var, coeffs)


def poly_gcd(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Monic gcd of univariate polynomials (may raise SplitEvent)."""
    if f.field != g.field:
        raise ValueError("gcd of polynomials over different fields")
    var = f.vars[0] if not f.is_zero() else g.vars[0]
    levels, k = f.field.levels, f.field.depth
    out = exactnum._pgcd_monic(levels, k, _ucoeffs(f), _ucoeffs(g))
    return _ufrom(f.field, var, out)


def poly_divmod(f: SparsePoly, g: SparsePoly):
    levels, k = f.field.levels, f.field.depth
    q, r = exactnum._pdivmod(levels, k, _ucoeffs(f), _ucoeffs(g))
    var = f.vars[0]
    return _ufrom(f.field, var, q), _ufrom(f.field, var, r)


def poly_exact_div(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise InternalInconsistency("division of %s by %s is not exact" % (f, g))
    return q


def squarefree_part(f: SparsePoly):
    """Yun's algorithm over a field of characteristic zero.

    Returns (radical, factors) where radical is the monic product of the
    distinct squarefree factors and factors is a list of (factor, multiplicity)
    in increasing multiplicity.  Unit content is discarded.
    """
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no squarefree part")
    if len(f.vars) != 1:
        raise ValueError("squarefree_part expects a univariate polynomial")
    var = f.vars[0]
    field = f.field
    levels, k = field.levels, field.depth
    coeffs = _ucoeffs(f)
    d = exactnum._pdeg(levels, k, coeffs)
    if d <= 0:
        return SparsePoly.const(field, (var,), 1), []
    fm = exactnum._pmonic(levels, k, coeffs)
    df = [exactnum._smul(levels, k, Fraction(i), fm[i]) for i in range(1, len(fm))]
    a = exactnum._pgcd_monic(levels, k, fm, df)
    w, rem = exactnum._pdivmod(levels, k, fm, a)
    if exactnum._pdeg(levels, k, rem) >= 0:
        raise InternalInconsistency("gcd does not divide in Yun's algorithm")
    y, rem = exactnum._pdivmod(levels, k, df, a)
    if exactnum._pdeg(levels, k, rem) >= 0:
        raise InternalInconsistency("gcd does not divide in Yun's algorithm")
    factors = []
    m = 1
    while exactnum._pdeg(levels, k, w) > 0:
        dw = [exactnum._smul(levels, k, Fraction(i), w[i]) for i in range(1, len(w))]
        z = exactnum._psub(levels, k, y, dw)
        ai = exactnum._pgcd_monic(levels, k, w, z)
        if exactnum._pdeg(levels, k, ai) > 0:
            factors.append((_ufrom(field, var, ai), m))
        w, rem = exactnum._pdivmod(levels, k, w, ai)
        if exactnum._pdeg(levels, k, rem) >= 0:
            raise InternalInconsistency("gcd does not divide in Yun's algorithm")
        y, rem = exactnum._pdivmod(levels, k, z, ai)
        if exactnum._pdeg(levels, k, rem) >= 0:
            raise InternalInconsistency("gcd does not divide in Yun's algorithm")
        m += 1
    radical = SparsePoly.const(field, (var,), 1)
    for fac, _ in factors:
        radical = radical * fac
    return radical, factors


# ---------------------------------------------------------------------------
# resultants


def resultant(f: SparsePoly, g: SparsePoly, var) -> SparsePoly:
    """Resultant with respect to var, eliminating it.

    Entries may involve one further variable; the answer is returned in the
    same ring.  Uses monomial shortcuts and a fraction-free (Bareiss)
    determinant on the Sylvester matrix.
    """
    if f.field != g.field or f.vars != g.vars:
        raise ValueError("resultant of polynomials in different rings")
    vi = f._vi(var)
    a, b = f.degree_in(vi), g.degree_in(vi)
    if f.is_zero() or g.is_zero():
        return SparsePoly.zero(f.field, f.vars)
    if b < 0 or a < 0:
        return SparsePoly.zero(f.field, f.vars)

    def as_const_power(h: SparsePoly, d: int):
        """h == c * var^k for a single k?  Return (k, c) or None."""
        ks = {e[vi] for e in h.terms}
        if len(ks) != 1:
            return None
        k0 = ks.pop()
        c = SparsePoly(h.field, h.vars,
                       {tuple(0 if t == vi else x for t, x in enumerate(e)): cc
                        for e, cc in h.terms.items()})
        return k0, c

    # res(f, c * v^k) = (-1)^(k deg f) f(v=0)^k * c^(deg f)
    mono = as_const_power(g, b)
    if mono is not None:
        k0, c = mono
        f0 = f.set_var_zero(vi)
        if k0 > 0 and f0.is_zero():
            return SparsePoly.zero(f.field, f.vars)
        out = (c ** a) * (f0 ** k0)
        if (k0 * a) % 2:
            out = -out
        return out
    mono = as_const_power(f, a)
    if mono is not None:
        res = resultant(g, f, var)
        if (a * b) % 2:
            res = -res
        return res

    # general case: Bareiss on the Sylvester matrix; entries are univariate
    # coefficient lists in the remaining variable over the tower
    rest = [i for i in range(len(f.vars)) if i != vi]
    if any(e[i] for i in rest[1:] for e in list(f.terms) + list(g.terms)):
        raise ValueError("resultant entries may involve at most one other variable")
    oi = rest[0] if rest else None
    field = f.field
    levels, kd = field.levels, field.depth

    def rows(h, d):
        out = [[] for _ in range(d + 1)]
        for e, c in h.terms.items():
            j = e[vi]
            o = e[oi] if oi is not None else 0
            col = out[j]
            while len(col) <= o:
                col.append(field.zero())
            col[o] = c
        return [exactnum._ptrim(levels, kd, col) for col in out]

    fc, gc = rows(f, a), rows(g, b)
    n = a + b
    matrix = []
    for i in range(b):
        row = [[] for _ in range(n)]
        for j in range(a + 1):
            row[i + j] = fc[a - j]
        matrix.append(row)
    for i in range(a):
        row = [[] for _ in range(n)]
        for j in range(b + 1):
            row[i + j] = gc[b - j]
        matrix.append(row)

    sign = 1
    prev = [field.one()]
    for kpiv in range(n - 1):
        if exactnum._pdeg(levels, kd, matrix[kpiv][kpiv]) < 0:
            swap = next((r for r in range(kpiv + 1, n)
                         if exactnum._pdeg(levels, kd, matrix[r][kpiv]) >= 0), None)
            if swap is None:
                return SparsePoly.zero(f.field, f.vars)
            matrix[kpiv], matrix[swap] = matrix[swap], matrix[kpiv]
            sign = -sign
        for i in range(kpiv + 1, n):
            for j in range(kpiv + 1, n):
                num = exactnum._psub(
                    levels, kd,
                    exactnum._pmul(levels, kd, matrix[kpiv][kpiv], matrix[i][j]),
                    exactnum._pmul(levels, kd, matrix[i][kpiv], matrix[kpiv][j]))
                if exactnum._pdeg(levels, kd, num) < 0:
                    matrix[i][j] = []
                    continue
                quo, rem = exactnum._pdivmod(levels, kd, num, prev)
                if exactnum._pdeg(levels, kd, rem) >= 0:
                    raise InternalInconsistency("non-exact division in Bareiss elimination")
                matrix[i][j] = quo
            matrix[i][kpiv] = []
        prev = matrix[kpiv][kpiv]
    det = matrix[n - 1][n - 1]
    out = {}
    for o, c in enumerate(det):
        e = [0] * len(f.vars)
        if oi is not None:
            e[oi] = o
        out[tuple(e)] = c
    res = SparsePoly(f.field, f.vars, out)
    return -res if sign < 0 else res


# ---------------------------------------------------------------------------
# reducedness over Q


def content_in(f: SparsePoly, var) -> SparsePoly:
    """Monic gcd of the coefficients of f seen as a polynomial in var; the
    result is univariate in the other variable."""
    vi = f._vi(var)
    rest = [i for i in range(len(f.vars)) if i != vi]
    if len(rest) != 1:
        raise ValueError("content_in expects a two-variable polynomial")
    oi = rest[0]
    field = f.field
    levels, kd = field.levels, field.depth
    groups = {}
    for e, c in f.terms.items():
        groups.setdefault(e[vi], {})[e[oi]] = c
    acc = []
    for jv in sorted(groups):
        coeffs = [field.zero()] * (1 + max(groups[jv]))
        for o, c in groups[jv].items():
            coeffs[o] = c
        acc = exactnum._pgcd_monic(levels, kd, acc, coeffs)
        if exactnum._pdeg(levels, kd, acc) == 0:
            break
    return SparsePoly.from_univariate(field, f.vars[oi], acc or [field.one()])


def is_squarefree_two_vars(f: SparsePoly) -> bool:
    """Squarefreeness of a nonzero two-variable polynomial over Q, via the
    content chain in one variable and a resultant with the derivative."""
    if f.is_zero():
        raise ZeroPolynomial("squarefreeness of the zero polynomial is undefined")
    x, y = f.vars
    if f.degree_in(y) == 0:
        g = SparsePoly.from_univariate(f.field, x, f.coeff_list(x)) if f.degree_in(x) > 0 else None
        if g is None:
            return True
        return poly_gcd(g, g.derivative(x)).degree_in(x) == 0
    cont = content_in(f, y)
    if cont.degree_in(x) > 0:
        if poly_gcd(cont, cont.derivative(x)).degree_in(x) > 0:
            return False
        # primitive part must also be squarefree and coprime to the content;
        # the latter is automatic since the primitive part has unit content
        c2 = cont.with_vars((x,))
        inflated = SparsePoly(f.field, f.vars,
                              {(e[0], 0): c for e, c in c2.terms.items()})
        prim = _exact_div_bivar(f, inflated)
    else:
        prim = f
    res = resultant(prim, prim.derivative(y), y)
    return not res.is_zero()


def _exact_div_bivar(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Exact division where g involves only the first variable."""
    x, y = f.vars
    levels, kd = f.field.levels, f.field.depth
    gc = exactnum._ptrim(levels, kd, [c for _, c in sorted(
        {e[0]: c for e, c in g.terms.items()}.items())])
    # rebuild dense column for g
    gd = [f.field.zero()] * (g.degree_in(x) + 1)
    for e, c in g.terms.items():
        gd[e[0]] = c
    out = {}
    for jv in sorted({e[1] for e in f.terms}):
        col = [f.field.zero()] * (max((e[0] for e in f.terms if e[1] == jv), default=0) + 1)
        for e, c in f.terms.items():
            if e[1] == jv:
                col[e[0]] = c
        q, r = exactnum._pdivmod(levels, kd, col, gd)
        if exactnum._pdeg(levels, kd, r) >= 0:
            raise InternalInconsistency("content division was not exact")
        for i, c in enumerate(q):
            out[(i, jv)] = c
    return SparsePoly(f.field, f.vars, out)


# ---------------------------------------------------------------------------
# tower plumbing for polynomials


def project_poly(f: SparsePoly, new_field: ExtField, project) -> SparsePoly:
    level = f.field.depth
    return SparsePoly(new_field, f.vars,
                      {e: project(c, level) for e, c in f.terms.items()})
