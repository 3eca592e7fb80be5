"""Exact coefficient arithmetic: rationals and dynamic algebraic towers.

Everything downstream computes over a field that starts as Q and grows by
adjoining roots of monic squarefree polynomials.  The minimal polynomials are
*not* assumed irreducible: arithmetic proceeds as if they were, and the moment
an inversion meets a zero divisor the tower splits (classic dynamic
evaluation).  The split is surfaced as a SplitEvent carrying both factor
towers together with projection maps; callers fork their computation and
retry in each factor.

Element representation is positional and closed under hashing: a level-0
element is a Fraction, a level-k element is a tuple of level-(k-1) elements
whose length equals the degree of the k-th minimal polynomial.  No element
object carries a field pointer; ExtElem is a thin wrapper for callers that
want operator syntax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    ExtensionOverflow,
    NotInvertible,
    NotSquarefree,
)

Rat = Fraction


def mod_inverse(a: int, d: int) -> int:
    """Inverse of a modulo d, in [1, d) for d > 1.  By convention d = 1 -> 0.

    The d = 1 case keeps blow-up chart formulas uniform at smooth points,
    where every congruence is vacuous.
    """
    if d < 1:
        raise ValueError("modulus must be >= 1, got %r" % (d,))
    if d == 1:
        return 0
    a %= d
    if math.gcd(a, d) != 1:
        raise NotInvertible("%d is not invertible modulo %d" % (a, d))
    return pow(a, -1, d)


@dataclass(frozen=True)
class Level:
    """One storey of a tower: a generator name and its monic minimal polynomial.

    minpoly holds the tail (c_0, ..., c_{n-1}) of t^n + c_{n-1} t^{n-1} + ... + c_0,
    coefficients being elements one level down.  counts_points marks whether the
    conjugates of this generator represent distinct downstream points (face root
    parameters do; covering-chart radicals do not).
    """

    name: str
    minpoly: tuple
    counts_points: bool = True

    @property
    def degree(self) -> int:
        return len(self.minpoly)


@dataclass(frozen=True)
class ExtField:
    """A tower Q = F_0 < F_1 < ... < F_depth, one Level per extension."""

    levels: tuple = ()

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def degree(self) -> int:
        n = 1
        for lv in self.levels:
            n *= lv.degree
        return n

    @property
    def cluster_size(self) -> int:
        """Number of conjugate points this tower's distinctions represent."""
        n = 1
        for lv in self.levels:
            if lv.counts_points:
                n *= lv.degree
        return n

    def zero(self):
        return _zero(self.levels, self.depth)

    def one(self):
        return _const(self.levels, self.depth, Fraction(1))

    def from_rat(self, c):
        return _const(self.levels, self.depth, Fraction(c))

    def generator(self, i: int):
        """The i-th level generator (0-based), lifted to the top level."""
        if not 0 <= i < self.depth:
            raise IndexError("no generator %d in a depth-%d tower" % (i, self.depth))
        lv = self.levels[i]
        rep = tuple(
            _const(self.levels, i, Fraction(1 if j == 1 else 0))
            for j in range(lv.degree)
        )
        # rep is a level-(i+1) element; pad it up to the top of the tower
        for k in range(i + 2, self.depth + 1):
            rep = _lift_one(self.levels, k, rep)
        return rep

    def describe(self) -> str:
        if not self.levels:
            return "Q"
        return "Q(" + ", ".join(
            "%s:deg %d%s" % (lv.name, lv.degree, "" if lv.counts_points else "*")
            for lv in self.levels
        ) + ")"


# ---------------------------------------------------------------------------
# representation arithmetic


def _zero(levels, k):
    if k == 0:
        return Fraction(0)
    z = _zero(levels, k - 1)
    return (z,) * levels[k - 1].degree


def _const(levels, k, c):
    if k == 0:
        return c
    n = levels[k - 1].degree
    z = _zero(levels, k - 1)
    return (_const(levels, k - 1, c),) + (z,) * (n - 1)


def _lift_one(levels, k, rep):
    """Embed a level-(k-1) element as a level-k element."""
    n = levels[k - 1].degree
    z = _zero(levels, k - 1)
    return (rep,) + (z,) * (n - 1)


def lift(levels, k_from, k_to, rep):
    for k in range(k_from + 1, k_to + 1):
        rep = _lift_one(levels, k, rep)
    return rep


def _is_zero(levels, k, a) -> bool:
    if k == 0:
        return a == 0
    return all(_is_zero(levels, k - 1, c) for c in a)


def _add(levels, k, a, b):
    if k == 0:
        return a + b
    return tuple(_add(levels, k - 1, x, y) for x, y in zip(a, b))


def _neg(levels, k, a):
    if k == 0:
        return -a
    return tuple(_neg(levels, k - 1, x) for x in a)


def _sub(levels, k, a, b):
    if k == 0:
        return a - b
    return tuple(_sub(levels, k - 1, x, y) for x, y in zip(a, b))


def _mul(levels, k, a, b):
    if k == 0:
        return a * b
    n = levels[k - 1].degree
    z = _zero(levels, k - 1)
    conv = [z] * (2 * n - 1)
    for i, ai in enumerate(a):
        if _is_zero(levels, k - 1, ai):
            continue
        for j, bj in enumerate(b):
            if _is_zero(levels, k - 1, bj):
                continue
            conv[i + j] = _add(levels, k - 1, conv[i + j], _mul(levels, k - 1, ai, bj))
    tail = levels[k - 1].minpoly
    for m in range(2 * n - 2, n - 1, -1):
        c = conv[m]
        if _is_zero(levels, k - 1, c):
            continue
        conv[m] = z
        for t in range(n):
            conv[m - n + t] = _sub(
                levels, k - 1, conv[m - n + t], _mul(levels, k - 1, c, tail[t])
            )
    return tuple(conv[:n])


def _smul(levels, k, c, a):
    """Multiply by a rational scalar."""
    if k == 0:
        return c * a
    return tuple(_smul(levels, k - 1, c, x) for x in a)


def _pow(levels, k, a, n):
    r = _const(levels, k, Fraction(1))
    base = a
    while n:
        if n & 1:
            r = _mul(levels, k, r, base)
        base = _mul(levels, k, base, base)
        n >>= 1
    return r


# ---------------------------------------------------------------------------
# univariate polynomials over a level, as coefficient lists (low to high)


def _pdeg(levels, k, v) -> int:
    for i in range(len(v) - 1, -1, -1):
        if not _is_zero(levels, k, v[i]):
            return i
    return -1


def _ptrim(levels, k, v):
    d = _pdeg(levels, k, v)
    return list(v[: d + 1])


def _padd(levels, k, u, v):
    n = max(len(u), len(v))
    z = _zero(levels, k)
    out = []
    for i in range(n):
        a = u[i] if i < len(u) else z
        b = v[i] if i < len(v) else z
        out.append(_add(levels, k, a, b))
    return out


def _psub(levels, k, u, v):
    n = max(len(u), len(v))
    z = _zero(levels, k)
    out = []
    for i in range(n):
        a = u[i] if i < len(u) else z
        b = v[i] if i < len(v) else z
        out.append(_sub(levels, k, a, b))
    return out


def _pscale(levels, k, c, v):
    return [_mul(levels, k, c, x) for x in v]


def _pmul(levels, k, u, v):
    du, dv = _pdeg(levels, k, u), _pdeg(levels, k, v)
    if du < 0 or dv < 0:
        return []
    z = _zero(levels, k)
    out = [z] * (du + dv + 1)
    for i in range(du + 1):
        if _is_zero(levels, k, u[i]):
            continue
        for j in range(dv + 1):
            out[i + j] = _add(levels, k, out[i + j], _mul(levels, k, u[i], v[j]))
    return out


def _pdivmod(levels, k, num, den):
    """Polynomial division; the divisor's leading coefficient is inverted,
    which can raise SplitEvent in a reducible tower."""
    dd = _pdeg(levels, k, den)
    if dd < 0:
        raise DivisionByZero("polynomial division by zero")
    lead_inv = _inv(levels, k, den[dd])
    r = _ptrim(levels, k, num)
    q = [_zero(levels, k)] * max(len(r) - dd, 1)
    while True:
        dr = _pdeg(levels, k, r)
        if dr < dd:
            break
        c = _mul(levels, k, r[dr], lead_inv)
        q[dr - dd] = c
        for t in range(dd + 1):
            r[dr - dd + t] = _sub(levels, k, r[dr - dd + t], _mul(levels, k, c, den[t]))
    return _ptrim(levels, k, q), _ptrim(levels, k, r)


def _pmonic(levels, k, v):
    d = _pdeg(levels, k, v)
    if d < 0:
        raise DivisionByZero("cannot normalize the zero polynomial")
    inv = _inv(levels, k, v[d])
    return [_mul(levels, k, inv, x) for x in _ptrim(levels, k, v)]


def _pgcd_monic(levels, k, f, g):
    """Monic gcd by Euclid; returns [] for gcd of two zero polynomials."""
    a = _ptrim(levels, k, f)
    b = _ptrim(levels, k, g)
    while _pdeg(levels, k, b) >= 0:
        _, r = _pdivmod(levels, k, a, b)
        a, b = b, r
    if _pdeg(levels, k, a) < 0:
        return []
    return _pmonic(levels, k, a)


# ---------------------------------------------------------------------------
# inversion and splitting


class SplitEvent(Exception):
    """A tower level's minimal polynomial was caught being reducible.

    Carries the offending level index (0-based), the two monic cofactors as
    tails, and the original levels.  factor_fields() yields, for each factor,
    the replacement ExtField together with a projection callable mapping any
    old representation (given with its level) into the factor tower.
    """

    def __init__(self, levels, k, g_tail, h_tail):
        super().__init__(
            "minimal polynomial of level %d (%s) split into degrees %d and %d"
            % (k, levels[k].name, len(g_tail), len(h_tail))
        )
        self.levels = tuple(levels)
        self.k = k
        self.g_tail = tuple(g_tail)
        self.h_tail = tuple(h_tail)

    @property
    def counts_points(self) -> bool:
        return self.levels[self.k].counts_points

    def factor_fields(self):
        out = []
        for tail in (self.g_tail, self.h_tail):
            out.append(_make_factor(self.levels, self.k, tail))
        return out


def _make_factor(old_levels, k, tail):
    """Build the factor tower where level k's minpoly is replaced by `tail`,
    plus the projection of old representations into it."""
    lv = old_levels[k]
    collapse = len(tail) == 1
    root = _neg(old_levels, k, tail[0]) if collapse else None

    def project(rep, level):
        return _project(old_levels, k, collapse, root, tail, rep, level)

    new_levels = list(old_levels[:k])
    if not collapse:
        new_levels.append(Level(lv.name, tuple(tail), lv.counts_points))
    for j in range(k + 1, len(old_levels)):
        up = old_levels[j]
        new_tail = tuple(project(c, j) for c in up.minpoly)
        new_levels.append(Level(up.name, new_tail, up.counts_points))
    return ExtField(tuple(new_levels)), project


def _project(old_levels, k, collapse, root, tail, rep, level):
    """Project a level-`level` representation into the factor tower.

    Levels strictly below k are untouched.  At level k+1 the coefficient
    vector is either evaluated at the degree-1 root (collapsing the level) or
    reduced modulo the new tail.  Above that, coefficients are projected
    recursively; the positional shape only changes at level k+1 when the
    level collapses.
    """
    if level <= k:
        return rep
    if level == k + 1:
        if collapse:
            # Horner evaluation at the root, one level down.
            acc = _zero(old_levels, k)
            for c in reversed(rep):
                acc = _add(old_levels, k, _mul(old_levels, k, acc, root), c)
            return acc
        num = _ptrim(old_levels, k, list(rep))
        den = list(tail) + [_const(old_levels, k, Fraction(1))]
        _, r = _pdivmod(old_levels, k, num, den)
        z = _zero(old_levels, k)
        r = r + [z] * (len(tail) - len(r))
        return tuple(r)
    return tuple(_project(old_levels, k, collapse, root, tail, c, level - 1) for c in rep)


def _inv(levels, k, a):
    if k == 0:
        if a == 0:
            raise DivisionByZero("division by zero in Q")
        return Fraction(1) / a
    if _is_zero(levels, k, a):
        raise DivisionByZero("division by zero in %s" % ExtField(tuple(levels[:k])).describe())
    lv = levels[k - 1]
    n = lv.degree
    one = _const(levels, k - 1, Fraction(1))
    modulus = list(lv.minpoly) + [one]
    # extended Euclid for gcd(modulus, a) with a Bezout coefficient for a
    r0, s0 = modulus, []
    r1, s1 = _ptrim(levels, k - 1, list(a)), [one]
    while _pdeg(levels, k - 1, r1) >= 0:
        q, r = _pdivmod(levels, k - 1, r0, r1)
        s = _psub(levels, k - 1, s0, _pmul(levels, k - 1, q, s1))
        r0, s0 = r1, s1
        r1, s1 = r, s
    d = _pdeg(levels, k - 1, r0)
    if d == 0:
        c = _inv(levels, k - 1, r0[0])
        inv = _pscale(levels, k - 1, c, s0)
        # Bezout coefficients for deg(a) < n stay below degree n, but reduce
        # defensively so the shape contract is kept.
        if _pdeg(levels, k - 1, inv) >= n:
            _, inv = _pdivmod(levels, k - 1, inv, modulus)
        z = _zero(levels, k - 1)
        inv = inv + [z] * (n - len(inv))
        return tuple(inv[:n])
    # proper factor found: compute the cofactor and surface the split
    g = _pmonic(levels, k - 1, r0)
    h, rem = _pdivmod(levels, k - 1, modulus, g)
    if _pdeg(levels, k - 1, rem) >= 0:
        raise AssertionError("gcd does not divide the modulus")
    # the event carries the whole tower so upper levels can be projected
    raise SplitEvent(levels, k - 1, g[:-1], h[:-1])


def is_zero_validated(field: "ExtField", rep) -> bool:
    """Decide rep == 0, certifying invertibility of nonzero answers.

    Structural zero is sound (reduction is eager and canonical); a nonzero
    answer is backed by an inversion, which either succeeds or raises a
    SplitEvent for the caller to handle.
    """
    if _is_zero(field.levels, field.depth, rep):
        return True
    _inv(field.levels, field.depth, rep)
    return False


# ---------------------------------------------------------------------------
# adjunction


def adjoin_root(field: ExtField, tail, name: str, counts_points: bool = True,
                bound: int | None = None):
    """Adjoin a root of the monic polynomial t^n + tail (squarefree required).

    Returns (new_field, root_rep).  A degree-1 polynomial adjoins nothing:
    the same field comes back with the root it already contains.
    """
    levels = field.levels
    k = field.depth
    tail = tuple(tail)
    n = len(tail)
    if n < 1:
        raise ValueError("minimal polynomial must have degree >= 1")
    if n == 1:
        return field, _neg(levels, k, tail[0])
    one = _const(levels, k, Fraction(1))
    poly = list(tail) + [one]
    deriv = [_smul(levels, k, Fraction(i), poly[i]) for i in range(1, n + 1)]
    g = _pgcd_monic(levels, k, poly, deriv)
    if _pdeg(levels, k, g) > 0:
        raise NotSquarefree(
            "cannot adjoin a root of a non-squarefree polynomial (gcd degree %d)"
            % _pdeg(levels, k, g)
        )
    if bound is not None and field.degree * n > bound:
        raise ExtensionOverflow(
            "tower degree %d exceeds the bound %d" % (field.degree * n, bound)
        )
    new_field = ExtField(levels + (Level(name, tail, counts_points),))
    z = _zero(levels, k)
    root = (z, one) + (z,) * (n - 2)
    return new_field, root


def ext_adjoin(field: ExtField, coeffs, name: str = "t",
               counts_points: bool = True, bound: int | None = None) -> ExtField:
    """Adjoin a root of a monic univariate polynomial given by its coefficient
    list (low to high, leading 1 included).  Returns the extended field; a
    degree-1 polynomial returns the same field."""
    coeffs = [c.rep if isinstance(c, ExtElem) else field.from_rat(c) if isinstance(c, (int, Fraction)) else c
              for c in coeffs]
    if len(coeffs) < 2:
        raise ValueError("minimal polynomial must have degree >= 1")
    lead = coeffs[-1]
    if not _is_zero(field.levels, field.depth, _sub(field.levels, field.depth, lead, field.one())):
        raise ValueError("minimal polynomial must be monic")
    new_field, _ = adjoin_root(field, coeffs[:-1], name, counts_points, bound)
    return new_field


# ---------------------------------------------------------------------------
# operator wrapper


class ExtElem:
    """Field element with operator syntax.  Arithmetic never mixes fields."""

    __slots__ = ("field", "rep")

    def __init__(self, field: ExtField, rep):
        self.field = field
        self.rep = rep

    @classmethod
    def of(cls, field: ExtField, value):
        if isinstance(value, ExtElem):
            if value.field != field:
                raise ValueError("element belongs to a different tower")
            return value
        if isinstance(value, (int, Fraction)):
            return cls(field, field.from_rat(value))
        return cls(field, value)

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            if other.field != self.field:
                raise ValueError("cannot mix elements of different towers")
            return other.rep
        if isinstance(other, (int, Fraction)):
            return self.field.from_rat(other)
        return NotImplemented

    def __add__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, _add(self.field.levels, self.field.depth, self.rep, rep))

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.field, _neg(self.field.levels, self.field.depth, self.rep))

    def __sub__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, _sub(self.field.levels, self.field.depth, self.rep, rep))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        return ExtElem(self.field, _mul(self.field.levels, self.field.depth, self.rep, rep))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return ExtElem(self.field, _pow(self.field.levels, self.field.depth, self.rep, n))

    def __truediv__(self, other):
        rep = self._coerce(other)
        if rep is NotImplemented:
            return NotImplemented
        inv = _inv(self.field.levels, self.field.depth, rep)
        return ExtElem(self.field, _mul(self.field.levels, self.field.depth, self.rep, inv))

    def __eq__(self, other):
        rep = self._coerce(other) if not isinstance(other, ExtElem) else (
            other.rep if other.field == self.field else NotImplemented)
        if rep is NotImplemented:
            return NotImplemented
        return _is_zero(self.field.levels, self.field.depth,
                        _sub(self.field.levels, self.field.depth, self.rep, rep))

    def __hash__(self):
        return hash((self.field, self.rep))

    def is_zero(self) -> bool:
        return _is_zero(self.field.levels, self.field.depth, self.rep)

    def __repr__(self):
        return "ExtElem(%s)" % format_rep(self.field, self.rep)


def ext_invert(x: ExtElem) -> ExtElem:
    """Invert x, raising DivisionByZero for 0 and SplitEvent on zero divisors."""
    if x.is_zero():
        raise DivisionByZero("cannot invert zero")
    return ExtElem(x.field, _inv(x.field.levels, x.field.depth, x.rep))


def try_invert(x: ExtElem):
    """Like ext_invert, but hands a SplitEvent back as a value."""
    try:
        return ext_invert(x)
    except SplitEvent as ev:
        return ev


# ---------------------------------------------------------------------------
# printing


def format_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def format_rep(field: ExtField, rep, _k=None) -> str:
    levels = field.levels
    k = field.depth if _k is None else _k
    if k == 0:
        return format_rat(rep)
    name = levels[k - 1].name
    parts = []
    for i, c in enumerate(rep):
        if _is_zero(levels, k - 1, c):
            continue
        cs = format_rep(field, c, k - 1)
        if k - 1 > 0 and ("+" in cs or " - " in cs):
            cs = "(" + cs + ")"
        if i == 0:
            parts.append(cs)
        else:
            mono = name if i == 1 else "%s^%d" % (name, i)
            parts.append(mono if cs == "1" else "%s*%s" % (cs, mono))
    if not parts:
        return "0"
    return " + ".join(parts)
