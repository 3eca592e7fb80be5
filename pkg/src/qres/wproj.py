"""Curves in weighted projective planes: weight normalization, degrees,
virtual genus, singular locus, and the genus computation.

Points are handled as Galois clusters.  The singular-locus search works per
affine chart: one resultant eliminates a variable, the cyclic symmetry of
the chart collapses the candidate roots to one polynomial per orbit, and
candidate clusters only become tower extensions after a cross-resultant
filter (so smooth high-degree curves never build a tower at all).  Each
surviving cluster carries its conjugacy multiplicity, and the local delta
of the whole cluster comes out of one resolution over the cluster's field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (BadType, InternalInconsistency, NonDivisibleExponent,
                     NonExactDivision, NotQuasiHomogeneous, NotReduced,
                     PointNotOnCurve, ZeroPolynomial)
from .exactnum import (ExtField, Rat, SplitEvent, _add, _inv, _is_zero, _mul,
                       _neg, _sub, adjoin_root, format_rep, lift)
from .poly import (SparsePoly, _exact_div_bivar, content_in,
                   is_squarefree_two_vars, poly_gcd, resultant,
                   squarefree_part)
from .quotsing import QuotType, SMOOTH, normalize_with_multipliers
from .resolve import EngineConfig, default_ext_bound, resolve_germ
from .invariants import delta_breakdown

__all__ = [
    "Weights", "ProjPoint", "SingularPoint", "GenusReport", "parse_weights",
    "normalize_weights", "wdegree", "virtual_genus", "bezout",
    "smoothness_certificate", "localize", "singular_locus", "genus",
]

_QQ = ExtField(())


@dataclass(frozen=True)
class Weights:
    w0: int
    w1: int
    w2: int

    def __post_init__(self):
        if min(self.w0, self.w1, self.w2) < 1:
            raise BadType("weights must be positive, got %s" % (self,))
        if math.gcd(math.gcd(self.w0, self.w1), self.w2) != 1:
            raise BadType("weights %s have a common factor" % (self,))

    @property
    def wbar(self) -> int:
        return self.w0 * self.w1 * self.w2

    @property
    def total(self) -> int:
        return self.w0 + self.w1 + self.w2

    @property
    def is_normalized(self) -> bool:
        return (math.gcd(self.w0, self.w1) == 1
                and math.gcd(self.w0, self.w2) == 1
                and math.gcd(self.w1, self.w2) == 1)

    def __getitem__(self, i):
        return (self.w0, self.w1, self.w2)[i]

    def __str__(self):
        return "(%d,%d,%d)" % (self.w0, self.w1, self.w2)


def parse_weights(text: str) -> Weights:
    parts = text.replace("(", "").replace(")", "").split(",")
    if len(parts) != 3:
        raise BadType("expected three weights, got %r" % (text,))
    try:
        vals = [int(p.strip()) for p in parts]
    except ValueError:
        raise BadType("weights must be integers, got %r" % (text,))
    return Weights(*vals)


@dataclass(frozen=True)
class ProjPoint:
    field: ExtField
    coords: tuple          # three reps over field
    chart: int             # index of a coordinate equal to 1

    def __str__(self):
        return "[%s]" % (" : ".join(
            format_rep(self.field, c) for c in self.coords))


@dataclass(frozen=True)
class SingularPoint:
    point: ProjPoint
    germ: SparsePoly       # local equation, vars (x, y), over point.field
    ambient: QuotType
    multiplicity: int      # conjugate points in this cluster
    kind: str              # "vertex" | "affine" | "axis"


@dataclass(frozen=True)
class GenusReport:
    genus: Rat
    virtual: Rat
    degree: int
    weights: Weights
    points: tuple          # (SingularPoint, delta of the whole cluster)
    warnings: tuple


# ---------------------------------------------------------------------------
# weights and degrees


def normalize_weights(w: Weights, F: SparsePoly):
    """Pass to pairwise coprime weights, rewriting the equation.

    Exponents of X_i are divided by d_i = gcd of the other two weights; the
    division must be exact (strip axis factors first otherwise)."""
    if len(F.vars) != 3:
        raise BadType("weighted plane curves live in three variables")
    while True:
        ws = (w.w0, w.w1, w.w2)
        ds = [math.gcd(ws[(i + 1) % 3], ws[(i + 2) % 3]) for i in range(3)]
        if ds == [1, 1, 1]:
            return w, F
        for i in range(3):
            if ds[i] > 1:
                try:
                    F = F.divide_var_exponents(F.vars[i], ds[i])
                except NonExactDivision:
                    raise NonDivisibleExponent(
                        "exponents of %s are not all divisible by %d; "
                        "factor the axis power out of the equation first"
                        % (F.vars[i], ds[i]))
        w = Weights(ws[0] // (ds[1] * ds[2]),
                    ws[1] // (ds[0] * ds[2]),
                    ws[2] // (ds[0] * ds[1]))


def wdegree(F: SparsePoly, w: Weights) -> int:
    if F.is_zero():
        raise ZeroPolynomial("the zero polynomial has no degree")
    if len(F.vars) != 3:
        raise BadType("weighted plane curves live in three variables")
    degs = {}
    for e in sorted(F.terms):
        degs.setdefault(w.w0 * e[0] + w.w1 * e[1] + w.w2 * e[2], []).append(e)
    if len(degs) > 1:
        raise NotQuasiHomogeneous(
            "monomials fall in distinct weighted degrees: %s" % (
                "; ".join("degree %d: %s" % (d, degs[d][:4])
                          for d in sorted(degs))))
    return next(iter(degs))


def virtual_genus(d: int, w: Weights) -> Rat:
    """Genus of any smooth degree-d curve avoiding the vertices."""
    return Rat(d * (d - w.total), 2 * w.wbar) + 1


def bezout(d1, d2, w: Weights) -> Rat:
    """Global intersection number of curves of degrees d1 and d2."""
    return Rat(d1 * d2, w.wbar)


def smoothness_certificate(d: int, w: Weights) -> bool:
    """True iff smooth curves of degree d transversal to the axes exist."""
    return d % w.wbar == 0


# ---------------------------------------------------------------------------
# chart slices


def _dehomogenize(F: SparsePoly, i: int) -> SparsePoly:
    """Set variable i to 1; remaining variables renamed (x, y), lower index
    first."""
    j, k = [t for t in range(3) if t != i]
    fld = F.field
    terms = {}
    for e, c in F.terms.items():
        key = (e[j], e[k])
        if key in terms:
            terms[key] = _add(fld.levels, fld.depth, terms[key], c)
        else:
            terms[key] = c
    return SparsePoly(fld, ("x", "y"), terms)


def _as_univar(f: SparsePoly, var: str) -> SparsePoly:
    """Forget the other variables of f; they must not occur."""
    vi = f._vi(var)
    for e in f.terms:
        if any(x for t, x in enumerate(e) if t != vi):
            raise InternalInconsistency(
                "%s still involves a variable other than %s" % (f, var))
    return SparsePoly(f.field, (var,),
                      {(e[vi],): c for e, c in f.terms.items()})


def _partial_eval(f: SparsePoly, var: str, field: ExtField, rep):
    """Substitute var = rep (a top-level element of field) in a bivariate f
    over a prefix tower; returns a univariate poly in the other variable."""
    f = f.lift_to(field)
    vi = f.vars.index(var)
    oi = 1 - vi
    other = f.vars[oi]
    cols = {}
    for e, c in f.terms.items():
        cols.setdefault(e[oi], {})[e[vi]] = c
    out = {}
    for j, col in cols.items():
        acc = field.zero()
        for deg in range(max(col), -1, -1):
            acc = _mul(field.levels, field.depth, acc, rep)
            if deg in col:
                acc = _add(field.levels, field.depth, acc, col[deg])
        out[(j,)] = acc
    return SparsePoly(field, (other,), out)


# ---------------------------------------------------------------------------
# localize


def localize(F: SparsePoly, w: Weights, P: ProjPoint):
    """Local equation and ambient type of the curve at P; the germ sits at
    the origin of the returned chart."""
    i = P.chart
    j, k = [t for t in range(3) if t != i]
    fld = P.field
    if not _is_zero(fld.levels, fld.depth,
                    _sub(fld.levels, fld.depth, P.coords[i], fld.one())):
        raise BadType("chart coordinate of %s is not 1" % (P,))
    slice_ = _dehomogenize(F, i)
    a, b = P.coords[j], P.coords[k]
    if (_is_zero(fld.levels, fld.depth, a)
            and _is_zero(fld.levels, fld.depth, b)):
        ambient, mx, my = normalize_with_multipliers(w[i], w[j], w[k])
        try:
            germ = slice_.divide_var_exponents("x", mx)
            germ = germ.divide_var_exponents("y", my)
        except NonExactDivision:
            raise NonDivisibleExponent(
                "the germ at %s does not descend along the normalization "
                "of X(%d;%d,%d); normalize the weights first"
                % (P, w[i], w[j], w[k]))
        if germ.is_constant() or not _is_zero(
                germ.field.levels, germ.field.depth, germ.constant_term()):
            raise PointNotOnCurve("%s does not lie on the curve" % (P,))
        return germ, ambient
    germ = slice_.lift_to(fld).translate("x", a).translate("y", b)
    if germ.is_constant() or not _is_zero(
            fld.levels, fld.depth, germ.constant_term()):
        raise PointNotOnCurve("%s does not lie on the curve" % (P,))
    return germ, SMOOTH


# ---------------------------------------------------------------------------
# singular locus: staged cluster search with split handling


class _Drop(Exception):
    """Abandon the current candidate cluster (spurious at every conjugate)."""


def _run_stages(field, reps, stage, stages):
    """Run stages[stage:] on (field, reps); every stage extends the tower.

    A SplitEvent from a reducible minimal polynomial restarts the stage in
    the factor towers: both when the offending level counts points, only
    the one with the smaller tail otherwise.  _Drop discards the cluster;
    that is only reached once the data is uniform across the cluster,
    because inverting a zero divisor on the way splits first."""
    if stage == len(stages):
        return [(field, reps)]
    while True:
        try:
            field2, reps2 = stages[stage](field, reps)
        except _Drop:
            return []
        except SplitEvent as ev:
            if ev.levels != field.levels:
                raise
            factors = ev.factor_fields()
            if not ev.counts_points:
                keep = 0 if len(ev.g_tail) <= len(ev.h_tail) else 1
                f2, project = factors[keep]
                reps = tuple(project(r, field.depth) for r in reps)
                field = f2
                continue
            out = []
            for f2, project in factors:
                reps_f = tuple(project(r, field.depth) for r in reps)
                out.extend(_run_stages(f2, reps_f, stage, stages))
            return out
        return _run_stages(field2, reps2, stage + 1, stages)


def _lift_reps(old: ExtField, new: ExtField, reps):
    return tuple(lift(new.levels, old.depth, new.depth, r) for r in reps)


def _monic_tail(f: SparsePoly, var: str):
    coeffs = f.coeff_list(var)
    fld = f.field
    inv = _inv(fld.levels, fld.depth, coeffs[-1])
    return [_mul(fld.levels, fld.depth, c, inv) for c in coeffs[:-1]]


def _nonzero_radical_collapsed(f: SparsePoly, var: str, w: int) -> SparsePoly:
    """Strip var^k, take the squarefree part, collapse var^w -> var.

    The root set is stable under scaling by w-th roots of unity, which is
    exactly what makes the collapse exact."""
    k = f.min_exp(var)
    if k:
        f = f.shift_down(var, k)
    rad, _ = squarefree_part(f)
    if rad.degree_in(var) == 0 or w == 1:
        return rad
    try:
        return rad.divide_var_exponents(var, w)
    except NonExactDivision:
        raise InternalInconsistency(
            "orbit collapse failed: exponents of %s in %s are not all "
            "multiples of %d" % (var, rad, w))


def _stage_adjoin_counted(tail_poly: SparsePoly, name: str, bound):
    def run(field, reps):
        tp = tail_poly.lift_to(field)
        tail = _monic_tail(tp, tp.vars[0])
        f2, root = adjoin_root(field, tail, name, counts_points=True,
                               bound=bound)
        return f2, _lift_reps(field, f2, reps) + (root,)
    return run


def _stage_radical(src_index: int, w: int, name: str, bound):
    def run(field, reps):
        t0 = reps[src_index]
        if w == 1:
            return field, reps + (t0,)
        tail = [_neg(field.levels, field.depth, t0)]
        tail += [field.zero() for _ in range(w - 1)]
        f2, root = adjoin_root(field, tail, name, counts_points=False,
                               bound=bound)
        return f2, _lift_reps(field, f2, reps) + (root,)
    return run


def _stage_gcd_roots(polys, var_sub: str, name: str, bound):
    """Slice each poly at var_sub = reps[-1], take the gcd of the nonzero
    slices, and adjoin a root of its squarefree part (counted)."""
    def run(field, reps):
        u0 = reps[-1]
        g = None
        for p in polys:
            sl = _partial_eval(p, var_sub, field, u0)
            if sl.is_zero():
                continue
            g = sl if g is None else poly_gcd(g, sl)
            if g.degree_in(g.vars[0]) == 0:
                raise _Drop()
        if g is None:
            raise InternalInconsistency(
                "every defining equation vanished along a chart line of a "
                "reduced curve")
        rad, _ = squarefree_part(g)
        if rad.degree_in(rad.vars[0]) == 0:
            raise _Drop()
        tail = _monic_tail(rad, rad.vars[0])
        f2, root = adjoin_root(field, tail, name, counts_points=True,
                               bound=bound)
        return f2, _lift_reps(field, f2, reps) + (root,)
    return run


def _affine_stratum(F0: SparsePoly, w0: int, bound, tag: str):
    """Singular clusters of the chart slice F0 with x != 0 (any y).

    Returns a list of (field, x-rep, y-rep).  Components along which y is
    constant are split off first: they are smooth and pairwise disjoint
    away from the axes, but they make the resultant with the x-derivative
    vanish, so only their crossings with the rest of the curve enter.  For
    the rest, candidate x-coordinates come from the resultant with the
    y-derivative refined by the one with the x-derivative; a trivial
    candidate set certifies the stratum empty."""
    if F0.degree_in("x") == 0 or F0.degree_in("y") == 0:
        return []
    q = content_in(F0, "x")
    body = F0
    if q.degree_in("y") > 0:
        q2 = SparsePoly(F0.field, ("y", "x"),
                        {(e[0], 0): c for e, c in q.terms.items()})
        body = _exact_div_bivar(F0.permute_vars((1, 0)), q2).permute_vars((1, 0))
    pieces = []
    if body.degree_in("y") > 0:
        for other in (body.derivative("x"), body.derivative("y")):
            r = resultant(body, other, "y")
            if r.is_zero():
                raise InternalInconsistency(
                    "the resultant of a reduced slice with its derivative "
                    "vanished identically")
            if r.is_constant():
                pieces = []
                break
            s = _nonzero_radical_collapsed(_as_univar(r, "x"), "x", w0)
            if s.degree_in("x") == 0:
                pieces = []
                break
            pieces.append(s)
        if len(pieces) == 2:
            pieces = [poly_gcd(pieces[0], pieces[1])]
    if q.degree_in("y") > 0 and not body.is_constant():
        q2 = SparsePoly(F0.field, ("x", "y"),
                        {(0, e[0]): c for e, c in q.terms.items()})
        r = resultant(body, q2, "y")
        if r.is_zero():
            raise InternalInconsistency(
                "a horizontal component survived the content split")
        if not r.is_constant():
            pieces.append(
                _nonzero_radical_collapsed(_as_univar(r, "x"), "x", w0))
    s = None
    for p in pieces:
        if p.degree_in("x") > 0:
            s = p if s is None else s * p
    if s is None:
        return []
    s, _ = squarefree_part(s)
    if s.degree_in("x") == 0:
        return []
    stages = (
        _stage_adjoin_counted(s, "t" + tag, bound),
        _stage_radical(0, w0, "u" + tag, bound),
        _stage_gcd_roots((F0, F0.derivative("x"), F0.derivative("y")),
                         "x", "v" + tag, bound),
    )
    return [(field, reps[1], reps[2])
            for field, reps in _run_stages(_QQ, (), 0, stages)]


def _axis_stratum(F0: SparsePoly, axis_divides: bool, w_chart: int, bound,
                  tag: str):
    """Singular clusters on the chart line x = 0 away from the chart origin.

    When the line is a component of the curve, every crossing with the rest
    of it counts; otherwise the sliced derivative system decides.  Returns
    a list of (field, y-rep)."""
    if axis_divides:
        sl = F0.shift_down("x", 1).set_var_zero("x")
        if sl.is_zero():
            raise InternalInconsistency(
                "a repeated axis factor survived the reducedness check")
        polys = [sl]
    else:
        polys = [p.set_var_zero("x")
                 for p in (F0, F0.derivative("x"), F0.derivative("y"))]
        polys = [p for p in polys if not p.is_zero()]
        if not polys:
            raise InternalInconsistency(
                "the sliced system of a reduced curve vanished identically")
    g = None
    for sl in polys:
        u = _as_univar(sl, "y")
        g = u if g is None else poly_gcd(g, u)
        if g.degree_in("y") == 0:
            return []
    s = _nonzero_radical_collapsed(g, "y", w_chart)
    if s.degree_in("y") == 0:
        return []
    stages = (
        _stage_adjoin_counted(s, "t" + tag, bound),
        _stage_radical(0, w_chart, "v" + tag, bound),
    )
    return [(field, reps[1])
            for field, reps in _run_stages(_QQ, (), 0, stages)]


def _check_reduced(F: SparsePoly, w: Weights):
    axis_exps = [F.min_exp(v) for v in F.vars]
    if max(axis_exps) > 1:
        raise NotReduced("a coordinate axis divides the equation twice")
    body = F
    for v, e in zip(F.vars, axis_exps):
        if e:
            body = body.shift_down(v, 1)
    b0 = _dehomogenize(body, 0)
    if b0.is_constant():
        return
    if b0.degree_in("x") == 0 or b0.degree_in("y") == 0:
        var = "y" if b0.degree_in("x") == 0 else "x"
        _, facs = squarefree_part(_as_univar(b0, var))
        if any(m > 1 for _, m in facs):
            raise NotReduced("the equation has a repeated factor")
        return
    if not is_squarefree_two_vars(b0):
        raise NotReduced("the equation has a repeated factor")


def singular_locus(F: SparsePoly, w: Weights, bound=None):
    """Points where the curve is singular, plus every vertex on the curve
    (vertices carry orbifold structure even when the germ looks smooth).

    A cluster of conjugate points comes back as one SingularPoint with a
    multiplicity.  Complete as long as every cluster's coordinate degree
    fits in the tower bound; overflow raises rather than dropping points."""
    if bound is None:
        bound = default_ext_bound()
    w, F = normalize_weights(w, F)
    wdegree(F, w)
    _check_reduced(F, w)
    points = []

    for i in range(3):
        coords = [Rat(0)] * 3
        coords[i] = Rat(1)
        p = ProjPoint(_QQ, tuple(coords), i)
        try:
            germ, ambient = localize(F, w, p)
        except PointNotOnCurve:
            continue
        points.append(SingularPoint(point=p, germ=germ, ambient=ambient,
                                    multiplicity=1, kind="vertex"))

    # chart 0 with x1 != 0 (the line x1 = 0 is handled separately below)
    F0 = _dehomogenize(F, 0)
    for field, u0, v0 in _affine_stratum(F0, w.w0, bound, "a"):
        p = ProjPoint(field, (field.one(), u0, v0), 0)
        germ = F0.lift_to(field).translate("x", u0).translate("y", v0)
        points.append(SingularPoint(point=p, germ=germ, ambient=SMOOTH,
                                    multiplicity=field.cluster_size,
                                    kind="affine"))

    # the line x1 = 0 inside chart 0 (so x2 != 0)
    for field, v0 in _axis_stratum(F0, F.min_exp(F.vars[1]) > 0, w.w0,
                                   bound, "b"):
        p = ProjPoint(field, (field.one(), field.zero(), v0), 0)
        germ = F0.lift_to(field).translate("y", v0)
        points.append(SingularPoint(point=p, germ=germ, ambient=SMOOTH,
                                    multiplicity=field.cluster_size,
                                    kind="axis"))

    # the line x0 = 0 via chart 1 (so x2 != 0)
    F1 = _dehomogenize(F, 1)
    for field, v0 in _axis_stratum(F1, F.min_exp(F.vars[0]) > 0, w.w1,
                                   bound, "d"):
        p = ProjPoint(field, (field.zero(), field.one(), v0), 1)
        germ = F1.lift_to(field).translate("y", v0)
        points.append(SingularPoint(point=p, germ=germ, ambient=SMOOTH,
                                    multiplicity=field.cluster_size,
                                    kind="axis"))

    return points


def genus(F: SparsePoly, w: Weights, bound=None, config=None) -> GenusReport:
    """Genus of the reduced curve F = 0: virtual genus of its degree minus
    the local delta at every singular point (vertices included)."""
    if bound is None:
        bound = default_ext_bound()
    w, F = normalize_weights(w, F)
    d = wdegree(F, w)
    _check_reduced(F, w)
    virt = virtual_genus(d, w)
    warnings = []
    if any(F.min_exp(v) > 0 for v in F.vars):
        warnings.append(
            "the curve contains a coordinate axis, so it is reducible and "
            "the genus value is virtual")
    if config is None:
        config = EngineConfig(mode="plain", ext_bound=bound,
                              check_reduced=False)
    total = Rat(0)
    enriched = []
    for sp in singular_locus(F, w, bound=bound):
        tree = resolve_germ(sp.germ, sp.ambient, config=config)
        dsum = delta_breakdown(tree).total
        total += dsum
        enriched.append((sp, dsum))
    g = virt - total
    if g.denominator != 1 or g < 0:
        warnings.append(
            "the genus is not a non-negative integer, so the curve is "
            "reducible and the value is virtual")
    return GenusReport(genus=g, virtual=virt, degree=d, weights=w,
                       points=tuple(enriched), warnings=tuple(warnings))
