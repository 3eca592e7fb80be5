"""Embedded resolution of semi-invariant curve germs on cyclic quotient
surface points by iterated weighted blow-ups.

The engine keeps, at every point it visits, a list of labelled germ factors
(axis exponents plus a polynomial part coprime to the axes) over an exact
coefficient tower.  One step picks weights from the Newton polygon of the
product germ, blows up, and recurses into the two chart origins and into
every multiple root on the exceptional curve; simple roots on the
exceptional curve are transverse sections and become leaves.

Points with algebraic coordinates are never enumerated one conjugate at a
time: a multiple face root adjoins its minimal polynomial to the tower
(counting conjugates through the field's cluster size), and the quotient
structure along the exceptional curve is absorbed by one uncounted radical
adjunction.  Minimal polynomials are only required squarefree; if a later
inversion catches a reducible one, the engine either discards the irrelevant
factor (uncounted levels) or forks the node into one branch per factor
(counted levels).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

from .errors import (BadType, DegeneratePolygon, InternalInconsistency,
                     NonExactDivision, NotReduced, NotSemiInvariant,
                     ResolutionDepthExceeded, UnitGerm, ZeroPolynomial)
from .exactnum import (ExtField, Rat, SplitEvent, adjoin_root,
                       is_zero_validated, _is_zero, _neg)
from .poly import (SparsePoly, blowup_transform, choose_face, choose_weights,
                   face_poly, is_squarefree_two_vars, newton_polygon,
                   poly_gcd, project_poly, squarefree_part, support_polygon,
                   weighted_order)
from .quotsing import (SMOOTH, BlowupCharts, QuotType, blowup_charts,
                       exceptional_data, require_normalized)

__all__ = [
    "EngineConfig", "FactorState", "LeafRecord", "BlowupStep",
    "ResolutionNode", "ResolutionTree", "BranchLeaf", "default_ext_bound",
    "semi_invariance_check", "axis_split", "resolve_germ", "resolve_labels",
    "branch_orbits", "tree_to_dict", "tree_to_dot",
    "choose_weights", "newton_polygon", "face_poly",
]

_UNSET = object()


def default_ext_bound():
    """Tower degree bound, from QRES_EXT_BOUND (default 16, <= 0 disables)."""
    raw = os.environ.get("QRES_EXT_BOUND", "16")
    try:
        v = int(raw)
    except ValueError:
        raise BadType("QRES_EXT_BOUND must be an integer, got %r" % (raw,))
    return v if v > 0 else None


@dataclass(frozen=True)
class EngineConfig:
    mode: str = "plain"              # "plain" or "strong"
    weight_overrides: tuple = ()     # (p, q) pairs, consumed depth-first
    ext_bound: object = _UNSET       # int, None (unbounded), or unset -> env
    depth_bound: int = 128
    check_reduced: bool = True

    def resolved_bound(self):
        if self.ext_bound is _UNSET:
            return default_ext_bound()
        return self.ext_bound


@dataclass
class FactorState:
    """One labelled factor at a chart origin: x^axis_x * y^axis_y * poly."""

    axis_x: int = 0
    axis_y: int = 0
    poly: SparsePoly | None = None

    @property
    def is_empty(self):
        return self.axis_x == 0 and self.axis_y == 0 and self.poly is None


@dataclass(frozen=True)
class LeafRecord:
    kind: str           # "axis-x" | "axis-y" | "smooth" | "face"
    label: str
    ambient: QuotType   # local type at the leaf point
    branches: int       # branch count at one point of the node's cluster


@dataclass(frozen=True)
class BlowupStep:
    charts: BlowupCharts
    nu: int
    nu_by_label: dict

    @property
    def p(self):
        return self.charts.p

    @property
    def q(self):
        return self.charts.q

    @property
    def e(self):
        return self.charts.e

    @property
    def exc_mult(self):
        return exceptional_data(self.charts, self.nu)[0]


class ResolutionNode:
    __slots__ = ("id", "ambient", "field", "labels", "exc_x", "exc_y",
                 "depth", "origin", "ingested", "blowup", "leaf_records",
                 "children", "pruned", "override")

    def __init__(self, id, ambient, field, labels, exc_x, exc_y, depth,
                 origin, override=_UNSET):
        self.id = id
        self.ambient = ambient
        self.field = field
        self.labels = labels
        self.exc_x = exc_x
        self.exc_y = exc_y
        self.depth = depth
        self.origin = origin
        self.ingested = False
        self.blowup = None
        self.leaf_records = []
        self.children = []
        self.pruned = False
        self.override = override

    @property
    def conjugacy_multiplicity(self) -> int:
        """Number of actual points this node stands for (its cluster size)."""
        return self.field.cluster_size

    def label_strings(self):
        out = {}
        for lab in sorted(self.labels):
            st = self.labels[lab]
            bits = []
            if st.axis_x:
                bits.append("x" if st.axis_x == 1 else "x^%d" % st.axis_x)
            if st.axis_y:
                bits.append("y" if st.axis_y == 1 else "y^%d" % st.axis_y)
            if st.poly is not None:
                bits.append("(%s)" % (st.poly,) if bits else str(st.poly))
            out[lab] = " * ".join(bits) if bits else "1"
        return out

    def __repr__(self):
        return "<node %d %s %s depth=%d>" % (
            self.id, self.ambient, self.origin, self.depth)


@dataclass(frozen=True)
class BranchLeaf:
    """A transverse section of the exceptional locus: one branch orbit."""

    ambient: QuotType
    upstairs_branches: int
    orbit_count: int
    conjugacy_multiplicity: int
    label: str
    kind: str


@dataclass
class ResolutionTree:
    root: ResolutionNode
    ambient: QuotType
    germs: dict                   # label -> input germ (canonical x, y vars)
    mode: str
    config: EngineConfig

    @property
    def labels(self):
        return tuple(sorted(self.germs))

    def iter_nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def internal_nodes(self):
        return [n for n in self.iter_nodes() if n.blowup is not None]

    def leaves(self):
        out = []
        for n in self.iter_nodes():
            for rec in n.leaf_records:
                out.append((n, rec))
        return out

    def branch_leaves(self):
        return [BranchLeaf(ambient=rec.ambient,
                           upstairs_branches=rec.branches,
                           orbit_count=rec.branches,
                           conjugacy_multiplicity=n.conjugacy_multiplicity,
                           label=rec.label, kind=rec.kind)
                for n, rec in self.leaves()]


# ---------------------------------------------------------------------------
# small germ predicates


def semi_invariance_check(f: SparsePoly, t: QuotType):
    """(True, residue) when all exponents share one weight a*i + b*j mod d."""
    if f.is_zero():
        raise ZeroPolynomial("the zero germ has no residue")
    if t.d == 1:
        return True, 0
    residues = {(t.a * i + t.b * j) % t.d for (i, j) in f.terms}
    if len(residues) == 1:
        return True, residues.pop()
    return False, None


def axis_split(f: SparsePoly):
    """f = x^ax * y^ay * g with g coprime to both axes; returns (ax, ay, g)."""
    xs = [e[0] for e in f.terms]
    ys = [e[1] for e in f.terms]
    ax, ay = min(xs), min(ys)
    g = f.shift_down(f.vars[0], ax).shift_down(f.vars[1], ay)
    return ax, ay, g


# ---------------------------------------------------------------------------
# the engine


class _Engine:
    def __init__(self, config: EngineConfig):
        self.config = config
        self.bound = config.resolved_bound()
        self.overrides = list(config.weight_overrides)
        self.next_id = 0

    def fresh_id(self):
        i = self.next_id
        self.next_id += 1
        return i

    def build(self, ambient, field, labels, exc_x, exc_y, depth, origin,
              override=_UNSET):
        """Create and fully expand a node; returns None when nothing of the
        curve passes through the point."""
        node = ResolutionNode(self.fresh_id(), ambient, field, labels,
                              exc_x, exc_y, depth, origin, override)
        while True:
            try:
                self.process(node)
            except SplitEvent as ev:
                if self.handle_split(node, ev):
                    continue
            if node.pruned:
                return None
            return node

    # -- one attempt at expanding a node ------------------------------------

    def process(self, node):
        if node.depth > self.config.depth_bound:
            raise ResolutionDepthExceeded(
                "resolution did not terminate within %d blow-ups at %s"
                % (self.config.depth_bound, node.ambient))
        self.ingest(node)
        if not node.labels:
            node.pruned = True
            return
        if self.try_leaf(node):
            return
        self.blow_up(node)

    def ingest(self, node):
        if node.ingested:
            return
        for lab in sorted(node.labels):
            st = node.labels[lab]
            if st.poly is not None:
                if st.poly.is_zero():
                    raise InternalInconsistency(
                        "label %s degenerated to the zero germ" % (lab,))
                if node.field.depth > 0:
                    # certify every coefficient as zero or unit; anything
                    # else raises a SplitEvent handled by build()
                    for e in sorted(st.poly.terms):
                        is_zero_validated(node.field, st.poly.terms[e])
                ax, ay, g = axis_split(st.poly)
                st.axis_x += ax
                st.axis_y += ay
                if g.is_constant():
                    st.poly = None
                elif not self._rep_is_zero(node.field, g.constant_term()):
                    # unit at the origin: no component through this point
                    st.poly = None
                else:
                    st.poly = g
            if st.axis_x > 1 or st.axis_y > 1:
                if node.origin == "root":
                    raise NotReduced(
                        "the germ labelled %s has a repeated axis factor" % (lab,))
                raise InternalInconsistency(
                    "strict transform of a reduced germ acquired a repeated "
                    "axis factor at label %s" % (lab,))
            if (st.axis_x and node.exc_x) or (st.axis_y and node.exc_y):
                raise InternalInconsistency(
                    "label %s contains an exceptional axis" % (lab,))
            if st.is_empty:
                del node.labels[lab]
        node.ingested = True

    @staticmethod
    def _rep_is_zero(field, rep):
        # structural test is sound: coefficients were certified above
        return _is_zero(field.levels, field.depth, rep)

    # -- leaves --------------------------------------------------------------

    def try_leaf(self, node) -> bool:
        slots = []
        for lab in sorted(node.labels):
            st = node.labels[lab]
            if st.axis_x:
                slots.append((lab, "axis-x"))
            if st.axis_y:
                slots.append((lab, "axis-y"))
            if st.poly is not None:
                slots.append((lab, "poly"))
        if not slots:
            raise InternalInconsistency("non-pruned node with no branch slot")
        if len(slots) > 1:
            return False
        lab, kind = slots[0]
        if kind == "poly":
            h = node.labels[lab].poly
            if h.total_order() != 1:
                return False
            if node.exc_x and node.exc_y:
                # a corner: three curves through one point is not allowed
                return False
            if node.exc_x and h.set_var_zero("x").min_exp("y") != 1:
                return False
            if node.exc_y and h.set_var_zero("y").min_exp("x") != 1:
                return False
            kind = "smooth"
        if self.config.mode == "strong" and node.ambient.d != 1:
            return False
        node.leaf_records.append(
            LeafRecord(kind=kind, label=lab, ambient=node.ambient, branches=1))
        return True

    # -- blow-up -------------------------------------------------------------

    def blow_up(self, node):
        p, q = self.pick_weights(node)
        bc = blowup_charts(node.ambient, p, q)
        nu_by_label = {}
        for lab in sorted(node.labels):
            st = node.labels[lab]
            w = st.axis_x * p + st.axis_y * q
            if st.poly is not None:
                w += weighted_order(st.poly, p, q)
            nu_by_label[lab] = w
        nu = sum(nu_by_label.values())
        node.blowup = BlowupStep(charts=bc, nu=nu, nu_by_label=nu_by_label)

        # chart 1: x = 0 is the new exceptional curve; axis-x parts die in it
        raw1 = {}
        strict1 = {}
        for lab in sorted(node.labels):
            st = node.labels[lab]
            s1 = None
            if st.poly is not None:
                _, s1 = blowup_transform(st.poly, p, q, 1)
                s1 = self._divide_exps(s1, "x", bc.xdiv1)
            strict1[lab] = s1
            fs = FactorState(0, st.axis_y, s1)
            if not fs.is_empty:
                raw1[lab] = fs
        child = self.build(bc.chart1, node.field, raw1, True, node.exc_y,
                           node.depth + 1, "chart1")
        if child is not None:
            node.children.append(child)

        self.process_faces(node, bc, strict1)

        # chart 2: y = 0 is the new exceptional curve; axis-y parts die in it
        raw2 = {}
        for lab in sorted(node.labels):
            st = node.labels[lab]
            s2 = None
            if st.poly is not None:
                _, s2 = blowup_transform(st.poly, p, q, 2)
                s2 = self._divide_exps(s2, "y", bc.ydiv2)
            fs = FactorState(st.axis_x, 0, s2)
            if not fs.is_empty:
                raw2[lab] = fs
        child = self.build(bc.chart2, node.field, raw2, node.exc_x, True,
                           node.depth + 1, "chart2")
        if child is not None:
            node.children.append(child)

    def pick_weights(self, node):
        if node.override is _UNSET:
            node.override = self.overrides.pop(0) if self.overrides else None
        if node.override is not None:
            p, q = node.override
            if (not isinstance(p, int) or not isinstance(q, int)
                    or p < 1 or q < 1 or math.gcd(p, q) != 1):
                raise BadType("invalid weight override %r" % (node.override,))
            return p, q
        pts = {(0, 0)}
        for lab in sorted(node.labels):
            st = node.labels[lab]
            base = [(st.axis_x, st.axis_y)]
            if st.poly is not None:
                base = [(i + st.axis_x, j + st.axis_y)
                        for (i, j) in st.poly.terms]
            pts = {(a + c, b + d) for (a, b) in pts for (c, d) in base}
        try:
            fc = choose_face(support_polygon(pts))
            return fc.p, fc.q
        except DegeneratePolygon:
            # monomial product germ (axis branches only): any weights work
            return 1, 1

    def _divide_exps(self, f, var, m):
        try:
            return f.divide_var_exponents(var, m)
        except NonExactDivision as exc:
            raise InternalInconsistency(
                "chart rewrite failed to divide %s-exponents by %d: %s"
                % (var, m, exc))

    # -- points on the exceptional curve away from both chart origins --------

    def process_faces(self, node, bc, strict1):
        d1 = bc.chart1.d
        q_parts = {}
        for lab in sorted(strict1):
            s1 = strict1[lab]
            if s1 is None:
                continue
            pval = s1.set_var_zero("x")
            if pval.is_zero():
                raise InternalInconsistency(
                    "strict transform of label %s vanishes on the "
                    "exceptional curve" % (lab,))
            s = pval.min_exp("y")
            coeffs = {}
            for (_, j), c in pval.terms.items():
                if (j - s) % d1:
                    raise InternalInconsistency(
                        "exceptional restriction of label %s is not "
                        "equivariant: y-exponents %s are not constant mod %d"
                        % (lab, sorted(j for _, j in pval.terms), d1))
                coeffs[((j - s) // d1,)] = c
            q_parts[lab] = SparsePoly(node.field, ("y",), coeffs)
        if not q_parts:
            return
        q_product = None
        for lab in sorted(q_parts):
            q_product = q_parts[lab] if q_product is None else q_product * q_parts[lab]
        if q_product.degree_in("y") == 0:
            return
        _, factors = squarefree_part(q_product)
        for idx, (fact, mult) in enumerate(factors):
            if mult == 1:
                total = 0
                for lab in sorted(q_parts):
                    g = poly_gcd(fact, q_parts[lab])
                    db = g.degree_in("y")
                    if db > 0:
                        node.leaf_records.append(LeafRecord(
                            kind="face", label=lab, ambient=SMOOTH,
                            branches=db))
                    total += db
                if total != fact.degree_in("y"):
                    raise InternalInconsistency(
                        "simple exceptional roots do not distribute over "
                        "the labels")
            else:
                self.face_child(node, bc, strict1, fact, idx)

    def face_child(self, node, bc, strict1, fact, idx):
        d1 = bc.chart1.d
        deg = fact.degree_in("y")
        coeffs = fact.coeff_list("y")
        # Yun factors are monic, so coeffs[:-1] is the minimal polynomial tail
        field2, t0 = adjoin_root(node.field, coeffs[:-1],
                                 "a%d_%d" % (node.id, idx),
                                 counts_points=True, bound=self.bound)
        if d1 == 1:
            field3, y0 = field2, t0
        else:
            tail = [_neg(field2.levels, field2.depth, t0)]
            tail += [field2.zero() for _ in range(d1 - 1)]
            field3, y0 = adjoin_root(field2, tail, "r%d_%d" % (node.id, idx),
                                     counts_points=False, bound=self.bound)
        raw = {}
        for lab in sorted(strict1):
            s1 = strict1[lab]
            if s1 is None:
                continue
            moved = s1.lift_to(field3).translate("y", y0)
            raw[lab] = FactorState(0, 0, moved)
        child = self.build(SMOOTH, field3, raw, True, False,
                           node.depth + 1, "face")
        if child is not None:
            node.children.append(child)

    # -- reducible minimal polynomials ---------------------------------------

    def handle_split(self, node, ev) -> bool:
        """Returns True when the node should simply be re-expanded."""
        if ev.levels != node.field.levels:
            raise InternalInconsistency(
                "a coefficient split escaped the node that owns its tower")
        factors = ev.factor_fields()
        if not ev.counts_points:
            # the level only parametrized local coordinates; either factor
            # describes the same downstairs points, keep the smaller one
            keep = 0 if len(ev.g_tail) <= len(ev.h_tail) else 1
            field2, project = factors[keep]
            node.field = field2
            node.labels = self._project_labels(node.labels, field2, project)
            self._reset(node)
            return True
        # conjugate points fall into two genuinely different packets: fork
        forks = []
        for field2, project in factors:
            labels = self._project_labels(node.labels, field2, project)
            child = self.build(node.ambient, field2, labels, node.exc_x,
                               node.exc_y, node.depth, "split",
                               override=node.override)
            if child is not None:
                forks.append(child)
        self._reset(node)
        node.children = forks
        node.pruned = not forks
        return False

    @staticmethod
    def _project_labels(labels, field2, project):
        out = {}
        for lab, st in labels.items():
            g = None
            if st.poly is not None:
                g = project_poly(st.poly, field2, project)
            out[lab] = FactorState(st.axis_x, st.axis_y, g)
        return out

    @staticmethod
    def _reset(node):
        node.ingested = False
        node.blowup = None
        node.leaf_records = []
        node.children = []
        node.pruned = False


# ---------------------------------------------------------------------------
# entry points


def _prepare_germ(f: SparsePoly, ambient: QuotType, check_reduced: bool):
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial is not a curve germ")
    if len(f.vars) != 2:
        raise BadType("curve germs live in two variables, got %r" % (f.vars,))
    f = f.with_vars(("x", "y"))
    if f.field.depth == 0 and f.constant_term() != 0:
        raise UnitGerm("the germ does not vanish at the origin")
    ok, _ = semi_invariance_check(f, ambient)
    if not ok:
        msg = ("the germ is not semi-invariant on %s" % (ambient,))
        okT, _ = semi_invariance_check(f.permute_vars((1, 0)), ambient)
        if okT:
            msg += " (its transpose, swapping the variable roles, is)"
        raise NotSemiInvariant(msg)
    if check_reduced and f.field.depth == 0 and not is_squarefree_two_vars(f):
        raise NotReduced("the germ has a repeated factor")
    return f


def resolve_labels(germs: dict, ambient: QuotType, config=None) -> ResolutionTree:
    """Resolve several labelled germs at the same point simultaneously."""
    if config is None:
        config = EngineConfig()
    require_normalized(ambient)
    if not germs:
        raise BadType("need at least one labelled germ")
    fields = {g.field for g in germs.values()}
    if len(fields) != 1:
        raise BadType("all labelled germs must share one coefficient field")
    prepared = {lab: _prepare_germ(germs[lab], ambient, config.check_reduced)
                for lab in sorted(germs)}
    engine = _Engine(config)
    labels = {lab: FactorState(0, 0, g) for lab, g in prepared.items()}
    field = next(iter(fields))
    root = engine.build(ambient, field, labels, False, False, 0, "root")
    if root is None:
        raise UnitGerm("no labelled germ vanishes at the origin")
    return ResolutionTree(root=root, ambient=ambient, germs=prepared,
                          mode=config.mode, config=config)


def resolve_germ(f: SparsePoly, ambient: QuotType, mode=None,
                 config=None) -> ResolutionTree:
    """Embedded resolution of one reduced semi-invariant germ at the origin
    of X(d;a,b) (the type must be in normal form)."""
    if config is None:
        config = EngineConfig()
    if mode is not None:
        if mode not in ("plain", "strong"):
            raise BadType("mode must be 'plain' or 'strong', got %r" % (mode,))
        config = replace(config, mode=mode)
    return resolve_labels({"C": f}, ambient, config)


def branch_orbits(tree: ResolutionTree):
    """(orbit count downstairs, branch count upstairs) of the resolved germ.

    The first number reads off the tree's leaves.  The second resolves the
    same equation at a smooth point, where branches and orbits agree."""
    r_w = sum(n.conjugacy_multiplicity * rec.branches
              for n, rec in tree.leaves())
    if tree.ambient.d == 1:
        return r_w, r_w
    cfg = EngineConfig(mode="plain", ext_bound=tree.config.ext_bound,
                       depth_bound=tree.config.depth_bound,
                       check_reduced=False)
    r = 0
    for lab in tree.labels:
        up = resolve_labels({lab: tree.germs[lab]}, SMOOTH, cfg)
        r += sum(n.conjugacy_multiplicity * rec.branches
                 for n, rec in up.leaves())
    return r_w, r


# ---------------------------------------------------------------------------
# serialization


SCHEMA_VERSION = 1


def _node_dict(node):
    d = {
        "id": node.id,
        "ambient": str(node.ambient),
        "origin": node.origin,
        "depth": node.depth,
        "cluster": node.conjugacy_multiplicity,
        "exceptional": [bool(node.exc_x), bool(node.exc_y)],
        "field": node.field.describe(),
        "germs": node.label_strings(),
        "blowup": None,
        "leaves": [{"kind": rec.kind, "label": rec.label,
                    "ambient": str(rec.ambient), "branches": rec.branches}
                   for rec in node.leaf_records],
        "children": [_node_dict(c) for c in node.children],
    }
    if node.blowup is not None:
        b = node.blowup
        d["blowup"] = {
            "p": b.p, "q": b.q, "e": b.e, "nu": b.nu,
            "nu_by_label": dict(sorted(b.nu_by_label.items())),
            "exceptional_multiplicity": str(b.exc_mult),
            "chart1": str(b.charts.chart1),
            "chart2": str(b.charts.chart2),
        }
    return d


def tree_to_dict(tree: ResolutionTree):
    return {
        "schema_version": SCHEMA_VERSION,
        "ambient": str(tree.ambient),
        "mode": tree.mode,
        "germs": {lab: str(g) for lab, g in sorted(tree.germs.items())},
        "root": _node_dict(tree.root),
    }


def _dot_escape(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


def tree_to_dot(tree: ResolutionTree) -> str:
    lines = ["digraph resolution {", '  node [shape=box, fontname="monospace"];']
    for node in tree.iter_nodes():
        parts = [str(node.ambient)]
        if node.blowup is not None:
            b = node.blowup
            parts.append("(%d,%d) e=%d nu=%d" % (b.p, b.q, b.e, b.nu))
        if node.conjugacy_multiplicity > 1:
            parts.append("x%d" % node.conjugacy_multiplicity)
        lines.append('  n%d [label="%s"];' % (node.id, _dot_escape("\\n".join(parts))))
        for k, rec in enumerate(node.leaf_records):
            lines.append(
                '  n%d_l%d [shape=ellipse, label="%s"];'
                % (node.id, k, _dot_escape("%s %s: %d branch%s" % (
                    rec.kind, rec.label, rec.branches,
                    "" if rec.branches == 1 else "es"))))
            lines.append("  n%d -> n%d_l%d;" % (node.id, node.id, k))
        for c in node.children:
            lines.append('  n%d -> n%d [label="%s"];'
                         % (node.id, c.id, _dot_escape(c.origin)))
    lines.append("}")
    return "\n".join(lines) + "\n"
