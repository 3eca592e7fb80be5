"""Local invariants of curve germs read off resolution trees.

delta_w sums, over the infinitely near points of a resolution, the exact
rational nu(nu - p - q + e)/(2dpq); in plain mode every leaf on a still
singular ambient point adds the correction (d-1)/(2d) per branch.  All the
classical invariants (delta, mu, r) come from the same engine run at d = 1
on the same equation, and the report cross-checks the identities tying the
two levels together, so a bug in either run surfaces as an inconsistency
instead of a plausible number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (CommonComponent, InternalInconsistency, NotMultiple,
                     UnitGerm)
from .exactnum import Rat
from .poly import SparsePoly, resultant, weighted_order
from .quotsing import QuotType, SMOOTH
from .resolve import (EngineConfig, ResolutionTree, axis_split, branch_orbits,
                      resolve_germ, resolve_labels)

__all__ = [
    "DeltaBreakdown", "InvariantReport", "delta_breakdown", "delta_w",
    "delta_classical", "full_report", "noether_intersection",
    "delta_additivity_check", "monomial_colength", "one_step_dim",
    "report_to_dict",
]


@dataclass(frozen=True)
class DeltaBreakdown:
    total: Rat
    node_terms: tuple        # (node id, Rat) per blow-up, preorder
    corrections: tuple       # (node id, Rat) per plain-mode leaf on d > 1

    @property
    def node_sum(self) -> Rat:
        return sum((c for _, c in self.node_terms), Rat(0))

    @property
    def correction_sum(self) -> Rat:
        return sum((c for _, c in self.corrections), Rat(0))

    @property
    def per_node(self):
        return self.node_terms + self.corrections


def delta_breakdown(tree: ResolutionTree) -> DeltaBreakdown:
    node_terms = []
    corrections = []
    for n in tree.iter_nodes():
        if n.blowup is not None:
            b = n.blowup
            node_terms.append((n.id, n.conjugacy_multiplicity * Rat(
                b.nu * (b.nu - b.p - b.q + b.e),
                2 * n.ambient.d * b.p * b.q)))
        for rec in n.leaf_records:
            d = rec.ambient.d
            if d == 1:
                continue
            if tree.mode == "strong":
                raise InternalInconsistency(
                    "a strong-mode resolution stopped on the singular "
                    "ambient %s" % (rec.ambient,))
            corrections.append((n.id, n.conjugacy_multiplicity * rec.branches
                                * Rat(d - 1, 2 * d)))
    total = (sum((c for _, c in node_terms), Rat(0))
             + sum((c for _, c in corrections), Rat(0)))
    return DeltaBreakdown(total=total, node_terms=tuple(node_terms),
                          corrections=tuple(corrections))


def delta_w(tree: ResolutionTree, mode=None) -> Rat:
    """delta of the resolved germ, orbifold-weighted at the tree's ambient."""
    if mode is not None and mode != tree.mode:
        raise InternalInconsistency(
            "tree was built in %r mode, not %r" % (tree.mode, mode))
    return delta_breakdown(tree).total


def delta_classical(f: SparsePoly, config=None) -> Rat:
    """delta of a reduced germ at a smooth point (an integer as a Rat)."""
    tree = resolve_germ(f, SMOOTH, mode="plain", config=config)
    val = delta_breakdown(tree).total
    if val.denominator != 1 or val < 0:
        raise InternalInconsistency(
            "classical delta came out as %s, not a non-negative integer"
            % (val,))
    return val


@dataclass(frozen=True)
class InvariantReport:
    germ: str
    ambient: QuotType
    mode: str
    transposed: bool
    delta_w: Rat
    mu_w: Rat
    r_w: int
    delta_classical: Rat
    mu_classical: int
    r_classical: int
    euler_orb: Rat
    per_node_contributions: tuple    # (node id, Rat), blow-ups then corrections
    warnings: tuple
    tree: ResolutionTree


def full_report(f: SparsePoly, ambient: QuotType, mode="plain",
                config=None) -> InvariantReport:
    """Resolve twice (on the quotient and upstairs at d = 1), assemble every
    invariant, and re-check the identities binding them."""
    from .resolve import semi_invariance_check

    if len(f.vars) != 2:
        from .errors import BadType
        raise BadType("curve germs live in two variables, got %r" % (f.vars,))
    f = f.with_vars(("x", "y"))
    warnings = []
    transposed = False
    ok, _ = semi_invariance_check(f, ambient)
    if not ok:
        okT, _ = semi_invariance_check(f.permute_vars((1, 0)), ambient)
        if okT:
            f = f.permute_vars((1, 0))
            transposed = True
            warnings.append(
                "germ was not semi-invariant as written; its transpose "
                "(variable roles swapped) is, and was used instead")
    tree = resolve_germ(f, ambient, mode=mode, config=config)
    bd = delta_breakdown(tree)
    dw = bd.total
    r_w, r = branch_orbits(tree)
    d = ambient.d
    if d == 1:
        delta = dw
    else:
        cfg = EngineConfig(mode="plain",
                           ext_bound=tree.config.ext_bound,
                           depth_bound=tree.config.depth_bound,
                           check_reduced=False)
        delta = delta_breakdown(resolve_germ(f, SMOOTH, config=cfg)).total
    if delta.denominator != 1 or delta < 0:
        raise InternalInconsistency(
            "upstairs delta came out as %s, not a non-negative integer"
            % (delta,))
    mu = 2 * delta - r + 1
    mu_w = Rat(d - 1, d) + Rat(mu, d)
    if mu_w != 2 * dw - r_w + 1:
        raise InternalInconsistency(
            "Milnor identities disagree: (d-1)/d + mu/d = %s but "
            "2*delta_w - r_w + 1 = %s" % (mu_w, 2 * dw - r_w + 1))
    if dw != Rat(delta, d) + Rat(r_w - Rat(r, d), 2):
        raise InternalInconsistency(
            "delta identities disagree: delta_w = %s but delta/d + "
            "(r_w - r/d)/2 = %s" % (dw, Rat(delta, d) + Rat(r_w - Rat(r, d), 2)))
    for nid, c in bd.per_node:
        if c < 0:
            warnings.append(
                "node %d contributed the negative amount %s" % (nid, c))
    return InvariantReport(
        germ=str(f), ambient=ambient, mode=tree.mode, transposed=transposed,
        delta_w=dw, mu_w=mu_w, r_w=r_w, delta_classical=delta,
        mu_classical=int(mu), r_classical=r,
        euler_orb=r_w - 2 * dw,
        per_node_contributions=bd.per_node,
        warnings=tuple(warnings), tree=tree)


def noether_intersection(C: SparsePoly, D: SparsePoly, ambient: QuotType,
                         config=None) -> Rat:
    """Local intersection number of two semi-invariant germs without common
    components: sum of nu_C * nu_D / (p q d) over a shared resolution."""
    C = C.with_vars(("x", "y"))
    D = D.with_vars(("x", "y"))
    _reject_common_component(C, D)
    if config is None:
        config = EngineConfig()
    tree = resolve_labels({"C": C, "D": D}, ambient, config)
    total = Rat(0)
    for n in tree.internal_nodes():
        b = n.blowup
        nc = b.nu_by_label.get("C", 0)
        nd = b.nu_by_label.get("D", 0)
        total += n.conjugacy_multiplicity * Rat(nc * nd,
                                                b.p * b.q * n.ambient.d)
    return total


def _reject_common_component(C: SparsePoly, D: SparsePoly):
    if C.is_zero() or D.is_zero():
        raise CommonComponent("the zero germ shares every component")
    axC, ayC, gC = axis_split(C)
    axD, ayD, gD = axis_split(D)
    if (axC and axD) or (ayC and ayD):
        raise CommonComponent("both germs contain a coordinate axis")
    if gC.is_constant() or gD.is_constant():
        return
    if resultant(gC, gD, "y").is_zero():
        raise CommonComponent(
            "the germs share a factor (their resultant in y vanishes)")


def delta_additivity_check(C: SparsePoly, D: SparsePoly, ambient: QuotType,
                           config=None):
    """Both sides of delta_w(C*D) = delta_w(C) + delta_w(D) + (C.D)."""
    C = C.with_vars(("x", "y"))
    D = D.with_vars(("x", "y"))
    inter = noether_intersection(C, D, ambient, config)
    dC = delta_w(resolve_germ(C, ambient, config=config))
    dD = delta_w(resolve_germ(D, ambient, config=config))
    lhs = delta_w(resolve_germ(C * D, ambient, config=config))
    return lhs, dC + dD + inter


def monomial_colength(p: int, q: int, n: int) -> int:
    """Number of lattice points (i, j) >= 0 with p i + q j < p q n."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError("weights must be coprime positive integers")
    if n < 0:
        raise ValueError("n must be non-negative")
    num = p * q * n * (n + 1) - (p - 1) * (q - 1) * n
    if num % 2:
        raise InternalInconsistency("lattice count formula is not integral")
    return num // 2


def one_step_dim(f: SparsePoly, p: int, q: int) -> Rat:
    """Colength jump contributed by one weighted blow-up at a smooth point:
    nu(nu - p - q + 1)/(2pq), defined when pq divides nu."""
    nu = weighted_order(f, p, q)
    if nu % (p * q):
        raise NotMultiple(
            "the (%d,%d)-order %d of the germ is not a multiple of %d"
            % (p, q, nu, p * q))
    val = Rat(nu * (nu - p - q + 1), 2 * p * q)
    if val.denominator != 1 or val < 0:
        raise InternalInconsistency(
            "one-step dimension %s is not a non-negative integer" % (val,))
    return val


def _rat_str(x) -> str:
    x = Rat(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (
        x.numerator, x.denominator)


def report_to_dict(rep: InvariantReport):
    return {
        "germ": rep.germ,
        "ambient": str(rep.ambient),
        "mode": rep.mode,
        "transposed": rep.transposed,
        "delta_w": _rat_str(rep.delta_w),
        "mu_w": _rat_str(rep.mu_w),
        "r_w": rep.r_w,
        "delta": _rat_str(rep.delta_classical),
        "mu": rep.mu_classical,
        "r": rep.r_classical,
        "euler_orb": _rat_str(rep.euler_orb),
        "contributions": [{"node": nid, "value": _rat_str(c)}
                          for nid, c in rep.per_node_contributions],
        "warnings": list(rep.warnings),
    }
