import json

import jsonschema
import pytest

from conftest import germ
from qres.errors import (BadType, ExtensionOverflow, NotReduced,
                         NotSemiInvariant, ResolutionDepthExceeded, UnitGerm)
from qres.exactnum import Rat
from qres.invariants import delta_breakdown, delta_w
from qres.quotsing import SMOOTH, QuotType
from qres.resolve import (EngineConfig, branch_orbits, resolve_germ,
                          resolve_labels, semi_invariance_check, tree_to_dict,
                          tree_to_dot)

X211 = QuotType(2, 1, 1)
X723 = QuotType(7, 2, 3)


def test_cusp_resolves_in_one_blowup():
    tree = resolve_germ(germ("x^2 - y^3"), SMOOTH)
    nodes = tree.internal_nodes()
    assert len(nodes) == 1
    b = nodes[0].blowup
    assert (b.p, b.q) == (3, 2) and b.e == 1 and b.nu == 6
    assert delta_w(tree) == 1
    assert branch_orbits(tree) == (1, 1)


def test_tacnode_values():
    tree = resolve_germ(germ("x^2 - y^4"), X211)
    assert delta_w(tree) == 1
    assert branch_orbits(tree) == (1, 2)
    up = resolve_germ(germ("x^2 - y^4"), SMOOTH)
    assert delta_w(up) == 2
    assert branch_orbits(up) == (2, 2)


def test_override_weights_reproduce_hand_computation():
    f = germ("x*y + (y^2 - x^3)^2")    # semi-invariant orientation
    cfg = EngineConfig(weight_overrides=((1, 5),))
    plain = resolve_germ(f, X723, config=cfg)
    bd = delta_breakdown(plain)
    assert [c for _, c in bd.node_terms] == [Rat(3, 5)]
    assert [c for _, c in bd.corrections] == [Rat(2, 5)]
    assert bd.total == 1
    strong = resolve_germ(f, X723, mode="strong", config=cfg)
    bd2 = delta_breakdown(strong)
    assert [c for _, c in bd2.node_terms] == [Rat(3, 5), Rat(2, 5)]
    assert not bd2.corrections
    assert bd2.total == 1


def test_engine_picks_its_own_weights_consistently():
    f = germ("x*y + (y^2 - x^3)^2")
    assert delta_w(resolve_germ(f, X723)) == 1


def test_conjugate_cluster_and_rational_split():
    # (t^2 - 2)^2 on the first face: a double root pair conjugate over Q,
    # resolved as one cluster of size two
    f = germ("(y^2 - 2*x^2)^2 - x^7")
    tree = resolve_germ(f, SMOOTH)
    assert delta_w(tree) == 8                   # 2 + 2 + 2*2 by additivity
    assert branch_orbits(tree) == (2, 2)
    assert sorted(n.conjugacy_multiplicity for n in tree.iter_nodes()) == [1, 2]
    deep = [n for n in tree.iter_nodes() if n.conjugacy_multiplicity == 2][0]
    assert deep.field.describe().startswith("Q(")
    # rational double points split instead of extending
    g = germ("(y^2 - x^3)*(y^2 - 2*x^3)")
    tree2 = resolve_germ(g, SMOOTH)
    assert delta_w(tree2) == 8                  # 1 + 1 + 6
    assert all(n.field.depth == 0 for n in tree2.iter_nodes())


def test_axis_factors_ride_along():
    f = germ("x*(y^2 - x^3)")
    tree = resolve_germ(f, SMOOTH)
    assert delta_w(tree) == 3                   # 1 + 0 + I(x, cusp) = 2
    assert branch_orbits(tree) == (2, 2)


def test_q_smooth_axis_plain_vs_strong():
    for mode in ("plain", "strong"):
        tree = resolve_germ(germ("x"), QuotType(5, 1, 2), mode=mode)
        assert delta_w(tree) == Rat(2, 5)
        assert branch_orbits(tree) == (1, 1)


def test_strong_mode_equals_plain_total():
    cases = [(germ("x^2 - y^4"), X211), (germ("x*y"), X723),
             (germ("(y^2 - 2*x^2)^2 - x^7"), SMOOTH),
             (germ("y^2 - x^7"), SMOOTH)]
    for f, t in cases:
        assert delta_w(resolve_germ(f, t, mode="plain")) == \
            delta_w(resolve_germ(f, t, mode="strong"))


def test_extension_bound_is_enforced():
    f = germ("(y^2 - 2*x^2)^2 - x^7")
    with pytest.raises(ExtensionOverflow):
        resolve_germ(f, SMOOTH, config=EngineConfig(ext_bound=1))
    assert delta_w(resolve_germ(f, SMOOTH,
                                config=EngineConfig(ext_bound=2))) == 8


def test_depth_bound_is_enforced():
    f = germ("(y - x^2)^2 - x^7")
    with pytest.raises(ResolutionDepthExceeded):
        resolve_germ(f, SMOOTH, config=EngineConfig(depth_bound=1))
    assert delta_w(resolve_germ(f, SMOOTH)) == 3


def test_input_validation():
    with pytest.raises(NotReduced):
        resolve_germ(germ("(x - y)^2"), SMOOTH)
    with pytest.raises(UnitGerm):
        resolve_germ(germ("1 + x"), SMOOTH)
    with pytest.raises(BadType):
        resolve_germ(germ("x"), QuotType(4, 2, 1))   # not in normal form
    with pytest.raises(NotSemiInvariant):
        resolve_germ(germ("x + y"), QuotType(3, 1, 2))


def test_semi_invariance_check():
    ok, res = semi_invariance_check(germ("x*y + x^6"), X723)
    assert ok and res == 5
    ok, _ = semi_invariance_check(germ("x + y"), QuotType(3, 1, 2))
    assert not ok
    ok, res = semi_invariance_check(germ("x + y"), SMOOTH)
    assert ok and res == 0


def test_multi_label_resolution_shares_the_tree():
    tree = resolve_labels({"C": germ("y^2 - x^3"), "D": germ("y")}, SMOOTH)
    assert set(tree.labels) == {"C", "D"}
    node = tree.internal_nodes()[0]
    # weights come from the combined polygon: (2,3) covers both germs
    assert (node.blowup.p, node.blowup.q) == (2, 3)
    assert node.blowup.nu_by_label == {"C": 6, "D": 3}
    assert node.blowup.nu == 9


SCHEMA = json.load(open("docs/resolution.schema.json"))


def test_tree_dict_matches_schema_and_is_deterministic():
    f = germ("x*y + (y^2 - x^3)^2")
    tree = resolve_germ(f, X723)
    doc = tree_to_dict(tree)
    jsonschema.validate(doc, SCHEMA)
    assert doc["schema_version"] == 1
    again = json.dumps(tree_to_dict(resolve_germ(f, X723)), sort_keys=True)
    assert json.dumps(doc, sort_keys=True) == again


def test_dot_output_is_deterministic_and_well_formed():
    f = germ("(y^2 - 2*x^2)^2 - x^7")
    dot1 = tree_to_dot(resolve_germ(f, SMOOTH))
    dot2 = tree_to_dot(resolve_germ(f, SMOOTH))
    assert dot1 == dot2
    assert dot1.startswith("digraph resolution {") and dot1.endswith("}\n")
    assert "x2" in dot1                           # the conjugate pair marker
