import pytest

from conftest import germ
from qres.errors import CommonComponent, NotMultiple
from qres.exactnum import Rat
from qres.invariants import (delta_additivity_check, delta_classical,
                             full_report, monomial_colength,
                             noether_intersection, one_step_dim,
                             report_to_dict)
from qres.poly import resultant
from qres.quotsing import SMOOTH, QuotType

X211 = QuotType(2, 1, 1)
X312 = QuotType(3, 1, 2)
X723 = QuotType(7, 2, 3)


def test_full_report_tacnode_on_half_plane():
    rep = full_report(germ("x^2 - y^4"), X211)
    assert rep.delta_w == 1
    assert rep.mu_w == 2
    assert rep.r_w == 1
    assert rep.delta_classical == 2
    assert rep.mu_classical == 3
    assert rep.r_classical == 2
    assert rep.euler_orb == -1
    assert not rep.transposed and not rep.warnings


def test_milnor_identities_hold():
    cases = [("y^2 - x^3", SMOOTH), ("x^2 - y^4", X211),
             ("x", QuotType(5, 1, 2)), ("x*y + (y^2 - x^3)^2", X723),
             ("x*(y^2 - x^3)", SMOOTH)]
    for text, t in cases:
        rep = full_report(germ(text), t)
        d = t.d
        assert rep.mu_w == 2 * rep.delta_w - rep.r_w + 1
        assert rep.mu_w == Rat(d - 1, d) + Rat(rep.mu_classical, d)
        assert rep.delta_w == (Rat(rep.delta_classical, d)
                               + Rat(rep.r_w - Rat(rep.r_classical, d), 2))
        assert rep.euler_orb == rep.r_w - 2 * rep.delta_w


def test_delta_classical_values():
    assert delta_classical(germ("y^2 - x^3")) == 1
    assert delta_classical(germ("x^2 - y^4")) == 2
    assert delta_classical(germ("y^3 - x^5")) == 4    # semigroup <3,5>
    assert delta_classical(germ("x*y")) == 1


def test_noether_known_values():
    assert noether_intersection(germ("x"), germ("y"), SMOOTH) == 1
    assert noether_intersection(germ("y - x^2"), germ("y + x^2"), SMOOTH) == 2
    assert noether_intersection(germ("y^2 - x^3"), germ("y^2 - 2*x^3"),
                                SMOOTH) == 6
    assert noether_intersection(germ("x"), germ("y"), X312) == Rat(1, 3)


def test_noether_agrees_with_resultant_order():
    f, g = germ("y^2 - x^3"), germ("y^2 - 2*x^3")
    r = resultant(f, g, "y")
    assert r == germ("x^6")
    assert noether_intersection(f, g, SMOOTH) == r.min_exp("x")


def test_noether_is_symmetric():
    pairs = [("x", "y^2 - x^3"), ("y - x^2", "y^2 - x^5")]
    for a, b in pairs:
        assert noether_intersection(germ(a), germ(b), SMOOTH) == \
            noether_intersection(germ(b), germ(a), SMOOTH)


def test_common_components_are_rejected():
    with pytest.raises(CommonComponent):
        noether_intersection(germ("x"), germ("x*y"), SMOOTH)
    with pytest.raises(CommonComponent):
        noether_intersection(germ("y^2 - x^3"),
                             germ("(y^2 - x^3)*(y - x)"), SMOOTH)


def test_delta_additivity():
    lhs, rhs = delta_additivity_check(germ("y^2 - x^3"), germ("y^2 - 2*x^3"),
                                      SMOOTH)
    assert lhs == rhs == 8
    lhs, rhs = delta_additivity_check(germ("x"), germ("y^2 - x^3"), SMOOTH)
    assert lhs == rhs == 3
    lhs, rhs = delta_additivity_check(germ("x"), germ("y"), X312)
    assert lhs == rhs


def test_monomial_colength_matches_brute_count():
    for p, q in [(1, 1), (2, 3), (3, 5), (1, 4)]:
        for n in range(5):
            brute = sum(1 for i in range(p * q * n + 1)
                        for j in range(p * q * n + 1)
                        if p * i + q * j < p * q * n)
            assert monomial_colength(p, q, n) == brute
    with pytest.raises(ValueError):
        monomial_colength(2, 4, 1)
    with pytest.raises(ValueError):
        monomial_colength(0, 1, 1)
    with pytest.raises(ValueError):
        monomial_colength(2, 3, -1)


def test_one_step_dim():
    assert one_step_dim(germ("y^2 - x^3"), 2, 3) == 1
    assert one_step_dim(germ("x^2 - y^5"), 5, 2) == 2
    with pytest.raises(NotMultiple):
        one_step_dim(germ("y^2 - x^3"), 2, 5)


def test_report_transposes_when_only_the_swap_is_semi_invariant():
    rep = full_report(germ("x*y + (x^2 - y^3)^2"), X723)
    assert rep.transposed
    assert any("transpose" in w for w in rep.warnings)
    assert rep.delta_w == 1
    direct = full_report(germ("x*y + (y^2 - x^3)^2"), X723)
    assert not direct.transposed
    assert direct.delta_w == rep.delta_w and direct.r_w == rep.r_w


def test_report_to_dict_round_trip():
    rep = full_report(germ("x^2 - y^4"), X211)
    doc = report_to_dict(rep)
    assert doc["delta_w"] == "1" and doc["mu_w"] == "2"
    assert doc["ambient"] == "X(2;1,1)"
    assert doc["r_w"] == 1 and doc["r"] == 2
    assert isinstance(doc["contributions"], list)
    assert all(set(c) == {"node", "value"} for c in doc["contributions"])
    assert doc["warnings"] == []
