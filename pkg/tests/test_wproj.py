import pytest

from conftest import curve
from qres.errors import (BadType, NonDivisibleExponent, NotQuasiHomogeneous,
                         NotReduced, PointNotOnCurve)
from qres.exactnum import ExtField, Rat
from qres.quotsing import SMOOTH, QuotType
from qres.wproj import (GenusReport, ProjPoint, Weights, bezout, genus,
                        localize, normalize_weights, parse_weights,
                        singular_locus, smoothness_certificate, virtual_genus,
                        wdegree)

QQ = ExtField(())


def w(text):
    return parse_weights(text)


def kinds(rep: GenusReport):
    return sorted((sp.kind, sp.multiplicity, str(dv)) for sp, dv in rep.points)


def test_weights_validation():
    assert w("2,3,5").wbar == 30 and w("2,3,5").total == 10
    assert w("(1, 1, 1)").is_normalized
    assert not Weights(1, 2, 2).is_normalized
    with pytest.raises(BadType):
        Weights(0, 1, 1)
    with pytest.raises(BadType):
        Weights(2, 4, 6)
    with pytest.raises(BadType):
        parse_weights("2,3")
    with pytest.raises(BadType):
        parse_weights("a,b,c")


def test_virtual_genus_values():
    assert virtual_genus(5, w("2,3,5")) == Rat(7, 12)
    assert virtual_genus(40, w("2,3,5")) == 21
    for d in range(1, 11):
        assert virtual_genus(d, w("1,1,1")) == Rat((d - 1) * (d - 2), 2)


def test_bezout_and_certificate():
    assert bezout(2, 3, w("1,1,1")) == 6
    assert bezout(5, 12, w("2,3,5")) == 2
    assert smoothness_certificate(30, w("2,3,5"))
    assert not smoothness_certificate(7, w("2,3,5"))


def test_wdegree():
    assert wdegree(curve("x0*x1 + x2"), w("2,3,5")) == 5
    with pytest.raises(NotQuasiHomogeneous):
        wdegree(curve("x0 + x1^2"), w("1,1,1"))


def test_normalize_weights():
    wn, F = normalize_weights(w("1,2,2"), curve("x0^2*x1 - x2^2"))
    assert (wn.w0, wn.w1, wn.w2) == (1, 1, 1)
    assert F == curve("x0*x1 - x2^2")
    with pytest.raises(NonDivisibleExponent) as ei:
        normalize_weights(w("1,2,2"), curve("x0^3*x1 + x0*x2^2"))
    assert "factor the axis power" in str(ei.value)


def test_localize():
    P = ProjPoint(QQ, (Rat(1), Rat(1), Rat(1)), 0)
    germ, ambient = localize(curve("x0 + x1 - 2*x2"), w("1,1,1"), P)
    assert ambient == SMOOTH
    assert germ.constant_term() == germ.field.zero()
    with pytest.raises(PointNotOnCurve):
        localize(curve("x0 + x1 - 2*x2"), w("1,1,1"),
                 ProjPoint(QQ, (Rat(1), Rat(0), Rat(0)), 0))


def test_quintic_through_two_vertices():
    rep = genus(curve("x0*x1 + x2"), w("2,3,5"))
    assert rep.virtual == Rat(7, 12)
    assert rep.genus == 0 and not rep.warnings
    assert kinds(rep) == [("vertex", 1, "1/3"), ("vertex", 1, "1/4")]
    ambients = {str(sp.ambient) for sp, _ in rep.points}
    assert ambients == {"X(2;1,1)", "X(3;2,2)"}


def test_conic_family():
    # x2^2 = (x0 x1)^k in the plane with weights (1,1,k)
    expected = {1: (0, 0, 0), 2: (1, 1, -1), 3: (2, 1, 0)}
    for k, (virt, dv, g) in expected.items():
        F = curve("x2^2 - x0^%d*x1^%d" % (k, k)) if k > 1 \
            else curve("x2^2 - x0*x1")
        rep = genus(F, Weights(1, 1, k))
        assert rep.virtual == virt and rep.genus == g
        assert [str(v) for _, v in rep.points] == [str(dv), str(dv)]
    assert genus(curve("x2^2 - x0^2*x1^2"), Weights(1, 1, 2)).warnings


def test_rational_cubics():
    cusp = genus(curve("x1^2*x2 - x0^3"), w("1,1,1"))
    assert cusp.virtual == 1 and cusp.genus == 0
    node = genus(curve("x1^2*x2 - x0^3 - x0^2*x2"), w("1,1,1"))
    assert node.virtual == 1 and node.genus == 0


def test_three_cusp_quartic():
    F = curve("x0^2*x1^2 + x1^2*x2^2 + x2^2*x0^2"
              " - 2*x0*x1*x2*(x0 + x1 + x2)")
    rep = genus(F, w("1,1,1"))
    assert rep.virtual == 3 and rep.genus == 0
    assert kinds(rep) == [("vertex", 1, "1")] * 3


def test_orbifold_node_on_2_3_7():
    rep = genus(curve("x0^6 - x1^4 + x0*x1*x2"), w("2,3,7"))
    assert rep.degree == 12
    assert rep.virtual == 1 and rep.genus == 0
    (sp, dv), = rep.points
    assert sp.kind == "vertex" and str(sp.ambient) == "X(7;2,3)" and dv == 1


def test_fermat_curves_are_smooth():
    rep = genus(curve("x0^30 + x1^10 + x2^6"), w("1,3,5"))
    assert rep.genus == rep.virtual == 22 and not rep.points
    rep = genus(curve("x0^15 + x1^10 + x2^6"), w("2,3,5"))
    assert rep.genus == rep.virtual == 11 and not rep.points


def test_reducible_curves_warn():
    two_lines = genus(curve("x0*x1"), w("1,1,1"))
    assert two_lines.genus == -1
    assert len(two_lines.warnings) == 2      # contains axes + non-integer
    conic_line = genus(curve("(x0 + x1)*(x0^2 + x1^2 - x2^2)"), w("1,1,1"))
    assert conic_line.genus == -1 and len(conic_line.warnings) == 1
    assert ("affine", 2, "2") in kinds(conic_line)


def test_conjugate_tangency_cluster():
    # the conics meet only at [1 : +-i : 0], a conjugate pair of tacnodes
    rep = genus(curve("(x0^2 + x1^2 - x2^2)*(x0^2 + x1^2 - 2*x2^2)"),
                w("1,1,1"))
    assert rep.virtual == 3 and rep.genus == -1
    (sp, dv), = rep.points
    assert sp.multiplicity == 2 and dv == 4
    assert dv == bezout(2, 2, w("1,1,1"))    # all of Bezout sits in one orbit


def test_axis_through_cusp():
    rep = genus(curve("x0*(x1^2*x2 - x0^3)"), w("1,1,1"))
    assert rep.genus == -1 and len(rep.warnings) == 2
    assert sorted(str(v) for _, v in rep.points) == ["1", "3"]


def test_genus_invariant_under_coordinate_permutation():
    a = genus(curve("x0*x1 + x2"), w("2,3,5"))
    b = genus(curve("x2*x1 + x0"), w("5,3,2"))
    assert a.genus == b.genus == 0 and a.virtual == b.virtual


def test_normalization_happens_inside_genus():
    rep = genus(curve("x0^2*x1 - x2^2"), w("1,2,2"))
    assert (rep.weights.w0, rep.weights.w1, rep.weights.w2) == (1, 1, 1)
    assert rep.degree == 2 and rep.genus == 0


def test_non_reduced_input_is_rejected():
    with pytest.raises(NotReduced):
        genus(curve("x0^2*(x1 - x2)"), w("1,1,1"))
    with pytest.raises(NotReduced):
        genus(curve("(x0 + x1)^2*x2"), w("1,1,1"))


def test_singular_locus_lists_vertices_on_the_curve():
    pts = singular_locus(curve("x1^2*x2 - x0^3"), w("1,1,1"))
    assert sorted(p.kind for p in pts) == ["vertex", "vertex"]
    pts = singular_locus(curve("x0^30 + x1^10 + x2^6"), w("1,3,5"))
    assert pts == []
