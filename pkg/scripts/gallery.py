"""Print genus reports for a small gallery of weighted plane curves.

Usage: python3 scripts/gallery.py
"""
from qres.poly import parse_poly
from qres.wproj import genus, parse_weights

GALLERY = [
    ("x0*x1 - x2", "2,3,5", "rational curve through two vertices"),
    ("x0*x1 - x2", "3,4,7", "same family, next weights"),
    ("x0*x1 - x2^2", "1,3,2", "conic family k=1"),
    ("x0*x1 - x2^2", "3,5,4", "conic family k=2"),
    ("x0*x1 - x2^2", "5,7,6", "conic family k=3"),
    ("x0*x1*x2 + (x0^3 - x1^2)^2", "2,3,7", "orbifold node at a vertex"),
    ("x1^2*x2 - x0^3", "1,1,1", "cuspidal cubic"),
    ("x1^2*x2 - x0^3 - x0^2*x2", "1,1,1", "nodal cubic"),
    ("x0^2*x1^2 + x1^2*x2^2 + x2^2*x0^2 - 2*x0*x1*x2*(x0 + x1 + x2)",
     "1,1,1", "three-cusp quartic"),
    ("x0^30 + x1^10 + x2^6", "1,3,5", "smooth Fermat-type curve"),
    ("x0^15 + x1^10 + x2^6", "2,3,5", "smooth Fermat-type curve"),
    ("(x0^2 + x1^2 - x2^2)*(x0^2 + x1^2 - 2*x2^2)", "1,1,1",
     "two conics tangent at a conjugate pair"),
    ("x0*x1", "1,1,1", "two lines (reducible, virtual value)"),
]


def main():
    for text, wt, note in GALLERY:
        w = parse_weights(wt)
        rep = genus(parse_poly(text, ("x0", "x1", "x2")), w)
        print("%s  [%s]" % (note, wt))
        print("  F = %s" % text)
        print("  degree %d, virtual genus %s, genus %s"
              % (rep.degree, rep.virtual, rep.genus))
        for sp, dv in rep.points:
            mult = " (x%d)" % sp.multiplicity if sp.multiplicity > 1 else ""
            print("    %s %s%s on %s: delta_w %s"
                  % (sp.kind, sp.point, mult, sp.ambient, dv))
        for warning in rep.warnings:
            print("    note: %s" % warning)
        print()


if __name__ == "__main__":
    main()
