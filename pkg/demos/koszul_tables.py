"""
Koszul cohomology off the isolated case
=======================================

For f = y1*y2 the singular locus has codimension 2 however many variables
are present. The cohomology of (forms, df ^) vanishes below that codimension
and is infinite-dimensional above it once n > 2. The last part shows the
torsion in the Kaehler 1-forms of the node.
"""

from fractions import Fraction

from hypersing.ideal import codimension, tjurina_ideal
from hypersing.koszul import kaehler_graded_dims, koszul_cohomology, koszul_vanishing_certificate
from hypersing.poly import Ring, WeightSystem, parse_poly

###############################################################################
# Cohomology tables over the degree window [0, 3].

for names in ("y1,y2", "y1,y2,y3,y4"):
    f = parse_poly("y1*y2", Ring(names))
    n = f.ring.nvars
    print(f"n = {n}, codim of the singular locus = {codimension(tjurina_ideal(f))}")
    for p in range(n + 1):
        g = koszul_cohomology(f, None, p, (0, 3))
        print(f"  H^{p}: total {g.total():3d}", {str(d): k for d, k in g.entries.items()})
    print("  vanishing certificate:", koszul_vanishing_certificate(f, None, (0, 3)).ok)

###############################################################################
# Kaehler 1-forms on the node, graded by deg y_i = deg dy_i = 1. The extra
# dimension in degree 2 is the torsion class y2 dy1.

f = parse_poly("y1*y2", Ring("y1,y2"))
w = WeightSystem((Fraction(1), Fraction(1)), Fraction(2))
print("Kaehler 1-forms:", {str(d): k for d, k in kaehler_graded_dims(f, w, 1, (1, 6)).entries.items()})
