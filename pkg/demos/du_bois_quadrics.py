"""
Du Bois levels and cohomology of the ordinary double points
===========================================================

For the quadric y1^2 + ... + yn^2 the spectrum is the single number n/2.
This script tabulates the resulting Du Bois levels, compares them with the
Hodge ideals, and checks the Du Bois cohomology dimensions against a direct
mapping-cone computation.
"""

from fractions import Fraction

from hypersing.classify import hodge_ideal_generators_qh, hodge_level, max_du_bois_level
from hypersing.ideal import tjurina_number
from hypersing.koszul import dubois_dims, truncated_cone_dims
from hypersing.poly import Ring, WeightSystem, parse_poly
from hypersing.spectrum import spectrum_qh


def quadric(n):
    names = [f"y{i}" for i in range(1, n + 1)]
    f = parse_poly("+".join(f"{v}^2" for v in names), Ring(names))
    return f, WeightSystem((Fraction(1, 2),) * n)


###############################################################################
# Levels: floor(n/2) - 1 from the spectrum, and the last p with I_p = (1).

print(" n  alpha  level  hodge")
for n in range(2, 7):
    f, w = quadric(n)
    a = spectrum_qh(f, w).min()
    print(f"{n:2d}  {str(a):>5}  {max_du_bois_level(a):5d}  {hodge_level(f, w):5d}")

f, w = quadric(4)
print("I_1 for n = 4:", [str(g) for g in hodge_ideal_generators_qh(f, w, 1)])

###############################################################################
# Du Bois cohomology. The short exact sequences need alpha_tilde > p + 1,
# which for the quadric means n > 2p + 2. Dimensions are listed over the
# default degree window.

for n in range(3, 7):
    f, w = quadric(n)
    for p in range(n):
        if not Fraction(n, 2) > p + 1:
            continue
        dims = dubois_dims(f, w, p)
        cone = truncated_cone_dims(f, w, p)
        same = all(dims[j] == cone[j] for j in dims)
        line = f"n={n} p={p}: cone agrees: {same}"
        if p >= 1:
            # the top piece is finite-dimensional of dimension tau
            line += f", H^{p} total {dims[p].total()}, tau {tjurina_number(f)}"
        print(line)
        for j, g in dims.items():
            print(f"    H^{j}:", {str(d): k for d, k in g.entries.items()})
