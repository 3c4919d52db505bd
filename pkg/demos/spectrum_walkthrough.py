"""
Spectra of a semi-quasi-homogeneous curve and a Thom-Sebastiani sum
===================================================================

Computes the spectrum of x^6 + y^5 + x^3 y^3 from its leading part, compares
it with the Tjurina subspectrum, and forms the spectrum of the sum with
z^5 + w^3 in new variables.
"""

from fractions import Fraction

from hypersing.ideal import milnor_number, tjurina_number
from hypersing.poly import Ring, WeightSystem, find_weights, parse_poly
from hypersing.spectrum import (alpha_invariants, beta_fixture_check, spectrum_qh, symmetry_check,
                                thom_sebastiani, tjurina_subspectrum)

###############################################################################
# The curve and its weights. The x^3 y^3 term has weight 11/10 > 1, so only
# x^6 + y^5 contributes to the spectrum.

f = parse_poly("x^6+y^5+x^3*y^3", Ring("x,y"))
w = WeightSystem((Fraction(1, 6), Fraction(1, 5)))
sp = spectrum_qh(f, w, semi_qh=True)
print("mu =", milnor_number(f), " tau =", tjurina_number(f))
print("spectrum:", sp)
print("symmetric about 1:", symmetry_check(sp, 2))

###############################################################################
# The Tjurina subspectrum is read off a weighted standard basis of
# ((df), f). Because f is not quasi-homogeneous it is a model built from the
# leading weight filtration, with tau = 18 members.

tj = tjurina_subspectrum(f, w, semi_qh=True)
alpha = alpha_invariants(sp, tj)
print("Tjurina subspectrum:", tj)
print("alpha_tilde =", alpha.alpha_tilde, " alpha_max_tj =", alpha.alpha_max_tj)

###############################################################################
# Thom-Sebastiani: the spectrum of f(x, y) + g(z, w) is the sumset.

g = parse_poly("z^5+w^3", Ring("z,w"))
sp_g = spectrum_qh(g, find_weights(g))
h = thom_sebastiani(sp, sp_g)
print("spectrum of g:", sp_g)
print("sum has", len(h), "spectral numbers, smallest integral one:", min(h.integral()))

###############################################################################
# The bundled fixture also carries the Bernstein-Sato exponents. Two of them
# sit one below the matching spectral numbers, which moves the smallest
# integral exponent of the sum from 2 down to 1.

report = beta_fixture_check("h")
print("alpha min integral:", report.alpha_min_int, " beta min integral:", report.beta_min_int)
print("low alphas:", report.alpha_low, " low betas:", report.beta_low)
