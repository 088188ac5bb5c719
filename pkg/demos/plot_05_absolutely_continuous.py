"""
An absolutely continuous example
================================

With the reflected golden system and ``p0 = r**2`` the measure has a
piecewise-linear density.  Compare ``P_n`` with the density mass.
"""

import math
from fractions import Fraction

from finitype import build_vector_graph
from finitype.dimension import approx_local_dim, density_check_sr, locate
from finitype.systems import golden_field, golden_reflected

K = golden_field()
g = build_vector_graph(golden_reflected(K.gen * K.gen))

###############################################################################
# ``P_n`` overcounts where basic intervals overlap, so the deviation does
# not vanish, but the density mass is exactly self-similar at every level.
for n in (2, 4, 8):
    print(density_check_sr(g, n))

###############################################################################
# At a typical point the finite-n quotient approaches 1.
x = Fraction(math.sqrt(2) - 1)
for n in (10, 20, 30):
    print(n, approx_local_dim(g, locate(g, x, n)))
