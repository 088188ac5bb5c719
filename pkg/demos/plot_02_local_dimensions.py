"""
Local dimensions at periodic points
===================================

A point whose symbolic path ends in a repeated cycle has local dimension
``log sp(T) / (len * log r_min)``, with ``T`` the cycle's transition matrix.
"""

import math
from fractions import Fraction

from finitype import build_vector_graph
from finitype.dimension import PeriodicPoint, periodic_dim, spectral_radius
from finitype.systems import golden_translates
from finitype.transitions import path_matrix

g = build_vector_graph(golden_translates(Fraction(2, 5)))
r = (math.sqrt(5) - 1) / 2

###############################################################################
# The endpoint 0 sits on the self-loop at vector 2.
d0 = periodic_dim(g, PeriodicPoint((1,), (2, 2)))
print("dim at 0:", d0, "closed form", math.log(0.4) / math.log(r))

###############################################################################
# Three loops through vector 5; the matrices are exact in Q(r).
for cycle in [(5, 7, 5), (5, 3, 5), (5, 6, 3, 5)]:
    T = path_matrix(g, cycle)
    print(cycle, T, "sp in", spectral_radius(T))
    print("   dim:", periodic_dim(g, PeriodicPoint((1, 3), cycle)))
