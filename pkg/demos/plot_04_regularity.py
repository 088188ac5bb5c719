"""
Checking the regularity condition
=================================

The sufficient condition compares ``log p_j / log |r_j|`` at the maps that
cover the endpoints.  Finite-``n`` diagnostics show the edge-path masses.
"""

from fractions import Fraction

from finitype import build_vector_graph
from finitype.regularity import generalized_regular_sufficient, regularity_diagnostics
from finitype.systems import golden_reflected, golden_translates, three_maps_half, thirds

for ifs in [golden_translates(), golden_reflected(), thirds(), three_maps_half()]:
    rep = generalized_regular_sufficient(ifs)
    print(f"{ifs.name:18s} case={rep.case} {rep.verdict.value}")
    for note in rep.notes:
        print("   ", note)

###############################################################################
# Gamma_max(n) is exact; r_hat only bounds R_n from above.
g = build_vector_graph(three_maps_half(Fraction(2, 5)))
for row in regularity_diagnostics(g, 5, 2):
    print(row.to_json())
