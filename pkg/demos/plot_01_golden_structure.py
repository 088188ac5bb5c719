"""
Characteristic vectors of the golden Bernoulli convolution
===========================================================

Build the transition graph for the two golden-ratio systems, list the
children of every vector and pick out the essential class.
"""

from fractions import Fraction

from finitype import build_vector_graph
from finitype.dimension import essential_points
from finitype.io import to_dot
from finitype.systems import golden_reflected, golden_translates

###############################################################################
# Two maps ``r x`` and ``r x + 1 - r`` with ``r**2 + r = 1``.  Every net
# interval is described exactly in Q(r), so the closure is finite.
ss = build_vector_graph(golden_translates(Fraction(2, 5)))
for v, cv in sorted(ss.vectors.items()):
    print(v, cv.describe(), "->", ss.children(v))
print("essential:", sorted(ss.essential), essential_points(ss)["interval"])

###############################################################################
# Replacing the second map by the reflection ``1 - r x`` adds one vector.
sr = build_vector_graph(golden_reflected(Fraction(2, 5)))
print(len(sr.vectors), "vectors; essential:", sorted(sr.essential))

###############################################################################
# Graphviz source, essential vectors drawn double-circled.
print(to_dot(sr))
