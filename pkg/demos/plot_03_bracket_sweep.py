"""
Range of local dimensions across the probability parameter
==========================================================

Bracket the least and greatest local dimension on the essential class as
``p0`` varies, for both golden systems, and compare the upper ends.
"""

from fractions import Fraction
from pathlib import Path

from finitype.cli import sweep_rows
from finitype.io import load_spec, write_sweep_csv

specs = Path(__file__).resolve().parent.parent / "specs"
grid = [Fraction(i, 40) for i in range(1, 20)]

###############################################################################
# The graph is built once per system; only the matrices are re-weighted.
ss = sweep_rows(load_spec(specs / "golden_translates_param.json"), grid, 6)
sr = sweep_rows(load_spec(specs / "golden_reflected_param.json"), grid, 6)
print(write_sweep_csv(ss))

###############################################################################
# The reflected system's largest dimension stays below the translated one's.
for a, b in zip(ss, sr):
    print(f"p0={a[0]:.3f}  translates b in [{a[3]:.4f}, {a[4]:.4f}]  reflected b in [{b[3]:.4f}, {b[4]:.4f}]")
