"""Delone basics: exact packing/covering radii and verification verdicts.

Everything here is exact rational arithmetic: radii come back as squared
values so no square root is ever taken inside a comparison.
"""

import itertools
from fractions import Fraction

from delonelab import Box, DeloneWindow, covering_radius, is_delone, packing_radius

# An 8x8 patch of the integer lattice.
pts = list(itertools.product(range(8), repeat=2))
w = DeloneWindow(dim=2, points=pts, window=Box((0, 0), (8, 8)))

r_sq = packing_radius(w)
print(f"lattice packing radius squared: {r_sq}  (r = 1/2)")

# Covering radius over one unit cell: the cell center is farthest.
R_sq = covering_radius(w, Box((0, 0), (1, 1)))
print(f"covering radius squared over a unit cell: {R_sq}")

# Delone verification at r = 1/2 with the generous covering bound 4d.
rep = is_delone(w, Fraction(1, 4), 8)
print(f"is_delone(r^2=1/4, R^2=8): {rep.holds}")

# Push r past half the minimum distance and the checker produces the
# violating pair.
rep = is_delone(w, Fraction(9, 16), 8)
print(f"is_delone(r^2=9/16): {rep.holds}, violating pair {rep.violating_pair}")

# A sparse window fails covering, with an explicit uncovered witness.
sparse = DeloneWindow(dim=2, points=[(0, 0), (9, 9)], window=Box((0, 0), (10, 10)))
rep = is_delone(sparse, 1, 4)
print(f"sparse window covering: {rep.covering_ok}, witness near {rep.uncovered_witness}")
