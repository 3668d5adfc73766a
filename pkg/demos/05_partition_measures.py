"""Exact measures on voxel partitions and cube unions.

Labeled grid partitions of the unit cube make the boundary-measure
inequality checkable with zero tolerance: whenever both parts hold
volume at least alpha, the P/Q interface area is at least alpha/2^(d-1).
"""

from fractions import Fraction

import numpy as np

from delonelab import (
    Cube,
    VoxelPartition,
    boundary_bound_check,
    cube_union_surface,
    section_profile,
    shared_boundary_area,
    volume,
)

# Left/right half split of the unit square.
labels = np.zeros((4, 4), dtype=bool)
labels[:2] = True
vp = VoxelPartition(dim=2, resolution=(4, 4), labels=labels)
print(f"half split: vol(P) = {volume(vp, 'P')}, interface area = {shared_boundary_area(vp)}")

rep = boundary_bound_check(vp, Fraction(1, 4))
print(f"bound check at alpha = 1/4: lhs {rep.lhs} >= rhs {rep.rhs}: {rep.holds}")

prof = section_profile(vp, axis=0)
print(f"slab profile along axis 0: {[tuple(map(str, s)) for s in prof]}")

# A random 3D partition still satisfies the bound whenever applicable.
rng = np.random.Generator(np.random.PCG64(12345))
vp3 = VoxelPartition(
    dim=3, resolution=(5, 4, 6), labels=rng.integers(0, 2, size=(5, 4, 6)).astype(bool)
)
rep3 = boundary_bound_check(vp3, Fraction(1, 8))
print(f"random 3D: applicable {rep3.applicable}, holds {rep3.holds}, "
      f"lhs {rep3.lhs} vs rhs {rep3.rhs}")

# Surface area of cube unions: k x k blocks have perimeter 4k, and
# gluing two cubes along a facet removes twice its area.
for k in (1, 2, 4):
    cubes = [Cube((x, y), 1) for x in range(k) for y in range(k)]
    print(f"{k}x{k} block of unit squares: perimeter {cube_union_surface(cubes)}")

a, b = Cube((0, 0), 2), Cube((2, 0), 1)
print(f"edge-2 cube + unit neighbor: boundary {cube_union_surface([a, b])} "
      f"(= 8 + 4 - 2 for the shared unit facet)")
