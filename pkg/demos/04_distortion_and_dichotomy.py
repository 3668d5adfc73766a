"""Distortion of explicit pairings and the two-case slab analysis.

The distortion of a bijection is tracked as lambda squared, an exact
rational. The desk-scale oracle minimizes it over every pairing of two
small point sets. The slab analyzer scans corresponding pairs on the
grid [0, M*N] x [0, N)^{d-1} for either a stretched pair (case 1) or a
slab boundary where most displacements align with the mean (case 2).
"""

from fractions import Fraction

from delonelab import (
    Bijection,
    GridSpec,
    analyze_dichotomy,
    distortion,
    min_distortion_brute_force,
)

f = Bijection(source=[(0, 0), (1, 0), (3, 0)], target=[(0, 0), (2, 0), (3, 0)])
rep = distortion(f)
print(f"hand pairing: lambda^2 = {rep.lambda_sq}, "
      f"expansion witness {rep.witness_expand}, contraction witness {rep.witness_contract}")

A = [(0, 0), (2, 0), (1, 3), (4, 4)]
B = [(5, 5), (6, 8), (7, 5), (9, 9)]  # translate of A, shuffled
pairing, rep = min_distortion_brute_force(A, B)
print(f"oracle on a shuffled translate: lambda^2 = {rep.lambda_sq}")

grid = GridSpec(dim=2, M=6, N=3)
k, eps, a = Fraction(1, 10), Fraction(1, 100), Fraction(5, 6)

identity = {x: x for x in grid.points()}
rep = analyze_dichotomy(grid, identity, k=k, epsilon=eps, a=a)
print(f"identity map: {rep.verdict} at slab {rep.case2_index}, counts {rep.aligned_counts}")

shear = {x: (x[0], x[1] + 2 * max(0, x[0] - 9)) for x in grid.points()}
rep = analyze_dichotomy(grid, shear, k=k, epsilon=eps, a=a)
print(f"sheared map:  {rep.verdict}, stretched pair {rep.case1_witness}")
print(f"              aligned counts dropped to {rep.aligned_counts} "
      f"(threshold {rep.count_threshold})")
