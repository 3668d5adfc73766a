"""Special sets from cube tilings: anchors, classification, latticization.

A tiling of a box into coordinate cubes with edges in [1, L] induces a
point set by taking each cube's min corner (the vertex of least
coordinate sum). Points anchoring unit cubes are standard, the rest
exceptional.
"""

from fractions import Fraction

from delonelab import (
    Box,
    Cube,
    CubeTiling,
    DeloneWindow,
    anchor_vertex,
    anchored_cube,
    build_special,
    classify_point,
    latticize,
    packing_radius,
)

# A tiny mixed tiling of [0,3) x [0,1) ... needs equal heights, so build
# a 2D strip from one edge-2 cube and unit cubes filling the rest of [0,4)^2.
cubes = [Cube((0, 0), 2)]
for x in range(2, 4):
    for y in range(0, 4):
        cubes.append(Cube((x, y), 1))
for x in range(0, 2):
    for y in range(2, 4):
        cubes.append(Cube((x, y), 1))
tiling = CubeTiling(dim=2, region=Box((0, 0), (4, 4)), cubes=cubes, L=2)

special = build_special(tiling)  # validates the partition exactly
print(f"tiling: {len(tiling.cubes)} cubes, edges {tiling.edge_set()}")
print(f"anchors: {len(special.points)} points, packing r^2 = {packing_radius(special.window)}")

for x in [(0, 0), (2, 0), (3, 3)]:
    cube = anchored_cube(special, x)
    kind = classify_point(special, x)
    assert anchor_vertex(cube) == x
    print(f"  point {x}: anchors edge-{cube.edge} cube -> {kind}")

# Latticization: scale until the minimum gap clears 2*sqrt(d), then round.
w = DeloneWindow(
    dim=2,
    points=[(0, 0), (Fraction(3, 2), Fraction(1, 2)), (3, 3)],
    window=Box((0, 0), (4, 4)),
)
res = latticize(w)
print(f"latticize: sigma = {res.sigma}, images {res.window.points}")
print(f"pairing distortion lambda^2 = {res.report.lambda_sq}")
