"""The hierarchical checkerboard block: derivation, realization, counts.

The block is built by coloring a column hierarchy, scaling it to integer
geometry, and splitting black cubes into unit cubes and white cubes into
edge-c cubes. The payoff is a counting imbalance: inside any colored cube
of any level, black siblings carry at least (1+c)/2 times the anchors of
their white siblings, independently of the scale factor.
"""

from fractions import Fraction

from delonelab import (
    build_colored_hierarchy,
    counting_inequality_report,
    derive_params,
    realize_block,
    stack_blocks,
)

params = derive_params(dim=2, lam=1, L=2, c=2, k=1)
print(f"derived: M={params.M} N={params.N} H={params.H} nu0={params.nu0} a={params.a}")

hierarchy = build_colored_hierarchy(params)
for level in hierarchy.levels:
    colors = [color for _, color in level.painted]
    print(f"  level {level.nu}: {len(level.columns)} columns, "
          f"{len(level.painted)} painted cubes, starts {colors[0]}")

block = realize_block(params)
print(f"block: {len(block.tiling.cubes)} cubes with edges {block.tiling.edge_set()}")
print(f"       {block.unit_cubes} unit anchors (standard), {block.c_cubes} wide anchors (exceptional)")

bound = (1 + Fraction(params.c)) / 2
records = counting_inequality_report(block, hierarchy)
print(f"counting inequality, bound (1+c)/2 = {bound}:")
for level, _, _, nb, nw, ok in records:
    print(f"  level {level}: black {nb} / white {nw} = {Fraction(nb, nw)} >= {bound}: {ok}")

# Stacking multiplies the box height and every count by j.
for j in (1, 2, 3):
    stk = stack_blocks(params, j)
    print(f"stack j={j}: {len(stk.points)} points, {stk.exceptional_count} exceptional")
