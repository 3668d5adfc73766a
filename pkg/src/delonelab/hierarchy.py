"""Hierarchical checkerboard block construction, j-fold stacking, and the
bit-encoded block family with spacing rules.

The construction lives on an exact rational grid. A base parallelepiped
[0,1)^{d-1} x [0,M) carries a nested system of thin columns: level nu
places, inside every level-(nu-1) column, N^{d-1} columns of cross-section
(1/M^nu)^{d-1} and full height M, at cross offsets spaced 1/(N*M^{nu-1}).
Each column is cut into a stack of cubes matching its own cross width and
checkerboard-colored from its min corner, black first; deeper levels
repaint only inside their columns. After nu0 rounds every cube of the
1/(N*M^nu0) grid is monochromatic. Scaling by a divisible H makes those
grid cubes integer-edged; black ones split into unit cubes and white ones
into cubes of edge c, which yields the block tiling and its anchor set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .geometry import Box, DeloneWindow, Point, diameter
from .rationals import Rational, as_rational, ceil_mul_sqrt
from .tilings import Cube, CubeTiling, SpecialSet, build_special

__all__ = [
    "ConstructionParams",
    "ColoredLevel",
    "ColoredHierarchy",
    "BlockResult",
    "StackResult",
    "FamilyConfig",
    "BlockPlacement",
    "GapRecord",
    "FamilyResult",
    "derive_params",
    "build_colored_hierarchy",
    "realize_block",
    "stack_blocks",
    "build_family_window",
    "family_tiling",
    "counting_inequality_report",
    "column_overlap_fraction",
]

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class ConstructionParams:
    """Validated parameter bundle for one block construction."""

    dim: int
    lam: Rational
    L: Rational
    c: Rational
    epsilon: Rational
    a: Rational
    k: Rational
    M: int
    N: int
    H: int
    nu0: int

    @property
    def c_num(self) -> int:
        return Fraction(self.c).numerator

    @property
    def c_den(self) -> int:
        return Fraction(self.c).denominator

    @property
    def finest_den(self) -> int:
        """Cells per unit length of the finest monochromatic grid."""
        return self.N * self.M**self.nu0

    @property
    def scaled_edge(self) -> int:
        """Integer edge of a finest grid cube after scaling by H."""
        return self.H // self.finest_den

    @property
    def base_box(self) -> Box:
        return Box((0,) * self.dim, (1,) * (self.dim - 1) + (self.M,))

    @property
    def block_box(self) -> Box:
        return Box((0,) * self.dim, (self.H,) * (self.dim - 1) + (self.H * self.M,))


def _nu0_for(lam: Rational, k: Rational) -> int:
    """Smallest nu with (1+k)^nu >= lam^2, plus 2; exact power comparison."""
    lam_sq = Fraction(lam) ** 2
    base = 1 + Fraction(k)
    power = Fraction(1)
    nu = 0
    while power < lam_sq:
        power *= base
        nu += 1
    return nu + 2


def _column_offsets(N: int, spacing: Fraction, dim: int) -> Iterable[Tuple[Fraction, ...]]:
    """Cross-axis offsets of the N^{d-1} columns inside one parent."""
    for js in itertools.product(range(N), repeat=dim - 1):
        yield tuple(j * spacing for j in js) + (0,)


def column_overlap_fraction(M: int, N: int, dim: int, level: int) -> Fraction:
    """vol(Q cap union of next-level columns) / vol(Q), exactly.

    Q is a sub-cube of a level-`level` colored cube obtained by splitting
    it N-fold per axis. The next-level columns run the full height of the
    parent column, enter Q at the spacing grid, and each contributes a
    single prism, so the fraction evaluates identically for every choice
    of Q; this computes it geometrically for the first such Q.
    """
    cube_edge = Fraction(1, M**level)
    sub_edge = cube_edge / N
    spacing = Fraction(1, N * M**level)
    col_w = Fraction(1, M ** (level + 1))
    q_lo = [Fraction(0)] * dim
    q_hi = [sub_edge] * dim
    total = Fraction(0)
    for off in _column_offsets(N, spacing, dim):
        vol = Fraction(1)
        for axis in range(dim):
            if axis == dim - 1:
                lo, hi = Fraction(0), Fraction(M)
            else:
                lo, hi = off[axis], off[axis] + col_w
            w = min(q_hi[axis], hi) - max(q_lo[axis], lo)
            if w <= 0:
                vol = Fraction(0)
                break
            vol *= w
        total += vol
    return total / sub_edge**dim


def derive_params(
    dim: int,
    lam: Rational = 1,
    L: Rational = 2,
    c: Rational = 2,
    epsilon: Rational = Fraction(1, 8),
    k: Rational = 1,
    M_min: int = 2,
    N_min: int = 1,
    H_min: int = 1,
    M_cap: int = 10**6,
) -> ConstructionParams:
    """Resolve the construction parameters from their constraints.

    a = (3+c)/(2+2c). nu0 is the exact power-comparison value. M is the
    smallest multiple of N at or above max(M_min, N) whose column overlap
    fraction (computed on the construction geometry) is at most 1/(c-1).
    H is the smallest multiple of N * M^nu0 * numerator(c) at or above
    H_min, which makes every finest grid cube integer-edged and divisible
    into edge-c cubes.
    """
    lam = as_rational(lam)
    L = as_rational(L)
    c = as_rational(c)
    epsilon = as_rational(epsilon)
    k = as_rational(k)
    if dim < 2:
        raise ValueError("construction requires dim >= 2")
    if not c > 1:
        raise ValueError("c must exceed 1")
    if c > L:
        raise ValueError("c must not exceed L")
    if lam < 1 or L < 1:
        raise ValueError("lambda and L must be at least 1")
    if not (0 < Fraction(epsilon) < Fraction(1, 4)):
        raise ValueError("epsilon must lie in (0, 1/4)")
    if k <= 0:
        raise ValueError("k must be positive")
    if N_min < 1 or M_min < 1 or H_min < 1:
        raise ValueError("M_min, N_min, H_min must be positive")

    a = (3 + Fraction(c)) / (2 + 2 * Fraction(c))
    nu0 = _nu0_for(lam, k)
    N = N_min
    bound = Fraction(1) / (Fraction(c) - 1)

    M = max(M_min, N)
    if M % N:
        M += N - (M % N)
    while True:
        if M > M_cap:
            raise ValueError(
                f"no M <= {M_cap} satisfies the column overlap bound {bound}"
            )
        if all(
            column_overlap_fraction(M, N, dim, lvl) <= bound for lvl in range(nu0)
        ):
            break
        M += N

    unit = N * M**nu0 * Fraction(c).numerator
    H = ((H_min + unit - 1) // unit) * unit
    return ConstructionParams(
        dim=dim, lam=lam, L=L, c=c, epsilon=epsilon, a=a, k=k, M=M, N=N, H=H, nu0=nu0
    )


# ---------------------------------------------------------------------------
# colored hierarchy

@dataclass(frozen=True)
class ColoredLevel:
    nu: int
    columns: Tuple[Box, ...]
    painted: Tuple[Tuple[Box, str], ...]


@dataclass(frozen=True, eq=False)
class ColoredHierarchy:
    params: ConstructionParams
    levels: Tuple[ColoredLevel, ...]

    def finest_shape(self) -> Tuple[int, ...]:
        p = self.params
        side = p.finest_den
        return (side,) * (p.dim - 1) + (p.M * side,)

    def finest_color(self, idx: Sequence[int]) -> str:
        return finest_color(self.params, idx)


def finest_color(p: ConstructionParams, idx: Sequence[int]) -> str:
    """Color of the finest-grid cube at integer index idx.

    Walks down the column hierarchy in units of the finest edge
    h = 1/(N*M^nu0): at level nu the columns inside the current parent
    are spaced M^{nu0-nu+1} cells apart with cross width N*M^{nu0-nu}.
    The first level the cell escapes decides its color by checkerboard
    parity (black at even index sum) of the cubes painted one level up,
    anchored at that column's own min corner.
    """
    d = p.dim
    side = p.finest_den
    r = list(idx[: d - 1])
    t = idx[d - 1]
    if any(not 0 <= v < side for v in r) or not 0 <= t < p.M * side:
        raise ValueError(f"finest index {tuple(idx)} outside the grid")
    for nu in range(1, p.nu0 + 1):
        spacing = p.M ** (p.nu0 - nu + 1)
        width = p.N * p.M ** (p.nu0 - nu)
        inside = True
        for a in range(d - 1):
            q, rem = divmod(r[a], spacing)
            if q >= p.N or rem >= width:
                inside = False
                break
        if inside:
            for a in range(d - 1):
                r[a] -= (r[a] // spacing) * spacing
            continue
        edge = p.N * p.M ** (p.nu0 - nu + 1)  # painted edge one level up
        parity = sum(v // edge for v in r) + t // edge
        return BLACK if parity % 2 == 0 else WHITE
    edge = p.N  # painted at the deepest level
    parity = sum(v // edge for v in r) + t // edge
    return BLACK if parity % 2 == 0 else WHITE


_HIERARCHY_CAP = 2 * 10**6


def build_colored_hierarchy(p: ConstructionParams) -> ColoredHierarchy:
    """Materialize the levels: columns and the cubes painted at each.

    Level 0 paints the M unit cubes of the base parallelepiped,
    alternating from black. Level nu paints, inside every level-nu
    column, the stack of M^{nu+1} cubes of edge 1/M^nu, again from black.
    Recoloring at later levels happens only inside their columns.
    """
    d = p.dim
    levels: List[ColoredLevel] = []
    base = p.base_box
    painted0 = tuple(
        (
            Box((0,) * (d - 1) + (i,), (1,) * d),
            BLACK if i % 2 == 0 else WHITE,
        )
        for i in range(p.M)
    )
    levels.append(ColoredLevel(nu=0, columns=(base,), painted=painted0))

    parents = [base]
    total = p.M
    for nu in range(1, p.nu0 + 1):
        spacing = Fraction(1, p.N * p.M ** (nu - 1))
        edge = Fraction(1, p.M**nu)
        columns: List[Box] = []
        painted: List[Tuple[Box, str]] = []
        stack_len = p.M ** (nu + 1)
        total += len(parents) * p.N ** (d - 1) * stack_len
        if total > _HIERARCHY_CAP:
            raise ValueError(
                f"hierarchy would materialize more than {_HIERARCHY_CAP} cubes; "
                "use finest_color queries instead"
            )
        for parent in parents:
            for off in _column_offsets(p.N, spacing, d):
                col_min = tuple(m + o for m, o in zip(parent.min_corner, off))
                col = Box(col_min, (edge,) * (d - 1) + (Fraction(p.M),))
                columns.append(col)
                for t in range(stack_len):
                    cube_min = col_min[: d - 1] + (col_min[d - 1] + t * edge,)
                    painted.append(
                        (Box(cube_min, (edge,) * d), BLACK if t % 2 == 0 else WHITE)
                    )
        levels.append(ColoredLevel(nu=nu, columns=tuple(columns), painted=tuple(painted)))
        parents = columns
    return ColoredHierarchy(params=p, levels=tuple(levels))


# ---------------------------------------------------------------------------
# block realization

@dataclass(frozen=True, eq=False)
class BlockResult:
    params: ConstructionParams
    box: Box
    tiling: CubeTiling
    special: SpecialSet
    finest_black: int
    finest_white: int
    unit_cubes: int
    c_cubes: int

    @property
    def exceptional_count(self) -> int:
        return self.c_cubes

    @property
    def points(self) -> Tuple[Point, ...]:
        return self.special.points


def realize_block(
    p: ConstructionParams,
    validate: bool = True,
    color_override: Optional[str] = None,
) -> BlockResult:
    """Scale the colored base by H and subdivide into the block tiling.

    Every finest grid cube maps to an integer-edge cube (edge H/(N*M^nu0),
    divisible by the numerator of c). Black images split into unit cubes,
    white images into edge-c cubes; anchors of the resulting tiling form
    the block's point set. color_override forces a single color, which is
    a degenerate test mode (all black gives the plain unit tiling).
    """
    if color_override not in (None, BLACK, WHITE):
        raise ValueError("color_override must be None, 'black' or 'white'")
    d = p.dim
    E = p.scaled_edge
    if E * p.finest_den != p.H:
        raise ValueError("H is not divisible by N * M^nu0")
    c = as_rational(p.c)
    cn, cd = p.c_num, p.c_den
    if (E * cd) % cn:
        raise ValueError("scaled cube edge is not divisible into edge-c cubes")
    c_per_axis = (E * cd) // cn

    side = p.finest_den
    shape = (side,) * (d - 1) + (p.M * side,)
    cubes: List[Cube] = []
    finest_black = finest_white = 0
    unit_offsets = list(itertools.product(range(E), repeat=d))
    c_offsets = [
        tuple(kk * c for kk in ks)
        for ks in itertools.product(range(c_per_axis), repeat=d)
    ]
    for idx in itertools.product(*[range(s) for s in shape]):
        color = color_override or finest_color(p, idx)
        corner = tuple(i * E for i in idx)
        if color == BLACK:
            finest_black += 1
            for off in unit_offsets:
                cubes.append(Cube(tuple(x + o for x, o in zip(corner, off)), 1))
        else:
            finest_white += 1
            for off in c_offsets:
                cubes.append(Cube(tuple(x + o for x, o in zip(corner, off)), c))
    cubes.sort(key=lambda cb: cb.min_corner)
    tiling = CubeTiling(dim=d, region=p.block_box, cubes=tuple(cubes), L=p.L)
    special = build_special(tiling, validate=validate)
    return BlockResult(
        params=p,
        box=p.block_box,
        tiling=tiling,
        special=special,
        finest_black=finest_black,
        finest_white=finest_white,
        unit_cubes=finest_black * E**d,
        c_cubes=finest_white * c_per_axis**d,
    )


@dataclass(frozen=True, eq=False)
class StackResult:
    params: ConstructionParams
    copies: int
    box: Box
    base: BlockResult
    points: Tuple[Point, ...]
    tiling: Optional[CubeTiling]
    special: Optional[SpecialSet]

    @property
    def exceptional_count(self) -> int:
        return self.copies * self.base.c_cubes


_FULL_VALIDATION_CAP = 20000


def stack_blocks(
    p: ConstructionParams,
    j: int,
    with_tiling: bool = True,
    validate: bool = True,
) -> StackResult:
    """j translated copies of the block along the last axis.

    The stacked box keeps the first d-1 edges and multiplies the last by
    j. Copies are congruent translates by multiples of the block height,
    so they partition the stacked box slab by slab; full pairwise tiling
    validation is rerun only below a size cap, the translation layout
    being exact by construction.
    """
    if j < 1:
        raise ValueError("stack count must be >= 1")
    base = realize_block(p, validate=validate)
    d = p.dim
    height = p.H * p.M
    box = Box((0,) * d, (p.H,) * (d - 1) + (height * j,))
    points: List[Point] = []
    for m in range(j):
        off = (0,) * (d - 1) + (m * height,)
        points.extend(tuple(x + o for x, o in zip(pt, off)) for pt in base.points)
    points_t = tuple(points)

    tiling = special = None
    if with_tiling:
        cubes: List[Cube] = []
        for m in range(j):
            off = (0,) * (d - 1) + (m * height,)
            cubes.extend(cb.translate(off) for cb in base.tiling.cubes)
        cubes.sort(key=lambda cb: cb.min_corner)
        tiling = CubeTiling(dim=d, region=box, cubes=tuple(cubes), L=p.L)
        full = validate and len(cubes) <= _FULL_VALIDATION_CAP
        special = build_special(tiling, validate=full)
    return StackResult(
        params=p,
        copies=j,
        box=box,
        base=base,
        points=points_t,
        tiling=tiling,
        special=special,
    )


def counting_inequality_report(block: BlockResult, hierarchy: Optional[ColoredHierarchy] = None):
    """Anchor-count ratios for all black/white cube pairs per level.

    For every level l <= nu0 - 1 and every (black, white) pair of cubes
    painted at that level, counts the block anchors inside the H-scaled
    cubes and reports whether black/white >= (1+c)/2. Returns a list of
    (level, black_box, white_box, black_count, white_count, ok) tuples.
    """
    p = block.params
    if hierarchy is None:
        hierarchy = build_colored_hierarchy(p)
    anchors = block.special.points
    bound = (1 + Fraction(p.c)) / 2
    out = []
    for level in hierarchy.levels[: p.nu0]:
        scaled = []
        for box, color in level.painted:
            lo = tuple(p.H * x for x in box.min_corner)
            edges = tuple(p.H * e for e in box.edges)
            scaled.append((Box(lo, edges), color))
        counts = []
        for box, color in scaled:
            n = sum(1 for a in anchors if box.contains(a))
            counts.append((box, color, n))
        blacks = [(b, n) for b, col, n in counts if col == BLACK]
        whites = [(b, n) for b, col, n in counts if col == WHITE]
        for bb, nb in blacks:
            for wb, nw in whites:
                ok = nw > 0 and Fraction(nb, nw) >= bound
                out.append((level.nu, bb, wb, nb, nw, ok))
    return out


# ---------------------------------------------------------------------------
# encoded family

@dataclass(frozen=True)
class FamilyConfig:
    """Knobs for the encoded family builder.

    The unscaled configuration follows the literal recursion: block j is
    built at lambda = j with c_j = 1 + 1/j and stacked to one more than
    the total size of all earlier blocks. The toy configuration shrinks
    the multipliers (100 -> 5 on both rules), pins lambda = 1 and c = 2,
    and caps the stack counts; every structural invariant (integer-vertex
    boxes, bit-rule gaps, increasing r_j, 2-specialness) survives at desk
    scale.
    """

    dim: int = 2
    m1: Rational = 100
    m2: Rational = 100
    lam_const: Optional[Rational] = None
    c_const: Optional[Rational] = None
    stack_cap: Optional[int] = None
    k: Rational = 1
    epsilon: Rational = Fraction(1, 8)
    M_min: int = 2
    N_min: int = 1
    H_min: int = 1
    toy: bool = False

    @classmethod
    def unscaled(cls, dim: int = 2) -> "FamilyConfig":
        return cls(dim=dim)

    @classmethod
    def toy_default(cls, dim: int = 2) -> "FamilyConfig":
        return cls(dim=dim, m1=5, m2=5, lam_const=1, c_const=2, stack_cap=1, toy=True)


@dataclass(frozen=True)
class BlockPlacement:
    j: int
    box: Box
    points_lo: Point
    points_hi: Point
    count: int
    exceptional: int
    stack: int
    c: Rational
    lam: Rational


@dataclass(frozen=True)
class GapRecord:
    j: int
    bit: int
    offset: int
    diam_sq_next: Rational
    r_sq: Fraction


@dataclass(frozen=True, eq=False)
class FamilyResult:
    window: DeloneWindow
    blocks: Tuple[BlockPlacement, ...]
    gaps: Tuple[GapRecord, ...]
    bits: str
    multipliers: Tuple[Rational, Rational]
    config: FamilyConfig
    materialized: bool
    block_cubes: Optional[Tuple[Tuple[Cube, ...], ...]]


def build_family_window(
    bits: str,
    config: Optional[FamilyConfig] = None,
    materialize_fill: Optional[bool] = None,
) -> FamilyResult:
    """Assemble the bit-encoded family window.

    Blocks 1..len(bits)+1 are built by the recursion, placed left to
    right along axis 0 at integer positions: bit 0 at position j leaves a
    gap of ceil(r_j) between block j's far face and block j+1's near
    face, bit 1 a gap of ceil(m2 * j * r_j), where r_j = m1 * j *
    diam(block j+1) and ceilings are taken by exact square-root
    bracketing. Integer lattice points inside the window box but outside
    every block box are materialized as explicit standard points when
    materialize_fill is on (default in toy mode); otherwise the window
    carries block points only and the placement metadata still supports
    the separation checks.

    The literal recursion explodes past block 2, so the unscaled
    configuration only accepts bits of length 1.
    """
    if config is None:
        config = FamilyConfig.unscaled()
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError("bits must be a nonempty string over {0, 1}")
    if materialize_fill is None:
        materialize_fill = config.toy
    j_max = len(bits)
    blocks_needed = j_max + 1
    if config.lam_const is None and blocks_needed > 2:
        raise ValueError(
            "unscaled family construction is only tractable through block 2; "
            "use a toy configuration for longer bit strings"
        )

    d = config.dim
    built: List[StackResult] = []
    sizes: List[int] = []
    for j in range(1, blocks_needed + 1):
        lam_j = config.lam_const if config.lam_const is not None else j
        c_j = (
            as_rational(config.c_const)
            if config.c_const is not None
            else 1 + Fraction(1, j)
        )
        stack_true = sum(sizes) + 1
        s_j = stack_true if config.stack_cap is None else min(stack_true, config.stack_cap)
        params = derive_params(
            dim=d,
            lam=lam_j,
            L=2,
            c=c_j,
            epsilon=config.epsilon,
            k=config.k,
            M_min=config.M_min,
            N_min=config.N_min,
            H_min=config.H_min,
        )
        blk = stack_blocks(params, s_j, with_tiling=materialize_fill)
        built.append(blk)
        sizes.append(len(blk.points))

    diam_sqs: Dict[int, Rational] = {}
    for j in range(2, blocks_needed + 1):
        diam_sqs[j] = diameter(built[j - 1].points)

    gaps: List[GapRecord] = []
    m1 = Fraction(as_rational(config.m1))
    m2 = Fraction(as_rational(config.m2))
    prev_r_sq: Optional[Fraction] = None
    for j in range(1, j_max + 1):
        bit = int(bits[j - 1])
        dsq = Fraction(diam_sqs[j + 1])
        r_sq = (m1 * j) ** 2 * dsq
        if prev_r_sq is not None and not r_sq > prev_r_sq:
            raise ValueError(f"r_j is not strictly increasing at j={j}")
        prev_r_sq = r_sq
        mult = m1 * j if bit == 0 else m1 * m2 * j * j
        offset = ceil_mul_sqrt(mult, dsq)
        gaps.append(GapRecord(j=j, bit=bit, offset=offset, diam_sq_next=dsq, r_sq=r_sq))

    placements: List[BlockPlacement] = []
    block_cubes: List[Tuple[Cube, ...]] = []
    all_points: List[Point] = []
    x = 0
    for j, blk in enumerate(built, start=1):
        if j > 1:
            x += gaps[j - 2].offset
        off = (x,) + (0,) * (d - 1)
        box = blk.box.translate(off)
        pts = [tuple(c + o for c, o in zip(pt, off)) for pt in blk.points]
        all_points.extend(pts)
        lo = tuple(min(p[k] for p in pts) for k in range(d))
        hi = tuple(max(p[k] for p in pts) for k in range(d))
        placements.append(
            BlockPlacement(
                j=j,
                box=box,
                points_lo=lo,
                points_hi=hi,
                count=len(pts),
                exceptional=blk.exceptional_count,
                stack=blk.copies,
                c=blk.params.c,
                lam=blk.params.lam,
            )
        )
        if blk.tiling is not None:
            block_cubes.append(tuple(cb.translate(off) for cb in blk.tiling.cubes))
        x += box.edges[0]

    for a, b in zip(placements, placements[1:]):
        if not b.box.min_corner[0] >= a.box.max_corner[0] + 1:
            raise ValueError("blocks overlap or touch; spacing rule violated")

    span = placements[-1].box.max_corner[0]
    window_edges = (span,) + tuple(
        max(pl.box.edges[kk] for pl in placements) for kk in range(1, d)
    )
    window_box = Box((0,) * d, window_edges)

    if materialize_fill:
        boxes = [pl.box for pl in placements]
        for z in itertools.product(*[range(int(e)) for e in window_edges]):
            if any(b.contains(z) for b in boxes):
                continue
            all_points.append(z)

    window = DeloneWindow(
        dim=d,
        points=tuple(sorted(all_points)),
        window=window_box,
        fill="zd",
    )
    return FamilyResult(
        window=window,
        blocks=tuple(placements),
        gaps=tuple(gaps),
        bits=bits,
        multipliers=(config.m1, config.m2),
        config=config,
        materialized=materialize_fill,
        block_cubes=tuple(block_cubes) if block_cubes else None,
    )


def family_tiling(result: FamilyResult) -> CubeTiling:
    """The 2-special tiling behind a materialized family window.

    Block cubes plus a unit cube at every fill lattice point partition
    the window box exactly; anchoring it reproduces the window's points.
    """
    if not result.materialized or result.block_cubes is None:
        raise ValueError("family tiling requires a fill-materialized window")
    cubes: List[Cube] = []
    for group in result.block_cubes:
        cubes.extend(group)
    block_boxes = [pl.box for pl in result.blocks]
    for pt in result.window.points:
        if any(b.contains(pt) for b in block_boxes):
            continue
        cubes.append(Cube(pt, 1))
    if len(cubes) != len(result.window.points):
        raise AssertionError("family tiling cube count does not match points")
    cubes.sort(key=lambda cb: cb.min_corner)
    return CubeTiling(
        dim=result.window.dim,
        region=result.window.window,
        cubes=tuple(cubes),
        L=2,
    )
