"""Exact rational geometry: points, boxes, windows, Delone verification.

Points are plain tuples of exact rationals (int or Fraction). All distance
work happens on squared values so that order comparisons stay in rational
arithmetic; square roots never materialize inside a predicate.

Boxes are half-open products prod_i [min_i, min_i + edge_i). Degenerate
(zero-edge) boxes are allowed here so that point-like query regions can be
expressed; tiling validation imposes strict positivity separately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Literal, Optional, Sequence, Tuple

from .rationals import Rational, as_rational, ceil_sqrt

Point = Tuple[Rational, ...]

__all__ = [
    "Point",
    "Box",
    "DeloneWindow",
    "DeloneReport",
    "CoverageUndecided",
    "point",
    "squared_distance",
    "diameter",
    "packing_radius",
    "covering_radius",
    "is_delone",
]


def point(*coords) -> Point:
    """Build a point tuple of exact rationals."""
    return tuple(as_rational(c) for c in coords)


def squared_distance(a: Point, b: Point) -> Rational:
    """Sum of squared coordinate differences; exact."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    total = 0
    for x, y in zip(a, b):
        d = x - y
        total += d * d
    return total


@dataclass(frozen=True)
class Box:
    """Half-open axis-aligned box prod_i [min_i, min_i + edge_i)."""

    min_corner: Point
    edges: Tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "min_corner", tuple(as_rational(c) for c in self.min_corner))
        object.__setattr__(self, "edges", tuple(as_rational(e) for e in self.edges))
        if len(self.min_corner) != len(self.edges):
            raise ValueError("min_corner and edges must have equal length")
        if any(e < 0 for e in self.edges):
            raise ValueError("box edges must be nonnegative")

    @property
    def dim(self) -> int:
        return len(self.min_corner)

    @property
    def max_corner(self) -> Point:
        return tuple(m + e for m, e in zip(self.min_corner, self.edges))

    def volume(self) -> Rational:
        v = 1
        for e in self.edges:
            v *= e
        return v

    def contains(self, p: Point) -> bool:
        """Half-open membership: min <= x < min + edge per axis."""
        return all(m <= x < m + e for x, m, e in zip(p, self.min_corner, self.edges))

    def contains_closure(self, p: Point) -> bool:
        return all(m <= x <= m + e for x, m, e in zip(p, self.min_corner, self.edges))

    def contains_box(self, other: "Box") -> bool:
        return all(
            m <= om and om + oe <= m + e
            for m, e, om, oe in zip(self.min_corner, self.edges, other.min_corner, other.edges)
        )

    def translate(self, offset: Sequence[Rational]) -> "Box":
        return Box(tuple(m + o for m, o in zip(self.min_corner, offset)), self.edges)

    def corners(self) -> Iterable[Point]:
        lo = self.min_corner
        hi = self.max_corner
        for bits in itertools.product((0, 1), repeat=self.dim):
            yield tuple(hi[i] if b else lo[i] for i, b in enumerate(bits))


Fill = Literal["none", "zd"]


@dataclass(frozen=True, eq=False)
class DeloneWindow:
    """Finite point set inside a bounding box, with a fill convention.

    fill="zd" means queries outside the window box resolve to integer
    lattice points; the ambient set is then (points inside the box) union
    (Z^d outside the box). fill="none" means the finite set is the whole
    story.
    """

    dim: int
    points: Tuple[Point, ...]
    window: Box
    fill: Fill = "none"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if self.window.dim != self.dim:
            raise ValueError("window dimension mismatch")
        pts = tuple(tuple(as_rational(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            if len(p) != self.dim:
                raise ValueError(f"point {p} has wrong dimension")
            if not self.window.contains(p):
                raise ValueError(f"point {p} lies outside the window box")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.points)

    def sorted_points(self) -> Tuple[Point, ...]:
        return tuple(sorted(self.points))


# ---------------------------------------------------------------------------
# spatial hash on the unit integer grid

def _cell_of(p: Point) -> Tuple[int, ...]:
    return tuple(floor(c) for c in p)


def _build_hash(points: Sequence[Point]) -> dict:
    grid: dict = {}
    for p in points:
        grid.setdefault(_cell_of(p), []).append(p)
    return grid


def _pairs_within(grid: dict, reach: int):
    """Yield unordered point pairs whose cells are within L-inf reach."""
    dim = len(next(iter(grid)))
    offsets = [
        off
        for off in itertools.product(range(-reach, reach + 1), repeat=dim)
        if off > (0,) * dim  # one direction per unordered cell pair
    ]
    for cell, pts in grid.items():
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                yield pts[i], pts[j]
        for off in offsets:
            other = tuple(c + o for c, o in zip(cell, off))
            if other in grid:
                for p in pts:
                    for q in grid[other]:
                        yield p, q


def _min_pairwise_sq(points: Sequence[Point]) -> Tuple[Rational, Tuple[Point, Point]]:
    """Exact minimum squared pairwise distance with an achieving pair.

    Uses a unit-cell hash with an expanding certified reach: once the best
    candidate m satisfies m <= reach^2, every unexplored pair is farther
    (cells differing by more than `reach` in some axis force a coordinate
    gap exceeding reach - 1 + 1 = reach... strictly more than reach when
    the cell gap is reach + 1). Falls back to the O(n^2) scan for small n.
    """
    n = len(points)
    if n < 2:
        raise ValueError("need at least two points")
    if n <= 1200:
        best = None
        best_pair = None
        for i in range(n):
            for j in range(i + 1, n):
                d = squared_distance(points[i], points[j])
                if best is None or d < best:
                    best, best_pair = d, (points[i], points[j])
        return best, best_pair

    grid = _build_hash(points)
    reach = 1
    while True:
        best = None
        best_pair = None
        for p, q in _pairs_within(grid, reach):
            d = squared_distance(p, q)
            if best is None or d < best:
                best, best_pair = d, (p, q)
        if best is not None and best <= reach * reach:
            return best, best_pair
        reach *= 2
        if reach > 4096:  # diameter-of-input bound; degenerate spreads only
            pts = sorted(points)
            best = None
            best_pair = None
            for i in range(n):
                for j in range(i + 1, n):
                    d = squared_distance(pts[i], pts[j])
                    if best is None or d < best:
                        best, best_pair = d, (pts[i], pts[j])
            return best, best_pair


def diameter(points: Sequence[Point]) -> Rational:
    """Maximum squared pairwise distance (0 for a singleton); exact.

    Brute force for small inputs; for large planar inputs the maximum is
    attained on the convex hull, so a rational monotone-chain hull cuts
    the candidate set first.
    """
    pts = list(points)
    if not pts:
        raise ValueError("diameter of an empty set")
    if len(pts) == 1:
        return 0
    if len(pts) > 3000 and len(pts[0]) == 2:
        pts = _convex_hull_2d(pts)
    best = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = squared_distance(pts[i], pts[j])
            if d > best:
                best = d
    return best


def _convex_hull_2d(points: Sequence[Point]) -> list:
    """Andrew monotone chain with exact cross products."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def packing_radius(w: DeloneWindow) -> Rational:
    """Squared packing radius r^2 where 2r is the minimum pairwise distance.

    Returned as min squared pairwise distance / 4, exactly. Open r-balls
    around the points are disjoint precisely for r up to this radius.
    """
    if len(w.points) < 2:
        raise ValueError("packing radius needs at least two points")
    min_sq, _ = _min_pairwise_sq(w.points)
    return Fraction(min_sq, 4) if isinstance(min_sq, int) else min_sq / 4


# ---------------------------------------------------------------------------
# covering radius

def _solve_linear(rows, rhs):
    """Solve a small dense rational linear system; None if singular."""
    n = len(rows)
    a = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(rows, rhs)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(row[n] for row in a)


def _min_dist_sq_to(points: Sequence[Point], x: Point) -> Rational:
    return min(squared_distance(x, p) for p in points)


_EXACT_COVER_CAPS = {1: 400, 2: 40, 3: 12}


def covering_radius(w: DeloneWindow, region: Box, method: str = "auto", grid_steps: int = 4):
    """Squared covering radius of w.points over region.

    Exact method (d <= 3, small point counts): the function
    x -> min_p |x - p|^2 is piecewise quadratic, and its maximum over the
    closed region is attained where d independent active constraints meet
    (bisector hyperplanes of point pairs and region facets). Enumerating
    all d-subsets of that hyperplane family, intersecting exactly, and
    evaluating min-distance at each candidate inside the closed region
    yields the exact maximum. The supremum over the half-open region
    equals this maximum by continuity.

    Grid method (any size): subdivide the region `grid_steps` times per
    axis; lower bound = max over cell centers of min-distance, upper
    bound = max over cells of min over points of the farthest-corner
    distance (a rigorous per-cell diameter bound). Returns the interval
    (lo_sq, hi_sq).

    Returns an exact rational for the exact method, else a 2-tuple.
    """
    if not w.points:
        raise ValueError("covering radius needs a nonempty point set")
    if not w.window.contains_box(region):
        raise ValueError("region must lie inside the window box")
    d = w.dim
    cap = _EXACT_COVER_CAPS.get(d, 0)
    if method == "auto":
        method = "exact" if len(w.points) <= cap and d <= 3 else "grid"
    if method == "exact":
        if d > 3 or len(w.points) > cap:
            raise ValueError(
                f"exact covering radius supports d <= 3 and <= {cap} points at d={d}"
            )
        return _covering_exact(w.points, region)
    if method == "grid":
        return _covering_grid(w.points, region, grid_steps)
    raise ValueError(f"unknown covering method {method!r}")


def _covering_exact(points: Sequence[Point], region: Box) -> Rational:
    d = region.dim
    pts = list(points)
    lo = region.min_corner
    hi = region.max_corner

    # Hyperplanes as (normal, offset): normal . x = offset.
    planes = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            p, q = pts[i], pts[j]
            normal = tuple(2 * (q[k] - p[k]) for k in range(d))
            offset = sum(q[k] * q[k] - p[k] * p[k] for k in range(d))
            planes.append((normal, offset))
    for k in range(d):
        e = tuple(1 if a == k else 0 for a in range(d))
        planes.append((e, lo[k]))
        planes.append((e, hi[k]))

    best = 0
    best_at = None
    seen = set()
    for combo in itertools.combinations(planes, d):
        sol = _solve_linear([c[0] for c in combo], [c[1] for c in combo])
        if sol is None:
            continue
        if not region.contains_closure(sol):
            continue
        if sol in seen:
            continue
        seen.add(sol)
        val = _min_dist_sq_to(pts, sol)
        if val > best:
            best, best_at = val, sol
    for corner in region.corners():
        val = _min_dist_sq_to(pts, corner)
        if val > best:
            best, best_at = val, corner
    del best_at
    return best


def _covering_grid(points: Sequence[Point], region: Box, steps: int):
    d = region.dim
    lo = region.min_corner
    widths = [Fraction(e, steps) if e else Fraction(0) for e in region.edges]
    lo_bound = 0
    hi_bound = 0
    ranges = [range(steps) if region.edges[k] else range(1) for k in range(d)]
    for idx in itertools.product(*ranges):
        cell_lo = tuple(lo[k] + idx[k] * widths[k] for k in range(d))
        cell_hi = tuple(cell_lo[k] + widths[k] for k in range(d))
        center = tuple((cell_lo[k] + cell_hi[k]) / 2 for k in range(d))
        lo_bound = max(lo_bound, _min_dist_sq_to(points, center))
        far = min(_max_sq_to_cell(p, cell_lo, cell_hi) for p in points)
        hi_bound = max(hi_bound, far)
    return (lo_bound, hi_bound)


def _max_sq_to_cell(p: Point, cell_lo: Point, cell_hi: Point) -> Rational:
    """Squared distance from p to the farthest point of a closed cell."""
    total = 0
    for x, a, b in zip(p, cell_lo, cell_hi):
        da = x - a
        db = b - x
        m = da if da >= db else db
        if m < 0:
            m = -m
        total += m * m
    return total


def _min_sq_to_cell(p: Point, cell_lo: Point, cell_hi: Point) -> Rational:
    total = 0
    for x, a, b in zip(p, cell_lo, cell_hi):
        if x < a:
            d = a - x
        elif x > b:
            d = x - b
        else:
            d = 0
        total += d * d
    return total


# ---------------------------------------------------------------------------
# is_delone

class CoverageUndecided(RuntimeError):
    """Raised when the certify-or-split sweep hits its depth cap."""


@dataclass(frozen=True)
class DeloneReport:
    holds: bool
    packing_ok: bool
    covering_ok: bool
    r_sq: Rational
    R_sq: Rational
    violating_pair: Optional[Tuple[Point, Point]] = None
    uncovered_witness: Optional[Point] = None


def is_delone(
    w: DeloneWindow,
    r_sq: Rational,
    R_sq: Rational,
    region: Optional[Box] = None,
) -> DeloneReport:
    """Exact Delone check at squared radii r_sq < R_sq over a region.

    Packing: minimum pairwise squared distance must be >= 4*r_sq (open
    r-balls disjoint). With fill="zd" the implicit lattice contributes
    pairs at squared distance exactly 1 and each explicit point is tested
    against nearby outside-the-box lattice points.

    Covering: every point of the region must satisfy
    min_p |x - p|^2 <= R_sq (closed R-balls cover). Verified by a
    certify-or-split sweep over closed cells: a cell is covered when a
    single candidate point reaches its farthest corner within R_sq
    (exact comparison); otherwise cell corners and center are tested as
    potential uncovered witnesses before splitting (integer-aligned while
    cells are coarser than the unit grid). Closed-cell verdicts transfer
    to the half-open region because the min-distance field is continuous
    and the region is dense in its closure.
    """
    r_sq = as_rational(r_sq)
    R_sq = as_rational(R_sq)
    if not (0 < r_sq < R_sq):
        raise ValueError("need 0 < r_sq < R_sq")
    if region is None:
        region = w.window
    if w.fill == "none" and not w.window.contains_box(region):
        raise ValueError("region must lie inside the window box when fill is none")
    if not w.points and w.fill == "none":
        raise ValueError("window has no points")

    packing_ok, violating = _packing_check(w, 4 * r_sq)
    covering_ok, witness = _covering_check(w, region, R_sq)
    return DeloneReport(
        holds=packing_ok and covering_ok,
        packing_ok=packing_ok,
        covering_ok=covering_ok,
        r_sq=r_sq,
        R_sq=R_sq,
        violating_pair=violating,
        uncovered_witness=witness,
    )


def _packing_check(w: DeloneWindow, threshold_sq: Rational):
    pts = w.points
    grid = _build_hash(pts)
    reach = ceil_sqrt(threshold_sq)
    d = w.dim
    for cell, cell_pts in grid.items():
        for i in range(len(cell_pts)):
            for j in range(i + 1, len(cell_pts)):
                if squared_distance(cell_pts[i], cell_pts[j]) < threshold_sq:
                    return False, (cell_pts[i], cell_pts[j])
        for off in itertools.product(range(-reach, reach + 1), repeat=d):
            if all(o == 0 for o in off):
                continue
            other = tuple(c + o for c, o in zip(cell, off))
            if other <= cell or other not in grid:
                continue
            for p in cell_pts:
                for q in grid[other]:
                    if squared_distance(p, q) < threshold_sq:
                        return False, (p, q)
    if w.fill == "zd":
        if threshold_sq > 1:
            # Two adjacent outside lattice points sit at squared distance 1.
            z = tuple(floor(c) - 1 for c in w.window.min_corner)
            z2 = (z[0] - 1,) + z[1:]
            return False, (z, z2)
        for p in pts:
            base = _cell_of(p)
            for off in itertools.product(range(0, 2), repeat=d):
                z = tuple(b + o for b, o in zip(base, off))
                if w.window.contains(z):
                    continue  # inside the box: not a fill point
                if squared_distance(p, z) < threshold_sq:
                    return False, (p, z)
    return True, None


def _covering_check(w: DeloneWindow, region: Box, R_sq: Rational, max_depth: int = 80):
    grid = _build_hash(w.points)
    pad_max = ceil_sqrt(R_sq) + 1
    d = w.dim

    def ring_cells(cell_lo, cell_hi, pad):
        """Integer grid cells at L-inf offset exactly `pad` around the cell."""
        lo_i = tuple(floor(c) - pad for c in cell_lo)
        hi_i = tuple(floor(c) + pad for c in cell_hi)
        inner_lo = tuple(v + 1 for v in lo_i)
        inner_hi = tuple(v - 1 for v in hi_i)
        for idx in itertools.product(*[range(lo_i[k], hi_i[k] + 1) for k in range(d)]):
            if pad > 0 and all(inner_lo[k] <= idx[k] <= inner_hi[k] for k in range(d)):
                continue
            yield idx

    def candidates_at(cell_lo, cell_hi, pad):
        out = []
        for idx in ring_cells(cell_lo, cell_hi, pad):
            if idx in grid:
                out.extend(grid[idx])
            if w.fill == "zd" and not w.window.contains(idx):
                out.append(idx)
        return out

    def cell_status(cell_lo, cell_hi):
        """(covered?, full candidate list) with early exit on cover."""
        cands = []
        for pad in range(pad_max + 1):
            new = candidates_at(cell_lo, cell_hi, pad)
            for p in new:
                if _max_sq_to_cell(p, cell_lo, cell_hi) <= R_sq:
                    return True, None
            cands.extend(new)
        return False, cands

    if all(e == 0 for e in region.edges):
        x = region.min_corner
        ok_flag, cands = cell_status(x, x)
        if ok_flag:
            return True, None
        return False, x

    stack = [(region.min_corner, region.max_corner, 0)]
    while stack:
        cell_lo, cell_hi, depth = stack.pop()
        if depth > max_depth:
            raise CoverageUndecided(
                f"coverage undecided at depth {depth} for cell {cell_lo}..{cell_hi}"
            )
        widths = [b - a for a, b in zip(cell_lo, cell_hi)]
        wide = max(range(d), key=lambda k: widths[k])
        if widths[wide] > 1:
            # Split on the integer grid while coarse, to align leaves.
            mid = floor((cell_lo[wide] + cell_hi[wide]) / 2)
            if not (cell_lo[wide] < mid < cell_hi[wide]):
                mid = (cell_lo[wide] + cell_hi[wide]) / 2
        else:
            covered, cands = cell_status(cell_lo, cell_hi)
            if covered:
                continue
            if not cands:
                return False, cell_lo  # nothing within reach of the cell
            # Probe for a definite witness before splitting further. The
            # candidate set is complete out to distance > sqrt(R_sq) from
            # the cell, so exceeding R_sq on it is exceeding it globally.
            probes = [cell_lo, cell_hi, tuple((a + b) / 2 for a, b in zip(cell_lo, cell_hi))]
            for x in probes:
                if min(squared_distance(x, p) for p in cands) > R_sq:
                    return False, x
            mid = (cell_lo[wide] + cell_hi[wide]) / 2
        left_hi = tuple(mid if k == wide else cell_hi[k] for k in range(d))
        right_lo = tuple(mid if k == wide else cell_lo[k] for k in range(d))
        stack.append((cell_lo, left_hi, depth + 1))
        stack.append((right_lo, cell_hi, depth + 1))
    return True, None
