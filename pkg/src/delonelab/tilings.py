"""Coordinate-cube tilings, anchor maps, special point sets, latticization.

A tiling here is an explicit finite list of axis-aligned cubes partitioning
a box exactly (half-open semantics). The anchor of a cube is its vertex of
least coordinate sum, which for an axis-aligned cube is the min corner; the
set of anchors of a tiling with edges in [1, L] is an L-special set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Dict, Literal, Optional, Sequence, Tuple

from .distortion import Bijection, DistortionReport, distortion
from .geometry import Box, DeloneWindow, Point, packing_radius
from .rationals import Rational, as_rational

__all__ = [
    "Cube",
    "CubeTiling",
    "TilingError",
    "SpecialSet",
    "LatticizeResult",
    "anchor_vertex",
    "validate_tiling",
    "build_special",
    "classify_point",
    "anchored_cube",
    "latticize",
]


@dataclass(frozen=True)
class Cube:
    """Axis-aligned cube: half-open box with one edge length per axis."""

    min_corner: Point
    edge: Rational

    def __post_init__(self):
        object.__setattr__(self, "min_corner", tuple(as_rational(c) for c in self.min_corner))
        object.__setattr__(self, "edge", as_rational(self.edge))
        if self.edge <= 0:
            raise ValueError("cube edge must be positive")

    @property
    def dim(self) -> int:
        return len(self.min_corner)

    def to_box(self) -> Box:
        return Box(self.min_corner, (self.edge,) * self.dim)

    def volume(self) -> Rational:
        return self.edge**self.dim

    def contains(self, p: Point) -> bool:
        return all(m <= x < m + self.edge for x, m in zip(p, self.min_corner))

    def translate(self, offset) -> "Cube":
        return Cube(tuple(m + o for m, o in zip(self.min_corner, offset)), self.edge)


def anchor_vertex(cube_or_box) -> Point:
    """Vertex with the least coordinate sum.

    For an axis-aligned box every coordinate of the min corner is minimal,
    so the least-sum vertex is the min corner itself.
    """
    return cube_or_box.min_corner


class TilingError(ValueError):
    """Tiling invariant violation, carrying a witness."""

    def __init__(self, message: str, overlap_pair=None, gap_witness=None):
        super().__init__(message)
        self.overlap_pair = overlap_pair
        self.gap_witness = gap_witness


@dataclass(frozen=True, eq=False)
class CubeTiling:
    """Finite cube tiling of a box region with edges in [1, L]."""

    dim: int
    region: Box
    cubes: Tuple[Cube, ...]
    L: Rational

    def __post_init__(self):
        object.__setattr__(self, "cubes", tuple(self.cubes))
        object.__setattr__(self, "L", as_rational(self.L))

    def edge_set(self):
        return sorted(set(c.edge for c in self.cubes))

    def volume_sum(self) -> Rational:
        return sum(c.volume() for c in self.cubes)


def _cubes_overlap(a: Cube, b: Cube) -> bool:
    for am, bm in zip(a.min_corner, b.min_corner):
        if am + a.edge <= bm or bm + b.edge <= am:
            return False
    return True


def _find_uncovered(region: Box, cubes: Sequence[Cube]) -> Optional[Point]:
    """Min corner of some uncovered fragment, by exact box subtraction."""
    fragments = [region]
    for c in cubes:
        cb = c.to_box()
        nxt = []
        for frag in fragments:
            if not _boxes_overlap(frag, cb):
                nxt.append(frag)
                continue
            nxt.extend(_subtract_box(frag, cb))
        fragments = nxt
        if not fragments:
            return None
    return fragments[0].min_corner if fragments else None


def _boxes_overlap(a: Box, b: Box) -> bool:
    for am, ae, bm, be in zip(a.min_corner, a.edges, b.min_corner, b.edges):
        if am + ae <= bm or bm + be <= am:
            return False
    return True


def _subtract_box(a: Box, b: Box) -> list:
    """a minus b as disjoint half-open boxes (b assumed to overlap a)."""
    out = []
    lo = list(a.min_corner)
    hi = list(a.max_corner)
    for k in range(a.dim):
        bl = max(lo[k], b.min_corner[k])
        bh = min(hi[k], b.min_corner[k] + b.edges[k])
        if lo[k] < bl:
            edges = tuple(
                (bl - lo[k]) if i == k else (hi[i] - lo[i]) for i in range(a.dim)
            )
            out.append(Box(tuple(lo), edges))
        if bh < hi[k]:
            mins = tuple(bh if i == k else lo[i] for i in range(a.dim))
            edges = tuple((hi[k] - bh) if i == k else (hi[i] - lo[i]) for i in range(a.dim))
            out.append(Box(mins, edges))
        lo[k], hi[k] = bl, bh
    return [box for box in out if all(e > 0 for e in box.edges)]


def validate_tiling(t: CubeTiling) -> None:
    """Exact tiling validation: containment, edge range, partition.

    Volume sum equal to the region volume plus pairwise disjointness of
    the half-open cubes implies the union is exactly the region (any
    leftover fragment of half-open boxes with zero volume is empty).
    Disjointness is checked pairwise through a coarse bucket grid.
    """
    if not t.cubes:
        raise TilingError("tiling has no cubes")
    for c in t.cubes:
        if c.dim != t.dim:
            raise TilingError(f"cube {c} has wrong dimension")
        if not (1 <= c.edge <= t.L):
            raise TilingError(f"cube edge {c.edge} outside [1, {t.L}]")
        if not t.region.contains_box(c.to_box()):
            raise TilingError(f"cube at {c.min_corner} leaves the region")

    anchors = set(c.min_corner for c in t.cubes)
    if len(anchors) != len(t.cubes):
        seen: dict = {}
        for c in t.cubes:
            if c.min_corner in seen:
                raise TilingError(
                    f"two cubes share the min corner {c.min_corner}",
                    overlap_pair=(seen[c.min_corner], c),
                )
            seen[c.min_corner] = c

    reach = int(ceil(max(c.edge for c in t.cubes)))
    buckets: Dict[Tuple[int, ...], list] = {}
    for c in t.cubes:
        cell = tuple(floor(x) for x in c.min_corner)
        buckets.setdefault(cell, []).append(c)
    offsets = [
        off
        for off in itertools.product(range(-reach, reach + 1), repeat=t.dim)
        if off >= (0,) * t.dim
    ]
    for cell, cubes in buckets.items():
        for off in offsets:
            other = tuple(x + o for x, o in zip(cell, off))
            pool = buckets.get(other)
            if pool is None:
                continue
            if other == cell:
                for i in range(len(cubes)):
                    for j in range(i + 1, len(cubes)):
                        if _cubes_overlap(cubes[i], cubes[j]):
                            raise TilingError(
                                "overlapping cubes", overlap_pair=(cubes[i], cubes[j])
                            )
            else:
                for a in cubes:
                    for b in pool:
                        if _cubes_overlap(a, b):
                            raise TilingError("overlapping cubes", overlap_pair=(a, b))

    vol = t.volume_sum()
    region_vol = t.region.volume()
    if vol != region_vol:
        witness = _find_uncovered(t.region, t.cubes)
        raise TilingError(
            f"cube volumes sum to {vol}, region volume is {region_vol}",
            gap_witness=witness,
        )


PointClass = Literal["standard", "exceptional"]


@dataclass(frozen=True, eq=False)
class SpecialSet:
    """Anchor set of a cube tiling, with the anchor-to-cube bijection."""

    tiling: CubeTiling
    window: DeloneWindow
    anchor_of: Dict[Point, Cube]

    @property
    def points(self) -> Tuple[Point, ...]:
        return self.window.points


def build_special(t: CubeTiling, validate: bool = True) -> SpecialSet:
    """Anchor every cube of the tiling; anchors form the special set."""
    if validate:
        validate_tiling(t)
    anchor_of = {c.min_corner: c for c in t.cubes}
    if len(anchor_of) != len(t.cubes):
        raise TilingError("anchor map is not a bijection (duplicate min corners)")
    window = DeloneWindow(
        dim=t.dim,
        points=tuple(sorted(anchor_of.keys())),
        window=t.region,
        fill="none",
    )
    return SpecialSet(tiling=t, window=window, anchor_of=anchor_of)


def classify_point(s: SpecialSet, x: Point) -> PointClass:
    """standard iff the anchored cube is a unit cube."""
    cube = s.anchor_of.get(tuple(x))
    if cube is None:
        raise KeyError(f"{x} is not a point of the special set")
    return "standard" if cube.edge == 1 else "exceptional"


def anchored_cube(s: SpecialSet, x: Point) -> Cube:
    """The cube whose anchor is x."""
    cube = s.anchor_of.get(tuple(x))
    if cube is None:
        raise KeyError(f"{x} is not a point of the special set")
    return cube


@dataclass(frozen=True)
class LatticizeResult:
    window: DeloneWindow
    pairing: Bijection
    report: Optional[DistortionReport]
    sigma: int


def _round_half_down(x: Rational) -> int:
    """Nearest integer, ties toward minus infinity: ceil(x - 1/2)."""
    return ceil(Fraction(x) - Fraction(1, 2))


def latticize(w: DeloneWindow) -> LatticizeResult:
    """Scale-and-round a Delone window onto the integer lattice.

    Uses the smallest integer sigma with sigma^2 * (min pairwise squared
    distance) > 4d, then rounds each scaled coordinate to the nearest
    integer with ties toward minus infinity. The scaled minimum distance
    exceeds 2*sqrt(d) while rounding moves each point by at most
    sqrt(d)/2, so images stay distinct. The pairing's distortion is
    computed exactly and reported.
    """
    d = w.dim
    pts = w.sorted_points()
    if len(pts) < 2:
        sigma = 1
        rounded = tuple(tuple(_round_half_down(c) for c in p) for p in pts)
    else:
        min_sq = 4 * packing_radius(w)
        sigma = 1
        while sigma * sigma * min_sq <= 4 * d:
            sigma += 1
        rounded = tuple(
            tuple(_round_half_down(sigma * c) for c in p) for p in pts
        )
    if len(set(rounded)) != len(rounded):
        raise AssertionError("latticize produced coincident images")

    if rounded:
        lo = tuple(min(p[k] for p in rounded) for k in range(d))
        hi = tuple(max(p[k] for p in rounded) for k in range(d))
        box = Box(lo, tuple(h - l + 1 for l, h in zip(lo, hi)))
    else:
        box = Box((0,) * d, (1,) * d)
    out = DeloneWindow(dim=d, points=rounded, window=box, fill="none")
    pairing = Bijection(source=pts, target=rounded)
    report = distortion(pairing) if len(pts) >= 2 else None
    return LatticizeResult(window=out, pairing=pairing, report=report, sigma=sigma)
