"""Exact measures on labeled voxel partitions of the unit cube, and
surface area of unions of tiling cubes.

Cell labels live in a numpy bool array (True = P); every reported measure
is an exact rational derived from integer cell counts, so numpy only does
the counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .rationals import Rational, as_rational
from .tilings import Cube

__all__ = [
    "VoxelPartition",
    "BoundaryBoundReport",
    "volume",
    "shared_boundary_area",
    "boundary_bound_check",
    "section_profile",
    "cube_union_surface",
    "alignment_scale",
]


@dataclass(frozen=True, eq=False)
class VoxelPartition:
    """P/Q labeling of a g1 x ... x gd grid over the unit cube.

    Cell (i1, ..., id) occupies prod_k [i_k/g_k, (i_k+1)/g_k). The labels
    array is treated as immutable.
    """

    dim: int
    resolution: Tuple[int, ...]
    labels: np.ndarray  # bool, True = P

    def __post_init__(self):
        object.__setattr__(self, "resolution", tuple(int(g) for g in self.resolution))
        if self.dim != len(self.resolution):
            raise ValueError("resolution length must equal dim")
        if any(g < 1 for g in self.resolution):
            raise ValueError("resolutions must be positive")
        arr = np.asarray(self.labels, dtype=bool)
        if arr.shape != self.resolution:
            raise ValueError(f"labels shape {arr.shape} != resolution {self.resolution}")
        object.__setattr__(self, "labels", arr)

    @classmethod
    def from_string(cls, dim: int, resolution: Sequence[int], text: str) -> "VoxelPartition":
        """Row-major 'P'/'Q' string (last axis fastest)."""
        res = tuple(int(g) for g in resolution)
        total = int(np.prod(res))
        if len(text) != total:
            raise ValueError(f"label string has {len(text)} cells, expected {total}")
        if set(text) - {"P", "Q"}:
            raise ValueError("labels must be 'P' or 'Q'")
        flat = np.frombuffer(text.encode("ascii"), dtype="S1") == b"P"
        return cls(dim=dim, resolution=res, labels=flat.reshape(res))

    def to_string(self) -> str:
        return "".join("P" if v else "Q" for v in self.labels.reshape(-1))

    def cell_volume(self) -> Fraction:
        return Fraction(1, int(np.prod(self.resolution)))

    def refine(self, factor: int = 2) -> "VoxelPartition":
        """Subdivide every cell factor x per axis, labels inherited."""
        arr = self.labels
        for axis in range(self.dim):
            arr = np.repeat(arr, factor, axis=axis)
        return VoxelPartition(
            dim=self.dim,
            resolution=tuple(g * factor for g in self.resolution),
            labels=arr,
        )


def volume(vp: VoxelPartition, label: str = "P") -> Fraction:
    """Exact d-volume of the labeled part."""
    if label not in ("P", "Q"):
        raise ValueError("label must be 'P' or 'Q'")
    count = int(np.count_nonzero(vp.labels if label == "P" else ~vp.labels))
    return count * vp.cell_volume()


def shared_boundary_area(vp: VoxelPartition) -> Fraction:
    """Exact (d-1)-volume of internal facets separating P cells from Q.

    A facet orthogonal to axis k has area prod_{j != k} 1/g_j; facets on
    the unit-cube boundary are never counted. Symmetric under swapping
    the labels.
    """
    total = Fraction(0)
    labels = vp.labels
    full = int(np.prod(vp.resolution))
    for axis in range(vp.dim):
        lo = [slice(None)] * vp.dim
        hi = [slice(None)] * vp.dim
        lo[axis] = slice(None, -1)
        hi[axis] = slice(1, None)
        diff = labels[tuple(lo)] != labels[tuple(hi)]
        count = int(np.count_nonzero(diff))
        facet_area = Fraction(vp.resolution[axis], full)
        total += count * facet_area
    return total


@dataclass(frozen=True)
class BoundaryBoundReport:
    applicable: bool
    holds: Optional[bool]
    lhs: Fraction
    rhs: Fraction
    vol_p: Fraction
    vol_q: Fraction


def boundary_bound_check(vp: VoxelPartition, alpha: Rational) -> BoundaryBoundReport:
    """Check shared_boundary_area >= alpha / 2^(d-1) when both parts
    have volume at least alpha; otherwise report not applicable.
    Exact comparison, no tolerance.
    """
    alpha = Fraction(as_rational(alpha))
    if not (0 < alpha < Fraction(1, 2)):
        raise ValueError("alpha must lie in (0, 1/2)")
    vol_p = volume(vp, "P")
    vol_q = volume(vp, "Q")
    lhs = shared_boundary_area(vp)
    rhs = alpha / 2 ** (vp.dim - 1)
    if vol_p < alpha or vol_q < alpha:
        return BoundaryBoundReport(False, None, lhs, rhs, vol_p, vol_q)
    return BoundaryBoundReport(True, lhs >= rhs, lhs, rhs, vol_p, vol_q)


def section_profile(vp: VoxelPartition, axis: int) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Per-slab (d-1)-volumes of P and Q along the given axis.

    Slab i is the section profile between hyperplanes i/g and (i+1)/g;
    within a slab the section is constant, with (d-1)-volume equal to the
    cell count times the cross-sectional cell area.
    """
    if not (0 <= axis < vp.dim):
        raise ValueError(f"axis {axis} outside range for dim {vp.dim}")
    cross = Fraction(vp.resolution[axis], int(np.prod(vp.resolution)))
    out = []
    for i in range(vp.resolution[axis]):
        sl = [slice(None)] * vp.dim
        sl[axis] = i
        sheet = vp.labels[tuple(sl)]
        p_cells = int(np.count_nonzero(sheet))
        q_cells = int(sheet.size - p_cells)
        out.append((p_cells * cross, q_cells * cross))
    return tuple(out)


def cube_union_surface(cubes: Sequence[Cube]) -> Rational:
    """Exact (d-1)-volume of the boundary of a disjoint cube union.

    Facet-matching sweep: total face area of all cubes, minus twice the
    overlap area of opposing face pairs lying in the same hyperplane
    (faces may match partially when edges differ).
    """
    cubes = list(cubes)
    if not cubes:
        return 0
    d = cubes[0].dim
    total = sum(2 * d * c.edge ** (d - 1) for c in cubes)

    shared = 0
    for axis in range(d):
        pos: Dict[Rational, list] = {}
        neg: Dict[Rational, list] = {}
        for c in cubes:
            lo = c.min_corner[axis]
            hi = lo + c.edge
            rect = tuple(
                (c.min_corner[k], c.min_corner[k] + c.edge)
                for k in range(d)
                if k != axis
            )
            pos.setdefault(hi, []).append(rect)
            neg.setdefault(lo, []).append(rect)
        for coord, plus in pos.items():
            minus = neg.get(coord)
            if not minus:
                continue
            for ra in plus:
                for rb in minus:
                    area = 1
                    for (a0, a1), (b0, b1) in zip(ra, rb):
                        w = min(a1, b1) - max(a0, b0)
                        if w <= 0:
                            area = 0
                            break
                        area *= w
                    shared += area
    return total - 2 * shared


def alignment_scale(epsilon: Rational, M: int, dist_sq: Rational) -> Rational:
    """Squared alignment scale: (4 * eps * dist / M)^2 = 16 eps^2 dist^2 / M^2."""
    eps = Fraction(as_rational(epsilon))
    if eps <= 0 or M <= 0:
        raise ValueError("epsilon and M must be positive")
    dist_sq = as_rational(dist_sq)
    if dist_sq <= 0:
        raise ValueError("squared distance must be positive")
    return 16 * eps * eps * dist_sq / (M * M)
