"""Bijection distortion, the minimal-distortion oracle, grid dichotomy
analysis, and the separation-witness check for encoded families.

Distortion is tracked as lambda squared (an exact rational); the square
root never materializes. Human-facing formatting lives in the CLI.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .geometry import Point, squared_distance
from .rationals import Rational, as_rational

__all__ = [
    "Bijection",
    "DistortionReport",
    "GridSpec",
    "DichotomyReport",
    "WitnessReport",
    "distortion",
    "min_distortion_brute_force",
    "analyze_dichotomy",
    "separation_witness",
    "exceptional_image_scan",
]


@dataclass(frozen=True)
class Bijection:
    """Explicit pairing of two equal-size point lists, by index."""

    source: Tuple[Point, ...]
    target: Tuple[Point, ...]

    def __post_init__(self):
        src = tuple(tuple(as_rational(c) for c in p) for p in self.source)
        dst = tuple(tuple(as_rational(c) for c in p) for p in self.target)
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "target", dst)
        if len(src) != len(dst):
            raise ValueError("source and target must have equal lengths")
        if len(set(src)) != len(src):
            raise ValueError("source points must be pairwise distinct")
        if len(set(dst)) != len(dst):
            raise ValueError("target points must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.source)

    @property
    def dim(self) -> int:
        return len(self.source[0]) if self.source else 0

    def inverse(self) -> "Bijection":
        return Bijection(source=self.target, target=self.source)


@dataclass(frozen=True)
class DistortionReport:
    """lambda^2 with the pairs achieving maximal expansion/contraction."""

    lambda_sq: Fraction
    witness_expand: Tuple[int, int]
    witness_contract: Tuple[int, int]


def distortion(f: Bijection) -> DistortionReport:
    """Exact distortion of an explicit bijection.

    lambda^2 is the maximum over index pairs of max(D'/D, D/D') where D
    and D' are the squared distances on the source and target sides.
    """
    n = len(f)
    if n < 2:
        raise ValueError("distortion needs at least two points")
    best_expand = None
    best_contract = None
    expand_at = contract_at = None
    for i in range(n):
        for j in range(i + 1, n):
            ds = squared_distance(f.source[i], f.source[j])
            dt = squared_distance(f.target[i], f.target[j])
            expand = Fraction(dt, ds) if isinstance(dt, int) and isinstance(ds, int) else Fraction(dt) / Fraction(ds)
            if best_expand is None or expand > best_expand:
                best_expand, expand_at = expand, (i, j)
            contract = 1 / expand
            if best_contract is None or contract > best_contract:
                best_contract, contract_at = contract, (i, j)
    return DistortionReport(
        lambda_sq=max(best_expand, best_contract),
        witness_expand=expand_at,
        witness_contract=contract_at,
    )


class BruteForceCapExceeded(ValueError):
    """Raised when the factorial search would blow up past the cap."""


def min_distortion_brute_force(
    A: Sequence[Point], B: Sequence[Point], n_cap: int = 9
) -> Tuple[Bijection, DistortionReport]:
    """Minimum-distortion pairing by exhaustive permutation search.

    Scans all |A|! pairings in lexicographic order with branch-and-bound
    pruning (a partial maximum ratio at or above the incumbent cannot
    improve, and later permutations never displace an equal-value earlier
    one). Ties therefore resolve to the lexicographically first optimal
    permutation. Exact rational comparisons throughout.
    """
    a = [tuple(as_rational(c) for c in p) for p in A]
    b = [tuple(as_rational(c) for c in p) for p in B]
    n = len(a)
    if len(b) != n:
        raise ValueError("point lists must have equal sizes")
    if n > n_cap:
        raise BruteForceCapExceeded(
            f"{n} points exceeds the brute-force cap {n_cap} ({n}! pairings)"
        )
    if n < 2:
        raise ValueError("need at least two points")
    if len(set(a)) != n or len(set(b)) != n:
        raise ValueError("point lists must be pairwise distinct")

    da = [[squared_distance(a[i], a[j]) for j in range(n)] for i in range(n)]
    db = [[squared_distance(b[i], b[j]) for j in range(n)] for i in range(n)]

    best_val: Optional[Fraction] = None
    best_perm: Optional[Tuple[int, ...]] = None
    perm = [0] * n
    used = [False] * n

    def ratio(i, j, pi, pj) -> Fraction:
        ds, dt = da[i][j], db[pi][pj]
        r = Fraction(dt, ds) if isinstance(dt, int) and isinstance(ds, int) else Fraction(dt) / Fraction(ds)
        return r if r >= 1 else 1 / r

    def rec(k: int, cur: Fraction):
        nonlocal best_val, best_perm
        if best_val is not None and cur >= best_val:
            return
        if k == n:
            best_val, best_perm = cur, tuple(perm)
            return
        for cand in range(n):
            if used[cand]:
                continue
            new = cur
            ok = True
            for i in range(k):
                r = ratio(i, k, perm[i], cand)
                if r > new:
                    new = r
                    if best_val is not None and new >= best_val:
                        ok = False
                        break
            if not ok:
                continue
            used[cand] = True
            perm[k] = cand
            rec(k + 1, new)
            used[cand] = False

    rec(0, Fraction(1))
    pairing = Bijection(source=tuple(a), target=tuple(b[i] for i in best_perm))
    return pairing, distortion(pairing)


# ---------------------------------------------------------------------------
# grid dichotomy

@dataclass(frozen=True)
class GridSpec:
    """Integer grid [0, M*N] x [0, N)^{d-1} split into M width-N slabs."""

    dim: int
    M: int
    N: int

    def __post_init__(self):
        if self.dim < 1 or self.M < 1 or self.N < 1:
            raise ValueError("dim, M, N must be positive")

    @property
    def u(self) -> Point:
        return (0,) * self.dim

    @property
    def v(self) -> Point:
        return (self.M * self.N,) + (0,) * (self.dim - 1)

    def points(self) -> Iterable[Point]:
        cross = itertools.product(range(self.N), repeat=self.dim - 1)
        for rest in cross:
            for x1 in range(self.M * self.N + 1):
                yield (x1,) + rest

    def count(self) -> int:
        return (self.M * self.N + 1) * self.N ** (self.dim - 1)

    def slab_points(self, i: int) -> Iterable[Point]:
        if not (0 <= i < self.M):
            raise ValueError(f"slab index {i} outside 0..{self.M - 1}")
        cross = itertools.product(range(self.N), repeat=self.dim - 1)
        for rest in cross:
            for x1 in range(i * self.N, (i + 1) * self.N):
                yield (x1,) + rest


@dataclass(frozen=True)
class DichotomyReport:
    """Outcome of the two-case analysis of a map on the slab grid.

    verdict is "case1" with a stretched corresponding pair, "case2" with
    the first slab boundary reaching the aligned-count threshold, or
    "neither" (legal: it signals parameter infidelity, not a geometric
    contradiction).
    """

    verdict: str
    case1_witness: Optional[Tuple[Point, Point]]
    case2_index: Optional[int]
    aligned_counts: Tuple[int, ...]
    count_threshold: Fraction
    base_speed_sq: Fraction


def analyze_dichotomy(
    grid: GridSpec,
    f: Mapping[Point, Point],
    k: Rational,
    epsilon: Rational,
    a: Rational,
) -> DichotomyReport:
    """Scan corresponding pairs (y = x + (N, 0, ..., 0)) for the two cases.

    Case 1: some pair stretches faster than (1+k) times the end-to-end
    speed |F(v)-F(u)|/|v-u|; compared as
    |F(y)-F(x)|^2 * M^2 > (1+k)^2 * |F(v)-F(u)|^2.

    Case 2: some slab boundary i has at least a*N^d corresponding pairs
    aligned with the mean displacement:
    |M*(F(y)-F(x)) - (F(v)-F(u))|^2 < eps^2 * |F(v)-F(u)|^2.
    """
    k = as_rational(k)
    epsilon = as_rational(epsilon)
    a = as_rational(a)
    if not (0 < epsilon < Fraction(1, 4)):
        raise ValueError("epsilon must lie in (0, 1/4)")
    if k <= 0:
        raise ValueError("k must be positive")

    missing = [p for p in grid.points() if p not in f]
    if missing:
        raise ValueError(f"map not total on the grid; first missing point {missing[0]}")

    M, N, d = grid.M, grid.N, grid.dim
    fu, fv = f[grid.u], f[grid.v]
    dv = tuple(b - c for b, c in zip(fv, fu))
    speed_sq = sum(x * x for x in dv)
    one_k_sq = (1 + Fraction(k)) ** 2
    eps_sq = Fraction(epsilon) ** 2

    case1_witness = None
    counts = [0] * max(M - 1, 0)
    step = (N,) + (0,) * (d - 1)
    for x in grid.points():
        y = tuple(c + s for c, s in zip(x, step))
        if y[0] > M * N:
            continue
        fx, fy = f[x], f[y]
        delta = tuple(bb - cc for bb, cc in zip(fy, fx))
        dsq = sum(t * t for t in delta)
        if case1_witness is None and dsq * M * M > one_k_sq * speed_sq:
            case1_witness = (x, y)
        i = x[0] // N
        if i <= M - 2:
            mis = tuple(M * t - v_ for t, v_ in zip(delta, dv))
            mis_sq = sum(t * t for t in mis)
            if mis_sq < eps_sq * speed_sq:
                counts[i] += 1

    threshold = Fraction(a) * N**d
    if case1_witness is not None:
        return DichotomyReport(
            verdict="case1",
            case1_witness=case1_witness,
            case2_index=None,
            aligned_counts=tuple(counts),
            count_threshold=threshold,
            base_speed_sq=Fraction(speed_sq),
        )
    for i, cnt in enumerate(counts):
        if cnt >= threshold:
            return DichotomyReport(
                verdict="case2",
                case1_witness=None,
                case2_index=i,
                aligned_counts=tuple(counts),
                count_threshold=threshold,
                base_speed_sq=Fraction(speed_sq),
            )
    return DichotomyReport(
        verdict="neither",
        case1_witness=None,
        case2_index=None,
        aligned_counts=tuple(counts),
        count_threshold=threshold,
        base_speed_sq=Fraction(speed_sq),
    )


# ---------------------------------------------------------------------------
# separation witness for encoded families

@dataclass(frozen=True)
class WitnessReport:
    verdict: str  # "separated" | "not_separated"
    gap_a: int
    gap_b: int
    ratio: Fraction
    threshold: Fraction
    lam: Fraction
    bounds_ok_a: bool
    bounds_ok_b: bool
    chain_ok_a: bool
    chain_ok_b: bool


def _gap_bounds_ok(gap: int, mult: Fraction, diam_sq) -> bool:
    """mult * diam <= gap < (mult + 2) * diam, compared on squares."""
    g = Fraction(gap)
    lower = g * g >= mult * mult * diam_sq
    upper = g * g < (mult + 2) * (mult + 2) * diam_sq
    return lower and upper


def _chain_ok(block_lo, block_hi, next_lo, next_hi, mult: Fraction, diam_sq) -> bool:
    """Point-distance chain on the serialized per-block point extents.

    Lower: the axis-1 separation of the extents exceeds mult * diam, so
    every cross-block point pair does. Upper: the farthest corner pair of
    the extents stays below (mult + 2) * diam.
    """
    sep = next_lo[0] - block_hi[0]
    if sep <= 0:
        return False
    lower = Fraction(sep) ** 2 > mult * mult * diam_sq
    max_sq = 0
    d = len(block_lo)
    for k in range(d):
        width = max(abs(next_hi[k] - block_lo[k]), abs(block_hi[k] - next_lo[k]))
        max_sq += Fraction(width) ** 2
    upper = max_sq < (mult + 2) * (mult + 2) * diam_sq
    return lower and upper


def separation_witness(fam_a, fam_b, j: int, lam: Rational) -> WitnessReport:
    """Check the gap-ratio separation between two encoded families at j.

    Expects two family build results (or parsed metadata) whose bit
    strings differ at position j. Verifies the per-bit gap bounds and the
    point-distance chain on serialized extents, then compares the gap
    ratio against the threshold: 99*j for the unscaled multipliers
    (100, 100), otherwise m1*m2*j^2 / (m1*j + 2) recomputed from the
    configured multipliers. The verdict is "separated" iff the ratio
    exceeds the threshold and the threshold exceeds lambda.
    """
    lam = Fraction(as_rational(lam))
    if fam_a.multipliers != fam_b.multipliers:
        raise ValueError("families built with different multipliers")
    m1, m2 = (Fraction(m) for m in fam_a.multipliers)
    if not (1 <= j <= len(fam_a.bits) and j <= len(fam_b.bits)):
        raise ValueError(f"position {j} outside the encoded bit strings")

    def gap_record(fam):
        rec = fam.gaps[j - 1]
        if rec.j != j:
            raise ValueError("gap records out of order")
        return rec

    ra, rb = gap_record(fam_a), gap_record(fam_b)
    if ra.diam_sq_next != rb.diam_sq_next:
        raise ValueError("families disagree on the next block diameter")
    diam_sq = Fraction(ra.diam_sq_next)

    for fam, rec in ((fam_a, ra), (fam_b, rb)):
        blk = fam.blocks[j - 1]
        nxt = fam.blocks[j]
        derived = nxt.box.min_corner[0] - blk.box.max_corner[0]
        if derived != rec.offset:
            raise ValueError(
                f"metadata inconsistent: corner-derived gap {derived} != recorded {rec.offset}"
            )

    def mult_for(bit: int) -> Fraction:
        return m1 * j if bit == 0 else m1 * m2 * j * j

    bounds_a = _gap_bounds_ok(ra.offset, mult_for(ra.bit), diam_sq)
    bounds_b = _gap_bounds_ok(rb.offset, mult_for(rb.bit), diam_sq)
    chain_a = _chain_ok(
        fam_a.blocks[j - 1].points_lo,
        fam_a.blocks[j - 1].points_hi,
        fam_a.blocks[j].points_lo,
        fam_a.blocks[j].points_hi,
        mult_for(ra.bit),
        diam_sq,
    )
    chain_b = _chain_ok(
        fam_b.blocks[j - 1].points_lo,
        fam_b.blocks[j - 1].points_hi,
        fam_b.blocks[j].points_lo,
        fam_b.blocks[j].points_hi,
        mult_for(rb.bit),
        diam_sq,
    )

    gap_lo, gap_hi = sorted((ra.offset, rb.offset))
    ratio = Fraction(gap_hi, gap_lo)
    if (m1, m2) == (Fraction(100), Fraction(100)):
        threshold = Fraction(99 * j)
    else:
        threshold = m1 * m2 * j * j / (m1 * j + 2)

    separated = (
        ra.bit != rb.bit
        and ratio > threshold
        and threshold > lam
        and bounds_a
        and bounds_b
    )
    return WitnessReport(
        verdict="separated" if separated else "not_separated",
        gap_a=ra.offset,
        gap_b=rb.offset,
        ratio=ratio,
        threshold=threshold,
        lam=lam,
        bounds_ok_a=bounds_a,
        bounds_ok_b=bounds_b,
        chain_ok_a=chain_a,
        chain_ok_b=chain_b,
    )


def exceptional_image_scan(f: Bijection, special) -> int:
    """Count bijection targets that anchor a non-unit cube of the set."""
    count = 0
    for t in f.target:
        cube = special.anchor_of.get(t)
        if cube is None:
            raise KeyError(f"target point {t} missing from the special set")
        if cube.edge != 1:
            count += 1
    return count
