import itertools
from fractions import Fraction

import numpy as np
import pytest

import oracles
from delonelab.geometry import Box, DeloneWindow, packing_radius, squared_distance
from delonelab.tilings import (
    Cube,
    CubeTiling,
    TilingError,
    anchor_vertex,
    anchored_cube,
    build_special,
    classify_point,
    latticize,
    validate_tiling,
)


def unit_tiling(n, d=2):
    cubes = [Cube(idx, 1) for idx in itertools.product(range(n), repeat=d)]
    return CubeTiling(dim=d, region=Box((0,) * d, (n,) * d), cubes=cubes, L=2)


class TestAnchorVertex:
    def test_plain_box(self):
        assert anchor_vertex(Box((2, 5), (1, 1))) == (2, 5)

    def test_origin_cube(self):
        c = Cube((0, 0, 0), Fraction(7, 3))
        assert anchor_vertex(c) == (0, 0, 0)

    def test_against_vertex_enumeration(self, block_c32):
        # least-coordinate-sum vertex by brute force over all 2^d corners
        for cube in block_c32.tiling.cubes[::7]:
            assert anchor_vertex(cube) == oracles.min_sum_vertex(cube.to_box())


class TestValidateTiling:
    def test_unit_tiling_valid(self):
        validate_tiling(unit_tiling(3))

    def test_gap_detected_with_witness(self):
        cubes = (Cube((0, 0), 1), Cube((2, 0), 1))
        t = CubeTiling(dim=2, region=Box((0, 0), (3, 1)), cubes=cubes, L=2)
        with pytest.raises(TilingError) as err:
            validate_tiling(t)
        assert err.value.gap_witness == (1, 0)

    def test_overlap_detected_with_pair(self):
        cubes = (Cube((0, 0), 2), Cube((1, 0), 2))
        t = CubeTiling(dim=2, region=Box((0, 0), (3, 2)), cubes=cubes, L=2)
        with pytest.raises(TilingError) as err:
            validate_tiling(t)
        assert err.value.overlap_pair is not None

    def test_edge_out_of_range(self):
        cubes = (Cube((0, 0), 3),)
        t = CubeTiling(dim=2, region=Box((0, 0), (3, 3)), cubes=cubes, L=2)
        with pytest.raises(TilingError):
            validate_tiling(t)

    def test_volume_conservation(self, block_c32):
        t = block_c32.tiling
        assert t.volume_sum() == t.region.volume()


class TestBuildSpecial:
    def test_unit_tiling_anchors_are_lattice(self):
        s = build_special(unit_tiling(4))
        assert set(s.points) == set(itertools.product(range(4), repeat=2))

    def test_block_count_matches_tiling(self, block_c2):
        assert len(block_c2.points) == len(block_c2.tiling.cubes)

    def test_roundtrip_identity(self, block_c32):
        s = block_c32.special
        for x in s.points:
            assert anchor_vertex(anchored_cube(s, x)) == x

    def test_special_packing_at_least_half(self, block_c2, block_c32):
        for blk in (block_c2, block_c32):
            assert packing_radius(blk.special.window) >= Fraction(1, 4)


class TestClassify:
    def test_unit_is_standard(self):
        s = build_special(unit_tiling(2))
        assert classify_point(s, (1, 1)) == "standard"

    def test_wide_is_exceptional(self, block_c2):
        s = block_c2.special
        got = {"standard": 0, "exceptional": 0}
        for x in s.points:
            got[classify_point(s, x)] += 1
        assert got["exceptional"] == block_c2.c_cubes
        assert got["standard"] == block_c2.unit_cubes

    def test_missing_point(self):
        s = build_special(unit_tiling(2))
        with pytest.raises(KeyError):
            classify_point(s, (9, 9))

    def test_anchored_edges_in_alphabet(self, block_c32):
        s = block_c32.special
        edges = {anchored_cube(s, x).edge for x in s.points}
        assert edges == {1, Fraction(3, 2)}


class TestLatticize:
    def test_integer_window_identity(self):
        # min distance 3 > 2*sqrt(2), so sigma = 1 and rounding is identity
        pts = [(0, 0), (3, 0), (0, 3), (3, 3)]
        w = DeloneWindow(dim=2, points=pts, window=Box((0, 0), (4, 4)))
        res = latticize(w)
        assert res.sigma == 1
        assert res.pairing.source == res.pairing.target
        assert res.report.lambda_sq == 1

    def test_two_points_distance_three(self):
        w = DeloneWindow(dim=2, points=[(0, 0), (3, 0)], window=Box((0, 0), (4, 1)))
        res = latticize(w)
        assert res.sigma == 1
        assert len(set(res.window.points)) == 2

    def test_rational_points_round(self):
        pts = [(Fraction(1, 2), Fraction(1, 2)), (4, 4)]
        w = DeloneWindow(dim=2, points=pts, window=Box((0, 0), (5, 5)))
        res = latticize(w)
        # ties round toward minus infinity
        src = res.pairing.source.index((Fraction(1, 2), Fraction(1, 2)))
        assert res.pairing.target[src] == (0, 0)

    def test_random_window_injective_finite_lambda(self):
        rng = np.random.Generator(np.random.PCG64(5))
        seen = set()
        while len(seen) < 50:
            seen.add((int(rng.integers(0, 32)), int(rng.integers(0, 32))))
        pts = sorted(seen)
        w = DeloneWindow(dim=2, points=pts, window=Box((0, 0), (32, 32)))
        res = latticize(w)
        assert len(set(res.window.points)) == 50
        # certified by direct evaluation of the produced bijection
        lam_sq = res.report.lambda_sq
        assert lam_sq >= 1
        worst = max(
            max(
                Fraction(squared_distance(res.pairing.target[i], res.pairing.target[j]))
                / squared_distance(res.pairing.source[i], res.pairing.source[j])
                for j in range(i + 1, 50)
            )
            for i in range(49)
        )
        assert lam_sq >= worst

    def test_degenerate_single_point(self):
        w = DeloneWindow(dim=2, points=[(Fraction(3, 2), 0)], window=Box((0, 0), (2, 1)))
        res = latticize(w)
        assert res.sigma == 1
        assert res.window.points == ((1, 0),)
        assert res.report is None

    def test_scaled_case(self):
        # adjacent integer points force sigma = 3 in d = 2
        pts = [(0, 0), (1, 0), (7, 7)]
        w = DeloneWindow(dim=2, points=pts, window=Box((0, 0), (8, 8)))
        res = latticize(w)
        assert res.sigma == 3
        assert set(res.window.points) == {(0, 0), (3, 0), (21, 21)}
        assert res.report.lambda_sq == 9
