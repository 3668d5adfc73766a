from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from delonelab.partitions import (
    VoxelPartition,
    alignment_scale,
    boundary_bound_check,
    cube_union_surface,
    section_profile,
    shared_boundary_area,
    volume,
)
from delonelab.tilings import Cube


def half_split(d=2, g=2):
    labels = np.zeros((g,) * d, dtype=bool)
    labels[: g // 2] = True
    return VoxelPartition(dim=d, resolution=(g,) * d, labels=labels)


class TestVolume:
    def test_all_p(self):
        vp = VoxelPartition(dim=2, resolution=(3, 3), labels=np.ones((3, 3), bool))
        assert volume(vp, "P") == 1
        assert volume(vp, "Q") == 0

    def test_left_column(self):
        labels = np.zeros((2, 2), bool)
        labels[0, :] = True
        vp = VoxelPartition(dim=2, resolution=(2, 2), labels=labels)
        assert volume(vp, "P") == Fraction(1, 2)

    def test_conservation_random(self):
        rng = np.random.Generator(np.random.PCG64(1))
        labels = rng.integers(0, 2, size=(6, 6, 6)).astype(bool)
        vp = VoxelPartition(dim=3, resolution=(6, 6, 6), labels=labels)
        assert volume(vp, "P") + volume(vp, "Q") == 1


class TestSharedBoundary:
    def test_half_split(self):
        assert shared_boundary_area(half_split()) == 1

    def test_single_label(self):
        vp = VoxelPartition(dim=2, resolution=(4, 4), labels=np.ones((4, 4), bool))
        assert shared_boundary_area(vp) == 0

    def test_d3_single_cell(self):
        # one P cell in a 2x2x2 grid touches exactly 3 internal facets,
        # each of area (1/2)^2
        labels = np.zeros((2, 2, 2), bool)
        labels[0, 0, 0] = True
        vp = VoxelPartition(dim=3, resolution=(2, 2, 2), labels=labels)
        assert shared_boundary_area(vp) == 3 * Fraction(1, 4)

    def test_label_swap_symmetric(self):
        rng = np.random.Generator(np.random.PCG64(2))
        labels = rng.integers(0, 2, size=(5, 4)).astype(bool)
        vp = VoxelPartition(dim=2, resolution=(5, 4), labels=labels)
        flipped = VoxelPartition(dim=2, resolution=(5, 4), labels=~labels)
        assert shared_boundary_area(vp) == shared_boundary_area(flipped)

    def test_matches_cell_scan_oracle(self):
        rng = np.random.Generator(np.random.PCG64(3))
        for _ in range(20):
            res = tuple(int(g) for g in rng.integers(2, 6, size=3))
            labels = rng.integers(0, 2, size=res).astype(bool)
            vp = VoxelPartition(dim=3, resolution=res, labels=labels)
            assert shared_boundary_area(vp) == oracles.boundary_area_by_cells(labels, res)

    def test_refinement_invariance(self):
        rng = np.random.Generator(np.random.PCG64(4))
        labels = rng.integers(0, 2, size=(3, 5)).astype(bool)
        vp = VoxelPartition(dim=2, resolution=(3, 5), labels=labels)
        fine = vp.refine(2)
        assert shared_boundary_area(fine) == shared_boundary_area(vp)
        assert volume(fine, "P") == volume(vp, "P")


class TestBoundaryBound:
    def test_half_split_holds(self):
        rep = boundary_bound_check(half_split(), Fraction(1, 4))
        assert rep.applicable and rep.holds
        assert rep.lhs == 1
        assert rep.rhs == Fraction(1, 8)

    def test_not_applicable_gate(self):
        vp = VoxelPartition(dim=2, resolution=(4, 4), labels=np.ones((4, 4), bool))
        rep = boundary_bound_check(vp, Fraction(1, 4))
        assert not rep.applicable
        assert rep.holds is None

    def test_alpha_range(self):
        with pytest.raises(ValueError):
            boundary_bound_check(half_split(), Fraction(1, 2))

    def test_random_sweep_small(self):
        rng = np.random.Generator(np.random.PCG64(5))
        alphas = [Fraction(1, 8), Fraction(1, 4), Fraction(3, 8)]
        for _ in range(1000):
            d = int(rng.choice([2, 3]))
            res = tuple(int(g) for g in rng.integers(2, 7, size=d))
            vp = VoxelPartition(
                dim=d, resolution=res, labels=rng.integers(0, 2, size=res).astype(bool)
            )
            rep = boundary_bound_check(vp, alphas[int(rng.integers(0, 3))])
            if rep.applicable:
                assert rep.holds


class TestSectionProfile:
    def test_half_split_slices(self):
        prof = section_profile(half_split(2, 4), axis=0)
        # slabs 0,1 are all P, slabs 2,3 all Q
        assert prof[0] == (1, 0) and prof[1] == (1, 0)
        assert prof[2] == (0, 1) and prof[3] == (0, 1)

    def test_fubini(self):
        rng = np.random.Generator(np.random.PCG64(6))
        res = (4, 3, 5)
        vp = VoxelPartition(
            dim=3, resolution=res, labels=rng.integers(0, 2, size=res).astype(bool)
        )
        for axis in range(3):
            prof = section_profile(vp, axis)
            width = Fraction(1, res[axis])
            assert sum(p for p, _ in prof) * width == volume(vp, "P")
            assert sum(q for _, q in prof) * width == volume(vp, "Q")

    def test_slices_match_recount(self):
        rng = np.random.Generator(np.random.PCG64(7))
        res = (3, 4, 2)
        labels = rng.integers(0, 2, size=res).astype(bool)
        vp = VoxelPartition(dim=3, resolution=res, labels=labels)
        prof = section_profile(vp, 1)
        cross = Fraction(res[1], res[0] * res[1] * res[2])
        for i in range(res[1]):
            manual = sum(
                1 for x in range(res[0]) for z in range(res[2]) if labels[x, i, z]
            )
            assert prof[i][0] == manual * cross


class TestCubeUnionSurface:
    def test_single_unit_cube(self):
        assert cube_union_surface([Cube((0, 0), 1)]) == 4
        assert cube_union_surface([Cube((0, 0, 0), 1)]) == 6

    def test_two_adjacent_squares(self):
        assert cube_union_surface([Cube((0, 0), 1), Cube((1, 0), 1)]) == 6

    def test_block_closed_form(self):
        for k in (1, 2, 3, 5):
            cubes = [Cube((x, y), 1) for x in range(k) for y in range(k)]
            assert cube_union_surface(cubes) == 4 * k

    def test_disjoint_additivity(self):
        a = [Cube((0, 0), 1)]
        b = [Cube((5, 5), 2)]
        assert cube_union_surface(a + b) == cube_union_surface(a) + cube_union_surface(b)

    def test_merge_reduces_by_twice_facet(self):
        a = Cube((0, 0), 1)
        b = Cube((1, 0), 1)
        merged = cube_union_surface([a, b])
        assert merged == cube_union_surface([a]) + cube_union_surface([b]) - 2

    def test_partial_face_match(self):
        # edge-2 cube next to a unit cube: only 1 unit of the face matches
        a = Cube((0, 0), 2)
        b = Cube((2, 0), 1)
        assert cube_union_surface([a, b]) == 8 + 4 - 2

    def test_mixed_edges_from_block(self, block_c2):
        cubes = block_c2.tiling.cubes
        # whole block union is its bounding rectangle
        w, h = block_c2.box.edges
        assert cube_union_surface(cubes) == 2 * (w + h)


class TestAlignmentScale:
    def test_arithmetic_example(self):
        # eps 1/8, M 2, squared length 16 -> squared scale 1
        assert alignment_scale(Fraction(1, 8), 2, 16) == 1

    def test_homogeneity(self):
        base = alignment_scale(Fraction(1, 10), 3, 7)
        assert alignment_scale(Fraction(1, 10), 3, 7 * 4) == base * 4

    def test_positivity_checks(self):
        with pytest.raises(ValueError):
            alignment_scale(0, 2, 1)
        with pytest.raises(ValueError):
            alignment_scale(Fraction(1, 8), 2, 0)

    def test_matches_direct_evaluation_from_serialized_bijection(self, tmp_path, block_c2):
        # recompute from a round-tripped endpoint pair of a block map
        from delonelab import io as dio
        from delonelab.distortion import Bijection
        from delonelab.geometry import squared_distance

        pts = block_c2.points
        f = Bijection(source=(pts[0], pts[-1]), target=(pts[0], pts[-1]))
        path = tmp_path / "b.json"
        dio.write_bijection(path, f)
        back = dio.read_bijection(path)
        dist_sq = squared_distance(back.target[0], back.target[1])
        eps, M = Fraction(1, 8), 4
        direct = Fraction(16) * eps * eps * dist_sq / (M * M)
        assert alignment_scale(eps, M, dist_sq) == direct


@given(
    st.integers(2, 5),
    st.integers(2, 5),
    st.data(),
)
@settings(max_examples=60, deadline=None)
def test_boundary_bound_random_2d(g1, g2, data):
    cells = data.draw(
        st.lists(st.booleans(), min_size=g1 * g2, max_size=g1 * g2)
    )
    vp = VoxelPartition(
        dim=2,
        resolution=(g1, g2),
        labels=np.array(cells, dtype=bool).reshape(g1, g2),
    )
    rep = boundary_bound_check(vp, Fraction(1, 4))
    if rep.applicable:
        assert rep.holds
    # volumes always conserve
    assert volume(vp, "P") + volume(vp, "Q") == 1
