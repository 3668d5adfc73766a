from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from delonelab.distortion import (
    Bijection,
    BruteForceCapExceeded,
    GridSpec,
    analyze_dichotomy,
    distortion,
    exceptional_image_scan,
    min_distortion_brute_force,
    separation_witness,
)
from delonelab.hierarchy import stack_blocks


class TestDistortion:
    def test_identity(self):
        pts = [(0, 0), (2, 1), (5, 5)]
        rep = distortion(Bijection(source=pts, target=pts))
        assert rep.lambda_sq == 1

    def test_global_scaling_by_two(self):
        pts = [(0, 0), (1, 0), (0, 3)]
        doubled = [(2 * x, 2 * y) for x, y in pts]
        rep = distortion(Bijection(source=pts, target=doubled))
        assert rep.lambda_sq == 4  # lambda = 2

    def test_hand_computed_three_points(self):
        # pair ratios: (0,1) -> 4/1, (0,2) -> 9/9, (1,2) -> 1/4
        f = Bijection(source=[(0, 0), (1, 0), (3, 0)], target=[(0, 0), (2, 0), (3, 0)])
        rep = distortion(f)
        assert rep.lambda_sq == 4
        assert rep.witness_expand == (0, 1)
        assert rep.witness_contract == (1, 2)

    def test_inverse_symmetric(self):
        f = Bijection(source=[(0, 0), (1, 2), (4, 1)], target=[(0, 1), (3, 3), (5, 0)])
        assert distortion(f).lambda_sq == distortion(f.inverse()).lambda_sq

    def test_translation_and_permutation_invariance(self):
        src = [(0, 0), (1, 2), (4, 1)]
        dst = [(0, 1), (3, 3), (5, 0)]
        base = distortion(Bijection(source=src, target=dst)).lambda_sq
        moved = [(x + 7, y - 3) for x, y in dst]
        assert distortion(Bijection(source=src, target=moved)).lambda_sq == base
        swapped = [(y, x) for x, y in dst]
        assert distortion(Bijection(source=src, target=swapped)).lambda_sq == base

    def test_one_sided_scaling(self):
        src = [(0, 0), (1, 2), (4, 1)]
        dst = [(0, 1), (3, 3), (5, 0)]
        base = distortion(Bijection(source=src, target=dst)).lambda_sq
        scaled = [(3 * x, 3 * y) for x, y in dst]
        assert distortion(Bijection(source=src, target=scaled)).lambda_sq == base * 9

    def test_rejects_coincident(self):
        with pytest.raises(ValueError):
            Bijection(source=[(0, 0), (0, 0)], target=[(1, 1), (2, 2)])


class TestBruteForce:
    def test_translate_lambda_one(self):
        A = [(0, 0), (2, 0), (1, 3)]
        B = [(5, 5), (6, 8), (7, 5)]  # translate of A, shuffled
        _, rep = min_distortion_brute_force(A, B)
        assert rep.lambda_sq == 1

    def test_rational_similarity(self):
        # rotation by the 3-4-5 angle composed with scaling by 2
        A = [(0, 0), (5, 0), (0, 5), (3, 4)]
        rot = [(Fraction(3, 5) * x - Fraction(4, 5) * y, Fraction(4, 5) * x + Fraction(3, 5) * y) for x, y in A]
        B = [(2 * x, 2 * y) for x, y in rot]
        _, rep = min_distortion_brute_force(A, B)
        assert rep.lambda_sq == 4

    def test_self_is_identity(self):
        A = [(0, 0), (1, 0), (4, 2), (3, 3)]
        bij, rep = min_distortion_brute_force(A, A)
        assert rep.lambda_sq == 1
        assert bij.target == bij.source

    def test_matches_full_enumeration(self):
        rng = np.random.Generator(np.random.PCG64(3))
        for _ in range(12):
            n = int(rng.integers(3, 6))
            seen_a, seen_b = set(), set()
            while len(seen_a) < n:
                seen_a.add((int(rng.integers(0, 12)), int(rng.integers(0, 12))))
            while len(seen_b) < n:
                seen_b.add((int(rng.integers(0, 12)), int(rng.integers(0, 12))))
            A, B = sorted(seen_a), sorted(seen_b)
            _, rep = min_distortion_brute_force(A, B)
            assert rep.lambda_sq == oracles.full_permutation_min_distortion(A, B)
            # any specific pairing is a valid upper bound, never below the oracle
            identity_order = distortion(Bijection(source=A, target=B)).lambda_sq
            assert identity_order >= rep.lambda_sq

    def test_cap(self):
        A = [(i, 0) for i in range(10)]
        with pytest.raises(BruteForceCapExceeded):
            min_distortion_brute_force(A, A)


def grid_map(grid, fn):
    return {x: fn(x) for x in grid.points()}


class TestDichotomy:
    def test_identity_case2_full_counts(self):
        grid = GridSpec(dim=2, M=6, N=3)
        rep = analyze_dichotomy(
            grid, grid_map(grid, lambda x: x), k=Fraction(1, 10), epsilon=Fraction(1, 100), a=Fraction(5, 6)
        )
        assert rep.verdict == "case2"
        assert rep.case2_index == 0
        assert rep.aligned_counts == (9,) * 5  # N^d per slab boundary

    def test_homothety_case2(self):
        grid = GridSpec(dim=2, M=6, N=3)
        rep = analyze_dichotomy(
            grid,
            grid_map(grid, lambda x: (2 * x[0], 2 * x[1])),
            k=Fraction(1, 10),
            epsilon=Fraction(1, 100),
            a=Fraction(5, 6),
        )
        assert rep.verdict == "case2"
        assert all(c == 9 for c in rep.aligned_counts)

    def test_shear_case1(self):
        # slope-2 shear past x1 = 9: crossing pairs stretch by sqrt(45)/3
        # against an end-to-end speed of sqrt(648)/18
        grid = GridSpec(dim=2, M=6, N=3)

        def shear(x):
            return (x[0], x[1] + 2 * max(0, x[0] - 9))

        rep = analyze_dichotomy(
            grid, grid_map(grid, shear), k=Fraction(1, 10), epsilon=Fraction(1, 100), a=Fraction(5, 6)
        )
        assert rep.verdict == "case1"
        x, y = rep.case1_witness
        assert y[0] - x[0] == 3
        # the sheared boundary also fails the aligned-count threshold
        assert min(rep.aligned_counts) < rep.count_threshold

    def test_alignment_monotone_in_epsilon(self):
        grid = GridSpec(dim=2, M=4, N=2)

        def wobble(x):
            return (x[0], x[1] + (1 if x[0] >= 5 else 0))

        f = grid_map(grid, wobble)
        prev = None
        for eps in (Fraction(1, 100), Fraction(1, 20), Fraction(1, 10), Fraction(24, 100)):
            rep = analyze_dichotomy(grid, f, k=10, epsilon=eps, a=Fraction(5, 6))
            total = sum(rep.aligned_counts)
            if prev is not None:
                assert total >= prev
            prev = total

    def test_not_total_errors(self):
        grid = GridSpec(dim=2, M=2, N=2)
        f = grid_map(grid, lambda x: x)
        del f[(0, 0)]
        with pytest.raises(ValueError):
            analyze_dichotomy(grid, f, k=1, epsilon=Fraction(1, 8), a=Fraction(1, 2))

    def test_neither_is_reportable(self):
        # every corresponding pair picks up a vertical flip, so nothing
        # aligns at eps = 1/100, while k = 100 suppresses case 1
        grid = GridSpec(dim=2, M=3, N=2)

        def skew(x):
            return (x[0], x[1] + (x[0] // 2) % 2)

        rep = analyze_dichotomy(
            grid, grid_map(grid, skew), k=100, epsilon=Fraction(1, 100), a=Fraction(99, 100)
        )
        assert rep.verdict == "neither"
        assert all(c == 0 for c in rep.aligned_counts)


class TestSeparationWitness:
    def test_toy_pair_separated(self, toy_family_witness_pair):
        fam_a, fam_b = toy_family_witness_pair
        rep = separation_witness(fam_a, fam_b, 1, 1)
        assert rep.verdict == "separated"
        assert rep.ratio > rep.threshold > 1
        assert rep.bounds_ok_a and rep.bounds_ok_b
        assert rep.chain_ok_a and rep.chain_ok_b

    def test_identical_bits_not_separated(self, toy_family_witness_pair):
        fam_a, _ = toy_family_witness_pair
        rep = separation_witness(fam_a, fam_a, 1, 1)
        assert rep.verdict == "not_separated"
        assert rep.ratio == 1

    def test_same_bit_position_not_separated(self, toy_family_witness_pair):
        fam_a, fam_b = toy_family_witness_pair
        # position 2 carries bit 1 in both strings
        rep = separation_witness(fam_a, fam_b, 2, 1)
        assert rep.verdict == "not_separated"

    def test_metadata_tamper_detected(self, toy_family_witness_pair):
        import dataclasses

        fam_a, fam_b = toy_family_witness_pair
        bad_gaps = (dataclasses.replace(fam_a.gaps[0], offset=fam_a.gaps[0].offset + 1),) + fam_a.gaps[1:]
        bad = dataclasses.replace(fam_a, gaps=bad_gaps)
        with pytest.raises(ValueError):
            separation_witness(bad, fam_b, 1, 1)


class TestExceptionalScan:
    def test_into_pure_lattice_is_zero(self):
        import itertools

        from delonelab.tilings import Cube, CubeTiling, build_special
        from delonelab.geometry import Box

        cubes = [Cube(idx, 1) for idx in itertools.product(range(3), repeat=2)]
        s = build_special(CubeTiling(dim=2, region=Box((0, 0), (3, 3)), cubes=cubes, L=2))
        f = Bijection(source=[(10, 10), (11, 10)], target=[(0, 0), (1, 1)])
        assert exceptional_image_scan(f, s) == 0

    def test_identity_on_block_counts_wide_cubes(self, block_c2):
        s = block_c2.special
        f = Bijection(source=s.points, target=s.points)
        assert exceptional_image_scan(f, s) == block_c2.c_cubes

    def test_stacked_scales_by_j(self, block_c2):
        for j in (1, 2, 3):
            stk = stack_blocks(block_c2.params, j)
            f = Bijection(source=stk.special.points, target=stk.special.points)
            assert exceptional_image_scan(f, stk.special) == j * block_c2.c_cubes

    def test_missing_target_errors(self, block_c2):
        s = block_c2.special
        f = Bijection(source=[(0, 0), (1, 0)], target=[(0, 0), (Fraction(1, 7), 0)])
        with pytest.raises(KeyError):
            exceptional_image_scan(f, s)


@given(
    st.lists(
        st.tuples(st.integers(-20, 20), st.integers(-20, 20)),
        min_size=2,
        max_size=8,
        unique=True,
    ),
    st.permutations(range(8)),
)
@settings(max_examples=50, deadline=None)
def test_distortion_inverse_symmetry_random(src, perm):
    n = len(src)
    order = [p for p in perm if p < n]
    dst = [(y + 1, x - 2) for x, y in (src[i] for i in order)]
    if len(set(dst)) != n:
        return
    f = Bijection(source=src, target=dst)
    assert distortion(f).lambda_sq == distortion(f.inverse()).lambda_sq
    assert distortion(f).lambda_sq >= 1
