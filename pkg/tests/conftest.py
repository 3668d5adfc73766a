from fractions import Fraction

import pytest

from delonelab.hierarchy import (
    FamilyConfig,
    build_family_window,
    derive_params,
    realize_block,
)


@pytest.fixture(scope="session")
def block_c2():
    """Minimal block: dim 2, lambda 1, k 1, c 2 (M=2, N=1, H=8)."""
    p = derive_params(dim=2, lam=1, L=2, c=2, k=1, M_min=2, N_min=1, H_min=1)
    return realize_block(p)


@pytest.fixture(scope="session")
def block_c32():
    """Block with fractional edge c = 3/2 (anchors at half-integers)."""
    p = derive_params(dim=2, lam=1, L=2, c=Fraction(3, 2), k=1, M_min=2, N_min=1, H_min=1)
    return realize_block(p)


@pytest.fixture(scope="session")
def toy_family_0():
    return build_family_window("0", FamilyConfig.toy_default())


@pytest.fixture(scope="session")
def toy_family_witness_pair():
    cfg = FamilyConfig.toy_default()
    fam_a = build_family_window("0111", cfg, materialize_fill=False)
    fam_b = build_family_window("1111", cfg, materialize_fill=False)
    return fam_a, fam_b


@pytest.fixture(scope="session")
def unscaled_family_0():
    """Literal-recursion family for bits '0' (blocks 1 and 2, ~270k points)."""
    return build_family_window("0", FamilyConfig.unscaled(), materialize_fill=False)
