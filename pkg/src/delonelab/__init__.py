"""delonelab: exact rational tools for Delone sets and cube tilings.

Construction of special Delone sets from coordinate-cube tilings, the
hierarchical checkerboard block family with bit-encoded spacing, and
exact analysis: Delone verification, biLipschitz distortion, the
two-case grid analyzer, boundary-measure inequalities, and the
separation-witness check.
"""

from .geometry import (
    Box,
    DeloneReport,
    DeloneWindow,
    covering_radius,
    diameter,
    is_delone,
    packing_radius,
    point,
    squared_distance,
)
from .tilings import (
    Cube,
    CubeTiling,
    LatticizeResult,
    SpecialSet,
    TilingError,
    anchor_vertex,
    anchored_cube,
    build_special,
    classify_point,
    latticize,
    validate_tiling,
)
from .distortion import (
    Bijection,
    DichotomyReport,
    DistortionReport,
    GridSpec,
    WitnessReport,
    analyze_dichotomy,
    distortion,
    exceptional_image_scan,
    min_distortion_brute_force,
    separation_witness,
)
from .partitions import (
    VoxelPartition,
    alignment_scale,
    boundary_bound_check,
    cube_union_surface,
    section_profile,
    shared_boundary_area,
    volume,
)
from .hierarchy import (
    BlockResult,
    ConstructionParams,
    FamilyConfig,
    FamilyResult,
    StackResult,
    build_colored_hierarchy,
    build_family_window,
    counting_inequality_report,
    derive_params,
    family_tiling,
    realize_block,
    stack_blocks,
)

__version__ = "0.1.0"
