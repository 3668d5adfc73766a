"""JSON schemas for point sets, tilings, partitions, and bijections.

Every rational is serialized as a reduced [numerator, denominator] pair
with a positive denominator; no floats ever enter a persisted artifact.
Serialization is canonical (sorted keys, sorted points, compact
separators, trailing newline) so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from .geometry import Box, DeloneWindow
from .hierarchy import BlockPlacement, FamilyResult, GapRecord
from .partitions import VoxelPartition
from .rationals import pair_to_rational, rational_to_pair
from .tilings import Cube, CubeTiling
from .distortion import Bijection

__all__ = [
    "SchemaError",
    "canonical_dumps",
    "window_to_obj",
    "obj_to_window",
    "write_window",
    "read_window",
    "read_family_meta",
    "tiling_to_obj",
    "obj_to_tiling",
    "write_tiling",
    "read_tiling",
    "partition_to_obj",
    "obj_to_partition",
    "write_partition",
    "read_partition",
    "bijection_to_obj",
    "obj_to_bijection",
    "write_bijection",
    "read_bijection",
]


class SchemaError(ValueError):
    """Malformed or out-of-schema artifact file."""


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _point_to_obj(p) -> list:
    return [rational_to_pair(c) for c in p]


def _obj_to_point(obj) -> tuple:
    if not isinstance(obj, list):
        raise SchemaError(f"point must be a list, got {obj!r}")
    return tuple(pair_to_rational(c) for c in obj)


def _box_to_obj(b: Box) -> dict:
    return {"min": _point_to_obj(b.min_corner), "edges": _point_to_obj(b.edges)}


def _obj_to_box(obj) -> Box:
    try:
        return Box(_obj_to_point(obj["min"]), _obj_to_point(obj["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad box object: {exc}") from exc


def _load(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# point-set windows

def window_to_obj(w: DeloneWindow, family: Optional[FamilyResult] = None) -> dict:
    obj = {
        "dim": w.dim,
        "points": [_point_to_obj(p) for p in w.sorted_points()],
        "window": _box_to_obj(w.window),
        "fill": "zd" if w.fill == "zd" else "none",
    }
    if family is not None:
        obj["family"] = _family_meta_obj(family)
    return obj


def obj_to_window(obj) -> DeloneWindow:
    try:
        dim = int(obj["dim"])
        fill = obj["fill"]
        if fill not in ("none", "zd"):
            raise SchemaError(f"fill must be 'none' or 'zd', got {fill!r}")
        points = tuple(_obj_to_point(p) for p in obj["points"])
        window = _obj_to_box(obj["window"])
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad point-set object: {exc}") from exc
    try:
        return DeloneWindow(dim=dim, points=points, window=window, fill=fill)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def write_window(path, w: DeloneWindow, family: Optional[FamilyResult] = None) -> None:
    Path(path).write_text(canonical_dumps(window_to_obj(w, family)))


def read_window(path) -> DeloneWindow:
    return obj_to_window(_load(path))


def _family_meta_obj(fam: FamilyResult) -> dict:
    return {
        "bits": fam.bits,
        "materialized": fam.materialized,
        "multipliers": [rational_to_pair(m) for m in fam.multipliers],
        "blocks": [
            {
                "j": b.j,
                "box": _box_to_obj(b.box),
                "points_lo": _point_to_obj(b.points_lo),
                "points_hi": _point_to_obj(b.points_hi),
                "count": b.count,
                "exceptional": b.exceptional,
                "stack": b.stack,
                "c": rational_to_pair(b.c),
                "lam": rational_to_pair(b.lam),
            }
            for b in fam.blocks
        ],
        "gaps": [
            {
                "j": g.j,
                "bit": g.bit,
                "offset": g.offset,
                "diam_sq_next": rational_to_pair(g.diam_sq_next),
                "r_sq": rational_to_pair(g.r_sq),
            }
            for g in fam.gaps
        ],
    }


class FamilyMeta:
    """Parsed family placement metadata, witness-check compatible."""

    def __init__(self, bits, multipliers, blocks, gaps, materialized):
        self.bits = bits
        self.multipliers = multipliers
        self.blocks = blocks
        self.gaps = gaps
        self.materialized = materialized


def read_family_meta(path) -> Tuple[DeloneWindow, FamilyMeta]:
    obj = _load(path)
    window = obj_to_window(obj)
    fam = obj.get("family")
    if fam is None:
        raise SchemaError(f"{path} carries no family metadata")
    try:
        blocks = tuple(
            BlockPlacement(
                j=int(b["j"]),
                box=_obj_to_box(b["box"]),
                points_lo=_obj_to_point(b["points_lo"]),
                points_hi=_obj_to_point(b["points_hi"]),
                count=int(b["count"]),
                exceptional=int(b["exceptional"]),
                stack=int(b["stack"]),
                c=pair_to_rational(b["c"]),
                lam=pair_to_rational(b["lam"]),
            )
            for b in fam["blocks"]
        )
        gaps = tuple(
            GapRecord(
                j=int(g["j"]),
                bit=int(g["bit"]),
                offset=int(g["offset"]),
                diam_sq_next=pair_to_rational(g["diam_sq_next"]),
                r_sq=Fraction(*g["r_sq"]),
            )
            for g in fam["gaps"]
        )
        meta = FamilyMeta(
            bits=fam["bits"],
            multipliers=tuple(pair_to_rational(m) for m in fam["multipliers"]),
            blocks=blocks,
            gaps=gaps,
            materialized=bool(fam["materialized"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad family metadata: {exc}") from exc
    return window, meta


# ---------------------------------------------------------------------------
# tilings

def tiling_to_obj(t: CubeTiling) -> dict:
    return {
        "dim": t.dim,
        "L": rational_to_pair(t.L),
        "region": _box_to_obj(t.region),
        "cubes": [
            {"min": _point_to_obj(c.min_corner), "edge": rational_to_pair(c.edge)}
            for c in sorted(t.cubes, key=lambda c: c.min_corner)
        ],
    }


def obj_to_tiling(obj) -> CubeTiling:
    try:
        dim = int(obj["dim"])
        L = pair_to_rational(obj["L"])
        region = _obj_to_box(obj["region"])
        cubes = tuple(
            Cube(_obj_to_point(c["min"]), pair_to_rational(c["edge"]))
            for c in obj["cubes"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad tiling object: {exc}") from exc
    return CubeTiling(dim=dim, region=region, cubes=cubes, L=L)


def write_tiling(path, t: CubeTiling) -> None:
    Path(path).write_text(canonical_dumps(tiling_to_obj(t)))


def read_tiling(path) -> CubeTiling:
    return obj_to_tiling(_load(path))


# ---------------------------------------------------------------------------
# voxel partitions

def partition_to_obj(vp: VoxelPartition) -> dict:
    return {
        "dim": vp.dim,
        "resolution": list(vp.resolution),
        "labels": vp.to_string(),
    }


def obj_to_partition(obj) -> VoxelPartition:
    try:
        dim = int(obj["dim"])
        resolution = [int(g) for g in obj["resolution"]]
        labels = obj["labels"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad partition object: {exc}") from exc
    try:
        return VoxelPartition.from_string(dim, resolution, labels)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def write_partition(path, vp: VoxelPartition) -> None:
    Path(path).write_text(canonical_dumps(partition_to_obj(vp)))


def read_partition(path) -> VoxelPartition:
    return obj_to_partition(_load(path))


# ---------------------------------------------------------------------------
# bijections / grid maps

def bijection_to_obj(f: Bijection) -> dict:
    return {
        "dim": f.dim,
        "pairs": [
            [_point_to_obj(s), _point_to_obj(t)] for s, t in zip(f.source, f.target)
        ],
    }


def obj_to_bijection(obj) -> Bijection:
    try:
        pairs = obj["pairs"]
        src = tuple(_obj_to_point(p[0]) for p in pairs)
        dst = tuple(_obj_to_point(p[1]) for p in pairs)
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"bad bijection object: {exc}") from exc
    try:
        return Bijection(source=src, target=dst)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def write_bijection(path, f: Bijection) -> None:
    Path(path).write_text(canonical_dumps(bijection_to_obj(f)))


def read_bijection(path) -> Bijection:
    return obj_to_bijection(_load(path))
