"""Command-line interface: construction, analysis, measurement, reports.

Exit codes: 0 success / property holds, 1 property fails, 2 usage error,
3 I/O or schema error. Persisted artifacts carry exact rationals only;
stdout summaries add clearly labeled decimal approximations.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import numpy as np

from . import io as dio
from .distortion import (
    GridSpec,
    analyze_dichotomy,
    distortion,
    exceptional_image_scan,
    separation_witness,
)
from .geometry import Box, DeloneWindow, is_delone, packing_radius
from .hierarchy import (
    FamilyConfig,
    build_family_window,
    derive_params,
    realize_block,
    stack_blocks,
)
from .partitions import (
    VoxelPartition,
    boundary_bound_check,
    cube_union_surface,
    shared_boundary_area,
    volume,
)
from .rationals import (
    approx_sqrt_str,
    approx_str,
    parse_rational,
    rational_to_pair,
)
from .tilings import Cube, build_special

PASS, FAIL, USAGE, IOERR = 0, 1, 2, 3


def _rat(text):
    return parse_rational(text)


def _emit(args, obj) -> None:
    if not getattr(args, "quiet", False):
        print(json.dumps(obj, sort_keys=True))


def _rows_out(args, header, rows) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "csv":
        buf = _io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(json.dumps({"columns": header, "rows": rows}, sort_keys=True))


# ---------------------------------------------------------------------------
# generate

def cmd_generate_lattice(args) -> int:
    d, side = args.dim, args.side
    pts = [tuple(p) for p in np.ndindex(*(side,) * d)]
    w = DeloneWindow(dim=d, points=pts, window=Box((0,) * d, (side,) * d))
    if args.out:
        dio.write_window(args.out, w)
    _emit(args, {
        "kind": "lattice",
        "points": len(pts),
        "packing_radius_sq": rational_to_pair(packing_radius(w)),
        "out": args.out,
    })
    return PASS


def cmd_generate_random(args) -> int:
    rng = np.random.Generator(np.random.PCG64(args.seed))
    d, side, count = args.dim, args.side, args.count
    if count > side**d:
        raise ValueError(f"cannot place {count} distinct points in a side-{side} box")
    seen = set()
    while len(seen) < count:
        cand = tuple(int(v) for v in rng.integers(0, side, size=d))
        seen.add(cand)
    pts = sorted(seen)
    w = DeloneWindow(dim=d, points=pts, window=Box((0,) * d, (side,) * d))
    if args.out:
        dio.write_window(args.out, w)
    _emit(args, {
        "kind": "random-window",
        "points": len(pts),
        "packing_radius_sq": rational_to_pair(packing_radius(w)),
        "seed": args.seed,
        "out": args.out,
    })
    return PASS


def cmd_generate_partition(args) -> int:
    res = tuple(int(g) for g in args.resolution.split(","))
    rng = np.random.Generator(np.random.PCG64(args.seed))
    labels = rng.integers(0, 2, size=res).astype(bool)
    vp = VoxelPartition(dim=len(res), resolution=res, labels=labels)
    if args.out:
        dio.write_partition(args.out, vp)
    _emit(args, {
        "kind": "partition",
        "resolution": list(res),
        "vol_p": rational_to_pair(volume(vp, "P")),
        "seed": args.seed,
        "out": args.out,
    })
    return PASS


# ---------------------------------------------------------------------------
# construct

def _params_from_args(args):
    return derive_params(
        dim=args.dim,
        lam=_rat(args.lam),
        L=_rat(args.L),
        c=_rat(args.c),
        epsilon=_rat(args.epsilon),
        k=_rat(args.k),
        M_min=args.M_min,
        N_min=args.N,
        H_min=args.H_min,
    )


def _block_summary(blk):
    return {
        "box_edges": [rational_to_pair(e) for e in blk.box.edges],
        "points": len(blk.points),
        "unit_cubes": blk.unit_cubes,
        "c_cubes": blk.c_cubes,
        "exceptional": blk.exceptional_count,
        "M": blk.params.M,
        "N": blk.params.N,
        "H": blk.params.H,
        "nu0": blk.params.nu0,
    }


def cmd_construct_block(args) -> int:
    p = _params_from_args(args)
    blk = realize_block(p)
    if args.out:
        dio.write_window(args.out, blk.special.window)
    if args.out_tiling:
        dio.write_tiling(args.out_tiling, blk.tiling)
    summary = _block_summary(blk)
    summary.update({
        "kind": "block",
        "packing_radius_sq": rational_to_pair(packing_radius(blk.special.window)),
        "out": args.out,
    })
    _emit(args, summary)
    return PASS


def cmd_construct_stack(args) -> int:
    p = _params_from_args(args)
    stk = stack_blocks(p, args.j)
    w = stk.special.window
    if args.out:
        dio.write_window(args.out, w)
    if args.out_tiling:
        dio.write_tiling(args.out_tiling, stk.tiling)
    _emit(args, {
        "kind": "stack",
        "j": args.j,
        "points": len(stk.points),
        "exceptional": stk.exceptional_count,
        "packing_radius_sq": rational_to_pair(packing_radius(w)),
        "out": args.out,
    })
    return PASS


def cmd_construct_family(args) -> int:
    if args.toy:
        cfg = FamilyConfig.toy_default(dim=args.dim)
        if args.m1 or args.m2:
            cfg = FamilyConfig(
                dim=args.dim,
                m1=_rat(args.m1 or "5"),
                m2=_rat(args.m2 or "5"),
                lam_const=1,
                c_const=2,
                stack_cap=cfg.stack_cap,
                toy=True,
            )
    else:
        cfg = FamilyConfig.unscaled(dim=args.dim)
    materialize = None
    if args.fill:
        materialize = True
    elif args.no_fill:
        materialize = False
    fam = build_family_window(args.bits, cfg, materialize_fill=materialize)
    if args.out:
        dio.write_window(args.out, fam.window, family=fam)
    _emit(args, {
        "kind": "family",
        "bits": args.bits,
        "toy": args.toy,
        "materialized": fam.materialized,
        "points": len(fam.window.points),
        "blocks": [b.count for b in fam.blocks],
        "exceptional": [b.exceptional for b in fam.blocks],
        "gaps": [g.offset for g in fam.gaps],
        "out": args.out,
    })
    return PASS


# ---------------------------------------------------------------------------
# analyze

def cmd_analyze_distortion(args) -> int:
    f = dio.read_bijection(args.infile)
    rep = distortion(f)
    _emit(args, {
        "kind": "distortion",
        "lambda_sq": rational_to_pair(rep.lambda_sq),
        "lambda_approx": approx_sqrt_str(rep.lambda_sq),
        "witness_expand": list(rep.witness_expand),
        "witness_contract": list(rep.witness_contract),
    })
    return PASS


def cmd_analyze_dichotomy(args) -> int:
    f = dio.read_bijection(args.infile)
    grid = GridSpec(dim=f.dim, M=args.M, N=args.N)
    mapping = dict(zip(f.source, f.target))
    rep = analyze_dichotomy(grid, mapping, k=_rat(args.k), epsilon=_rat(args.epsilon), a=_rat(args.a))
    _emit(args, {
        "kind": "dichotomy",
        "verdict": rep.verdict,
        "case2_index": rep.case2_index,
        "aligned_counts": list(rep.aligned_counts),
        "count_threshold": rational_to_pair(rep.count_threshold),
        "case1_witness": [list(p) for p in rep.case1_witness] if rep.case1_witness else None,
    })
    return PASS if rep.verdict != "neither" else FAIL


def cmd_analyze_witness(args) -> int:
    _, meta_a = dio.read_family_meta(args.in_a)
    _, meta_b = dio.read_family_meta(args.in_b)
    rep = separation_witness(meta_a, meta_b, args.j, _rat(args.lam))
    _emit(args, {
        "kind": "witness",
        "verdict": rep.verdict,
        "gap_a": rep.gap_a,
        "gap_b": rep.gap_b,
        "ratio": rational_to_pair(rep.ratio),
        "ratio_approx": approx_str(rep.ratio),
        "threshold": rational_to_pair(rep.threshold),
        "bounds_ok": [rep.bounds_ok_a, rep.bounds_ok_b],
        "chain_ok": [rep.chain_ok_a, rep.chain_ok_b],
    })
    return PASS if rep.verdict == "separated" else FAIL


def cmd_analyze_scan(args) -> int:
    f = dio.read_bijection(args.infile)
    t = dio.read_tiling(args.tiling)
    special = build_special(t)
    count = exceptional_image_scan(f, special)
    _emit(args, {"kind": "exceptional-scan", "count": count, "targets": len(f)})
    return PASS


# ---------------------------------------------------------------------------
# measure

def cmd_measure_volume(args) -> int:
    vp = dio.read_partition(args.infile)
    _emit(args, {
        "kind": "volume",
        "vol_p": rational_to_pair(volume(vp, "P")),
        "vol_q": rational_to_pair(volume(vp, "Q")),
    })
    return PASS


def cmd_measure_boundary(args) -> int:
    vp = dio.read_partition(args.infile)
    _emit(args, {
        "kind": "boundary",
        "shared_area": rational_to_pair(shared_boundary_area(vp)),
    })
    return PASS


def cmd_measure_lemma5(args) -> int:
    vp = dio.read_partition(args.infile)
    rep = boundary_bound_check(vp, _rat(args.alpha))
    _emit(args, {
        "kind": "lemma5",
        "applicable": rep.applicable,
        "holds": rep.holds,
        "lhs": rational_to_pair(rep.lhs),
        "rhs": rational_to_pair(rep.rhs),
    })
    return PASS


def cmd_measure_surface(args) -> int:
    t = dio.read_tiling(args.infile)
    cubes = list(t.cubes)
    if args.indices != "all":
        idx = [int(i) for i in args.indices.split(",")]
        cubes = [cubes[i] for i in idx]
    area = cube_union_surface(cubes)
    _emit(args, {
        "kind": "surface",
        "cubes": len(cubes),
        "area": rational_to_pair(area),
    })
    return PASS


# ---------------------------------------------------------------------------
# verify

def cmd_verify_delone(args) -> int:
    w = dio.read_window(args.infile)
    region = None
    rep = is_delone(w, _rat(args.r_sq), _rat(args.R_sq), region)
    _emit(args, {
        "kind": "verify-delone",
        "holds": rep.holds,
        "packing_ok": rep.packing_ok,
        "covering_ok": rep.covering_ok,
        "violating_pair": (
            [[str(c) for c in p] for p in rep.violating_pair] if rep.violating_pair else None
        ),
        "uncovered_witness": (
            [str(c) for c in rep.uncovered_witness] if rep.uncovered_witness else None
        ),
    })
    return PASS if rep.holds else FAIL


def cmd_verify_lemma5(args) -> int:
    alphas = [_rat(a) for a in args.alphas.split(",")]
    if args.infile:
        vp = dio.read_partition(args.infile)
        reports = [boundary_bound_check(vp, al) for al in alphas]
        holds = all(r.holds for r in reports if r.applicable)
        applicable = sum(1 for r in reports if r.applicable)
        _emit(args, {
            "kind": "verify-lemma5",
            "instances": 1,
            "applicable": applicable,
            "holds": holds,
        })
        return PASS if holds else FAIL

    rng = np.random.Generator(np.random.PCG64(args.seed))
    dims = [int(x) for x in args.dims.split(",")]
    checked = applicable = 0
    failures = 0
    for _ in range(args.random):
        d = int(rng.choice(dims))
        res = tuple(int(g) for g in rng.integers(2, 7, size=d))
        labels = rng.integers(0, 2, size=res).astype(bool)
        vp = VoxelPartition(dim=d, resolution=res, labels=labels)
        al = alphas[int(rng.integers(0, len(alphas)))]
        rep = boundary_bound_check(vp, al)
        checked += 1
        if rep.applicable:
            applicable += 1
            if not rep.holds:
                failures += 1
    _emit(args, {
        "kind": "verify-lemma5",
        "instances": checked,
        "applicable": applicable,
        "failures": failures,
        "seed": args.seed,
    })
    return PASS if failures == 0 else FAIL


def cmd_verify_dichotomy(args) -> int:
    return cmd_analyze_dichotomy(args)


def cmd_verify_witness(args) -> int:
    return cmd_analyze_witness(args)


# ---------------------------------------------------------------------------
# report

def cmd_report_surface(args) -> int:
    rows = []
    d = args.dim
    for k in range(1, args.k_max + 1):
        cubes = [
            Cube(tuple(coords), 1)
            for coords in np.ndindex(*(k,) * d)
        ]
        area = cube_union_surface(cubes)
        count = k**d
        trend = f"{2 * d * count ** ((d - 1) / d):.6g}"
        rows.append([k, count, str(area), trend])
    _rows_out(args, ["k", "cells", "surface", "trend_2d_size"], rows)
    return PASS


def cmd_report_exceptional(args) -> int:
    p = derive_params(
        dim=args.dim, lam=_rat(args.lam), L=_rat(args.L), c=_rat(args.c),
        k=_rat(args.k), M_min=args.M_min, N_min=args.N, H_min=args.H_min,
    )
    rows = []
    for j in range(1, args.j_max + 1):
        stk = stack_blocks(p, j, with_tiling=False)
        rows.append([j, len(stk.points), stk.exceptional_count])
    _rows_out(args, ["j", "points", "exceptional"], rows)
    return PASS


def cmd_report_dichotomy(args) -> int:
    f = dio.read_bijection(args.infile)
    grid = GridSpec(dim=f.dim, M=args.M, N=args.N)
    mapping = dict(zip(f.source, f.target))
    rows = []
    for etext in args.epsilons.split(","):
        eps = _rat(etext)
        rep = analyze_dichotomy(grid, mapping, k=_rat(args.k), epsilon=eps, a=_rat(args.a))
        rows.append([etext, rep.verdict, max(rep.aligned_counts, default=0)])
    _rows_out(args, ["epsilon", "verdict", "max_aligned_count"], rows)
    return PASS


# ---------------------------------------------------------------------------
# parser

def _add_common(sp):
    sp.add_argument("--out", default=None, help="output file")
    sp.add_argument("--quiet", action="store_true", help="suppress the summary")


def _add_block_params(sp):
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--lambda", dest="lam", default="1", help="rational p/q")
    sp.add_argument("--L", default="2", help="rational p/q")
    sp.add_argument("--c", default="2", help="rational p/q > 1")
    sp.add_argument("--epsilon", default="1/8", help="rational in (0, 1/4)")
    sp.add_argument("--k", default="1", help="rational > 0")
    sp.add_argument("--M-min", dest="M_min", type=int, default=2)
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--H-min", dest="H_min", type=int, default=1)
    sp.add_argument("--out-tiling", default=None, help="also write the tiling file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="delonelab",
        description="Delone set constructions and exact analysis tools",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate basic artifacts")
    gsub = gen.add_subparsers(dest="what", required=True)
    g1 = gsub.add_parser("lattice")
    g1.add_argument("--dim", type=int, default=2)
    g1.add_argument("--side", type=int, default=8)
    _add_common(g1)
    g1.set_defaults(func=cmd_generate_lattice)
    g2 = gsub.add_parser("random")
    g2.add_argument("--dim", type=int, default=2)
    g2.add_argument("--side", type=int, default=32)
    g2.add_argument("--count", type=int, default=50)
    g2.add_argument("--seed", type=int, default=20240801)
    _add_common(g2)
    g2.set_defaults(func=cmd_generate_random)
    g3 = gsub.add_parser("partition")
    g3.add_argument("--dim", type=int, default=2)
    g3.add_argument("--resolution", default="4,4")
    g3.add_argument("--seed", type=int, default=20240801)
    _add_common(g3)
    g3.set_defaults(func=cmd_generate_partition)

    con = sub.add_parser("construct", help="block, stack and family builders")
    csub = con.add_subparsers(dest="what", required=True)
    c1 = csub.add_parser("block")
    _add_block_params(c1)
    _add_common(c1)
    c1.set_defaults(func=cmd_construct_block)
    c2 = csub.add_parser("stack")
    _add_block_params(c2)
    c2.add_argument("--j", type=int, default=2)
    _add_common(c2)
    c2.set_defaults(func=cmd_construct_stack)
    c3 = csub.add_parser("family")
    c3.add_argument("--bits", required=True)
    c3.add_argument("--dim", type=int, default=2)
    c3.add_argument("--toy", action="store_true")
    c3.add_argument("--m1", default=None, help="toy gap multiplier")
    c3.add_argument("--m2", default=None, help="toy bit-1 multiplier")
    c3.add_argument("--fill", action="store_true", help="force fill materialization")
    c3.add_argument("--no-fill", action="store_true", help="skip fill materialization")
    _add_common(c3)
    c3.set_defaults(func=cmd_construct_family)

    ana = sub.add_parser("analyze", help="distortion and dichotomy analysis")
    asub = ana.add_subparsers(dest="what", required=True)
    a1 = asub.add_parser("distortion")
    a1.add_argument("--in", dest="infile", required=True)
    _add_common(a1)
    a1.set_defaults(func=cmd_analyze_distortion)
    a2 = asub.add_parser("dichotomy")
    a2.add_argument("--in", dest="infile", required=True)
    a2.add_argument("--M", type=int, required=True)
    a2.add_argument("--N", type=int, required=True)
    a2.add_argument("--k", default="1/10")
    a2.add_argument("--epsilon", default="1/100")
    a2.add_argument("--a", default="5/6")
    _add_common(a2)
    a2.set_defaults(func=cmd_analyze_dichotomy)
    a3 = asub.add_parser("witness")
    a3.add_argument("--in-a", dest="in_a", required=True)
    a3.add_argument("--in-b", dest="in_b", required=True)
    a3.add_argument("--j", type=int, required=True)
    a3.add_argument("--lambda", dest="lam", default="1")
    _add_common(a3)
    a3.set_defaults(func=cmd_analyze_witness)
    a4 = asub.add_parser("scan")
    a4.add_argument("--in", dest="infile", required=True)
    a4.add_argument("--tiling", required=True)
    _add_common(a4)
    a4.set_defaults(func=cmd_analyze_scan)

    mea = sub.add_parser("measure", help="partition and surface measures")
    msub = mea.add_subparsers(dest="what", required=True)
    m1 = msub.add_parser("volume")
    m1.add_argument("--in", dest="infile", required=True)
    _add_common(m1)
    m1.set_defaults(func=cmd_measure_volume)
    m2 = msub.add_parser("boundary")
    m2.add_argument("--in", dest="infile", required=True)
    _add_common(m2)
    m2.set_defaults(func=cmd_measure_boundary)
    m3 = msub.add_parser("lemma5")
    m3.add_argument("--in", dest="infile", required=True)
    m3.add_argument("--alpha", default="1/4")
    _add_common(m3)
    m3.set_defaults(func=cmd_measure_lemma5)
    m4 = msub.add_parser("surface")
    m4.add_argument("--in", dest="infile", required=True)
    m4.add_argument("--indices", default="all", help="comma list or 'all'")
    _add_common(m4)
    m4.set_defaults(func=cmd_measure_surface)

    ver = sub.add_parser("verify", help="checkers with pass/fail exit codes")
    vsub = ver.add_subparsers(dest="what", required=True)
    v1 = vsub.add_parser("delone")
    v1.add_argument("--in", dest="infile", required=True)
    v1.add_argument("--r-sq", dest="r_sq", default="1/4")
    v1.add_argument("--R-sq", dest="R_sq", default="8")
    _add_common(v1)
    v1.set_defaults(func=cmd_verify_delone)
    v2 = vsub.add_parser("lemma5")
    v2.add_argument("--in", dest="infile", default=None)
    v2.add_argument("--alphas", default="1/8,1/4,3/8")
    v2.add_argument("--random", type=int, default=0)
    v2.add_argument("--dims", default="2,3")
    v2.add_argument("--seed", type=int, default=20240801)
    _add_common(v2)
    v2.set_defaults(func=cmd_verify_lemma5)
    v3 = vsub.add_parser("dichotomy")
    v3.add_argument("--in", dest="infile", required=True)
    v3.add_argument("--M", type=int, required=True)
    v3.add_argument("--N", type=int, required=True)
    v3.add_argument("--k", default="1/10")
    v3.add_argument("--epsilon", default="1/100")
    v3.add_argument("--a", default="5/6")
    _add_common(v3)
    v3.set_defaults(func=cmd_verify_dichotomy)
    v4 = vsub.add_parser("witness")
    v4.add_argument("--in-a", dest="in_a", required=True)
    v4.add_argument("--in-b", dest="in_b", required=True)
    v4.add_argument("--j", type=int, required=True)
    v4.add_argument("--lambda", dest="lam", default="1")
    _add_common(v4)
    v4.set_defaults(func=cmd_verify_witness)

    rep = sub.add_parser("report", help="plot-ready tables (json or csv)")
    rsub = rep.add_subparsers(dest="what", required=True)
    r1 = rsub.add_parser("surface")
    r1.add_argument("--k-max", dest="k_max", type=int, default=8)
    r1.add_argument("--dim", type=int, default=2)
    r1.add_argument("--format", choices=["json", "csv"], default="json")
    _add_common(r1)
    r1.set_defaults(func=cmd_report_surface)
    r2 = rsub.add_parser("exceptional")
    _add_block_params(r2)
    r2.add_argument("--j-max", dest="j_max", type=int, default=3)
    r2.add_argument("--format", choices=["json", "csv"], default="json")
    _add_common(r2)
    r2.set_defaults(func=cmd_report_exceptional)
    r3 = rsub.add_parser("dichotomy")
    r3.add_argument("--in", dest="infile", required=True)
    r3.add_argument("--M", type=int, required=True)
    r3.add_argument("--N", type=int, required=True)
    r3.add_argument("--k", default="1/10")
    r3.add_argument("--a", default="5/6")
    r3.add_argument("--epsilons", default="1/100,1/20,1/10,1/5")
    r3.add_argument("--format", choices=["json", "csv"], default="json")
    _add_common(r3)
    r3.set_defaults(func=cmd_report_dichotomy)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except dio.SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return IOERR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return IOERR
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
