"""Command-line surface: construct | verify | draw | bench.

Exit codes: 0 ok, 1 drawing rejected, 2 input error, 3 consistency
failure, 4 construction failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .construct import bench_constructions, construction_algorithm
from .drawings import (
    concentric_instance,
    draw_complete_bipartite,
    draw_tree,
    eliminate_all_witnesses,
    hexagonal_instance,
)
from .errors import (
    ConsistencyError,
    ConstructionFailure,
    InputFormatError,
    InvalidGeometryError,
    WggError,
)
from .graphs import (
    Instance,
    construct_k_gabriel,
    labeled_isomorphic,
    oracle_construct,
    random_instance,
)
from .svg import write_svg
from .verify import EmbeddedGraph, RejectionReport, reduce_edge_count, verify_drawing

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_CONSISTENCY = 3
EXIT_CONSTRUCTION = 4


def _tolerance_for(inst, tau_rel):
    return inst.tolerance(tau_rel=tau_rel)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=1e-9, metavar="REAL",
                        help="relative tolerance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=0, metavar="INT",
                        help="seed for any randomized step (default 0)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="wgg", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="compute a witness Gabriel graph")
    _add_common(p)
    p.add_argument("--input", required=True, help="instance JSON file")
    p.add_argument("--algorithm", choices=["brute", "halfplane", "voronoi"],
                   default="brute")
    p.add_argument("--k", type=int, default=1,
                   help="witness threshold; k > 1 needs --algorithm brute")
    p.add_argument("--out", help="graph file (stdout when omitted)")
    p.add_argument("--check", action="store_true",
                   help="also run the brute-force oracle and compare")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="decide drawing realizability")
    _add_common(p)
    p.add_argument("--vertices", required=True,
                   help="instance JSON file supplying the vertex list")
    p.add_argument("--graph", required=True, help="required edge set (graph file)")
    p.add_argument("--out", help="witness instance JSON or rejection report "
                                 "(stdout when omitted)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("draw", help="emit a certified drawing")
    _add_common(p)
    p.add_argument("kind", choices=["tree", "bipartite", "hexagonal",
                                    "concentric", "reduce"])
    p.add_argument("--input", help="tree file (kind=tree)")
    p.add_argument("--m", type=int, help="larger part size (kind=bipartite)")
    p.add_argument("--n", type=int,
                   help="smaller part size (bipartite) or point count (reduce)")
    p.add_argument("--rings", type=int, default=1, help="kind=hexagonal")
    p.add_argument("--circles", type=int, default=2, help="kind=concentric")
    p.add_argument("--ratio", type=float, default=1.87, help="kind=concentric")
    p.add_argument("--target", type=int, help="edge count to reach (kind=reduce)")
    p.add_argument("--out-instance", help="instance JSON output path")
    p.add_argument("--out-graph", help="graph file output path")
    p.add_argument("--svg", help="also render an SVG here")
    p.add_argument("--disks", action="store_true",
                   help="draw the diametral disks in the SVG")
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("bench", help="time the construction algorithms")
    p.add_argument("--config", required=True,
                   help='JSON: {"sizes": [[n, w], ...], "trials": t, "seed": s}')
    p.set_defaults(func=cmd_bench)
    return top


def cmd_construct(args) -> int:
    inst = fileio.read_instance(args.input)
    tol = _tolerance_for(inst, args.tol)
    if args.k < 1:
        raise InputFormatError(f"k must be >= 1, got {args.k}")
    if args.k > 1:
        if args.algorithm != "brute":
            raise InputFormatError("k > 1 is only supported with --algorithm brute")
        graph = construct_k_gabriel(inst, args.k, tol)
    else:
        graph = construction_algorithm(args.algorithm)(inst, tol)
    if args.check:
        reference = (
            construct_k_gabriel(inst, args.k, tol) if args.k > 1
            else oracle_construct(inst, tol)
        )
        if not labeled_isomorphic(graph, reference):
            print("consistency failure: algorithm disagrees with the oracle",
                  file=sys.stderr)
            return EXIT_CONSISTENCY
    text = fileio.graph_to_text(inst.n, graph.edges)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = fileio.read_instance(args.vertices)
    n, edges = fileio.read_graph(args.graph)
    if n != inst.n:
        raise InputFormatError(
            f"vertex count mismatch: instance has {inst.n}, graph file says {n}"
        )
    g = EmbeddedGraph(inst.vertices, edges)
    tol = g.tolerance(tau_rel=args.tol)
    result = verify_drawing(g, tol)
    if isinstance(result, RejectionReport):
        doc = {"verdict": "rejected",
               "nonedge": list(result.nonedge),
               "evidence": result.evidence}
        payload = json.dumps(doc, indent=2) + "\n"
        if args.out:
            Path(args.out).write_text(payload, encoding="utf-8", newline="\n")
        else:
            sys.stdout.write(payload)
        print(f"rejected: non-edge {result.nonedge} cannot be eliminated",
              file=sys.stderr)
        return EXIT_REJECTED
    witness_inst = Instance(g.vertices, result.witnesses, label="verified-drawing")
    payload = fileio.instance_to_json(witness_inst)
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(payload)
    print(f"accepted with {len(result.witnesses)} witnesses", file=sys.stderr)
    return EXIT_OK


def cmd_draw(args) -> int:
    kind = args.kind
    if kind == "tree":
        if not args.input:
            raise InputFormatError("draw tree needs --input TREEFILE")
        tree = fileio.read_tree(args.input)
        inst, edges = draw_tree(tree)
    elif kind == "bipartite":
        if args.m is None or args.n is None:
            raise InputFormatError("draw bipartite needs --m and --n")
        inst, edges = draw_complete_bipartite(args.m, args.n)
    elif kind == "hexagonal":
        pts, edges = hexagonal_instance(args.rings)
        inst = Instance(pts, label=f"hexagonal-rings{args.rings}")
        _hexagonal_self_check(pts, edges, args.seed)
    elif kind == "concentric":
        g = concentric_instance(args.circles, args.ratio)
        result = verify_drawing(g)
        if isinstance(result, RejectionReport):
            raise ConstructionFailure(
                f"concentric instance unexpectedly rejected at {result.nonedge}"
            )
        inst = Instance(g.vertices, result.witnesses,
                        label=f"concentric-{args.circles}x16")
        edges = g.edges
    elif kind == "reduce":
        if args.n is None or args.target is None:
            raise InputFormatError("draw reduce needs --n and --target")
        rng = np.random.default_rng(args.seed)
        pts = rng.random((args.n, 2))
        witnesses, graph = reduce_edge_count(pts, args.target)
        inst = Instance(pts, witnesses, label=f"reduce-n{args.n}-t{args.target}")
        edges = graph.edges
    else:  # pragma: no cover - argparse restricts choices
        raise InputFormatError(f"unknown draw kind {kind!r}")

    if kind not in ("hexagonal",):
        # Oracle self-check before anything is written.
        got = oracle_construct(inst, inst.tolerance(tau_rel=args.tol))
        if got.edges != edges:
            raise ConstructionFailure(
                f"self-check failed for {kind}: oracle graph differs"
            )

    out_instance = args.out_instance or f"{kind}.instance.json"
    out_graph = args.out_graph or f"{kind}.graph.txt"
    fileio.write_instance(out_instance, inst)
    fileio.write_graph(out_graph, inst.n, edges)
    if args.svg:
        write_svg(args.svg, inst.vertices, inst.witnesses, edges,
                  show_disks=args.disks)
    print(f"wrote {out_instance} and {out_graph}"
          + (f" and {args.svg}" if args.svg else ""), file=sys.stderr)
    return EXIT_OK


def _hexagonal_self_check(pts, edges, seed, probes: int = 1000) -> None:
    """Sampled sanity check: no probe point meets more than two designated
    disks. There is no oracle round-trip for this lower-bound gadget."""
    from .geometry import DiametralDisk, Tolerance, in_blocking_region

    tol = Tolerance.for_points(pts)
    disks = [DiametralDisk(pts[i], pts[j]) for i, j in sorted(edges)]
    rng = np.random.default_rng(seed)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    samples = lo + rng.random((probes, 2)) * (hi - lo)
    for q in samples:
        hits = sum(1 for d in disks if in_blocking_region(d, q, tol))
        if hits > 2:
            raise ConstructionFailure(
                f"hexagonal self-check failed: probe {tuple(q)} sits in {hits} disks"
            )


def cmd_bench(args) -> int:
    sizes, trials, seed = fileio.read_bench_config(args.config)
    rows = bench_constructions(sizes, trials, seed)
    out = sys.stdout
    out.write("algorithm,n,w,trial,milliseconds,edges\n")
    for row in rows:
        out.write(
            f"{row.algorithm},{row.n},{row.w},{row.trial},"
            f"{row.milliseconds:.3f},{row.edges}\n"
        )
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidGeometryError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except ConstructionFailure as exc:
        print(f"construction failure: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except WggError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    run()
