"""Command-line harness.

Subcommands: play, solve, sweep, lab, verify, serve. Outputs are
reproducible: one master seed feeds named sub-streams, JSON objects are
emitted with sorted keys, and the transcript format is deterministic.
The ONLINERAMSEY_OUT_DIR environment variable sets the default output
directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import statistics
import sys
from fractions import Fraction
from pathlib import Path

from . import verify as verify_mod
from .builders import make_builder
from .engine import GameConfig, play
from .extremal import es_extract, kst_bound, verify_least_density
from .graph import BichromaticGraph, Color
from .painters import RandomPainter, make_painter
from .solver import brute_value, solve_from


def _out_dir(arg: str | None) -> Path:
    path = Path(arg or os.environ.get("ONLINERAMSEY_OUT_DIR") or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _emit_json(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _sub_seed(master: int, *names) -> int:
    """Independent deterministic sub-stream seed."""
    rng = random.Random(f"{master}:" + ":".join(str(n) for n in names))
    return rng.getrandbits(48)


def cmd_play(args) -> int:
    config = GameConfig(args.m, args.n, args.N)
    builder_spec = args.builder
    if args.param:
        builder_spec = builder_spec + ":" + ",".join(args.param)
    builder = make_builder(builder_spec, config)
    painter_spec = args.painter
    if painter_spec == "random":
        painter_spec = f"random:{_sub_seed(args.seed, 'painter')}"
    painter = make_painter(painter_spec, config)
    seed_graph = None
    if args.from_graph:
        seed_graph = BichromaticGraph.from_text(Path(args.from_graph).read_text(encoding="utf-8"))
    transcript, report = play(config, builder, painter, seed_graph)
    out = _out_dir(args.out_dir)
    stem = (
        f"game_m{config.m}n{config.n}N{config.N}_"
        f"{builder_spec.replace(':', '-').replace('/', '_')}_"
        f"{args.painter.replace(':', '-').replace('/', '_')}"
    )
    (out / f"{stem}.transcript").write_text(transcript.to_text(), encoding="utf-8")
    record = {
        "status": transcript.result_token,
        "moves": transcript.moves_made,
        "savings": transcript.savings,
        "phases": [
            {"name": p.name, "moves": p.moves, "witness": p.witness}
            for p in report.phase_log
        ],
    }
    (out / f"{stem}.json").write_text(json.dumps(record, sort_keys=True) + "\n", encoding="utf-8")
    _emit_json(record)
    return 0


def cmd_solve(args) -> int:
    config = GameConfig(args.m, args.n, args.N)
    g = BichromaticGraph(config.N)
    if args.from_graph:
        g = BichromaticGraph.from_text(Path(args.from_graph).read_text(encoding="utf-8"))
    result = solve_from(g, config, max_vertices=max(6, config.N if config.N <= 6 else 6))
    record = {
        "value": result.value,
        "pv": [[u, v, str(c)] for u, v, c in result.principal_variation],
        "nodes_expanded": result.nodes_expanded,
        "table_hits": result.table_hits,
    }
    if args.oracle:
        record["oracle_value"] = brute_value(g, config)
        if record["oracle_value"] != result.value:
            _emit_json(record)
            print("oracle mismatch", file=sys.stderr)
            return 1
    _emit_json(record)
    return 0


def cmd_sweep(args) -> int:
    lo, _, hi = args.N_range.partition(":")
    n_values = range(int(lo), int(hi) + 1)
    painters = args.painters.split(",")
    rows: list[dict] = []
    for N in n_values:
        config = GameConfig(args.m, args.n, N)
        for painter_name in painters:
            repeats = args.repeats if painter_name == "random" else 1
            for rep in range(repeats):
                if painter_name == "random":
                    seed = _sub_seed(args.seed, "painter", N, rep)
                    painter = RandomPainter(seed)
                else:
                    seed = 0
                    painter = make_painter(painter_name, config)
                builder = make_builder(args.builder, config)
                transcript, report = play(config, builder, painter)
                rows.append(
                    {
                        "N": N,
                        "painter": painter_name,
                        "seed": seed,
                        "moves": transcript.moves_made,
                        "savings": transcript.savings,
                    }
                )
    out_path = Path(args.out) if args.out else None
    fh = out_path.open("w", newline="", encoding="utf-8") if out_path else sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=["N", "painter", "seed", "moves", "savings"])
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        for N in n_values:
            med = statistics.median(r["savings"] for r in rows if r["N"] == N)
            writer.writerow({"N": N, "painter": "median", "seed": "", "moves": "", "savings": med})
    finally:
        if out_path:
            fh.close()
    return 0


def cmd_lab(args) -> int:
    if args.lab_command == "kst":
        bound = kst_bound(args.m, args.n, args.s, args.t)
        _emit_json(
            {
                "m": args.m,
                "n": args.n,
                "s": args.s,
                "t": args.t,
                "bound": str(bound),
                "bound_float": float(bound),
            }
        )
        return 0
    if args.lab_command == "es":
        g = BichromaticGraph.from_text(Path(args.graph).read_text(encoding="utf-8"))
        edges = [(u, v) for u, v, _ in g.built_edges()]
        vertices, kind = es_extract(g.n, edges)
        _emit_json({"kind": kind, "size": len(vertices), "vertices": sorted(vertices)})
        return 0
    if args.lab_command == "density":
        g = BichromaticGraph.from_text(Path(args.graph).read_text(encoding="utf-8"))
        v1, v2 = _infer_bipartition(g)
        witness = verify_least_density(g, v1, v2, Fraction(args.eps))
        _emit_json(
            {
                "eps": str(witness.eps),
                "delta": str(witness.delta),
                "mu": str(witness.mu),
                "nu": str(witness.nu),
                "n0": witness.n0,
                "balanced": sorted(witness.balanced_vertices),
                "s_r": sorted(witness.s_r),
                "s_b": sorted(witness.s_b),
                "e_hl": witness.e_hl,
                "e_hr": witness.e_hr,
                "meets_density_bound": witness.meets_density_bound,
                "few_balanced": witness.few_balanced,
                "intermediate_holds": witness.intermediate_holds,
            }
        )
        return 0
    raise SystemExit(2)


def _infer_bipartition(g: BichromaticGraph) -> tuple[list[int], list[int]]:
    """Two-color the underlying graph by BFS (it must be connected bipartite)."""
    from collections import deque

    side = [-1] * g.n
    side[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        nbrs = g.neighborhood(u, Color.RED) | g.neighborhood(u, Color.BLUE)
        while nbrs:
            v = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            if side[v] == -1:
                side[v] = 1 - side[u]
                queue.append(v)
    return [v for v in range(g.n) if side[v] == 0], [v for v in range(g.n) if side[v] == 1]


def cmd_verify(args) -> int:
    results = verify_mod.verify_all(quick=args.quick)
    failed = 0
    for name, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail:
            line += f": {detail}"
        print(line)
        if not ok:
            failed += 1
    return 1 if failed else 0


def cmd_serve(args) -> int:
    from .service import serve

    out = os.environ.get("ONLINERAMSEY_OUT_DIR")
    serve(args.host, args.port, out_dir=args.out_dir or out, static_dir=args.static_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="onlineramsey", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_play = sub.add_parser("play", help="run one game")
    p_play.add_argument("--m", type=int, required=True)
    p_play.add_argument("--n", type=int, required=True)
    p_play.add_argument("--N", type=int, required=True)
    p_play.add_argument("--builder", default="naive")
    p_play.add_argument("--painter", default="random:0")
    p_play.add_argument("--seed", type=int, default=0)
    p_play.add_argument("--param", action="append", default=[], help="builder parameter, e.g. C=4 or eps=1/10")
    p_play.add_argument("--from", dest="from_graph", default=None, help="seed graph file")
    p_play.add_argument("--out-dir", default=None)
    p_play.set_defaults(func=cmd_play)

    p_solve = sub.add_parser("solve", help="exact game value")
    p_solve.add_argument("m", type=int)
    p_solve.add_argument("n", type=int)
    p_solve.add_argument("N", type=int)
    p_solve.add_argument("--from", dest="from_graph", default=None)
    p_solve.add_argument("--oracle", action="store_true", help="cross-check against the oracle")
    p_solve.set_defaults(func=cmd_solve)

    p_sweep = sub.add_parser("sweep", help="savings sweep CSV")
    p_sweep.add_argument("--m", type=int, default=3)
    p_sweep.add_argument("--n", type=int, default=3)
    p_sweep.add_argument("--N-range", default="6:30")
    p_sweep.add_argument("--builder", default="paper")
    p_sweep.add_argument("--painters", default="random,red,blue,balanced,greedy")
    p_sweep.add_argument("--repeats", type=int, default=50)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_lab = sub.add_parser("lab", help="extremal checks")
    lab_sub = p_lab.add_subparsers(dest="lab_command", required=True)
    p_kst = lab_sub.add_parser("kst")
    for name in ("m", "n", "s", "t"):
        p_kst.add_argument(name, type=int)
    p_kst.set_defaults(func=cmd_lab)
    p_es = lab_sub.add_parser("es")
    p_es.add_argument("graph")
    p_es.set_defaults(func=cmd_lab)
    p_density = lab_sub.add_parser("density")
    p_density.add_argument("graph")
    p_density.add_argument("--eps", default="1/10")
    p_density.set_defaults(func=cmd_lab)

    p_verify = sub.add_parser("verify", help="run the property suite")
    p_verify.add_argument("--quick", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_serve = sub.add_parser("serve", help="start the session service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8723)
    p_serve.add_argument("--out-dir", default=None)
    p_serve.add_argument("--static-dir", default=None)
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    from .engine import EngineError
    from .graph import GraphError
    from .solver import SolverError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, GraphError, EngineError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
