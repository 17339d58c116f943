"""Command line interface: build an index, query it, sweep windows, serve
HTTP, or fuzz the engine against the brute-force oracle.

    evslice build --input events.tsv --degree 0,1,2 --multiplicity 1,2 \
        --neighbors 0:0,1:1 --hops 3 --influential alice --out idx.evs
    evslice query --index idx.evs --from 10 --to 400 --keys components,distinct
    evslice sweep --index idx.evs --width 50 --step 10 --keys influenced
    evslice serve --index idx.evs --bind 127.0.0.1:8080
    evslice fuzz --graphs 20 --seed 7
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .container import ContainerError, load_engine, save_engine
from .engine import EngineConfig, SliceEngine
from .graph import GraphError, ParseError, build_graph, parse_events
from .oracle import OracleParams, gen_random_graph
from .server import parse_bind


def _int_list(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def _pair_list(text: str) -> tuple[tuple[int, int], ...]:
    if not text:
        return ()
    pairs = []
    for part in text.split(","):
        r, _, s = part.partition(":")
        pairs.append((int(r), int(s)))
    return tuple(pairs)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evslice", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="parse events and build a saved index")
    b.add_argument("--input", required=True, help="event file: timestamp, source, target")
    b.add_argument("--out", required=True, help="output index path")
    b.add_argument("--delimiter", default=None, help="field delimiter (default: whitespace)")
    b.add_argument("--skip-header", action="store_true")
    b.add_argument("--directed", action="store_true")
    b.add_argument("--degree", default="0,1,2", help="degree values, comma separated")
    b.add_argument("--multiplicity", default="1,2", help="multiplicity values")
    b.add_argument("--neighbors", default="0:0,1:1", help="r:s pairs, comma separated")
    b.add_argument("--hops", type=int, default=0, help="hop bound for h-influence")
    b.add_argument("--influential", default="", help="influential vertex names")
    b.add_argument("--no-connectivity", action="store_true")
    b.add_argument("--no-triads", action="store_true")
    b.add_argument("--no-influence", action="store_true")

    q = sub.add_parser("query", help="query one window of a saved index")
    q.add_argument("--index", required=True)
    q.add_argument("--from", dest="start", type=int, required=True)
    q.add_argument("--to", dest="end", type=int, required=True)
    q.add_argument("--keys", required=True, help="statistic keys, comma separated")
    q.add_argument("--json", action="store_true", help="one JSON object instead of lines")

    w = sub.add_parser("sweep", help="query every window of a fixed width")
    w.add_argument("--index", required=True)
    w.add_argument("--width", type=int, required=True)
    w.add_argument("--step", type=int, default=1)
    w.add_argument("--keys", required=True)

    s = sub.add_parser("serve", help="serve the index over HTTP/JSON")
    s.add_argument("--index", required=True)
    s.add_argument("--bind", default="127.0.0.1:8080")

    f = sub.add_parser("fuzz", help="compare the engine against the brute-force oracle")
    f.add_argument("--graphs", type=int, default=10)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--max-edges", type=int, default=40)
    f.add_argument("--max-vertices", type=int, default=9)
    return parser


def cmd_build(args) -> int:
    with open(args.input, "r", encoding="utf-8") as handle:
        events = parse_events(handle, delimiter=args.delimiter, skip_header=args.skip_header)
    influential = tuple(x for x in args.influential.split(",") if x)
    graph = build_graph(events, directed=args.directed, influential=influential)
    config = EngineConfig(
        directed=args.directed,
        degrees=_int_list(args.degree),
        multiplicities=_int_list(args.multiplicity),
        neighbor_pairs=_pair_list(args.neighbors),
        hops=args.hops,
        influential=influential,
        with_connectivity=not args.no_connectivity,
        with_triads=not args.no_triads,
        with_influence=not args.no_influence,
    )
    engine = SliceEngine(graph, config)
    save_engine(engine, args.out)
    report = engine.report
    print(f"built index over m={report.m} edges, n={report.n} vertices "
          f"in {report.seconds:.2f}s")
    for name in sorted(report.node_counts):
        print(f"  {name}: {report.node_counts[name]} nodes")
    print(f"  total: {report.total_nodes} nodes -> {args.out}")
    return 0


def cmd_query(args) -> int:
    engine = load_engine(args.index)
    keys = args.keys.split(",")
    result = engine.stats(keys, args.start, args.end)
    if args.json:
        print(json.dumps(result, sort_keys=True))
    else:
        for key in keys:
            print(f"{key}\t{result[key]}")
    return 0


def cmd_sweep(args) -> int:
    engine = load_engine(args.index)
    rows = engine.sweep(args.width, args.step, args.keys.split(","))
    print(json.dumps(rows, sort_keys=True))
    return 0


def cmd_serve(args) -> int:
    engine = load_engine(args.index)
    host, port = parse_bind(args.bind)
    from .server import EngineServer

    server = EngineServer((host, port), engine)
    # report the actual port: --bind host:0 lets the OS pick one
    print(f"serving {args.index} on http://{server.server_address[0]}:"
          f"{server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


FUZZ_PAIRS = tuple((r, s) for r in range(3) for s in range(3))


def cmd_fuzz(args) -> int:
    rng = random.Random(args.seed)
    params = OracleParams(
        degrees=(0, 1, 2), multiplicities=(1, 2), neighbor_pairs=FUZZ_PAIRS, hops=3
    )
    mismatches = 0
    for trial in range(args.graphs):
        directed = rng.random() < 0.5
        graph = gen_random_graph(
            rng,
            rng.randint(2, args.max_vertices),
            rng.randint(1, args.max_edges),
            directed=directed,
            influential_count=rng.randint(0, 2),
            self_loop_rate=0.1,
        )
        config = EngineConfig(
            directed=directed,
            degrees=params.degrees,
            multiplicities=params.multiplicities,
            neighbor_pairs=params.neighbor_pairs,
            hops=params.hops,
            influential=tuple(graph.vertex_name(v) for v in sorted(graph.influential)),
        )
        engine = SliceEngine(graph, config)
        bad = _compare_all_slices(engine, graph, params)
        mismatches += bad
        status = "ok" if bad == 0 else f"{bad} MISMATCHES"
        print(f"graph {trial}: n={graph.n} m={graph.m} "
              f"{'directed' if directed else 'undirected'}: {status}")
    if mismatches:
        print(f"FAIL: {mismatches} mismatching values")
        return 1
    print(f"all {args.graphs} graphs match the oracle on every slice")
    return 0


def _compare_all_slices(engine: SliceEngine, graph, params: OracleParams) -> int:
    from .acceptance_support import engine_oracle_mismatches

    return engine_oracle_mismatches(engine, graph, params)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "build": cmd_build,
        "query": cmd_query,
        "sweep": cmd_sweep,
        "serve": cmd_serve,
        "fuzz": cmd_fuzz,
    }
    try:
        return handlers[args.command](args)
    except (GraphError, ParseError, ContainerError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
