import argparse
import logging
import sys
from pathlib import Path

from pairdom.config import load_settings
from pairdom.errors import ConfigError, GraphError, InternalInvariant, TooLarge
from pairdom.gen import GenSpec, generate
from pairdom.graph import (
    BlockCutStructure,
    Graph,
    decode_graph,
    format_edge_list,
    load_block_graph,
)
from pairdom.judge import run_pipeline
from pairdom.oracle import solve
from pairdom.ordering import dump_order
from pairdom.prune import dump_trace
from pairdom.report import write_markdown_report
from pairdom.storage import Storage
from pairdom.transforms import (
    case_to_doc,
    case_to_row,
    oracle_to_doc,
    summary_to_doc,
    to_line,
    verdict_to_doc,
)
from pairdom.verify import parse_seeds, summarize, verify_fixtures, verify_seeds


def _read_graph(path: str) -> tuple[Graph, BlockCutStructure]:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return load_block_graph(decode_graph(data))


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr")

    parser = argparse.ArgumentParser(prog="pairdom")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", parents=[common], help="Is a vertex in every minimum PDS?"
    )
    analyze.add_argument("graph", help="Edge-list file, '-' for stdin")
    which = analyze.add_mutually_exclusive_group(required=True)
    which.add_argument("--vertex", type=int, help="Vertex to query")
    which.add_argument("--all-vertices", action="store_true", help="Query every vertex")
    analyze.add_argument("--dump-order", action="store_true", help="Print the vertex ordering")
    analyze.add_argument("--dump-prune", action="store_true", help="Print the pruning trace")

    oracle = sub.add_parser("oracle", parents=[common], help="Exhaustive gamma_pr and core")
    oracle.add_argument("graph", help="Edge-list file, '-' for stdin")
    oracle.add_argument("--list-sets", action="store_true", help="Print every minimum PDS")
    oracle.add_argument("--cap", type=int, default=None, help="Vertex cap (PAIRDOM_ORACLE_CAP)")

    verify = sub.add_parser("verify", parents=[common], help="Pipeline vs oracle on a corpus")
    verify.add_argument("--seeds", default="0..499", help="A..B or comma list")
    verify.add_argument("--max-n", type=int, default=12)
    verify.add_argument("--max-size", type=int, default=4, help="Largest block size")
    verify.add_argument("--bookkeeping-max-n", type=int, default=14)
    verify.add_argument("--fixtures", action="store_true", help="Also run the named fixtures")
    verify.add_argument("--db", default=None, help="Store results in this SQLite DB")
    verify.add_argument("--report", default=None, help="Write a Markdown report here")

    gen = sub.add_parser("gen", parents=[common], help="Emit a seeded random block graph")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--blocks", type=int, required=True)
    gen.add_argument("--min-size", type=int, default=2)
    gen.add_argument("--max-size", type=int, default=4)
    gen.add_argument("--attach", type=int, default=None, help="Fixed attach vertex")

    dump = sub.add_parser("prune-dump", parents=[common], help="Ordering and pruning trace")
    dump.add_argument("graph", help="Edge-list file, '-' for stdin")
    dump.add_argument("--vertex", type=int, required=True)

    return parser


def _cmd_analyze(args: argparse.Namespace) -> int:
    g, bc = _read_graph(args.graph)
    vertices = range(g.n) if args.all_vertices else [args.vertex]
    for v in vertices:
        result = run_pipeline(g, v, bc)
        if args.dump_order and result.order is not None:
            for line in dump_order(result.order):
                print(line)
        if args.dump_prune and result.state is not None:
            for line in dump_trace(result.state):
                print(line)
        print(to_line(verdict_to_doc(result.verdict)))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    g, _ = _read_graph(args.graph)
    cap = args.cap if args.cap is not None else load_settings().oracle_cap
    result = solve(g, cap=cap, keep_sets=args.list_sets)
    print(to_line(oracle_to_doc(result)))
    if args.list_sets:
        for s in sorted(sorted(x) for x in result.min_sets):
            print(" ".join(str(v) for v in s))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    settings = load_settings()
    try:
        seeds = parse_seeds(args.seeds)
    except ValueError as e:
        raise ConfigError(f"--seeds: {e}") from None

    results = verify_seeds(
        seeds,
        max_n=args.max_n,
        max_size=args.max_size,
        bookkeeping_max_n=args.bookkeeping_max_n,
        cap=settings.oracle_cap,
    )
    if args.fixtures:
        results = verify_fixtures(args.bookkeeping_max_n, settings.oracle_cap) + results

    for case in results:
        if not case.ok:
            print(to_line(case_to_doc(case)))
    summary = summarize(results)
    print(to_line(summary_to_doc(summary)))

    if args.db or args.report:
        store = Storage(Path(args.db or settings.db_path))
        store.upsert_cases(case_to_row(c) for c in results)
        store.set_state(
            "last_run",
            f"seeds={args.seeds} max_n={args.max_n} max_size={args.max_size} "
            f"fixtures={args.fixtures}",
        )
        if args.report:
            out = Path(args.report)
            write_markdown_report(store, out)
            logging.getLogger("pairdom").info("wrote report to %s", out)

    return 0 if summary.ok else 2


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        seed=args.seed,
        n_blocks=args.blocks,
        min_size=args.min_size,
        max_size=args.max_size,
        attach_vertex=args.attach,
    )
    g = generate(spec)
    comment = f"seed={args.seed} blocks={args.blocks} sizes={args.min_size}..{args.max_size}"
    sys.stdout.write(format_edge_list(g, comment=comment))
    return 0


def _cmd_prune_dump(args: argparse.Namespace) -> int:
    g, bc = _read_graph(args.graph)
    result = run_pipeline(g, args.vertex, bc)
    if result.order is not None and result.state is not None and result.pruned is not None:
        for line in dump_order(result.order):
            print(line)
        for line in dump_trace(result.state):
            print(line)
        print(
            to_line(
                {
                    "removed_weight": result.state.removed_weight,
                    "kept": list(result.pruned.vertices),
                    "annotations": {
                        ",".join(map(str, sorted(a.block))): a.kind.value
                        for a in result.state.annotations
                    },
                }
            )
        )
    print(to_line(verdict_to_doc(result.verdict)))
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
    "prune-dump": _cmd_prune_dump,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )

    try:
        return _COMMANDS[args.command](args)
    except InternalInvariant as e:
        print(f"Internal error: {e}", file=sys.stderr)
        return 2
    except (GraphError, TooLarge, ConfigError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
