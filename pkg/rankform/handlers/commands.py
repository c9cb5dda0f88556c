# rankform/handlers/commands.py
import sys
from pathlib import Path

from loguru import logger

from ..closed_forms import closed_form
from ..graph import DirectedGraph, StructureKind, StructureSpec, generate, read_weights, write_edge_list
from ..helpers.decorators import exit_on_error
from ..helpers.utils import check_damping, format_value, read_bytes, write_csv
from ..random_walk import WalkConfig, estimate_r2, hitting_probability
from ..solver import Engine, SolveOptions, Variant, pagerank_r1, pagerank_r2, solve
from ..templates.messages import Messages
from .common import add_c_arg, add_structure_args, load_graph, spec_from_args, warn_if_near_singular


def add_solve_args(parser) -> None:
    parser.add_argument("--graph", required=True, help="edge-list file")
    add_c_arg(parser)
    parser.add_argument("--variant", choices=[v.value for v in Variant], default="r1")
    parser.add_argument("--engine", choices=[e.value for e in Engine], default=None,
                        help="power for r1, lu for r2 unless given")
    parser.add_argument("--weights", default=None, help="file with one nonnegative weight per node")
    parser.add_argument("--tol", type=float, default=None, help="L1 convergence tolerance")
    parser.add_argument("--max-iter", type=int, default=None)


@exit_on_error
def solve_command(args):
    """Handle solve: PageRank of a graph file as node,value CSV"""
    graph = load_graph(args.graph)
    c = check_damping(args.c)
    warn_if_near_singular(c)

    weights = read_weights(read_bytes(args.weights), graph.n) if args.weights else None
    overrides = {}
    if args.tol is not None:
        overrides["tol"] = args.tol
    if args.max_iter is not None:
        overrides["max_iter"] = args.max_iter
    engine = Engine(args.engine) if args.engine else None
    opts = SolveOptions(engine=engine, **overrides)

    rank = solve(graph, c, Variant(args.variant), weights, opts)
    if rank.iterations is not None:
        logger.info(f"Solved {args.variant} in {rank.iterations} iterations")
    write_csv(sys.stdout, ["node", "value"],
              ((node, float(value)) for node, value in enumerate(rank.values, start=1)))


def add_generate_args(parser) -> None:
    add_structure_args(parser)
    parser.add_argument("--out", default=None, help="output file (stdout when omitted)")


@exit_on_error
def generate_command(args):
    """Handle generate: write a structured graph as an edge list"""
    spec = spec_from_args(args)
    graph = generate(spec)
    data = write_edge_list(graph)
    if args.out:
        Path(args.out).write_bytes(data)
        print(Messages.GENERATED.format(spec=spec, n=graph.n, edges=graph.edge_count, path=args.out),
              file=sys.stderr)
    else:
        sys.stdout.write(data.decode("utf-8"))


def add_closed_form_args(parser) -> None:
    add_structure_args(parser)
    add_c_arg(parser)


@exit_on_error
def closed_form_command(args):
    """Handle closed-form: analytic R2 and R1 of a structured graph"""
    spec = spec_from_args(args)
    result = closed_form(spec, args.c)
    write_csv(sys.stdout, ["node", "r2", "r1"],
              ((node, float(r2), float(r1))
               for node, (r2, r1) in enumerate(zip(result.r2, result.r1), start=1)))
    print(Messages.NORMALIZER.format(value=format_value(result.normalizer)))
    if result.analytic_normalizer is not None:
        print(Messages.ANALYTIC_NORMALIZER.format(value=format_value(result.analytic_normalizer)))


def add_compare_args(parser) -> None:
    add_c_arg(parser)


@exit_on_error
def compare_command(args):
    """Handle compare: a complete graph and isolated dangling nodes share R1 but not R2"""
    c = check_damping(args.c)
    warn_if_near_singular(c)

    graphs = {
        "complete": generate(StructureSpec(StructureKind.COMPLETE, n_G=4)),
        "dangling": DirectedGraph.empty(4),
    }
    print(Messages.COMPARE_HEADER.format(c=format_value(c)))
    rows = []
    for variant, method in ((Variant.R1, pagerank_r1), (Variant.R2, pagerank_r2)):
        for name, graph in graphs.items():
            rows.append([name, variant.value] + [float(v) for v in method(graph, c).values])
    write_csv(sys.stdout, ["graph", "variant", "node_1", "node_2", "node_3", "node_4"], rows)


def add_walk_args(parser) -> None:
    parser.add_argument("--graph", required=True, help="edge-list file")
    add_c_arg(parser)
    parser.add_argument("--seed", type=int, required=True, help="64-bit unsigned seed")
    parser.add_argument("--walks", type=int, default=None, help="walks per start node")
    parser.add_argument("--max-steps", type=int, default=None)
    parser.add_argument("--hit", type=int, nargs=2, metavar=("FROM", "TO"), default=None,
                        help="estimate the probability that a walk from FROM visits TO")


@exit_on_error
def walk_command(args):
    """Handle walk: Monte-Carlo visit counts or a hitting probability"""
    graph = load_graph(args.graph)
    c = check_damping(args.c)
    overrides = {}
    if args.walks is not None:
        overrides["walks_per_node"] = args.walks
    if args.max_steps is not None:
        overrides["max_steps"] = args.max_steps
    cfg = WalkConfig(seed=args.seed, **overrides)

    if args.hit:
        source, target = args.hit
        hit = hitting_probability(graph, c, source, target, cfg)
        print(Messages.HIT.format(source=source, target=target,
                                  probability=format_value(hit.probability),
                                  stderr=format_value(hit.stderr), truncated=hit.truncated))
        return

    estimate = estimate_r2(graph, c, cfg)
    write_csv(sys.stdout, ["node", "mean", "stderr"],
              ((node, float(m), float(s))
               for node, (m, s) in enumerate(zip(estimate.mean, estimate.stderr), start=1)))
    print(Messages.TRUNCATED.format(count=estimate.truncated))
