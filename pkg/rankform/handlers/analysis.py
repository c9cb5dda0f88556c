# rankform/handlers/analysis.py
import sys

from ..graph import WeightVector, read_weights
from ..helpers.decorators import exit_on_error
from ..helpers.plotting import write_sweep_svg
from ..helpers.utils import check_damping, format_value, read_bytes, write_csv
from ..perturbation import CachedInverse, doubling_delta, r2_from_cache, zeroing_bound, zeroing_delta
from ..sensitivity import checked_derivative, find_c_max, sweep_c
from ..solver import Variant
from ..templates.messages import Messages
from .common import add_c_arg, add_structure_args, load_graph, spec_from_args


def add_sweep_args(parser) -> None:
    add_structure_args(parser, required=False)
    parser.add_argument("--graph", default=None, help="edge-list file instead of a structure")
    parser.add_argument("--variant", choices=["r1", "r2"], default="r1")
    parser.add_argument("--nodes", type=int, nargs="+", default=None, help="node ids (default: all)")
    parser.add_argument("--c-lo", type=float, default=0.01)
    parser.add_argument("--c-hi", type=float, default=0.99)
    parser.add_argument("--steps", type=int, default=99)
    parser.add_argument("--svg", default=None, help="also write an SVG line chart")


@exit_on_error
def sweep_command(args):
    """Handle sweep: rank of selected nodes over a grid of c"""
    if args.graph:
        target = load_graph(args.graph)
        title = args.graph
    else:
        if not args.kind:
            print(Messages.ERROR.format(message="sweep needs --kind or --graph"), file=sys.stderr)
            return 2
        target = spec_from_args(args)
        title = str(target)

    record = sweep_c(target, Variant(args.variant), args.nodes, args.c_lo, args.c_hi, args.steps)
    write_csv(sys.stdout, ["c", "node", "value"], record.records())
    if args.svg:
        write_sweep_svg(record, args.svg, title)
        print(Messages.SVG_WRITTEN.format(path=args.svg), file=sys.stderr)


def add_cmax_args(parser) -> None:
    add_structure_args(parser)
    parser.add_argument("--node", type=int, required=True)
    parser.add_argument("--c-lo", type=float, default=0.001)
    parser.add_argument("--c-hi", type=float, default=0.999)
    parser.add_argument("--grid", type=int, default=None, help="grid points before refinement")


@exit_on_error
def cmax_command(args):
    """Handle cmax: damping factor that maximizes a node's normalized rank"""
    spec = spec_from_args(args)
    result = find_c_max(spec, args.node, args.c_lo, args.c_hi, args.grid)
    print(Messages.CMAX.format(c_max=format_value(result.c_max),
                               value=format_value(result.value_at_max),
                               boundary=str(result.boundary_hit).lower()))


def add_derivative_args(parser) -> None:
    add_structure_args(parser)
    add_c_arg(parser)
    parser.add_argument("--nodes", type=int, nargs="+", default=None, help="node ids (default: all)")
    parser.add_argument("--h", type=float, default=None, help="finite-difference step")


@exit_on_error
def derivative_command(args):
    """Handle derivative: dR2/dc per node, symbolic expression checked against finite differences"""
    spec = spec_from_args(args)
    nodes = args.nodes or range(1, spec.node_count + 1)
    rows = []
    for node in nodes:
        check = checked_derivative(spec, node, args.c, args.h)
        literal = "" if check.literal is None else float(check.literal)
        rows.append([node, float(check.value), literal, float(check.numeric), check.source])
    write_csv(sys.stdout, ["node", "value", "literal", "numeric", "source"], rows)


def add_perturb_args(parser) -> None:
    actions = parser.add_subparsers(dest="action", required=True)

    bound = actions.add_parser("bound", help="largest possible own-node loss, 1/(1-c^2)")
    add_c_arg(bound)

    for name, text in (("zero", "R2 lost when node weights drop from 1 to 0"),
                       ("double", "R2 gained when node weights go from 1 to 2")):
        sub = actions.add_parser(name, help=text)
        sub.add_argument("--graph", required=True)
        add_c_arg(sub)
        sub.add_argument("--nodes", type=int, nargs="+", required=True)

    reweight = actions.add_parser("reweight", help="R2 for new weights from a cached inverse")
    reweight.add_argument("--graph", required=True)
    add_c_arg(reweight)
    reweight.add_argument("--weights", required=True)


@exit_on_error
def perturb_command(args):
    """Handle perturb: weight-vector edits on a fixed graph"""
    c = check_damping(args.c)
    if args.action == "bound":
        print(Messages.BOUND.format(value=format_value(zeroing_bound(c))))
        return

    graph = load_graph(args.graph)
    cache = CachedInverse.build(graph, c)
    if args.action == "reweight":
        weights: WeightVector = read_weights(read_bytes(args.weights), graph.n)
        rank = r2_from_cache(cache, weights, graph)
        write_csv(sys.stdout, ["node", "value"],
                  ((node, float(v)) for node, v in enumerate(rank.values, start=1)))
        return

    delta_of = zeroing_delta if args.action == "zero" else doubling_delta
    delta = delta_of(graph, c, args.nodes, cache)
    write_csv(sys.stdout, ["node", "delta"],
              ((node, float(v)) for node, v in enumerate(delta, start=1)))
