# rankform/handlers/__init__.py
from typing import TYPE_CHECKING

from .analysis import (
    add_cmax_args, add_derivative_args, add_perturb_args, add_sweep_args,
    cmax_command, derivative_command, perturb_command, sweep_command
)
from .commands import (
    add_closed_form_args, add_compare_args, add_generate_args, add_solve_args, add_walk_args,
    closed_form_command, compare_command, generate_command, solve_command, walk_command
)

if TYPE_CHECKING:
    from ..app import RankForm


def register_all_handlers(app: "RankForm") -> None:
    """Register all subcommands with the application"""

    # Graphs and solvers
    app.add_command("solve", solve_command, add_solve_args, "PageRank of an edge-list file")
    app.add_command("generate", generate_command, add_generate_args, "write a structured graph")
    app.add_command("closed-form", closed_form_command, add_closed_form_args,
                    "analytic R2 of a structured graph")
    app.add_command("compare", compare_command, add_compare_args,
                    "R1 and R2 of a complete graph vs isolated dangling nodes")
    app.add_command("walk", walk_command, add_walk_args, "Monte-Carlo random-walk estimates")

    # Analysis
    app.add_command("sweep", sweep_command, add_sweep_args, "rank over a grid of c")
    app.add_command("cmax", cmax_command, add_cmax_args, "c maximizing a node's normalized rank")
    app.add_command("derivative", derivative_command, add_derivative_args, "dR2/dc per node")
    app.add_command("perturb", perturb_command, add_perturb_args, "weight-vector perturbations")
