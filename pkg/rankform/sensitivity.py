# rankform/sensitivity.py
"""How PageRank moves with the damping factor c."""
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from loguru import logger

from .closed_forms import ClosedFormResult, closed_form
from .config.config import Config
from .errors import InvalidNode, InvalidParams, InvalidRange, InvalidSpec, StepOutOfRange
from .graph import DirectedGraph, StructureKind, StructureSpec
from .helpers.utils import check_damping
from .solver import RankVector, Variant, pagerank_r1, pagerank_r2

Target = Union[StructureSpec, DirectedGraph]


@dataclass(frozen=True, eq=False)
class SweepRecord:
    """values[k, m] is the rank of nodes[m] at c_grid[k]"""
    c_grid: np.ndarray
    values: np.ndarray
    variant: Variant
    nodes: Sequence[int]

    def records(self):
        """(c, node, value) triples in grid order"""
        for k, c in enumerate(self.c_grid):
            for m, node in enumerate(self.nodes):
                yield float(c), node, float(self.values[k, m])


@dataclass(frozen=True)
class CMaxResult:
    c_max: float
    value_at_max: float
    boundary_hit: bool


@dataclass(frozen=True)
class DerivativeCheck:
    node: int
    value: float
    numeric: float
    literal: Optional[float] = None
    agrees: bool = False
    source: str = field(default="numeric")


def _node_count(target: Target) -> int:
    return target.node_count if isinstance(target, StructureSpec) else target.n


def _check_nodes(target: Target, nodes: Optional[Sequence[int]]) -> Sequence[int]:
    n = _node_count(target)
    if nodes is None:
        return list(range(1, n + 1))
    for node in nodes:
        if not 1 <= node <= n:
            raise InvalidNode(node, n)
    return list(nodes)


def _evaluator(target: Target, variant: Variant) -> Callable[[float], np.ndarray]:
    if variant is Variant.R3:
        raise InvalidParams("sweeps support r1 and r2 only")
    if isinstance(target, StructureSpec):
        target.check()
        if variant is Variant.R1:
            return lambda c: closed_form(target, c).r1
        return lambda c: closed_form(target, c).r2
    if variant is Variant.R1:
        return lambda c: pagerank_r1(target, c).values
    return lambda c: pagerank_r2(target, c).values


def sweep_c(target: Target, variant: Variant = Variant.R1, nodes: Optional[Sequence[int]] = None,
            c_lo: float = 0.01, c_hi: float = 0.99, steps: int = 99) -> SweepRecord:
    """
    Evaluate a PageRank variant on an evenly spaced c grid.

    Structure specs use the closed forms; plain graphs go through the solver.
    """
    if not 0.0 < c_lo < c_hi < 1.0:
        raise InvalidRange(c_lo, c_hi)
    if steps < 2:
        raise InvalidParams(f"a sweep needs at least 2 steps, got {steps}")
    nodes = _check_nodes(target, nodes)
    evaluate = _evaluator(target, variant)
    index = np.array(nodes) - 1

    grid = np.linspace(c_lo, c_hi, steps)
    values = np.vstack([evaluate(c)[index] for c in grid])
    logger.info(f"Swept {variant.value} over {steps} values of c in [{c_lo}, {c_hi}]")
    return SweepRecord(grid, values, variant, nodes)


# Derivatives

def dr2_dc_line(n_L: int, i: int, c: float) -> float:
    """d/dc of the line's R2_i = (1 - c^(n_L-i+1)) / (1 - c)"""
    c = check_damping(c)
    if not 1 <= i <= n_L:
        raise InvalidParams(f"need 1 <= i <= n_L, got i={i}, n_L={n_L}")
    if i == n_L:
        return 0.0
    e = n_L - i + 1
    return (1.0 - c) ** -2 - c ** e * e / (c * (1.0 - c)) - c ** e / (1.0 - c) ** 2


def dr2_dc_shared_node(n_L: int, n_G: int, j: int, c: float) -> float:
    """Symbolic composite derivative for the node shared by the line and the complete graph"""
    c = check_damping(c)
    n = n_G
    g = (1.0 - c ** (n_L - j + 1)) / (1.0 - c)
    dg = (1.0 - c) ** -2 - c ** (n_L - j + 1) * (n_L - j + 1) / (c * (1.0 - c)) - c ** (n_L - j + 1) / (1.0 - c) ** 2
    p = (c - 1.0) * n ** 2 + (c - 1.0) ** 2 * n - c ** 2

    first = p * ((c - 1.0) * n - 2.0 * c + 1.0) * dg * n / p ** 2
    second = -((n - 1) * (c * ((c - 2.0) * n + 2.0 - 2.0 * c) * g - (n - 1) * (n + c ** 2))) * n / p ** 2
    return first + second


def dr2_dc_graph_node(n_L: int, n_G: int, j: int, c: float) -> float:
    """Symbolic composite derivative for a node that belongs only to the complete graph"""
    c = check_damping(c)
    n = n_G
    m = n_L - j
    q = 1.0 - c
    den = n * (n - 1) - (n - 1) * c ** 2 - n * (n - 2) * c
    tail = 1.0 - c ** m
    inner = (c + n) * (n - 1) * q + (n - 1) * c ** 2 * tail

    t1 = ((n - 1) * q - (c - n) * (n - 1) + 2 * (n - 1) * c * tail) / (q * den)
    t2 = -((n - 1) * c ** (1 + m) * m) / (q * den)
    t3 = inner / (q ** 2 * den)
    t4 = -inner * (2 * c + (2 - 2 * c - n) * n) / (q * den ** 2)
    return t1 + t2 + t3 + t4


def _values(result) -> np.ndarray:
    if isinstance(result, RankVector):
        return result.values
    if isinstance(result, ClosedFormResult):
        return result.r2
    return np.asarray(result, dtype=float)


def dr_dc_numeric(f: Callable[[float], object], c: float, h: Optional[float] = None) -> np.ndarray:
    """Central difference (f(c+h) - f(c-h)) / 2h"""
    h = Config.FD_STEP if h is None else h
    if not h > 0.0 or not 0.0 < c - h or not c + h < 1.0:
        raise StepOutOfRange(c, h)
    return (_values(f(c + h)) - _values(f(c - h))) / (2.0 * h)


def checked_derivative(spec: StructureSpec, node: int, c: float,
                       h: Optional[float] = None) -> DerivativeCheck:
    """
    dR2/dc of one node, preferring a symbolic expression when it agrees.

    The symbolic evaluators above are compared with a central difference of
    the closed form; when they disagree by more than Config.DERIVATIVE_RTOL
    the numeric value is returned and the mismatch is logged.
    """
    spec.check()
    c = check_damping(c)
    if not 1 <= node <= spec.node_count:
        raise InvalidNode(node, spec.node_count)

    numeric = float(dr_dc_numeric(lambda x: closed_form(spec, x), c, h)[node - 1])

    literal: Optional[float] = None
    if spec.kind is StructureKind.LINE:
        literal = dr2_dc_line(spec.n_L, node, c)
    elif spec.kind is StructureKind.LINE_SHARING_NODE_WITH_COMPLETE:
        if node == spec.j:
            literal = dr2_dc_shared_node(spec.n_L, spec.n_G, spec.j, c)
        elif node > spec.n_L:
            literal = dr2_dc_graph_node(spec.n_L, spec.n_G, spec.j, c)

    if literal is None:
        return DerivativeCheck(node, numeric, numeric)

    agrees = math.isfinite(literal) and abs(literal - numeric) <= max(
        Config.DERIVATIVE_RTOL * abs(numeric), 1e-9
    )
    if agrees:
        return DerivativeCheck(node, literal, numeric, literal, True, "literal")

    logger.warning(
        f"Symbolic derivative for node {node} of {spec} gives {literal}, "
        f"finite difference gives {numeric}; using the finite difference"
    )
    return DerivativeCheck(node, numeric, numeric, literal, False, "numeric")


# c_max search

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-6) -> float:
    """
    Golden section search for the maximum of a unimodal f on [a, b].

    Args:
        f (callable): 1d function to maximize
        a (float): left end of the bracket
        b (float): right end of the bracket
        tol (float, optional): final bracket width

    Returns:
        float: location of the maximum
    """
    dist = b - a
    if dist <= tol:
        return (a + b) / 2.0

    steps = int(math.ceil(math.log(tol / dist) / math.log(INV_PHI)))

    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    yc = f(c)
    yd = f(d)

    for _ in range(steps - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            dist = INV_PHI * dist
            c = a + INV_PHI_SQ * dist
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            yd = f(d)

    if yc > yd:
        return (a + d) / 2.0
    return (c + b) / 2.0


def find_c_max(spec: StructureSpec, node: int, c_lo: float = 0.001, c_hi: float = 0.999,
               grid_points: Optional[int] = None, tol: Optional[float] = None) -> CMaxResult:
    """
    Maximize the normalized rank of one node over c.

    A grid scan locates the best cell, golden section refines it. When the
    best grid point is the first or last one the maximum lies on the domain
    edge and is reported as such, unrefined.
    """
    grid_points = grid_points or Config.CMAX_GRID_POINTS
    tol = tol or Config.CMAX_TOL
    if not 0.0 < c_lo < c_hi < 1.0:
        raise InvalidRange(c_lo, c_hi)
    if grid_points < 3:
        raise InvalidParams(f"grid needs at least 3 points, got {grid_points}")
    try:
        spec.check()
    except InvalidSpec as e:
        raise InvalidParams(e.reason) from e
    if not 1 <= node <= spec.node_count:
        raise InvalidParams(f"node {node} is not in {spec} ({spec.node_count} nodes)")

    def rank(c: float) -> float:
        return float(closed_form(spec, c).r1[node - 1])

    grid = np.linspace(c_lo, c_hi, grid_points)
    values = np.array([rank(c) for c in grid])
    best = int(np.argmax(values))

    if best in (0, grid_points - 1):
        logger.info(f"Maximum of node {node} in {spec} lies on the boundary c={grid[best]}")
        return CMaxResult(float(grid[best]), float(values[best]), True)

    c_star = golden_section_max(rank, float(grid[best - 1]), float(grid[best + 1]), tol)
    v_star = rank(c_star)
    if v_star < values[best]:
        c_star, v_star = float(grid[best]), float(values[best])
    logger.info(f"c_max={c_star:.6f} for node {node} in {spec}")
    return CMaxResult(c_star, v_star, False)
