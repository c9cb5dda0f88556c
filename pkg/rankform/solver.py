# rankform/solver.py
"""
PageRank in three flavours.

R1 is the unit-L1 eigenvector of the damped Google matrix, found by power
iteration. R2 solves (I - cA^T) x = n u and counts expected random-walk
visits. R3 rescales R1 by ||v||_1 / d so subsystems stay comparable.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from loguru import logger

from .config.config import Config
from .errors import DegenerateScale, InvalidParams, NotConverged, ZeroVector
from .graph import DirectedGraph, WeightVector
from .helpers.utils import check_damping
from .linalg import lu_solve, sparse_link_matrix, system_matrix


class Variant(Enum):
    R1 = "r1"
    R2 = "r2"
    R3 = "r3"


class Engine(Enum):
    POWER = "power"
    DENSE_LU = "lu"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class SolveOptions:
    tol: float = field(default_factory=lambda: Config.SOLVE_TOL)
    max_iter: int = field(default_factory=lambda: Config.MAX_ITER)
    engine: Optional[Engine] = None

    def __post_init__(self):
        if not self.tol > 0.0:
            raise InvalidParams(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise InvalidParams(f"max_iter must be at least 1, got {self.max_iter}")


@dataclass(frozen=True, eq=False)
class RankVector:
    variant: Variant
    c: float
    values: np.ndarray = field(repr=False)
    weight: WeightVector = field(repr=False)
    iterations: Optional[int] = None

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, node: int) -> float:
        """1-based node access"""
        return float(self.values[node - 1])


def _weight_for(g: DirectedGraph, w: Optional[WeightVector]) -> WeightVector:
    if w is None:
        return WeightVector.uniform(g.n)
    if len(w) != g.n:
        raise InvalidParams(f"weight vector has {len(w)} entries for a {g.n}-node graph")
    return w


def pagerank_r1(
    g: DirectedGraph,
    c: float,
    w: Optional[WeightVector] = None,
    opts: Optional[SolveOptions] = None,
) -> RankVector:
    """
    Normalized PageRank.

    The power method iterates x <- cA^T x + c u (g^T x) + (1 - c) u (e^T x),
    starting from u, where dangling nodes redistribute their mass along u.
    A DenseLU or Neumann engine normalizes the R2 solution instead, since
    the two variants are proportional.

    Raises:
        NotConverged: the L1 change stayed above tol for max_iter iterations.
    """
    c = check_damping(c)
    w = _weight_for(g, w)
    opts = opts or SolveOptions()
    engine = opts.engine or Engine.POWER

    if engine is not Engine.POWER:
        return normalize(pagerank_r2(g, c, w, opts))

    u = w.u
    a_t = sparse_link_matrix(g).T.tocsr()
    dangling = np.zeros(g.n, dtype=bool)
    dangling[np.array(sorted(i - 1 for i in g.dangling), dtype=np.int64)] = True

    x = u.copy()
    for iteration in range(1, opts.max_iter + 1):
        x_next = c * (a_t @ x) + (c * x[dangling].sum() + (1.0 - c) * x.sum()) * u
        x_next /= x_next.sum()
        delta = np.abs(x_next - x).sum()
        x = x_next
        if delta < opts.tol:
            logger.debug(f"Power method converged in {iteration} iterations (c={c})")
            return RankVector(Variant.R1, c, x, w, iteration)

    raise NotConverged(opts.max_iter)


def pagerank_r2(
    g: DirectedGraph,
    c: float,
    w: Optional[WeightVector] = None,
    opts: Optional[SolveOptions] = None,
) -> RankVector:
    """
    Non-normalized PageRank, (I - cA^T)^-1 n u.

    DenseLU factors the system once. Neumann iterates x <- cA^T x + n u from
    n u; as column sums of cA^T are at most c, the remaining error is bounded
    by c/(1-c) times the last L1 change, and iteration stops once that bound
    falls below tol relative to ||x||_1.
    """
    c = check_damping(c)
    w = _weight_for(g, w)
    opts = opts or SolveOptions()
    engine = opts.engine or Engine.DENSE_LU
    rhs = g.n * w.u

    if engine is Engine.DENSE_LU:
        x = lu_solve(system_matrix(g, c), rhs)
        return RankVector(Variant.R2, c, x, w)
    if engine is not Engine.NEUMANN:
        raise InvalidParams(f"engine '{engine.value}' cannot compute R2")

    a_t = sparse_link_matrix(g).T.tocsr()
    bound = c / (1.0 - c)
    x = rhs.copy()
    for iteration in range(1, opts.max_iter + 1):
        x_next = c * (a_t @ x) + rhs
        delta = np.abs(x_next - x).sum()
        x = x_next
        if bound * delta < opts.tol * max(1.0, x.sum()):
            logger.debug(f"Neumann iteration converged in {iteration} iterations (c={c})")
            return RankVector(Variant.R2, c, x, w, iteration)

    raise NotConverged(opts.max_iter)


def pagerank_r3(
    g: DirectedGraph,
    c: float,
    w: Optional[WeightVector] = None,
    opts: Optional[SolveOptions] = None,
) -> RankVector:
    """R1 * ||v||_1 / d with d = 1 - sum(cA^T R1)"""
    r1 = pagerank_r1(g, c, w, opts)
    a_t = sparse_link_matrix(g).T.tocsr()
    d = 1.0 - float((r1.c * (a_t @ r1.values)).sum())
    if abs(d) < 1e-12:
        raise DegenerateScale(d)
    values = r1.values * r1.weight.l1 / d
    return RankVector(Variant.R3, r1.c, values, r1.weight, r1.iterations)


def normalize(r: RankVector) -> RankVector:
    """Divide an R2 or R3 vector by its L1 norm."""
    if r.variant is Variant.R1:
        raise InvalidParams("vector is already normalized")
    total = float(np.abs(r.values).sum())
    if total == 0.0:
        raise ZeroVector()
    return RankVector(Variant.R1, r.c, r.values / total, r.weight, r.iterations)


def solve(
    g: DirectedGraph,
    c: float,
    variant: Variant,
    w: Optional[WeightVector] = None,
    opts: Optional[SolveOptions] = None,
) -> RankVector:
    """Dispatch on variant"""
    if variant is Variant.R1:
        return pagerank_r1(g, c, w, opts)
    if variant is Variant.R2:
        return pagerank_r2(g, c, w, opts)
    return pagerank_r3(g, c, w, opts)
