# rankform/perturbation.py
"""
Weight-vector edits on a fixed graph.

(I - cA^T)^-1 does not depend on the weights, so once it is cached any new
R2 is a single matrix-vector product. Deltas here use raw weights of 1 per
node: every start walk contributes exactly its own visits, which keeps the
zeroing and doubling accounting exact.
"""
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Union

import numpy as np
from loguru import logger

from .errors import FingerprintMismatch, InvalidNode, InvalidParams
from .graph import DirectedGraph, WeightVector
from .helpers.utils import check_damping
from .linalg import DenseMatrix, invert, system_matrix
from .solver import RankVector, Variant

Nodes = Union[int, Iterable[int]]


@dataclass(frozen=True, eq=False)
class CachedInverse:
    fingerprint: str
    c: float
    inverse: DenseMatrix = field(repr=False)

    @classmethod
    def build(cls, g: DirectedGraph, c: float) -> "CachedInverse":
        c = check_damping(c)
        inverse = invert(system_matrix(g, c))
        inverse.setflags(write=False)
        logger.debug(f"Cached inverse for {g.n}-node graph at c={c}")
        return cls(g.fingerprint(), c, inverse)

    @property
    def n(self) -> int:
        return self.inverse.shape[0]


def r2_from_cache(inv: CachedInverse, v: WeightVector,
                  graph: Optional[DirectedGraph] = None) -> RankVector:
    """
    R2 = inverse . (n u) for new weights.

    Raises:
        FingerprintMismatch: graph was given and is not the cached one.
    """
    if graph is not None:
        actual = graph.fingerprint()
        if actual != inv.fingerprint:
            raise FingerprintMismatch(inv.fingerprint, actual)
    if len(v) != inv.n:
        raise InvalidParams(f"weight vector has {len(v)} entries, cache holds {inv.n} nodes")
    return RankVector(Variant.R2, inv.c, inv.inverse @ (inv.n * v.u), v)


def _cache_for(g: DirectedGraph, c: float, inv: Optional[CachedInverse]) -> CachedInverse:
    c = check_damping(c)
    if inv is None:
        return CachedInverse.build(g, c)
    actual = g.fingerprint()
    if actual != inv.fingerprint:
        raise FingerprintMismatch(inv.fingerprint, actual)
    if inv.c != c:
        raise InvalidParams(f"cached inverse is for c={inv.c}, asked for c={c}")
    return inv


def _node_list(g: DirectedGraph, nodes: Nodes) -> List[int]:
    nodes = [nodes] if isinstance(nodes, (int, np.integer)) else list(nodes)
    if not nodes:
        raise InvalidParams("at least one node is required")
    for node in nodes:
        if not 1 <= node <= g.n:
            raise InvalidNode(node, g.n)
    return sorted(set(int(node) for node in nodes))


def _indicator(g: DirectedGraph, nodes: Nodes) -> np.ndarray:
    e = np.zeros(g.n)
    e[np.array(_node_list(g, nodes)) - 1] = 1.0
    return e


def zeroing_delta(g: DirectedGraph, c: float, nodes: Nodes,
                  inv: Optional[CachedInverse] = None) -> np.ndarray:
    """
    Loss in R2 when the raw weight of each node in `nodes` drops from 1 to 0.

    Every other raw weight stays 1, so the delta is the sum of the inverse's
    columns for the zeroed nodes. A node set demotes a whole group at once.
    """
    e = _indicator(g, nodes)
    inv = _cache_for(g, c, inv)
    baseline = inv.inverse @ np.ones(g.n)
    return baseline - inv.inverse @ (np.ones(g.n) - e)


def doubling_delta(g: DirectedGraph, c: float, nodes: Nodes,
                   inv: Optional[CachedInverse] = None) -> np.ndarray:
    """Gain in R2 when the raw weight of each node in `nodes` goes from 1 to 2"""
    e = _indicator(g, nodes)
    inv = _cache_for(g, c, inv)
    baseline = inv.inverse @ np.ones(g.n)
    return inv.inverse @ (np.ones(g.n) + e) - baseline


def zeroing_bound(c: float) -> float:
    """Most a node can lose of its own R2 by zeroing its weight: sum of c^(2k)"""
    c = check_damping(c)
    return 1.0 / (1.0 - c * c)
