# rankform/random_walk.py
"""
Monte-Carlo estimates of R2 from damped random walks.

A walk visits its start node, then at each step continues with probability
c to a uniformly chosen out-link and stops otherwise. Walks stop for good
at dangling nodes. Starting one walk from every node, the expected number
of visits to node j is R2_j under uniform weights.

Randomness comes from numpy's counter-based Philox generator; the stream
for start node s is keyed by SeedSequence([seed, s]), so results do not
depend on how start nodes are spread over worker threads.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from loguru import logger

from .config.config import Config
from .errors import InvalidNode, InvalidParams, SameNode
from .graph import DirectedGraph
from .helpers.utils import check_damping


@dataclass(frozen=True)
class WalkConfig:
    seed: int
    walks_per_node: int = field(default_factory=lambda: Config.WALKS_PER_NODE)
    max_steps: int = field(default_factory=lambda: Config.MAX_STEPS)

    def __post_init__(self):
        if self.walks_per_node < 1:
            raise InvalidParams(f"walks_per_node must be at least 1, got {self.walks_per_node}")
        if self.max_steps < 1:
            raise InvalidParams(f"max_steps must be at least 1, got {self.max_steps}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidParams(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True, eq=False)
class VisitEstimate:
    mean: np.ndarray
    stderr: np.ndarray
    truncated: int = 0


@dataclass(frozen=True)
class HitEstimate:
    probability: float
    stderr: float
    truncated: int = 0


class _Csr:
    """Out-links as flat 0-based arrays"""

    def __init__(self, g: DirectedGraph):
        self.indptr = np.zeros(g.n + 1, dtype=np.int64)
        self.indptr[1:] = np.cumsum([len(t) for t in g.out_links])
        self.indices = np.array([j - 1 for t in g.out_links for j in t], dtype=np.int64)
        self.degree = np.diff(self.indptr)


def _generator(*key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(key))))


def _step(rng: np.random.Generator, csr: _Csr, pos: np.ndarray, c: float) -> Tuple[np.ndarray, np.ndarray]:
    """Advance walkers at pos; returns (keep mask, next positions of kept walkers)"""
    deg = csr.degree[pos]
    keep = (rng.random(pos.size) < c) & (deg > 0)
    picks = (rng.random(pos.size) * deg).astype(np.int64)
    moving = pos[keep]
    return keep, csr.indices[csr.indptr[moving] + picks[keep]]


def _visits_from(g: DirectedGraph, csr: _Csr, c: float, start: int,
                 cfg: WalkConfig) -> Tuple[np.ndarray, np.ndarray, int]:
    """Per-node sample mean and variance of visit counts for walks from one start node"""
    n, walks = g.n, cfg.walks_per_node
    mean = np.zeros(n)
    var = np.zeros(n)
    if csr.degree[start] == 0:
        mean[start] = 1.0
        return mean, var, 0

    rng = _generator(cfg.seed, start + 1)
    walker = np.arange(walks, dtype=np.int64)
    pos = np.full(walks, start, dtype=np.int64)
    keys: List[np.ndarray] = []
    steps = 0
    while pos.size and steps < cfg.max_steps:
        keys.append(walker * n + pos)
        keep, pos = _step(rng, csr, pos, c)
        walker = walker[keep]
        steps += 1
    truncated = int(pos.size)

    visited, counts = np.unique(np.concatenate(keys), return_counts=True)
    nodes = visited % n
    total = np.bincount(nodes, weights=counts, minlength=n)
    squares = np.bincount(nodes, weights=counts.astype(float) ** 2, minlength=n)
    mean = total / walks
    if walks > 1:
        var = np.maximum(squares - walks * mean ** 2, 0.0) / (walks - 1)
    return mean, var, truncated


def estimate_r2(g: DirectedGraph, c: float, cfg: WalkConfig) -> VisitEstimate:
    """
    Estimate R2 as summed mean visit counts over one batch of walks per start node.

    Standard errors are per start node sqrt(var / walks), combined by
    root-sum-square. Walks still running after max_steps are cut off and
    counted in `truncated`.
    """
    c = check_damping(c)
    csr = _Csr(g)

    with ThreadPoolExecutor(max_workers=Config.WORKERS) as pool:
        results = list(pool.map(lambda s: _visits_from(g, csr, c, s, cfg), range(g.n)))

    mean = np.zeros(g.n)
    variance = np.zeros(g.n)
    truncated = 0
    for m, v, t in results:
        mean += m
        variance += v / cfg.walks_per_node
        truncated += t

    if truncated:
        logger.warning(f"{truncated} walks hit max_steps={cfg.max_steps} and were truncated")
    logger.debug(f"Simulated {cfg.walks_per_node} walks from each of {g.n} nodes (c={c})")
    return VisitEstimate(mean, np.sqrt(variance), truncated)


def hitting_probability(g: DirectedGraph, c: float, source: int, target: int,
                        cfg: WalkConfig) -> HitEstimate:
    """Fraction of walks from source that visit target at least once."""
    c = check_damping(c)
    for node in (source, target):
        if not 1 <= node <= g.n:
            raise InvalidNode(node, g.n)
    if source == target:
        raise SameNode(source)

    csr = _Csr(g)
    walks = cfg.walks_per_node
    goal = target - 1
    if csr.degree[source - 1] == 0:
        return HitEstimate(0.0, 0.0)

    rng = _generator(cfg.seed, source, target)
    pos = np.full(walks, source - 1, dtype=np.int64)
    hits = 0
    steps = 0
    while pos.size and steps < cfg.max_steps:
        _, pos = _step(rng, csr, pos, c)
        arrived = pos == goal
        hits += int(arrived.sum())
        pos = pos[~arrived]
        steps += 1

    truncated = int(pos.size)
    if truncated:
        logger.warning(f"{truncated} walks hit max_steps={cfg.max_steps} and were truncated")
    p = hits / walks
    stderr = float(np.sqrt(p * (1.0 - p) / walks))
    return HitEstimate(p, stderr, truncated)
