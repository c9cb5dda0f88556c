# rankform/closed_forms.py
"""
Analytic R2 for structured graphs, uniform weights.

Every evaluator returns the full per-node vector over the graph that
graph.generate builds for the same StructureSpec, in the same node order.
Values are visit counts: each node starts one walk, so every entry is >= 1.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Optional

import numpy as np
from loguru import logger

from .errors import InvalidParams, InvalidSpec, NonPositiveRank
from .graph import DirectedGraph, StructureKind, StructureSpec, generate
from .helpers.utils import check_damping
from .linalg import DenseMatrix, line_inverse
from .solver import pagerank_r2


@dataclass(frozen=True, eq=False)
class ClosedFormResult:
    spec: StructureSpec
    c: float
    r2: np.ndarray = field(repr=False)
    normalizer: float
    analytic_normalizer: Optional[float] = None

    @property
    def r1(self) -> np.ndarray:
        return self.r2 / self.normalizer

    def __getitem__(self, node: int) -> float:
        return float(self.r2[node - 1])


def _spec(kind: StructureKind, n_L: int = 0, n_G: int = 0, j: int = 0) -> StructureSpec:
    try:
        return StructureSpec(kind, n_L, n_G, j).check()
    except InvalidSpec as e:
        raise InvalidParams(e.reason) from e


def _result(spec: StructureSpec, c: float, r2: np.ndarray,
            analytic_normalizer: Optional[float] = None) -> ClosedFormResult:
    r2 = np.asarray(r2, dtype=float)
    bad = np.flatnonzero(~(r2 > 0.0))
    if bad.size:
        raise NonPositiveRank(int(bad[0]) + 1, float(r2[bad[0]]))
    if analytic_normalizer is not None:
        total = float(r2.sum())
        if abs(analytic_normalizer - total) > 1e-9 * total:
            logger.warning(
                f"Analytic normalizer {analytic_normalizer} differs from sum {total} for {spec}"
            )
    return ClosedFormResult(spec, c, r2, float(r2.sum()), analytic_normalizer)


def _geometric(c: float, terms) -> np.ndarray:
    """sum_{k=0}^{terms-1} c^k, elementwise; zero terms give 0"""
    terms = np.asarray(terms, dtype=float)
    return (1.0 - c ** terms) / (1.0 - c)


def _line_tail(n_L: int, c: float) -> np.ndarray:
    """R2 of the bare line: node i collects c^k from the node k above it"""
    i = np.arange(1, n_L + 1)
    return _geometric(c, n_L - i + 1)


def _line_total(n_L: int, c: float) -> float:
    """n_L + sum_{k=1}^{n_L-1} (n_L - k) c^k"""
    k = np.arange(0, n_L)
    return float(((n_L - k) * c ** k).sum())


@lru_cache(maxsize=128)
def _generated(spec: StructureSpec) -> DirectedGraph:
    return generate(spec)


def _outlink_values(n_G: int, c: float):
    """Complete graph with one extra link out of its first node: (out-linking node, others)"""
    n = n_G
    den = n * (n - 1) - (n - 1) * c * c - n * (n - 2) * c
    return (n * (n - 1) + n * c) / den, (c + n) * (n - 1) / den, den


def line_r2(n_L: int, c: float) -> ClosedFormResult:
    c = check_damping(c)
    spec = _spec(StructureKind.LINE, n_L=n_L)
    return _result(spec, c, _line_tail(n_L, c), _line_total(n_L, c))


def line_with_attached_node_r2(n_L: int, j: int, c: float) -> ClosedFormResult:
    """
    Line plus node n_L+1 linking to line node j.

    Line nodes i <= j gain c^(j+1-i) from the attached node's walk; the
    attached node itself is never revisited and keeps 1.
    """
    c = check_damping(c)
    spec = _spec(StructureKind.LINE_WITH_ATTACHED_NODE, n_L=n_L, j=j)
    i = np.arange(1, n_L + 1)
    b = np.where(i <= j, c ** np.maximum(j + 1 - i, 0), 0.0)
    r2 = np.append(_line_tail(n_L, c) + b, 1.0)
    analytic = 1.0 + _line_total(n_L, c) + c * (1.0 - c ** j) / (1.0 - c)
    return _result(spec, c, r2, analytic)


def complete_r2(n_G: int, c: float) -> ClosedFormResult:
    c = check_damping(c)
    spec = _spec(StructureKind.COMPLETE, n_G=n_G)
    return _result(spec, c, np.full(n_G, 1.0 / (1.0 - c)), n_G / (1.0 - c))


def complete_with_outlink_r2(n_G: int, c: float) -> ClosedFormResult:
    """
    Complete graph whose node 1 also links to an outside sink n_G+1.

    Node 1 ranks highest among the graph members. The sink is outside the
    analytic result and is taken from a dense solve of the generated graph.
    """
    c = check_damping(c)
    spec = _spec(StructureKind.COMPLETE_WITH_OUTLINK, n_G=n_G)
    first, other, _ = _outlink_values(n_G, c)
    sink = pagerank_r2(_generated(spec), c).values[-1]
    r2 = np.concatenate(([first], np.full(n_G - 1, other), [sink]))
    return _result(spec, c, r2)


def complete_to_line_r2(n_L: int, n_G: int, j: int, c: float) -> ClosedFormResult:
    """Complete graph on n_L+1..n_L+n_G whose first node links to line node j"""
    c = check_damping(c)
    spec = _spec(StructureKind.COMPLETE_TO_LINE, n_L=n_L, n_G=n_G, j=j)
    first, other, den = _outlink_values(n_G, c)

    i = np.arange(1, n_L + 1)
    b = np.where(i <= j, c ** np.maximum(j + 1 - i, 0) * (c + n_G - 1) / den, 0.0)
    r2 = np.concatenate((_line_tail(n_L, c) + b, [first], np.full(n_G - 1, other)))
    return _result(spec, c, r2)


def line_to_complete_r2(n_L: int, n_G: int, j: int, c: float) -> ClosedFormResult:
    """
    Line node j links to graph node g = n_L+1.

    Nodes at or above j keep their line values. Node j splits its walk
    between node j-1 and g (r = 2), or sends all of it to g when j = 1.
    """
    c = check_damping(c)
    spec = _spec(StructureKind.LINE_TO_COMPLETE, n_L=n_L, n_G=n_G, j=j)
    r = 2 if j > 1 else 1

    tail = _line_tail(n_L, c)
    t_j = tail[j - 1]
    inflow = (c / r) * t_j

    den = (n_G - 1) - c * (n_G - 2) - c * c
    a_d = ((n_G - 1) - c * (n_G - 2)) / den
    a_ij = c / den
    base = 1.0 / (1.0 - c)

    line = tail.copy()
    below = np.arange(1, j)
    line[: j - 1] = _geometric(c, j - below) + c ** (j - below) * t_j / 2.0

    graph = np.full(n_G, base + inflow * a_ij)
    graph[0] = base + inflow * a_d
    return _result(spec, c, np.concatenate((line, graph)))


def line_sharing_node_r2(n_L: int, n_G: int, j: int, c: float) -> ClosedFormResult:
    """
    Line node j is also a member of a complete graph of n_G nodes.

    Graph-only nodes get ids n_L+1..n_L+n_G-1. With r the out-degree of
    node j, a = ((n_G-1) - c(n_G-2))/(n_G-1) and A_j the line tail at j:

        x_j = (A_j + c/a) / (1 - c^2/(r a))
        y   = (1 + c x_j / r) / a

    Nodes below j collect c^(j-i) x_j / n_G on top of their own line part.
    """
    c = check_damping(c)
    spec = _spec(StructureKind.LINE_SHARING_NODE_WITH_COMPLETE, n_L=n_L, n_G=n_G, j=j)
    r = n_G if j > 1 else n_G - 1
    a = ((n_G - 1) - c * (n_G - 2)) / (n_G - 1)

    tail = _line_tail(n_L, c)
    a_j = tail[j - 1]
    x = (a_j + c / a) / (1.0 - c * c / (r * a))
    y = (1.0 + c * x / r) / a

    line = tail.copy()
    line[j - 1] = x
    below = np.arange(1, j)
    line[: j - 1] = _geometric(c, j - below) + c ** (j - below) * x / n_G

    q = 1.0 - c
    analytic = (
        (n_G - 1) * y
        + x
        + (n_L - 1) / q
        - c * (1.0 - c ** (n_L - j)) / q ** 2
        - c * (1.0 - c ** (j - 1)) / q ** 2
        + c * (1.0 - c ** (j - 1)) * x / (n_G * q)
    )
    return _result(spec, c, np.concatenate((line, np.full(n_G - 1, y))), analytic)


def line_split_r2(n_L: int, j: int, c: float) -> ClosedFormResult:
    """Line with the link (j+1) -> j removed: two independent lines of j and n_L-j nodes"""
    c = check_damping(c)
    spec = _spec(StructureKind.LINE_SPLIT, n_L=n_L, j=j)
    r2 = np.concatenate((_line_tail(j, c), _line_tail(n_L - j, c)))
    return _result(spec, c, r2, _line_total(j, c) + _line_total(n_L - j, c))


def line_with_backlink_inverse(n_L: int, c: float) -> DenseMatrix:
    """
    (I - cA^T)^-1 for the line with the extra link 1 -> 2.

    Nodes 1 and 2 form a 2-cycle, so a walk entering it returns with total
    weight s = 1/(1 - c^2). Row 1 is s c^(j-1), row 2 is s c^|j-2|, and
    rows below cannot be reached from the cycle.
    """
    c = check_damping(c)
    if n_L < 2:
        raise InvalidParams(f"backlink needs n_L >= 2, got {n_L}")
    s = 1.0 / (1.0 - c * c)
    inv = line_inverse(n_L, c)
    cols = np.arange(1, n_L + 1)
    inv[0] = s * c ** (cols - 1)
    inv[1] = s * c ** np.abs(cols - 2)
    return inv


def line_with_backlink_r2(n_L: int, c: float) -> ClosedFormResult:
    c = check_damping(c)
    spec = _spec(StructureKind.LINE_WITH_BACKLINK, n_L=n_L)
    r2 = line_with_backlink_inverse(n_L, c).sum(axis=1)
    # no dangling node, so every walk's visits sum to 1/(1-c)
    return _result(spec, c, r2, n_L / (1.0 - c))


_DISPATCH: Dict[StructureKind, Callable[[StructureSpec, float], ClosedFormResult]] = {
    StructureKind.LINE: lambda s, c: line_r2(s.n_L, c),
    StructureKind.LINE_WITH_BACKLINK: lambda s, c: line_with_backlink_r2(s.n_L, c),
    StructureKind.LINE_WITH_ATTACHED_NODE: lambda s, c: line_with_attached_node_r2(s.n_L, s.j, c),
    StructureKind.LINE_SPLIT: lambda s, c: line_split_r2(s.n_L, s.j, c),
    StructureKind.COMPLETE: lambda s, c: complete_r2(s.n_G, c),
    StructureKind.COMPLETE_WITH_OUTLINK: lambda s, c: complete_with_outlink_r2(s.n_G, c),
    StructureKind.COMPLETE_TO_LINE: lambda s, c: complete_to_line_r2(s.n_L, s.n_G, s.j, c),
    StructureKind.LINE_TO_COMPLETE: lambda s, c: line_to_complete_r2(s.n_L, s.n_G, s.j, c),
    StructureKind.LINE_SHARING_NODE_WITH_COMPLETE: lambda s, c: line_sharing_node_r2(s.n_L, s.n_G, s.j, c),
}


def closed_form(spec: StructureSpec, c: float) -> ClosedFormResult:
    """Evaluate the analytic R2 of any structured graph"""
    return _DISPATCH[spec.kind](spec, c)
