# rankform/graph.py
"""
Directed graphs, structured graph generators and the edge-list format.

Node ids are 1-based everywhere a caller can see them. Out-link lists keep
their insertion order so that writing and re-reading a graph is lossless.
"""
import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    DuplicateEdge,
    InvalidNode,
    InvalidParams,
    InvalidSpec,
    ParseError,
    SelfLoop,
    TargetOutOfRange,
    ZeroVector,
)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class DirectedGraph:
    """Immutable directed graph; out_links[i - 1] lists the targets of node i."""
    n: int
    out_links: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParams(f"graph needs at least one node, got n={self.n}")
        if len(self.out_links) != self.n:
            raise InvalidParams(
                f"expected {self.n} out-link lists, got {len(self.out_links)}"
            )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], check: bool = True) -> "DirectedGraph":
        links: List[List[int]] = [[] for _ in range(n)] if n > 0 else []
        for src, dst in edges:
            if not 1 <= src <= n:
                raise TargetOutOfRange(src, dst, n)
            links[src - 1].append(dst)
        graph = cls(n, tuple(tuple(targets) for targets in links))
        if check:
            validate(graph)
        return graph

    @classmethod
    def empty(cls, n: int) -> "DirectedGraph":
        """n isolated (dangling) nodes"""
        return cls(n, tuple(() for _ in range(n)))

    def targets(self, node: int) -> Tuple[int, ...]:
        return self.out_links[node - 1]

    def out_degree(self, node: int) -> int:
        return len(self.out_links[node - 1])

    @property
    def dangling(self) -> FrozenSet[int]:
        return frozenset(i + 1 for i, targets in enumerate(self.out_links) if not targets)

    @property
    def edges(self) -> List[Edge]:
        return [(i + 1, j) for i, targets in enumerate(self.out_links) for j in targets]

    @property
    def edge_count(self) -> int:
        return sum(len(targets) for targets in self.out_links)

    def fingerprint(self) -> str:
        """sha256 of the canonical edge-list encoding"""
        return hashlib.sha256(write_edge_list(self)).hexdigest()


def validate(g: DirectedGraph) -> DirectedGraph:
    """
    Check every structural invariant of g.

    Returns:
        DirectedGraph: g itself when valid.

    Raises:
        SelfLoop, TargetOutOfRange, DuplicateEdge
    """
    for i, targets in enumerate(g.out_links, start=1):
        seen = set()
        for j in targets:
            if j == i:
                raise SelfLoop(i)
            if not 1 <= j <= g.n:
                raise TargetOutOfRange(i, j, g.n)
            if j in seen:
                raise DuplicateEdge(i, j)
            seen.add(j)
    return g


def disjoint_union(*graphs: DirectedGraph) -> DirectedGraph:
    """Place graphs side by side, renumbering each after the ones before it."""
    if not graphs:
        raise InvalidParams("disjoint_union needs at least one graph")
    links: List[Tuple[int, ...]] = []
    offset = 0
    for g in graphs:
        links.extend(tuple(j + offset for j in targets) for targets in g.out_links)
        offset += g.n
    return DirectedGraph(offset, tuple(links))


def weakly_connected_components(g: DirectedGraph) -> List[List[int]]:
    """Components ignoring edge direction, each sorted, ordered by smallest member"""
    edges = g.edges
    rows = np.array([s - 1 for s, _ in edges], dtype=np.int64)
    cols = np.array([d - 1 for _, d in edges], dtype=np.int64)
    adjacency = csr_matrix((np.ones(len(edges)), (rows, cols)), shape=(g.n, g.n))
    _, labels = connected_components(adjacency, directed=True, connection="weak")

    groups: Dict[int, List[int]] = {}
    for node, label in enumerate(labels, start=1):
        groups.setdefault(int(label), []).append(node)
    return sorted(groups.values(), key=lambda members: members[0])


# Structured graphs

class StructureKind(Enum):
    LINE = "line"
    LINE_WITH_BACKLINK = "backlink"
    LINE_WITH_ATTACHED_NODE = "attached"
    LINE_SPLIT = "split"
    COMPLETE = "complete"
    COMPLETE_WITH_OUTLINK = "complete-out"
    COMPLETE_TO_LINE = "complete-to-line"
    LINE_TO_COMPLETE = "line-to-complete"
    LINE_SHARING_NODE_WITH_COMPLETE = "share"

    @classmethod
    def parse(cls, name: str) -> "StructureKind":
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(kind.value for kind in cls)
            raise InvalidSpec(f"unknown kind '{name}' (choose from {choices})")


_USES_LINE = {
    StructureKind.LINE,
    StructureKind.LINE_WITH_BACKLINK,
    StructureKind.LINE_WITH_ATTACHED_NODE,
    StructureKind.LINE_SPLIT,
    StructureKind.COMPLETE_TO_LINE,
    StructureKind.LINE_TO_COMPLETE,
    StructureKind.LINE_SHARING_NODE_WITH_COMPLETE,
}
_USES_COMPLETE = {
    StructureKind.COMPLETE,
    StructureKind.COMPLETE_WITH_OUTLINK,
    StructureKind.COMPLETE_TO_LINE,
    StructureKind.LINE_TO_COMPLETE,
    StructureKind.LINE_SHARING_NODE_WITH_COMPLETE,
}
_USES_J = {
    StructureKind.LINE_WITH_ATTACHED_NODE,
    StructureKind.LINE_SPLIT,
    StructureKind.COMPLETE_TO_LINE,
    StructureKind.LINE_TO_COMPLETE,
    StructureKind.LINE_SHARING_NODE_WITH_COMPLETE,
}


@dataclass(frozen=True)
class StructureSpec:
    """
    Parametric description of a structured graph.

    n_L is the line length, n_G the complete-graph size and j the attachment
    position on the line. Parameters a kind does not use must stay 0.
    """
    kind: StructureKind
    n_L: int = 0
    n_G: int = 0
    j: int = 0

    def check(self) -> "StructureSpec":
        kind = self.kind
        if kind in _USES_LINE:
            minimum = 2 if kind in (StructureKind.LINE_WITH_BACKLINK, StructureKind.LINE_SPLIT) else 1
            if self.n_L < minimum:
                raise InvalidSpec(f"{kind.value} needs n_L >= {minimum}, got {self.n_L}")
        elif self.n_L != 0:
            raise InvalidSpec(f"{kind.value} has no line part, got n_L={self.n_L}")

        if kind in _USES_COMPLETE:
            if self.n_G < 2:
                raise InvalidSpec(f"{kind.value} needs n_G >= 2, got {self.n_G}")
        elif self.n_G != 0:
            raise InvalidSpec(f"{kind.value} has no complete part, got n_G={self.n_G}")

        if kind in _USES_J:
            upper = self.n_L - 1 if kind is StructureKind.LINE_SPLIT else self.n_L
            if not 1 <= self.j <= upper:
                raise InvalidSpec(f"{kind.value} needs 1 <= j <= {upper}, got j={self.j}")
        elif self.j != 0:
            raise InvalidSpec(f"{kind.value} takes no attachment index, got j={self.j}")
        return self

    @property
    def node_count(self) -> int:
        kind = self.kind
        if kind is StructureKind.LINE_WITH_ATTACHED_NODE:
            return self.n_L + 1
        if kind is StructureKind.COMPLETE_WITH_OUTLINK:
            return self.n_G + 1
        if kind is StructureKind.LINE_SHARING_NODE_WITH_COMPLETE:
            return self.n_L + self.n_G - 1
        return self.n_L + self.n_G

    def __str__(self) -> str:
        parts = [self.kind.value]
        if self.kind in _USES_LINE:
            parts.append(f"n_L={self.n_L}")
        if self.kind in _USES_COMPLETE:
            parts.append(f"n_G={self.n_G}")
        if self.kind in _USES_J:
            parts.append(f"j={self.j}")
        return " ".join(parts)


def _line_edges(n_L: int, offset: int = 0) -> List[Edge]:
    return [(k + 1 + offset, k + offset) for k in range(1, n_L)]


def _complete_edges(members: Sequence[int]) -> List[Edge]:
    return [(a, b) for a in members for b in members if a != b]


def generate(spec: StructureSpec) -> DirectedGraph:
    """Build the graph a StructureSpec describes."""
    spec.check()
    kind, n_L, n_G, j = spec.kind, spec.n_L, spec.n_G, spec.j
    edges: List[Edge]

    if kind is StructureKind.LINE:
        edges = _line_edges(n_L)
    elif kind is StructureKind.LINE_WITH_BACKLINK:
        edges = [(1, 2)] + _line_edges(n_L)
    elif kind is StructureKind.LINE_WITH_ATTACHED_NODE:
        edges = _line_edges(n_L) + [(n_L + 1, j)]
    elif kind is StructureKind.LINE_SPLIT:
        edges = [edge for edge in _line_edges(n_L) if edge != (j + 1, j)]
    elif kind is StructureKind.COMPLETE:
        edges = _complete_edges(range(1, n_G + 1))
    elif kind is StructureKind.COMPLETE_WITH_OUTLINK:
        edges = _complete_edges(range(1, n_G + 1)) + [(1, n_G + 1)]
    elif kind is StructureKind.COMPLETE_TO_LINE:
        edges = (
            _line_edges(n_L)
            + _complete_edges(range(n_L + 1, n_L + n_G + 1))
            + [(n_L + 1, j)]
        )
    elif kind is StructureKind.LINE_TO_COMPLETE:
        edges = (
            _line_edges(n_L)
            + [(j, n_L + 1)]
            + _complete_edges(range(n_L + 1, n_L + n_G + 1))
        )
    else:
        members = [j] + list(range(n_L + 1, n_L + n_G))
        edges = _line_edges(n_L) + _complete_edges(members)

    graph = DirectedGraph.from_edges(spec.node_count, edges)
    logger.debug(f"Generated {spec}: {graph.n} nodes, {graph.edge_count} edges")
    return graph


# Edge-list files

def read_edge_list(text: Union[bytes, str], max_nodes: Optional[int] = None) -> DirectedGraph:
    """
    Parse the edge-list format.

    The first non-comment line is `n <count>`; every following line is
    `<src> <dst>` with 1-based ids. `#` starts a comment. A header above
    max_nodes is rejected before any node storage is allocated.

    Raises:
        ParseError: malformed content, with the offending line number.
    """
    text = _decode(text)

    n = None
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        fields = content.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise ParseError(lineno, "expected header 'n <count>'")
            n = _parse_int(fields[1], lineno)
            if n < 1:
                raise ParseError(lineno, f"node count must be positive, got {n}")
            if max_nodes is not None and n > max_nodes:
                raise ParseError(lineno, f"node count {n} exceeds the limit of {max_nodes}")
            continue
        if len(fields) != 2:
            raise ParseError(lineno, "expected '<src> <dst>'")
        edges.append((_parse_int(fields[0], lineno), _parse_int(fields[1], lineno)))

    if n is None:
        raise ParseError(1, "missing header 'n <count>'")
    return DirectedGraph.from_edges(n, edges)


def _decode(text: Union[bytes, str]) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(1, f"not valid UTF-8 ({e.reason})")
    return text


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"'{token}' is not an integer")


def write_edge_list(g: DirectedGraph) -> bytes:
    lines = [f"n {g.n}"] + [f"{src} {dst}" for src, dst in g.edges]
    return ("\n".join(lines) + "\n").encode("utf-8")


# Weight vectors

@dataclass(frozen=True, eq=False)
class WeightVector:
    """Raw nonnegative node weights v; u is the L1-normalized view."""
    v: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.v, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise InvalidParams("weight vector must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise InvalidParams("weights must be finite and nonnegative")
        if not np.any(values > 0.0):
            raise ZeroVector()
        values.setflags(write=False)
        object.__setattr__(self, "v", values)

    @classmethod
    def uniform(cls, n: int) -> "WeightVector":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def ones(cls, n: int) -> "WeightVector":
        return cls(np.ones(n))

    @classmethod
    def indicator(cls, n: int, node: int) -> "WeightVector":
        if not 1 <= node <= n:
            raise InvalidNode(node, n)
        values = np.zeros(n)
        values[node - 1] = 1.0
        return cls(values)

    def __len__(self) -> int:
        return self.v.size

    @property
    def l1(self) -> float:
        return float(self.v.sum())

    @property
    def u(self) -> np.ndarray:
        return self.v / self.l1


def read_weights(text: Union[bytes, str], n: int) -> WeightVector:
    """Whitespace-separated nonnegative reals, `#` comments, exactly n values"""
    text = _decode(text)
    values: List[float] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        for token in raw.split("#", 1)[0].split():
            try:
                values.append(float(token))
            except ValueError:
                raise ParseError(lineno, f"'{token}' is not a number")
    if len(values) != n:
        raise ParseError(max(1, text.count("\n")), f"expected {n} weights, got {len(values)}")
    return WeightVector(np.array(values))
