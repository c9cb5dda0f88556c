# tests/conftest.py
import pytest

from rankform.graph import DirectedGraph, StructureKind, StructureSpec, generate

FOUR_NODE_EDGES = [(1, 2), (2, 1), (2, 3), (3, 1), (3, 2), (3, 4), (4, 1)]
FOUR_NODE_TEXT = b"n 4\n1 2\n2 1\n2 3\n3 1\n3 2\n3 4\n4 1\n"


def small_structures():
    """One or two instances of every structure kind, all under 20 nodes"""
    K = StructureKind
    return [
        StructureSpec(K.LINE, n_L=1),
        StructureSpec(K.LINE, n_L=6),
        StructureSpec(K.LINE_WITH_BACKLINK, n_L=5),
        StructureSpec(K.LINE_WITH_ATTACHED_NODE, n_L=5, j=3),
        StructureSpec(K.LINE_SPLIT, n_L=5, j=2),
        StructureSpec(K.COMPLETE, n_G=2),
        StructureSpec(K.COMPLETE, n_G=5),
        StructureSpec(K.COMPLETE_WITH_OUTLINK, n_G=5),
        StructureSpec(K.COMPLETE_TO_LINE, n_L=5, n_G=4, j=3),
        StructureSpec(K.LINE_TO_COMPLETE, n_L=5, n_G=4, j=1),
        StructureSpec(K.LINE_TO_COMPLETE, n_L=5, n_G=4, j=3),
        StructureSpec(K.LINE_SHARING_NODE_WITH_COMPLETE, n_L=5, n_G=4, j=1),
        StructureSpec(K.LINE_SHARING_NODE_WITH_COMPLETE, n_L=5, n_G=5, j=3),
    ]


@pytest.fixture
def four_node_graph():
    return DirectedGraph.from_edges(4, FOUR_NODE_EDGES)


@pytest.fixture
def complete4():
    return generate(StructureSpec(StructureKind.COMPLETE, n_G=4))


@pytest.fixture
def dangling4():
    return DirectedGraph.empty(4)


@pytest.fixture
def structured_graphs():
    return [(spec, generate(spec)) for spec in small_structures()]
