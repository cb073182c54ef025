"""Small reference graphs with known answers, used by tests and the notebooks."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .digraph import DiGraph
from .netmodel import GraphHInstance, ReactionNetwork, parse_inputs

#: Four vertices; vertex 1 absorbs, 2, 3, 4 form one strong component.
FOUR_VERTEX_ARCS = [(2, 1), (2, 3), (2, 4), (3, 2), (3, 4), (4, 2), (4, 3)]

#: Eight vertices, components {1}, {2}, {3,4}, {5,6}, {7,8}; used for the
#: postdominator / W(j) machinery.
EIGHT_VERTEX_ARCS = [
    (4, 3), (3, 4), (3, 2), (2, 1), (8, 7), (7, 8),
    (7, 4), (7, 6), (6, 5), (5, 6), (6, 2), (5, 2),
]

#: Nine vertices with absorbing cycle {1,2,3,4}; six closed sets.
NINE_VERTEX_ARCS = [
    (6, 5), (5, 6), (5, 1), (1, 4), (4, 3), (3, 2), (2, 1),
    (7, 6), (7, 8), (8, 9), (9, 1),
]

#: Twenty-two vertices, absorbing cycle 1..6, tree-like above it with exit 7.
TREE22_ARCS = [
    (17, 16), (16, 15), (16, 17), (10, 9), (9, 8), (8, 7), (8, 9),
    (1, 2), (6, 1), (18, 16), (21, 20), (15, 14), (15, 16), (11, 8),
    (12, 7), (7, 1), (7, 2), (7, 3), (7, 13), (2, 3), (5, 6), (19, 16),
    (22, 20), (20, 14), (20, 22), (14, 13), (13, 7), (3, 4), (4, 5),
]

#: An h on the eight-vertex graph meeting every all-rates condition.
EIGHT_VERTEX_GOOD_H = (12, -3, -1, -2, -1, -1, -2, -2)

#: A three-species network with one linkage class, absorbing complex 4,
#: deficiency one; whether positive steady states exist depends on the rates.
NET1_TEXT = """\
species A B C
complex 1 = 2 A + B + C
complex 2 = A + 2 B + 2 C
complex 3 = 2 B + C
complex 4 = A + B
reaction 1 -> 2
reaction 1 -> 4
reaction 2 -> 1
reaction 2 -> 4
reaction 3 -> 1
"""

#: Deficiency one, absorbing complex 2; positive steady states for all rates.
NET2_TEXT = """\
species A B C
complex 1 = A + C
complex 2 = A + B + 2 C
complex 3 = A + 2 B + 2 C
complex 4 = A + 2 C
complex 5 = B + C
reaction 1 -> 4
reaction 3 -> 4
reaction 3 -> 5
reaction 4 -> 2
reaction 5 -> 1
reaction 5 -> 3
"""


def four_vertex_graph() -> DiGraph:
    return DiGraph.from_count(4, FOUR_VERTEX_ARCS)


def eight_vertex_graph() -> DiGraph:
    return DiGraph.from_count(8, EIGHT_VERTEX_ARCS)


def nine_vertex_graph() -> DiGraph:
    return DiGraph.from_count(9, NINE_VERTEX_ARCS)


def tree22_graph() -> DiGraph:
    return DiGraph.from_count(22, TREE22_ARCS)


def with_h(graph: DiGraph, h: Sequence) -> GraphHInstance:
    return GraphHInstance(graph, tuple(Fraction(x) for x in h))


def net1() -> ReactionNetwork:
    return parse_inputs(NET1_TEXT, "network")


def net2() -> ReactionNetwork:
    return parse_inputs(NET2_TEXT, "network")
