"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from typing import Iterator, List

import networkx as nx

from EquiPart import Graph, Instance

__all__ = ["connected_graphs", "instances", "two_triangles_bridged", "three_k4_chain"]


def connected_graphs(max_n: int, min_n: int = 1) -> List[Graph]:
    """Every connected graph on min_n..max_n vertices, up to isomorphism (max_n <= 7)."""
    graphs = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if min_n <= n <= max_n and nx.is_connected(g):
            graphs.append(Graph.from_networkx(g))
    return graphs


def instances(max_n: int, min_n: int = 1) -> Iterator[Instance]:
    for graph in connected_graphs(max_n, min_n):
        for p in range(1, graph.vertex_count + 1):
            yield Instance(graph, p)


def two_triangles_bridged() -> Graph:
    # triangles {0,1,2} and {3,4,5}, bridge vertex 6
    return Graph.from_edges(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 0), (6, 3)])


def three_k4_chain() -> Graph:
    edges = []
    for base in (0, 4, 8):
        edges.extend((base + i, base + j) for i in range(4) for j in range(i + 1, 4))
    edges.extend([(3, 4), (7, 8)])
    return Graph.from_edges(12, edges)
