"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import List, Tuple

from .graph import Graph

__all__ = ["CLIQUE", "INDEPENDENT", "TypePartition", "same_type", "neighbourhood_diversity"]

CLIQUE = "clique"
INDEPENDENT = "independent"


@dataclass(frozen=True)
class TypePartition:
    """Vertex classes with identical neighbourhoods outside themselves.

    classes are ordered by their minimum vertex; type_graph is the
    quotient graph on class indices.
    """

    classes: Tuple[Tuple[int, ...], ...]
    class_kind: Tuple[str, ...]
    type_graph: Graph

    @property
    def diversity(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> List[int]:
        return [len(c) for c in self.classes]

    def class_of(self) -> List[int]:
        lookup = [0] * sum(self.class_sizes)
        for index, members in enumerate(self.classes):
            for v in members:
                lookup[v] = index
        return lookup

    def matches(self, graph: Graph) -> bool:
        """True iff this is the type partition of graph."""
        if sum(self.class_sizes) != graph.vertex_count:
            return False
        return self == neighbourhood_diversity(graph)


def same_type(graph: Graph, u: int, v: int) -> bool:
    return graph.neighbour_set(u) - {v} == graph.neighbour_set(v) - {u}


def neighbourhood_diversity(graph: Graph) -> TypePartition:
    representatives: List[int] = []
    members: List[List[int]] = []
    for v in graph.vertices:
        for index, r in enumerate(representatives):
            if same_type(graph, r, v):
                members[index].append(v)
                break
        else:
            representatives.append(v)
            members.append([v])

    kinds = []
    for group in members:
        # a single vertex counts as a clique of size one
        if len(group) == 1 or graph.has_edge(group[0], group[1]):
            kinds.append(CLIQUE)
        else:
            kinds.append(INDEPENDENT)

    type_edges = [
        (i, j)
        for i in range(len(representatives))
        for j in range(i + 1, len(representatives))
        if graph.has_edge(representatives[i], representatives[j])
    ]
    return TypePartition(
        tuple(tuple(group) for group in members),
        tuple(kinds),
        Graph.from_edges(len(representatives), type_edges),
    )
