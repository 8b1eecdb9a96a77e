"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from typing import List

from .errors import PreconditionError
from .graph import Graph, Instance, Partition

__all__ = ["is_clique", "split_sizes", "solve_clique"]


def is_clique(graph: Graph) -> bool:
    n = graph.vertex_count
    return graph.edge_count == n * (n - 1) // 2


def split_sizes(instance: Instance) -> List[int]:
    """Part sizes with the large parts first."""
    bounds = instance.bounds
    return [bounds.large] * bounds.num_large + [bounds.small] * (instance.parts - bounds.num_large)


def solve_clique(instance: Instance) -> Partition:
    """Cuts the vertex order into num_large large parts, then small ones."""
    if not is_clique(instance.graph):
        raise PreconditionError("clique", "graph is not complete")
    assignment = []
    for part_id, size in enumerate(split_sizes(instance)):
        assignment.extend([part_id] * size)
    return Partition(assignment)
