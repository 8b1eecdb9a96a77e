"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from typing import List, Optional, Set, Tuple

import networkx as nx

from .graph import Graph
from .limits import Budget

__all__ = ["vertex_integrity", "components_without"]


def components_without(graph: Graph, removed: Set[int]) -> List[List[int]]:
    """Components of graph minus removed, each sorted, ordered by minimum."""
    alive = [v for v in graph.vertices if v not in removed]
    sub = graph.nx.subgraph(alive)
    return sorted((sorted(c) for c in nx.connected_components(sub)), key=lambda c: c[0])


def _connected_prefix(graph: Graph, component: List[int], size: int) -> List[int]:
    """First size vertices of a BFS inside component; always connected."""
    inside = set(component)
    order = [component[0]]
    seen = {component[0]}
    head = 0
    while len(order) < size:
        for u in graph.neighbours(order[head]):
            if u in inside and u not in seen:
                seen.add(u)
                order.append(u)
                if len(order) == size:
                    break
        head += 1
    return order


def vertex_integrity(
    graph: Graph,
    budget: int,
    search: Optional[Budget] = None,
) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Smallest k <= budget with a set X, |X| <= k, leaving components of
    at most k vertices.

    Returns:
        (X, k) or None when the integrity exceeds budget.

    """
    removed: Set[int] = set()

    def branch(k: int) -> bool:
        if search is not None:
            search.tick()
        oversized = None
        for component in components_without(graph, removed):
            if len(component) > k:
                oversized = component
                break
        if oversized is None:
            return True
        if len(removed) == k:
            return False
        # some vertex of any connected (k+1)-subset must be deleted
        for v in _connected_prefix(graph, oversized, k + 1):
            removed.add(v)
            if branch(k):
                return True
            removed.discard(v)
        return False

    for k in range(1, min(budget, graph.vertex_count) + 1):
        removed.clear()
        if branch(k):
            return tuple(sorted(removed)), k
    return None
