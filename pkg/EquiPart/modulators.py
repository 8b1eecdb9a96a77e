"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Set, Tuple

import logging

import networkx as nx

from .graph import Graph
from .limits import Budget

__all__ = ["Family", "ModulatorReport", "in_family", "find_modulator"]


class Family(Enum):
    VERTEX_COVER = "vertex-cover"
    PATH_COVER_3 = "3-path-cover"
    PATH_COVER_4 = "4-path-cover"
    TO_CLIQUE = "to-clique"
    TO_CLUSTER = "to-cluster"
    TO_DISJOINT_PATHS = "to-disjoint-paths"

    @property
    def path_length(self) -> Optional[int]:
        """Forbidden path length d for the d-path-cover families."""
        return {
            Family.VERTEX_COVER: 2,
            Family.PATH_COVER_3: 3,
            Family.PATH_COVER_4: 4,
        }.get(self)


@dataclass(frozen=True)
class ModulatorReport:
    family: Family
    modulator: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.modulator)


def _remaining(graph: Graph, removed: Set[int]) -> List[int]:
    return [v for v in graph.vertices if v not in removed]


def _find_path(graph: Graph, alive: Set[int], d: int) -> Optional[Tuple[int, ...]]:
    """A simple path on d vertices inside alive, or None."""
    path: List[int] = []
    on_path: Set[int] = set()

    def extend(v: int) -> bool:
        path.append(v)
        on_path.add(v)
        if len(path) == d:
            return True
        for u in graph.neighbours(v):
            if u in alive and u not in on_path and extend(u):
                return True
        path.pop()
        on_path.discard(v)
        return False

    for start in sorted(alive):
        if extend(start):
            return tuple(path)
    return None


def _witness(graph: Graph, family: Family, removed: Set[int]) -> Optional[Tuple[int, ...]]:
    """A vertex set of which every modulator must contain one vertex.

    Returns () when a vertex can be deleted without branching, None when
    the remainder is already in the family.
    """
    alive = set(_remaining(graph, removed))

    if family.path_length is not None:
        return _find_path(graph, alive, family.path_length)

    if family is Family.TO_CLIQUE:
        for u in sorted(alive):
            for v in sorted(alive):
                if u < v and not graph.has_edge(u, v):
                    return (u, v)
        return None

    if family is Family.TO_CLUSTER:
        for v in sorted(alive):
            around = [u for u in graph.neighbours(v) if u in alive]
            for i, u in enumerate(around):
                for w in around[i + 1 :]:
                    if not graph.has_edge(u, w):
                        return (u, v, w)
        return None

    # disjoint paths
    for v in sorted(alive):
        around = [u for u in graph.neighbours(v) if u in alive]
        if len(around) >= 3:
            return (v, *around[:3])
    return ()


def _cycle_vertex(graph: Graph, alive: Iterable[int]) -> Optional[int]:
    """Lowest vertex of the first cycle component once degrees are <= 2."""
    sub = graph.nx.subgraph(alive)
    for component in sorted(nx.connected_components(sub), key=min):
        if sub.subgraph(component).number_of_edges() == len(component) and len(component) >= 3:
            return min(component)
    return None


def in_family(graph: Graph, family: Family, removed: Iterable[int] = ()) -> bool:
    """True iff graph minus removed belongs to family."""
    removed = set(removed)
    alive = _remaining(graph, removed)
    if family is Family.TO_DISJOINT_PATHS:
        if not alive:
            return True
        sub = graph.nx.subgraph(alive)
        return max(d for _, d in sub.degree()) <= 2 and nx.is_forest(sub)
    return _witness(graph, family, removed) is None


def find_modulator(
    graph: Graph,
    family: Family,
    budget: int,
    search: Optional[Budget] = None,
) -> Optional[ModulatorReport]:
    """Minimum modulator of size at most budget, by iterative deepening.

    Parameters:
        graph: Input graph.
        family: Target graph family after deletion.
        budget: Largest modulator size to try.
        search: Optional live budget ticked at every branching node.

    Returns:
        ModulatorReport or None if every modulator exceeds budget.

    """
    removed: Set[int] = set()

    def branch(k: int) -> bool:
        if search is not None:
            search.tick()
        witness = _witness(graph, family, removed)
        if witness is None:
            return True
        if witness == ():
            v = _cycle_vertex(graph, _remaining(graph, removed))
            if v is None:
                return True
            witness = (v,)
        if k == 0:
            return False
        for v in witness:
            removed.add(v)
            if branch(k - 1):
                return True
            removed.discard(v)
        return False

    for k in range(min(budget, graph.vertex_count) + 1):
        removed.clear()
        if branch(k):
            logging.debug(f"{family.value} modulator of size {k}: {sorted(removed)}")
            return ModulatorReport(family, tuple(sorted(removed)))
    return None
