"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple

import logging

import networkx as nx
from networkx.algorithms import bipartite

from .errors import PreconditionError
from .graph import Instance, Partition

__all__ = ["bipartite_max_matching", "solve_small_parts"]


def bipartite_max_matching(
    left: Sequence[Hashable],
    right: Sequence[Hashable],
    edges: Iterable[Tuple[Hashable, Hashable]],
) -> List[Tuple[Hashable, Hashable]]:
    """Maximum matching as (left, right) pairs sorted by left.

    left and right may share labels; they are kept apart internally.
    """
    g = nx.Graph()
    g.add_nodes_from(("L", u) for u in left)
    g.add_nodes_from(("R", v) for v in right)
    for u, v in edges:
        if ("L", u) not in g or ("R", v) not in g:
            raise ValueError(f"edge ({u}, {v}) leaves left x right")
        g.add_edge(("L", u), ("R", v))

    if g.number_of_edges() == 0:
        return []
    matching = bipartite.hopcroft_karp_matching(g, top_nodes=[("L", u) for u in left])
    pairs = [(u[1], v[1]) for u, v in matching.items() if u[0] == "L"]
    order = {u: i for i, u in enumerate(left)}
    return sorted(pairs, key=lambda pair: order[pair[0]])


def solve_small_parts(instance: Instance) -> Optional[Partition]:
    """Instances whose parts have at most two vertices.

    Yes iff a maximum matching has at least n - p edges; that many pairs
    become the two-vertex parts.
    """
    bounds = instance.bounds
    if bounds.large > 2:
        raise PreconditionError("small-parts", f"large parts have {bounds.large} vertices")

    pairs_needed = instance.n - instance.parts
    matching = sorted(
        (min(u, v), max(u, v))
        for u, v in nx.max_weight_matching(instance.graph.nx, maxcardinality=True)
    )
    logging.debug(f"maximum matching has {len(matching)} edges, need {pairs_needed}")
    if len(matching) < pairs_needed:
        return None

    parts = [list(pair) for pair in matching[:pairs_needed]]
    paired = {v for pair in parts for v in pair}
    parts.extend([v] for v in instance.graph.vertices if v not in paired)
    return Partition.from_parts(instance.n, parts)
