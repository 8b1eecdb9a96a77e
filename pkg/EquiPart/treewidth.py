"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import logging

import networkx as nx

from .decompositions import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition
from .graph import Instance, Partition
from .limits import Budget

__all__ = ["TreewidthStats", "TreewidthDP", "solve_treewidth"]

# an opened part as seen from a bag: its bag vertices and its past-vertex count
Block = Tuple[Tuple[int, ...], int]
State = Tuple[Tuple[Block, ...], int]


@dataclass
class TreewidthStats:
    total_states: int = 0
    max_states: int = 0


def _state(blocks: List[Block], g: int) -> State:
    return tuple(sorted(blocks)), g


class TreewidthDP:
    def __init__(self, instance: Instance, decomposition: NiceTreeDecomposition, budget: Budget) -> None:
        """Leaf-to-root table over opened parts of each bag.

        A state lists the opened parts (connected pieces of the partial
        solution that still touch the bag) with their past-vertex counts,
        plus the number g of closed large parts.

        Parameters:
            instance: The ECP instance.
            decomposition: Valid nice tree decomposition of instance.graph.
            budget: Live budget; one tick per generated state.

        """
        self.graph = instance.graph
        self.decomposition = decomposition
        self.budget = budget
        bounds = instance.bounds
        self.small = bounds.small
        self.large = bounds.large
        self.num_large = bounds.num_large
        self.counts_large = bounds.small != bounds.large
        self.tables: List[Dict[State, tuple]] = []
        self.stats = TreewidthStats()

    def run(self) -> Dict[State, tuple]:
        for node in self.decomposition.nodes:
            if node.kind == LEAF:
                table = {((), 0): ()}
            elif node.kind == INTRODUCE:
                table = self._introduce(self.tables[node.children[0]], node.vertex)
            elif node.kind == FORGET:
                table = self._forget(self.tables[node.children[0]], node.vertex)
            else:
                table = self._join(self.tables[node.children[0]], self.tables[node.children[1]])
            self.tables.append(table)
            self.stats.total_states += len(table)
            self.stats.max_states = max(self.stats.max_states, len(table))
            self.budget.count_states(len(table))
        return self.tables[-1]

    def _fits(self, block: Block) -> bool:
        return len(block[0]) + block[1] <= self.large

    def _introduce(self, child: Dict[State, tuple], v: int) -> Dict[State, tuple]:
        table: Dict[State, tuple] = {}
        for state in child:
            self.budget.tick()
            blocks, g = state
            touching = [
                i for i, (bag, _) in enumerate(blocks) if any(self.graph.has_edge(v, u) for u in bag)
            ]
            for r in range(len(touching) + 1):
                for merged in combinations(touching, r):
                    bag = tuple(sorted((v,) + tuple(u for i in merged for u in blocks[i][0])))
                    past = sum(blocks[i][1] for i in merged)
                    block = (bag, past)
                    if not self._fits(block):
                        continue
                    rest = [b for i, b in enumerate(blocks) if i not in merged]
                    new = _state(rest + [block], g)
                    if new not in table:
                        table[new] = (state, merged)
        return table

    def _forget(self, child: Dict[State, tuple], v: int) -> Dict[State, tuple]:
        table: Dict[State, tuple] = {}
        for state in child:
            self.budget.tick()
            blocks, g = state
            index = next(i for i, (bag, _) in enumerate(blocks) if v in bag)
            bag, past = blocks[index]
            rest = [b for i, b in enumerate(blocks) if i != index]
            if len(bag) > 1:
                new = _state(rest + [(tuple(u for u in bag if u != v), past + 1)], g)
            else:
                size = past + 1
                if size == self.large and self.counts_large:
                    g += 1
                    if g > self.num_large:
                        continue
                elif size != self.small:
                    continue
                new = _state(rest, g)
            if new not in table:
                table[new] = (state,)
        return table

    def _join(self, left: Dict[State, tuple], right: Dict[State, tuple]) -> Dict[State, tuple]:
        table: Dict[State, tuple] = {}
        for left_state in left:
            for right_state in right:
                self.budget.tick()
                g = left_state[1] + right_state[1]
                if g > self.num_large:
                    continue
                merged = self._merge_blocks(left_state[0], right_state[0])
                if merged is None:
                    continue
                new = _state(merged, g)
                if new not in table:
                    table[new] = (left_state, right_state)
        return table

    def _merge_blocks(self, left: Tuple[Block, ...], right: Tuple[Block, ...]) -> Optional[List[Block]]:
        """Blocks of both sides glued along shared bag vertices."""
        glue = nx.Graph()
        for side, blocks in (("L", left), ("R", right)):
            for i, (bag, _) in enumerate(blocks):
                glue.add_node((side, i))
                glue.add_edges_from(((side, i), ("V", u)) for u in bag)
        result = []
        for component in nx.connected_components(glue):
            bag = tuple(sorted(node[1] for node in component if node[0] == "V"))
            past = sum(
                (left if node[0] == "L" else right)[node[1]][1]
                for node in component
                if node[0] != "V"
            )
            block = (bag, past)
            if not self._fits(block):
                return None
            result.append(block)
        return result

    def witness(self, accept: State) -> Partition:
        """Replays the back-pointers and unions vertices merged on introduce."""
        parts = nx.utils.UnionFind(self.graph.vertices)
        stack = [(len(self.tables) - 1, accept)]
        while stack:
            index, state = stack.pop()
            node = self.decomposition.nodes[index]
            back = self.tables[index][state]
            if node.kind == LEAF:
                continue
            if node.kind == INTRODUCE:
                child_state, merged = back
                for i in merged:
                    parts.union(node.vertex, child_state[0][i][0][0])
                stack.append((node.children[0], child_state))
            elif node.kind == FORGET:
                stack.append((node.children[0], back[0]))
            else:
                stack.append((node.children[0], back[0]))
                stack.append((node.children[1], back[1]))

        groups = sorted((sorted(group) for group in parts.to_sets()), key=lambda g: g[0])
        return Partition.from_parts(self.graph.vertex_count, groups)


def solve_treewidth(
    instance: Instance,
    decomposition: NiceTreeDecomposition,
    budget: Optional[Budget] = None,
    stats: Optional[TreewidthStats] = None,
) -> Optional[Partition]:
    """Tree-width dynamic programme with large-part counting.

    Parameters:
        instance: The ECP instance.
        decomposition: Nice tree decomposition of instance.graph.
        budget: Optional live budget.
        stats: Receives the state counters when given.

    Returns:
        Partition, or None when no equitable connected partition exists.

    """
    decomposition.validate(instance.graph)
    budget = budget if budget is not None else Budget.unlimited()
    dp = TreewidthDP(instance, decomposition, budget)
    root = dp.run()
    if stats is not None:
        stats.total_states = dp.stats.total_states
        stats.max_states = dp.stats.max_states
    logging.debug(
        f"tree-width DP: width {decomposition.width}, {dp.stats.total_states} states, "
        f"max {dp.stats.max_states} per node"
    )

    accept = ((), instance.bounds.num_large if dp.counts_large else 0)
    if accept not in root:
        return None
    return dp.witness(accept)
