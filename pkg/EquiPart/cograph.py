"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from typing import Dict, List, Optional, Tuple

import logging

import numpy as np

from .decompositions import JOIN, LEAF, CoTree
from .errors import DecompositionError, PreconditionError
from .graph import Instance, Partition, SizeBounds
from .limits import Budget
from .matching import solve_small_parts

__all__ = ["BipartiteFeasibilityTable", "build_bipartite_table", "solve_cograph"]

State = Tuple[int, int]


class BipartiteFeasibilityTable:
    def __init__(self, n: int, bounds: SizeBounds) -> None:
        """K(k, l, g): can K_{k,l} be cut into connected small/large parts
        with exactly g large ones.

        A connected part of a complete bipartite graph needs at least one
        vertex on each side, and any such vertex set is connected.

        Parameters:
            n: Largest side total k + l to tabulate.
            bounds: Part sizes; small must be at least 2.

        """
        if bounds.small < 2:
            raise PreconditionError("cograph", "bipartite table needs parts of at least two vertices")
        self.n = n
        self.small = bounds.small
        self.large = bounds.large
        self.cap = bounds.num_large
        self.table = np.zeros((n + 1, n + 1, self.cap + 1), dtype=bool)
        self.table[0, 0, 0] = True

        shapes = self.part_shapes()
        for total in range(1, n + 1):
            for k in range(total + 1):
                l = total - k
                cell = self.table[k, l]
                for a, b, large in shapes:
                    if a > k or b > l:
                        continue
                    previous = self.table[k - a, l - b]
                    if large:
                        cell[1:] |= previous[:-1]
                    else:
                        cell |= previous

    def part_shapes(self) -> List[Tuple[int, int, bool]]:
        """(left, right, is_large) for every single connected part."""
        sizes = [(self.small, False)]
        if self.large != self.small:
            sizes.append((self.large, True))
        return [(a, size - a, large) for size, large in sizes for a in range(1, size)]

    def feasible(self, k: int, l: int, g: int) -> bool:
        if k < 0 or l < 0 or k + l > self.n or not 0 <= g <= self.cap:
            return False
        return bool(self.table[k, l, g])

    def large_counts(self, k: int, l: int) -> List[int]:
        if k + l > self.n:
            return []
        return [int(g) for g in np.flatnonzero(self.table[k, l])]

    def decompose(self, k: int, l: int, g: int) -> List[Tuple[int, int]]:
        """Part shapes (left, right) realising a feasible cell."""
        if not self.feasible(k, l, g):
            raise ValueError(f"K({k}, {l}, {g}) is infeasible")
        shapes = []
        while k or l:
            for a, b, large in self.part_shapes():
                rest = g - 1 if large else g
                if self.feasible(k - a, l - b, rest):
                    shapes.append((a, b))
                    k, l, g = k - a, l - b, rest
                    break
        return shapes


def build_bipartite_table(n: int, bounds: SizeBounds) -> BipartiteFeasibilityTable:
    return BipartiteFeasibilityTable(n, bounds)


class _CographDP:
    def __init__(self, instance: Instance, cotree: CoTree, budget: Budget) -> None:
        self.instance = instance
        self.cotree = cotree
        self.budget = budget
        self.cap = instance.bounds.num_large
        self.table = build_bipartite_table(instance.n, instance.bounds)
        # per co-tree node: state -> back-pointer
        self.states: Dict[int, Dict[State, tuple]] = {}

    def run(self) -> Dict[State, tuple]:
        return self._solve(self.cotree)

    def _solve(self, node: CoTree) -> Dict[State, tuple]:
        self.budget.tick()
        if node.kind == LEAF:
            result = {(1, 0): ()}
        else:
            left = self._solve(node.left)
            right = self._solve(node.right)
            result = self._join(left, right) if node.kind == JOIN else self._union(left, right)
        self.states[id(node)] = result
        self.budget.count_states(len(result))
        return result

    def _union(self, left: Dict[State, tuple], right: Dict[State, tuple]) -> Dict[State, tuple]:
        result: Dict[State, tuple] = {}
        for i_a, g_a in left:
            for i_b, g_b in right:
                state = (i_a + i_b, g_a + g_b)
                if state[1] <= self.cap and state not in result:
                    result[state] = ((i_a, g_a), (i_b, g_b), 0, 0, 0)
        return result

    def _join(self, left: Dict[State, tuple], right: Dict[State, tuple]) -> Dict[State, tuple]:
        result: Dict[State, tuple] = {}
        for i_a, g_a in sorted(left):
            for i_b, g_b in sorted(right):
                self.budget.tick()
                for k in range(i_a + 1):
                    for l in range(i_b + 1):
                        for g_k in self.table.large_counts(k, l):
                            g = g_a + g_b + g_k
                            state = (i_a - k + i_b - l, g)
                            if g <= self.cap and state not in result:
                                result[state] = ((i_a, g_a), (i_b, g_b), k, l, g_k)
        return result

    def realise(self, node: CoTree, state: State, parts: List[List[int]]) -> List[int]:
        """Appends the completed parts under node; returns its uncovered vertices."""
        if node.kind == LEAF:
            return [node.vertex]
        left_state, right_state, k, l, g_k = self.states[id(node)][state]
        left = sorted(self.realise(node.left, left_state, parts))
        right = sorted(self.realise(node.right, right_state, parts))
        if node.kind != JOIN:
            return left + right

        left_pool, right_pool = left[:k], right[:l]
        for a, b in self.table.decompose(k, l, g_k):
            parts.append(left_pool[:a] + right_pool[:b])
            left_pool, right_pool = left_pool[a:], right_pool[b:]
        return left[k:] + right[l:]


def solve_cograph(
    instance: Instance,
    cotree: CoTree,
    budget: Optional[Budget] = None,
) -> Optional[Partition]:
    """Co-tree dynamic programme over (uncovered vertices, large parts).

    Parameters:
        instance: ECP instance whose graph is a co-graph.
        cotree: Co-tree of instance.graph.
        budget: Optional live budget.

    Returns:
        A verified-shape partition, or None if no solution exists.

    """
    if not cotree.evaluates_to(instance.graph):
        raise DecompositionError("co-tree does not evaluate to the instance graph")
    if instance.bounds.large <= 2:
        return solve_small_parts(instance)

    budget = budget if budget is not None else Budget.unlimited()
    dp = _CographDP(instance, cotree, budget)
    root_states = dp.run()
    accept = (0, instance.bounds.num_large)
    if accept not in root_states:
        logging.info(f"co-graph DP rejects {instance}")
        return None

    parts: List[List[int]] = []
    leftover = dp.realise(cotree, accept, parts)
    if leftover:
        raise AssertionError("co-graph witness left vertices uncovered")
    return Partition.from_parts(instance.n, parts)
