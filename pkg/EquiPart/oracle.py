"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from typing import Callable, List, Optional, Set

import logging

import networkx as nx

from .errors import BudgetExceeded, Cancelled
from .graph import Instance, Partition, SizeBounds
from .limits import Budget, Outcome, SearchLimits
from .locals import BUDGET, NO, YES

__all__ = ["solve_exact", "enumerate_all", "is_packable"]


def is_packable(size: int, small: int, large: int, max_small: int, max_large: int) -> bool:
    """True iff size = a*small + b*large with a <= max_small, b <= max_large."""
    if small == large:
        return size % small == 0 and size // small <= max_small + max_large
    for b in range(min(max_large, size // large) + 1):
        rest = size - b * large
        if rest % small == 0 and rest // small <= max_small:
            return True
    return False


class _CanonicalSearch:
    def __init__(self, instance: Instance, budget: Budget) -> None:
        """Seeds each part at the lowest unassigned vertex and grows it
        through connected extensions, so every unlabeled partition is
        visited at most once.

        Parameters:
            instance: The ECP instance.
            budget: Live budget, ticked once per search node.

        """
        self.graph = instance.graph
        self.parts = instance.parts
        self.budget = budget

        bounds: SizeBounds = instance.bounds
        self.small = bounds.small
        self.large = bounds.large
        if bounds.small == bounds.large:
            self.need_small, self.need_large = instance.parts, 0
        else:
            self.need_small, self.need_large = instance.parts - bounds.num_large, bounds.num_large

        self.assignment = [-1] * self.graph.vertex_count
        self.unassigned = self.graph.vertex_count

    def run(self, on_found: Callable[[List[int]], bool]) -> bool:
        """Calls on_found for each valid assignment until it returns True."""
        self.on_found = on_found
        return self._open_part(0, self.need_small, self.need_large)

    def _open_part(self, part_id: int, need_small: int, need_large: int) -> bool:
        if self.unassigned == 0:
            if need_small == 0 and need_large == 0:
                return self.on_found(self.assignment)
            return False

        seed = self.assignment.index(-1)
        return self._grow(part_id, need_small, need_large, [seed], {seed}, self._frontier(seed, {seed}, set()), set())

    def _frontier(self, v: int, members: Set[int], blocked: Set[int]) -> List[int]:
        return [
            u
            for u in self.graph.neighbours(v)
            if self.assignment[u] == -1 and u not in members and u not in blocked
        ]

    def _grow(
        self,
        part_id: int,
        need_small: int,
        need_large: int,
        members: List[int],
        member_set: Set[int],
        candidates: List[int],
        blocked: Set[int],
    ) -> bool:
        self.budget.tick()
        size = len(members)

        if size == self.small and need_small > 0:
            if self._close(part_id, members, need_small - 1, need_large):
                return True
        elif size == self.large and need_large > 0:
            if self._close(part_id, members, need_small, need_large - 1):
                return True

        if size >= self.large:
            return False

        for i, w in enumerate(candidates):
            branch_blocked = blocked | set(candidates[:i])
            member_set.add(w)
            members.append(w)
            known = set(candidates[i + 1 :])
            extension = candidates[i + 1 :] + [
                u for u in self._frontier(w, member_set, branch_blocked) if u not in known
            ]
            found = self._grow(
                part_id, need_small, need_large, members, member_set, extension, branch_blocked
            )
            members.pop()
            member_set.discard(w)
            if found:
                return True
        return False

    def _close(self, part_id: int, members: List[int], need_small: int, need_large: int) -> bool:
        for v in members:
            self.assignment[v] = part_id
        self.unassigned -= len(members)
        try:
            if self._remainder_packable(need_small, need_large):
                return self._open_part(part_id + 1, need_small, need_large)
            return False
        finally:
            for v in members:
                self.assignment[v] = -1
            self.unassigned += len(members)

    def _remainder_packable(self, need_small: int, need_large: int) -> bool:
        free = [v for v, part in enumerate(self.assignment) if part == -1]
        if not free:
            return True
        for component in nx.connected_components(self.graph.nx.subgraph(free)):
            if not is_packable(len(component), self.small, self.large, need_small, need_large):
                return False
        return True


def _start(limits: Optional[SearchLimits], budget: Optional[Budget]) -> Budget:
    if budget is not None:
        return budget
    return Budget(limits)


def solve_exact(
    instance: Instance,
    limits: Optional[SearchLimits] = None,
    budget: Optional[Budget] = None,
) -> Outcome:
    """Exhaustive canonical search for one equitable connected partition.

    Parameters:
        instance: The ECP instance.
        limits: Node and time caps, ignored when budget is given.
        budget: Live budget to charge, e.g. one carrying a cancel event.

    Returns:
        Outcome with status yes (and a partition), no, or budget.

    """
    budget = _start(limits, budget)
    found: List[Partition] = []

    def keep_first(assignment: List[int]) -> bool:
        found.append(Partition(assignment))
        return True

    try:
        _CanonicalSearch(instance, budget).run(keep_first)
    except (BudgetExceeded, Cancelled) as e:
        logging.info(f"Oracle stopped after {budget.nodes} nodes: {e}")
        return Outcome(BUDGET, detail=str(e), counters=budget.counters())

    if found:
        return Outcome(YES, found[0], counters=budget.counters())
    return Outcome(NO, counters=budget.counters())


def enumerate_all(
    instance: Instance,
    limits: Optional[SearchLimits] = None,
    budget: Optional[Budget] = None,
) -> int:
    """Counts the unlabeled equitable connected partitions.

    Raises BudgetExceeded when a cap is hit.
    """
    budget = _start(limits, budget)
    count = 0

    def count_all(assignment: List[int]) -> bool:
        nonlocal count
        count += 1
        return False

    _CanonicalSearch(instance, budget).run(count_all)
    return count
