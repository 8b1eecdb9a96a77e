"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import logging

from .errors import PreconditionError
from .graph import Instance, Partition, is_connected_subset
from .limits import Budget
from .modulators import Family, in_family
from .partitions import set_partitions

__all__ = ["twin_groups", "solve_clique_modulator"]


def twin_groups(instance: Instance, outside: Sequence[int], modulator: Sequence[int]) -> Dict[FrozenSet[int], List[int]]:
    """Groups outside vertices by their neighbourhood in the modulator."""
    members = set(modulator)
    groups: Dict[FrozenSet[int], List[int]] = {}
    for v in outside:
        key = frozenset(u for u in instance.graph.neighbours(v) if u in members)
        groups.setdefault(key, []).append(v)
    return groups


class _CliqueModulatorSearch:
    def __init__(self, instance: Instance, modulator: Sequence[int], budget: Budget) -> None:
        """Branching for a graph that becomes a clique after deleting the
        modulator.

        Parameters:
            instance: The ECP instance.
            modulator: Sorted modulator vertices.
            budget: Live budget.

        """
        self.instance = instance
        self.graph = instance.graph
        self.modulator = list(modulator)
        self.budget = budget
        self.bounds = instance.bounds
        members = set(modulator)
        self.clique = [v for v in self.graph.vertices if v not in members]
        self.groups = sorted(twin_groups(instance, self.clique, modulator).items(), key=lambda kv: kv[1][0])

    def labels(self, blocks: int) -> Iterator[Tuple[int, ...]]:
        """Target sizes per modulator part, large count within budget."""
        small, large, num_large = self.bounds.small, self.bounds.large, self.bounds.num_large
        if small == large:
            yield (small,) * blocks
            return
        for choice in product((small, large), repeat=blocks):
            if sum(1 for size in choice if size == large) <= num_large:
                yield choice

    def run(self) -> Optional[Partition]:
        for blocks in set_partitions(self.modulator, self.instance.parts):
            for targets in self.labels(len(blocks)):
                if any(len(block) > size for block, size in zip(blocks, targets)):
                    continue
                found = self._designate(blocks, targets)
                if found is not None:
                    return found
        return None

    def _designate(self, blocks: List[Tuple[int, ...]], targets: Tuple[int, ...]) -> Optional[Partition]:
        owner = {u: i for i, block in enumerate(blocks) for u in block}
        order = [u for block in blocks for u in block]
        chosen: Dict[int, int] = {}

        def choose(index: int) -> Optional[Partition]:
            if index == len(order):
                return self._complete(blocks, targets, chosen)
            u = order[index]
            part = owner[u]

            # reach the part through other modulator vertices
            found = choose(index + 1)
            if found is not None:
                return found

            for key, group in self.groups:
                if u not in key:
                    continue
                picks = [v for v in group if chosen.get(v) == part]
                fresh = next((v for v in group if v not in chosen), None)
                if fresh is not None:
                    picks.append(fresh)
                for v in picks:
                    self.budget.tick()
                    added = v not in chosen
                    chosen[v] = part
                    found = choose(index + 1)
                    if added:
                        del chosen[v]
                    if found is not None:
                        return found
            return None

        return choose(0)

    def _complete(self, blocks: List[Tuple[int, ...]], targets: Tuple[int, ...], chosen: Dict[int, int]) -> Optional[Partition]:
        self.budget.count_guess()
        cores = [list(block) + sorted(v for v, part in chosen.items() if part == i) for i, block in enumerate(blocks)]
        extra = 0
        for i, core in enumerate(cores):
            if len(core) > targets[i] or not is_connected_subset(self.graph, core):
                return None
            if len(core) == len(blocks[i]):
                # no clique vertex: the block must already have its size
                if len(core) != targets[i]:
                    return None
            else:
                extra += targets[i] - len(core)

        free = [v for v in self.clique if v not in chosen]
        remaining_parts = self.instance.parts - len(blocks)
        large_used = sum(1 for size in targets if self.bounds.is_large(size))
        remaining_large = self.bounds.num_large - large_used if self.bounds.small != self.bounds.large else 0
        if remaining_large < 0 or remaining_large > remaining_parts:
            return None
        leftover = len(free) - extra
        if leftover != remaining_large * self.bounds.large + (remaining_parts - remaining_large) * self.bounds.small:
            return None

        pool = iter(free)
        parts = []
        for i, core in enumerate(cores):
            if len(core) > len(blocks[i]):
                core = core + [next(pool) for _ in range(targets[i] - len(core))]
            parts.append(core)
        sizes = [self.bounds.large] * remaining_large + [self.bounds.small] * (remaining_parts - remaining_large)
        for size in sizes:
            parts.append([next(pool) for _ in range(size)])
        return Partition.from_parts(self.instance.n, parts)


def solve_clique_modulator(
    instance: Instance,
    modulator: Sequence[int],
    budget: Optional[Budget] = None,
) -> Optional[Partition]:
    """Exact solver for graphs that become a clique after deleting modulator.

    Parameters:
        instance: The ECP instance.
        modulator: Vertex set whose deletion leaves a clique.
        budget: Optional live budget.

    """
    modulator = sorted(set(modulator))
    if not in_family(instance.graph, Family.TO_CLIQUE, modulator):
        raise PreconditionError("dclique", "deleting the modulator does not leave a clique")
    budget = budget if budget is not None else Budget.unlimited()
    found = _CliqueModulatorSearch(instance, modulator, budget).run()
    logging.debug(f"distance-to-clique search used {budget.guesses} guesses")
    return found
