"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from dataclasses import replace
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import logging

import networkx as nx

from .configurations import ConfigurationProgram, PieceConfiguration, PieceType, build_piece_configurations, group_pieces
from .errors import PreconditionError
from .graph import Instance, Partition, is_connected_subset, verify_partition
from .integrity import components_without
from .limits import Budget
from .matching import solve_small_parts
from .modulators import Family, in_family
from .partitions import set_partitions

__all__ = ["solve_three_pvc"]


class _ThreePathCoverSearch:
    def __init__(self, instance: Instance, modulator: Sequence[int], budget: Budget) -> None:
        self.instance = instance
        self.graph = instance.graph
        self.bounds = instance.bounds
        self.budget = budget
        self.modulator = list(modulator)
        self.members = set(modulator)
        self.pieces = components_without(self.graph, self.members)

    def run(self) -> Optional[Partition]:
        if self.bounds.large <= 2:
            return solve_small_parts(self.instance)
        if self.instance.parts > len(self.modulator):
            if self.bounds.small >= 3:
                # a part of three or more vertices needs a modulator vertex
                return None
            return self._many_parts()
        return self._few_parts()

    # p > k, parts of two and three vertices

    def _outside(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(u for u in self.graph.neighbours(v) if u in self.members))

    def _many_parts(self) -> Optional[Partition]:
        k = len(self.modulator)
        singles = [piece[0] for piece in self.pieces if len(piece) == 1]
        if self.bounds.num_large > k:
            logging.debug(f"3pvc: {self.bounds.num_large} large parts but only {k} modulator vertices")
            return None
        if len(singles) > 2 * k:
            return None

        # two-vertex pieces oriented so that equal types line up
        self.pairs: List[Tuple[int, int]] = []
        self.pair_types: Dict[tuple, List[int]] = {}
        for piece in self.pieces:
            if len(piece) != 2:
                continue
            a, b = piece
            if (self._outside(b), self._outside(a)) < (self._outside(a), self._outside(b)):
                a, b = b, a
            self.pair_types.setdefault((self._outside(a), self._outside(b)), []).append(len(self.pairs))
            self.pairs.append((a, b))

        for blocks in set_partitions(self.modulator, self.instance.parts):
            if any(len(block) > self.bounds.large for block in blocks):
                continue
            for chosen in combinations(range(len(blocks)), self.bounds.num_large):
                self.budget.count_guess()
                targets = [self.bounds.large if i in chosen else self.bounds.small for i in range(len(blocks))]
                if any(len(block) > target for block, target in zip(blocks, targets)):
                    continue
                found = self._place_singles(blocks, targets, singles)
                if found is not None:
                    return found
        return None

    def _place_singles(self, blocks: List[Tuple[int, ...]], targets: List[int], singles: List[int]) -> Optional[Partition]:
        groups = [list(block) for block in blocks]

        def place(index: int) -> Optional[Partition]:
            self.budget.tick()
            if index == len(singles):
                return self._fill_pairs(groups, targets)
            v = singles[index]
            touching = set(self.graph.neighbours(v))
            for i, group in enumerate(groups):
                if len(group) >= targets[i] or not touching.intersection(blocks[i]):
                    continue
                group.append(v)
                found = place(index + 1)
                group.pop()
                if found is not None:
                    return found
            return None

        return place(0)

    def _fill_pairs(self, groups: List[List[int]], targets: List[int]) -> Optional[Partition]:
        slots = [i for i, group in enumerate(groups) for _ in range(targets[i] - len(group))]
        # pair index -> how many of its vertices are taken
        taken: Dict[int, int] = {}
        owner_of_pair = {v: p for p, pair in enumerate(self.pairs) for v in pair}
        groups = [list(group) for group in groups]

        def candidates() -> List[int]:
            picks = []
            for p, count in sorted(taken.items()):
                if count == 1:
                    a, b = self.pairs[p]
                    picks.append(b if any(a in group for group in groups) else a)
            for (left, right), members in sorted(self.pair_types.items()):
                fresh = next((p for p in members if p not in taken), None)
                if fresh is None:
                    continue
                a, b = self.pairs[fresh]
                picks.append(a)
                if left != right:
                    picks.append(b)
            return picks

        def fill(index: int) -> Optional[Partition]:
            self.budget.tick()
            if index > 0 and (index == len(slots) or slots[index] != slots[index - 1]):
                finished = slots[index - 1]
                if not is_connected_subset(self.graph, groups[finished]):
                    return None
            if index == len(slots):
                if any(count == 1 for count in taken.values()):
                    return None
                parts = [list(group) for group in groups]
                parts.extend(list(pair) for p, pair in enumerate(self.pairs) if p not in taken)
                return Partition.from_parts(self.instance.n, parts)
            i = slots[index]
            for v in candidates():
                p = owner_of_pair[v]
                taken[p] = taken.get(p, 0) + 1
                groups[i].append(v)
                found = fill(index + 1)
                groups[i].pop()
                taken[p] -= 1
                if not taken[p]:
                    del taken[p]
                if found is not None:
                    return found
            return None

        # blocks that need nothing still have to be connected
        for i, group in enumerate(groups):
            if len(group) == targets[i] and not is_connected_subset(self.graph, group):
                return None
        return fill(0)

    # p <= k, configuration program with grafted connectors

    def _few_parts(self) -> Optional[Partition]:
        types = group_pieces(self.graph, self.pieces, self.modulator)
        for blocks in set_partitions(self.modulator, self.instance.parts):
            if any(len(block) > self.bounds.large for block in blocks):
                continue
            parts = list(blocks) + [()] * (self.instance.parts - len(blocks))
            configurations = [build_piece_configurations(t.representative, self.graph, parts) for t in types]
            if any(not configs for configs in configurations):
                continue
            self.budget.count_guess()
            seen: Set[FrozenSet[tuple]] = set()
            found = self._graft(parts, types, configurations, [], [0] * len(types), seen)
            if found is not None:
                return found
        return None

    def _graft(
        self,
        parts: List[Tuple[int, ...]],
        types: List[PieceType],
        configurations: List[List[PieceConfiguration]],
        fixed: List[PieceConfiguration],
        used: List[int],
        seen: Set[FrozenSet[tuple]],
    ) -> Optional[Partition]:
        self.budget.tick()
        key = frozenset((c.piece, c.assignment) for c in fixed)
        if key in seen:
            return None
        seen.add(key)

        cores = [set(part) for part in parts]
        for config in fixed:
            for v, target in zip(config.piece, config.assignment):
                cores[target].add(v)
        if any(len(core) > self.bounds.large for core in cores):
            return None
        broken = next(
            (i for i, part in enumerate(parts) if part and not is_connected_subset(self.graph, cores[i])), None
        )

        if broken is None:
            remaining = [PieceType(t.signature, t.pieces[used[i]:]) for i, t in enumerate(types) if used[i] < len(t.pieces)]
            columns = [configurations[i] for i, t in enumerate(types) if used[i] < len(t.pieces)]
            program = ConfigurationProgram(self.instance, parts, remaining, columns, fixed=fixed)
            found = program.solve(self.budget)
            if found is None:
                return None
            partition = Partition.from_parts(self.instance.n, found)
            if verify_partition(self.instance, partition):
                return partition
            logging.debug(f"3pvc: decoded program failed verification with {len(fixed)} grafts")
            return None

        components = sorted(nx.connected_components(self.graph.nx.subgraph(cores[broken])), key=min)
        first = components[0]
        others = set().union(*components[1:])
        for t, piece_type in enumerate(types):
            if used[t] == len(piece_type.pieces):
                continue
            piece = piece_type.pieces[used[t]]
            for config in configurations[t]:
                chunk = [v for v, target in zip(piece, config.assignment) if target == broken]
                if not chunk or not self._bridges(chunk, first, others):
                    continue
                fixed.append(replace(config, piece=piece))
                used[t] += 1
                found = self._graft(parts, types, configurations, fixed, used, seen)
                used[t] -= 1
                fixed.pop()
                if found is not None:
                    return found
        return None

    def _bridges(self, chunk: List[int], first: Set[int], others: Set[int]) -> bool:
        for component in nx.connected_components(self.graph.nx.subgraph(chunk)):
            touched = {u for v in component for u in self.graph.neighbours(v)}
            if touched & first and touched & others:
                return True
        return False


def solve_three_pvc(
    instance: Instance,
    modulator: Sequence[int],
    budget: Optional[Budget] = None,
) -> Optional[Partition]:
    """Exact solver for graphs whose modulator deletion leaves pieces of
    at most two vertices.

    With more parts than modulator vertices only parts of two and three
    vertices can exist; they are found by guessing the modulator parts,
    their labels and the single-vertex pieces, then pairing up the rest.
    Otherwise pieces are grafted until every modulator part is connected
    and a configuration program settles the sizes.

    Parameters:
        instance: The ECP instance.
        modulator: A 3-path vertex cover.
        budget: Optional live budget.

    """
    modulator = sorted(set(modulator))
    if not in_family(instance.graph, Family.PATH_COVER_3, modulator):
        raise PreconditionError("3pvc", "deleting the modulator leaves a path on three vertices")
    budget = budget if budget is not None else Budget.unlimited()
    found = _ThreePathCoverSearch(instance, modulator, budget).run()
    logging.debug(f"3pvc search used {budget.guesses} guesses")
    return found
