"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import logging

from .errors import PreconditionError
from .graph import Instance, Partition, is_connected_subset
from .integrity import components_without
from .limits import Budget
from .matching import bipartite_max_matching
from .modulators import Family, in_family
from .partitions import set_partitions

__all__ = ["ClusterTable", "solve_cluster_modulator"]

Cores = Tuple[Tuple[int, ...], ...]
# (accumulated size per modulator part, large parts formed inside cliques)
ClusterState = Tuple[Tuple[int, ...], int]


class ClusterTable:
    def __init__(self, layers: int) -> None:
        """DP[i][(j_1..j_k, g)] with a back-pointer (previous state, donations, t)."""
        self.layers: List[Dict[ClusterState, tuple]] = [dict() for _ in range(layers + 1)]

    def __getitem__(self, index: int) -> Dict[ClusterState, tuple]:
        return self.layers[index]

    @property
    def size(self) -> int:
        return sum(len(layer) for layer in self.layers)


class _ClusterSearch:
    def __init__(self, instance: Instance, modulator: Sequence[int], budget: Budget) -> None:
        self.instance = instance
        self.graph = instance.graph
        self.bounds = instance.bounds
        self.budget = budget
        self.modulator = list(modulator)
        self.cliques = components_without(self.graph, set(modulator))
        self.clique_of = {v: i for i, clique in enumerate(self.cliques) for v in clique}

        members = set(modulator)
        classes: Dict[Tuple[int, FrozenSet[int]], List[int]] = {}
        for i, clique in enumerate(self.cliques):
            for v in clique:
                key = (i, frozenset(u for u in self.graph.neighbours(v) if u in members))
                classes.setdefault(key, []).append(v)
        # twin classes in order of their lowest vertex
        self.classes = sorted(classes.items(), key=lambda kv: kv[1][0])

    def run(self) -> Optional[Partition]:
        for blocks in set_partitions(self.modulator, self.instance.parts):
            seen: Set[Cores] = set()
            for cores in self._grafts(blocks):
                if cores in seen:
                    continue
                seen.add(cores)
                self.budget.count_guess()
                if not all(is_connected_subset(self.graph, core) for core in cores):
                    continue
                found = self._fill(blocks, cores)
                if found is not None:
                    return found
        return None

    def _picks(self, group: List[int], chosen: Dict[int, int], part: int, skip: int = -1) -> List[int]:
        """Twin-class representatives: vertices this part already holds,
        then the lowest unclaimed one."""
        picks = [v for v in group if chosen.get(v) == part and v != skip]
        fresh = next((v for v in group if v not in chosen and v != skip), None)
        if fresh is not None:
            picks.append(fresh)
        return picks

    def _grafts(self, blocks: List[Tuple[int, ...]]) -> Iterator[Cores]:
        """Cores: each modulator part plus up to two grafted cluster vertices
        per modulator vertex (u - v1 - v2 with v1, v2 in one clique)."""
        owner = {u: i for i, block in enumerate(blocks) for u in block}
        order = [u for block in blocks for u in block]
        chosen: Dict[int, int] = {}
        sizes = [len(block) for block in blocks]
        large = self.bounds.large

        def claim(v: int, part: int) -> bool:
            if v in chosen:
                return False
            chosen[v] = part
            sizes[part] += 1
            return True

        def release(v: int, part: int, added: bool) -> None:
            if added:
                del chosen[v]
                sizes[part] -= 1

        def step(index: int) -> Iterator[Cores]:
            self.budget.tick()
            if any(size > large for size in sizes):
                return
            if index == len(order):
                yield tuple(
                    tuple(sorted(list(block) + [v for v, part in chosen.items() if part == i]))
                    for i, block in enumerate(blocks)
                )
                return
            u = order[index]
            part = owner[u]
            yield from step(index + 1)

            for (clique, key), group in self.classes:
                if u not in key:
                    continue
                for v1 in self._picks(group, chosen, part):
                    added1 = claim(v1, part)
                    yield from step(index + 1)
                    for (other_clique, _), other in self.classes:
                        if other_clique != clique:
                            continue
                        for v2 in self._picks(other, chosen, part, skip=v1):
                            added2 = claim(v2, part)
                            yield from step(index + 1)
                            release(v2, part, added2)
                    release(v1, part, added1)

        yield from step(0)

    @staticmethod
    def _splits(rest: int, small: int, large: int) -> List[int]:
        """Numbers t of large parts in a clique remainder of rest vertices."""
        if small == large:
            return [0] if rest % small == 0 else []
        return [t for t in range(rest // large + 1) if (rest - t * large) % small == 0]

    def _fill(self, blocks: List[Tuple[int, ...]], cores: Cores) -> Optional[Partition]:
        small, large = self.bounds.small, self.bounds.large
        counts_large = small != large
        cap = self.bounds.num_large if counts_large else 0
        used = {v for core in cores for v in core}
        parts = len(blocks)

        free = [[v for v in clique if v not in used] for clique in self.cliques]
        present = [{self.clique_of[v] for v in core if v in self.clique_of} for core in cores]
        attach = [
            {l: [v for v in free[i] if any(self.graph.has_edge(v, u) for u in blocks[l])] for l in range(parts)}
            for i in range(len(self.cliques))
        ]
        matchings: Dict[Tuple[int, Tuple[int, ...]], Optional[List[Tuple[int, int]]]] = {}

        def matching(i: int, needy: Tuple[int, ...]) -> Optional[List[Tuple[int, int]]]:
            key = (i, needy)
            if key not in matchings:
                edges = [(l, v) for l in needy for v in attach[i][l]]
                pairs = bipartite_max_matching(needy, free[i], edges)
                matchings[key] = pairs if len(pairs) == len(needy) else None
            return matchings[key]

        table = ClusterTable(len(self.cliques))
        table[0][(tuple(len(core) for core in cores), 0)] = ()

        for i in range(len(self.cliques)):
            width = len(free[i])
            for state in table[i]:
                sizes, g = state
                for donation in self._donations(sizes, width, large):
                    self.budget.tick()
                    needy = tuple(l for l in range(parts) if donation[l] > 0 and i not in present[l])
                    if needy and matching(i, needy) is None:
                        continue
                    rest = width - sum(donation)
                    grown = tuple(s + d for s, d in zip(sizes, donation))
                    for t in self._splits(rest, small, large):
                        if g + t > cap:
                            continue
                        new = (grown, g + t)
                        if new not in table[i + 1]:
                            table[i + 1][new] = (state, donation, t)
            self.budget.count_states(len(table[i + 1]))

        final = table[len(self.cliques)]
        for sizes, g in final:
            if any(s not in (small, large) for s in sizes):
                continue
            large_parts = sum(1 for s in sizes if s == large) if counts_large else 0
            if large_parts + g == cap:
                return self._witness(table, (sizes, g), present, cores, free, matching)
        return None

    def _donations(self, sizes: Tuple[int, ...], width: int, large: int) -> Iterator[Tuple[int, ...]]:
        donation: List[int] = []

        def pick(l: int, left: int) -> Iterator[Tuple[int, ...]]:
            if l == len(sizes):
                yield tuple(donation)
                return
            for amount in range(min(large - sizes[l], left) + 1):
                donation.append(amount)
                yield from pick(l + 1, left - amount)
                donation.pop()

        yield from pick(0, width)

    def _witness(self, table, accept, present, cores, free, matching) -> Partition:
        small, large = self.bounds.small, self.bounds.large
        parts = [list(core) for core in cores]
        state = accept
        for i in reversed(range(len(self.cliques))):
            previous, donation, t = table[i + 1][state]
            needy = tuple(l for l in range(len(cores)) if donation[l] > 0 and i not in present[l])
            pool = list(free[i])
            for l, v in matching(i, needy) or []:
                parts[l].append(v)
                pool.remove(v)
            for l, amount in enumerate(donation):
                amount -= 1 if l in needy else 0
                parts[l].extend(pool[:amount])
                pool = pool[amount:]
            for size in [large] * t + [small] * ((len(pool) - t * large) // small):
                parts.append(pool[:size])
                pool = pool[size:]
            state = previous
        return Partition.from_parts(self.instance.n, parts)


def solve_cluster_modulator(
    instance: Instance,
    modulator: Sequence[int],
    budget: Optional[Budget] = None,
) -> Optional[Partition]:
    """Exact solver for graphs that become a cluster graph after deleting
    modulator.

    Parameters:
        instance: The ECP instance.
        modulator: Vertex set whose deletion leaves disjoint cliques.
        budget: Optional live budget.

    """
    modulator = sorted(set(modulator))
    if not in_family(instance.graph, Family.TO_CLUSTER, modulator):
        raise PreconditionError("dcluster", "deleting the modulator does not leave a cluster graph")
    budget = budget if budget is not None else Budget.unlimited()
    found = _ClusterSearch(instance, modulator, budget).run()
    logging.debug(f"distance-to-cluster search used {budget.guesses} core guesses")
    return found
