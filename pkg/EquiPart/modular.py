"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import List, Optional, Tuple

import logging

import networkx as nx

from .decompositions import ModuleNode, modular_decomposition
from .diversity import CLIQUE, INDEPENDENT, TypePartition
from .errors import BudgetExceeded, Cancelled
from .graph import Graph, Instance, Partition, verify_partition
from .integer_program import BranchAndBound, IntegerProgram
from .limits import Budget, Outcome
from .locals import BUDGET, INCONCLUSIVE, NO, YES
from .neighbourhood import enumerate_connected_type_subgraphs, solve_type_graph

__all__ = ["PackingProfile", "module_types", "packing_program", "solve_modular_width"]


@dataclass(frozen=True)
class PackingProfile:
    """Numbers of small and large parts packed entirely inside a module."""

    small_parts: int
    large_parts: int

    def coverage(self, small: int, large: int) -> int:
        return self.small_parts * small + self.large_parts * large


def _is_twin_class(node: ModuleNode) -> bool:
    if node.kind == "leaf":
        return True
    return node.kind in ("series", "parallel") and all(child.kind == "leaf" for child in node.children)


def module_types(graph: Graph, node: ModuleNode) -> TypePartition:
    """Type partition of a module whose children are twin classes."""
    classes = tuple(child.vertices for child in node.children)
    kinds = tuple(
        INDEPENDENT if child.kind == "parallel" else CLIQUE for child in node.children
    )
    representatives = [members[0] for members in classes]
    edges = [
        (i, j)
        for i in range(len(classes))
        for j in range(i + 1, len(classes))
        if graph.has_edge(representatives[i], representatives[j])
    ]
    return TypePartition(classes, kinds, Graph.from_edges(len(classes), edges))


def packing_program(types: TypePartition, profile: PackingProfile, small: int, large: int) -> Tuple[IntegerProgram, list]:
    """Packs the profile's parts into the module without covering all of it.

    x_H copies of pattern H, y_H of them large, x_H^t type-t vertices.
    """
    patterns = [h for h in enumerate_connected_type_subgraphs(types) if len(h) <= large]
    program = IntegerProgram()
    total = profile.small_parts + profile.large_parts
    sizes = types.class_sizes
    for h, pattern in enumerate(patterns):
        program.add_variable(f"x_{h}", 0, total)
        program.add_variable(f"y_{h}", 0, profile.large_parts)
        for t in pattern:
            program.add_variable(f"x_{h}_{t}", 0, sizes[t])

    for h, pattern in enumerate(patterns):
        members = {f"x_{h}_{t}": 1 for t in pattern}
        # exact vertex count: small per copy plus one per large copy
        program.add_constraint(
            {**members, f"x_{h}": -small, f"y_{h}": -(large - small)}, "=", 0, f"size_{h}"
        )
        program.add_constraint({f"y_{h}": 1, f"x_{h}": -1}, "<=", 0, f"large_{h}")
        lone = len(pattern) == 1 and types.class_kind[pattern[0]] == INDEPENDENT and sizes[pattern[0]] > 1
        for t in pattern:
            program.add_constraint({f"x_{h}_{t}": 1, f"x_{h}": -1}, ">=", 0, f"present_{h}_{t}")
            if lone:
                program.add_constraint({f"x_{h}_{t}": 1, f"x_{h}": -1}, "<=", 0, f"single_{h}_{t}")

    for t in range(types.diversity):
        program.add_constraint(
            {f"x_{h}_{t}": 1 for h, pattern in enumerate(patterns) if t in pattern}, "<=", sizes[t], f"pack_{t}"
        )
    program.add_constraint({f"x_{h}": 1 for h in range(len(patterns))}, "=", total, "parts")
    if large != small:
        program.add_constraint({f"y_{h}": 1 for h in range(len(patterns))}, "=", profile.large_parts, "large")
    return program, patterns


def _packed_parts(types: TypePartition, patterns: list, program: IntegerProgram, values: List[int], small: int) -> List[List[int]]:
    value = {v.name: x for v, x in zip(program.variables, values)}
    pools = [list(members) for members in types.classes]
    result: List[List[int]] = []
    for h, pattern in enumerate(patterns):
        copies = value[f"x_{h}"]
        if copies == 0:
            continue
        seeds: List[List[int]] = [[] for _ in range(copies)]
        rest: List[int] = []
        for t in pattern:
            count = value[f"x_{h}_{t}"]
            block, pools[t] = pools[t][:count], pools[t][count:]
            for c in range(copies):
                seeds[c].append(block[c])
            rest.extend(block[copies:])
        large_copies = value[f"y_{h}"]
        for c, copy in enumerate(seeds):
            target = small + (1 if c < large_copies else 0)
            while len(copy) < target:
                copy.append(rest.pop(0))
        result.extend(seeds)
    return result


class _ModularSearch:
    def __init__(self, instance: Instance, budget: Budget) -> None:
        self.instance = instance
        self.budget = budget
        bounds = instance.bounds
        self.small = bounds.small
        self.large = bounds.large
        self.counts_large = bounds.small != bounds.large

    def run(self) -> Optional[List[List[int]]]:
        working = self.instance.graph.to_networkx()
        large_left = self.instance.bounds.num_large if self.counts_large else 0
        return self._reduce(working, self.instance.parts, large_left)

    def _pick_module(self, graph: Graph) -> Optional[ModuleNode]:
        tree = modular_decomposition(graph)
        for node in tree.walk():
            if node is tree or _is_twin_class(node):
                continue
            if all(_is_twin_class(child) for child in node.children):
                return node
        return None

    def _profiles(self, size: int, parts: int, large_left: int) -> List[PackingProfile]:
        profiles = []
        max_large = large_left if self.counts_large else 0
        for large_parts in range(min(max_large, size // self.large) + 1):
            room = size - large_parts * self.large
            for small_parts in range(min(parts - large_left, room // self.small) + 1):
                if small_parts + large_parts > 0:
                    profiles.append(PackingProfile(small_parts, large_parts))
        profiles.sort(key=lambda pr: (-pr.coverage(self.small, self.large), -pr.large_parts))
        return profiles

    def _reduce(self, working: nx.Graph, parts: int, large_left: int) -> Optional[List[List[int]]]:
        self.budget.tick()
        if working.number_of_nodes() == 0:
            return [] if parts == 0 else None
        if parts <= 0:
            return None

        order = sorted(working.nodes())
        graph = Graph.from_networkx(working)
        module = self._pick_module(graph)
        if module is None:
            found = solve_type_graph(graph, parts, self.small, self.large, self.budget)
            if found is None:
                return None
            return [[order[v] for v in part] for part in found]

        types = module_types(graph, module)
        candidates = self._profiles(len(module.vertices), parts, large_left)
        # packing nothing is always possible; the whole module then turns independent
        candidates.append(PackingProfile(0, 0))
        for profile in candidates:
            self.budget.count_guess()
            if profile.small_parts + profile.large_parts:
                program, patterns = packing_program(types, profile, self.small, self.large)
                values = BranchAndBound(program, self.budget).solve()
                if values is None:
                    continue
                packed = _packed_parts(types, patterns, program, values, self.small)
            else:
                packed = []

            used = {v for part in packed for v in part}
            leftover = [v for v in module.vertices if v not in used]
            reduced = working.copy()
            reduced.remove_nodes_from(order[v] for v in used)
            reduced.remove_edges_from(
                (order[a], order[b]) for i, a in enumerate(leftover) for b in leftover[i + 1 :]
            )
            found = self._reduce(
                reduced,
                parts - profile.small_parts - profile.large_parts,
                large_left - profile.large_parts,
            )
            if found is not None:
                return [[order[v] for v in part] for part in packed] + found
        return None


def solve_modular_width(instance: Instance, budget: Optional[Budget] = None) -> Outcome:
    """Module-by-module packing followed by the type programme.

    Each module whose children are twin classes is packed with every
    feasible profile of internal parts, most vertices first; its leftover
    becomes an independent set with the module's outside neighbourhood.

    Returns:
        Outcome yes (with partition), no, or inconclusive when the budget
        runs out or a realisation fails verification.

    """
    budget = budget if budget is not None else Budget.unlimited()
    try:
        parts = _ModularSearch(instance, budget).run()
    except (BudgetExceeded, Cancelled) as e:
        logging.warning(f"modular-width search inconclusive on {instance}: {e}")
        return Outcome(INCONCLUSIVE, detail=str(e), counters=budget.counters())

    if parts is None:
        return Outcome(NO, counters=budget.counters())
    partition = Partition.from_parts(instance.n, parts)
    if not verify_partition(instance, partition):
        logging.warning(f"modular-width realisation failed verification on {instance}")
        return Outcome(INCONCLUSIVE, detail="realisation failed verification", counters=budget.counters())
    return Outcome(YES, partition, counters=budget.counters())
