"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import logging

from .diversity import INDEPENDENT, TypePartition, neighbourhood_diversity
from .errors import InvalidPartitionError, PreconditionError
from .graph import Graph, Instance, Partition, is_connected_subset, verify_partition
from .integer_program import BranchAndBound, IntegerProgram
from .limits import Budget

__all__ = [
    "enumerate_connected_type_subgraphs",
    "type_parts_program",
    "realise_type_parts",
    "solve_neighbourhood_diversity",
    "solve_type_graph",
]

Pattern = Tuple[int, ...]


def enumerate_connected_type_subgraphs(types: TypePartition) -> List[Pattern]:
    """Class-index sets inducing connected sub-graphs of the type graph,
    by size and then lexicographically."""
    d = types.diversity
    return [
        subset
        for r in range(1, d + 1)
        for subset in combinations(range(d), r)
        if is_connected_subset(types.type_graph, subset)
    ]


def _lone_independent(types: TypePartition, pattern: Pattern) -> bool:
    """A single independent class: every copy holds exactly one vertex."""
    return len(pattern) == 1 and types.class_kind[pattern[0]] == INDEPENDENT and len(types.classes[pattern[0]]) > 1


def type_parts_program(
    types: TypePartition,
    parts: int,
    small: int,
    large: int,
    patterns: Optional[List[Pattern]] = None,
) -> Tuple[IntegerProgram, List[Pattern]]:
    """Counts x_H of parts realising pattern H and x_H^t of their type-t
    vertices, with exactly `parts` parts of sizes small..large.

    Parameters:
        types: Type partition of the graph to cover.
        parts: Number of parts.
        small: Smallest part size.
        large: Largest part size.
        patterns: Connected class sets; defaults to all of them up to
            large classes.

    """
    if patterns is None:
        patterns = [h for h in enumerate_connected_type_subgraphs(types) if len(h) <= large]
    program = IntegerProgram()
    sizes = types.class_sizes
    for h, pattern in enumerate(patterns):
        program.add_variable(f"x_{h}", 0, parts)
        for t in pattern:
            program.add_variable(f"x_{h}_{t}", 0, sizes[t])

    for h, pattern in enumerate(patterns):
        members = {f"x_{h}_{t}": 1 for t in pattern}
        program.add_constraint({**members, f"x_{h}": -small}, ">=", 0, f"lower_{h}")
        program.add_constraint({**members, f"x_{h}": -large}, "<=", 0, f"upper_{h}")
        for t in pattern:
            program.add_constraint({f"x_{h}_{t}": 1, f"x_{h}": -1}, ">=", 0, f"present_{h}_{t}")
            if _lone_independent(types, pattern):
                program.add_constraint({f"x_{h}_{t}": 1, f"x_{h}": -1}, "<=", 0, f"single_{h}_{t}")

    for t in range(types.diversity):
        program.add_constraint(
            {f"x_{h}_{t}": 1 for h, pattern in enumerate(patterns) if t in pattern},
            "=",
            sizes[t],
            f"cover_{t}",
        )
    program.add_constraint({f"x_{h}": 1 for h in range(len(patterns))}, "=", parts, "parts")
    return program, patterns


def realise_type_parts(
    types: TypePartition,
    patterns: List[Pattern],
    values: Sequence[int],
    program: IntegerProgram,
    small: int,
) -> List[List[int]]:
    """Greedy realisation: one vertex of every type per copy, fill each
    copy to small, then hand out the leftovers one per copy."""
    pools = [list(members) for members in types.classes]
    value: Dict[str, int] = {v.name: x for v, x in zip(program.variables, values)}
    result: List[List[int]] = []
    for h, pattern in enumerate(patterns):
        copies = value[f"x_{h}"]
        if copies == 0:
            continue
        taken: List[int] = []
        for t in pattern:
            count = value[f"x_{h}_{t}"]
            taken.extend(pools[t][:count])
            pools[t] = pools[t][count:]
        # the first vertex of each type goes to each copy
        seeds: List[List[int]] = [[] for _ in range(copies)]
        rest: List[int] = []
        offset = 0
        for t in pattern:
            count = value[f"x_{h}_{t}"]
            block = taken[offset : offset + count]
            offset += count
            for c in range(copies):
                seeds[c].append(block[c])
            rest.extend(block[copies:])
        for copy in seeds:
            while len(copy) < small and rest:
                copy.append(rest.pop(0))
        for copy in seeds:
            if not rest:
                break
            copy.append(rest.pop(0))
        result.extend(seeds)
    return result


def solve_neighbourhood_diversity(
    instance: Instance,
    types: TypePartition,
    budget: Optional[Budget] = None,
) -> Optional[Partition]:
    """Integer programme over connected sub-graphs of the type graph.

    Parameters:
        instance: The ECP instance.
        types: neighbourhood_diversity(instance.graph).
        budget: Optional live budget.

    """
    if not types.matches(instance.graph):
        raise PreconditionError("nd", "type partition does not belong to the graph")
    budget = budget if budget is not None else Budget.unlimited()
    bounds = instance.bounds
    program, patterns = type_parts_program(types, instance.parts, bounds.small, bounds.large)
    logging.debug(f"nd program: {len(patterns)} patterns, {program}")
    values = BranchAndBound(program, budget).solve()
    if values is None:
        return None

    partition = Partition.from_parts(
        instance.n, realise_type_parts(types, patterns, values, program, bounds.small)
    )
    if not verify_partition(instance, partition):
        logging.error(f"nd realisation failed verification on {instance}")
        raise InvalidPartitionError("realised type parts do not verify")
    return partition


def solve_type_graph(graph: Graph, parts: int, small: int, large: int, budget: Budget) -> Optional[List[List[int]]]:
    """Same programme on any graph (possibly disconnected) with the given
    part count and sizes; returns the parts or None."""
    if graph.vertex_count == 0:
        return [] if parts == 0 else None
    if parts == 0:
        return None
    types = neighbourhood_diversity(graph)
    program, patterns = type_parts_program(types, parts, small, large)
    values = BranchAndBound(program, budget).solve()
    if values is None:
        return None
    return realise_type_parts(types, patterns, values, program, small)
