"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import logging

import networkx as nx

from .errors import PreconditionError
from .graph import Graph, Instance, Partition, verify_partition
from .integer_program import BranchAndBound, IntegerProgram
from .integrity import components_without
from .limits import Budget, Outcome
from .locals import DELEGATED, NO, YES
from .partitions import set_partitions

__all__ = [
    "PieceConfiguration",
    "PieceType",
    "build_piece_configurations",
    "group_pieces",
    "Requirement",
    "ConfigurationProgram",
    "spanning_trees",
    "solve_vertex_integrity",
]

# (part, one component of G[X_i], another component of G[X_i])
Requirement = Tuple[int, FrozenSet[int], FrozenSet[int]]


@dataclass(frozen=True)
class PieceConfiguration:
    piece: Tuple[int, ...]
    assignment: Tuple[int, ...]
    sizes: Tuple[int, ...]
    # modulator pairs (u, v), u < v, touched by one chunk component
    connections: FrozenSet[Tuple[int, int]]

    def chunk(self, part: int) -> List[int]:
        return [v for v, target in zip(self.piece, self.assignment) if target == part]

    def realises(self, requirement: Requirement) -> bool:
        _, first, second = requirement
        return any(
            (u in first and v in second) or (u in second and v in first) for u, v in self.connections
        )


def build_piece_configurations(
    piece: Sequence[int],
    graph: Graph,
    modulator_parts: Sequence[Sequence[int]],
) -> List[PieceConfiguration]:
    """All valid ways to hand the vertices of one piece to the parts.

    A chunk sent to a part with modulator vertices must have every
    component adjacent to them; a chunk sent to a part without modulator
    vertices must be connected.

    Parameters:
        piece: Vertices of one component of G minus the modulator; the
            assignment tuples follow this order.
        graph: The host graph.
        modulator_parts: X_1..X_p, possibly empty.

    """
    piece = tuple(piece)
    owners = [set(part) for part in modulator_parts]
    result = []
    for assignment in product(range(len(modulator_parts)), repeat=len(piece)):
        sizes = [0] * len(modulator_parts)
        for target in assignment:
            sizes[target] += 1
        connections: Set[Tuple[int, int]] = set()
        valid = True
        for part in range(len(modulator_parts)):
            if not sizes[part]:
                continue
            chunk = [v for v, target in zip(piece, assignment) if target == part]
            components = list(nx.connected_components(graph.nx.subgraph(chunk)))
            if not owners[part]:
                if len(components) != 1:
                    valid = False
                    break
                continue
            for component in components:
                touched = sorted({u for v in component for u in graph.neighbours(v) if u in owners[part]})
                if not touched:
                    valid = False
                    break
                connections.update((a, b) for i, a in enumerate(touched) for b in touched[i + 1 :])
            if not valid:
                break
        if valid:
            result.append(PieceConfiguration(piece, assignment, tuple(sizes), frozenset(connections)))
    return result


@dataclass
class PieceType:
    """Pieces with the same shape and the same modulator adjacency, each
    stored in the vertex order that realises the shared signature."""

    signature: tuple
    pieces: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def representative(self) -> Tuple[int, ...]:
        return self.pieces[0]


def _signature(graph: Graph, piece: Sequence[int], modulator: Set[int]) -> Tuple[tuple, Tuple[int, ...]]:
    best = None
    for order in permutations(piece):
        position = {v: i for i, v in enumerate(order)}
        edges = tuple(
            sorted((position[v], position[u]) for v in order for u in graph.neighbours(v) if u in position and position[v] < position[u])
        )
        outside = tuple(tuple(sorted(u for u in graph.neighbours(v) if u in modulator)) for v in order)
        key = (len(order), edges, outside)
        if best is None or key < best[0]:
            best = (key, order)
    return best


def group_pieces(graph: Graph, pieces: Sequence[Sequence[int]], modulator: Sequence[int]) -> List[PieceType]:
    """Groups pieces into types, in order of first appearance."""
    members = set(modulator)
    types: Dict[tuple, PieceType] = {}
    for piece in pieces:
        key, order = _signature(graph, piece, members)
        types.setdefault(key, PieceType(key)).pieces.append(tuple(order))
    return list(types.values())


def spanning_trees(count: int) -> List[List[Tuple[int, int]]]:
    """Every labelled spanning tree on count nodes, via Pruefer codes."""
    if count <= 1:
        return [[]]
    if count == 2:
        return [[(0, 1)]]
    trees = []
    for code in product(range(count), repeat=count - 2):
        tree = nx.from_prufer_sequence(list(code))
        trees.append(sorted((min(u, v), max(u, v)) for u, v in tree.edges()))
    return trees


class ConfigurationProgram:
    def __init__(
        self,
        instance: Instance,
        parts: Sequence[Tuple[int, ...]],
        types: Sequence[PieceType],
        configurations: Sequence[List[PieceConfiguration]],
        fixed: Sequence[PieceConfiguration] = (),
        requirements: Sequence[Requirement] = (),
    ) -> None:
        """One configuration per piece, sizes linked through slacks.

        Parameters:
            instance: The ECP instance.
            parts: X_1..X_p, empty tuples for parts without modulator vertices.
            types: Piece types still to be configured.
            configurations: Valid configurations of each type's representative.
            fixed: Configurations already chosen for individual pieces.
            requirements: Component pairs some chunk must connect.

        """
        self.instance = instance
        self.parts = list(parts)
        self.types = list(types)
        self.fixed = list(fixed)
        bounds = instance.bounds
        self.small = bounds.small
        self.large = bounds.large

        fixed_sizes = [sum(c.sizes[i] for c in self.fixed) for i in range(len(self.parts))]
        fixed_free = [sum(1 for c in self.fixed if c.sizes[i]) for i in range(len(self.parts))]
        pending = [r for r in requirements if not any(c.realises(r) for c in self.fixed)]

        self.program = IntegerProgram()
        self.columns: List[List[PieceConfiguration]] = []
        for t, piece_type in enumerate(self.types):
            # configurations with equal columns are interchangeable
            seen: Dict[tuple, PieceConfiguration] = {}
            for config in configurations[t]:
                key = (config.sizes, tuple(config.realises(r) for r in pending))
                seen.setdefault(key, config)
            self.columns.append(list(seen.values()))
            for c in range(len(self.columns[t])):
                self.program.add_variable(f"y_{t}_{c}", 0, len(piece_type.pieces))
        for i in range(len(self.parts)):
            self.program.add_variable(f"slack_{i}", 0, self.large - self.small)

        for t, piece_type in enumerate(self.types):
            self.program.add_constraint(
                {f"y_{t}_{c}": 1 for c in range(len(self.columns[t]))}, "=", len(piece_type.pieces), f"local_{t}"
            )
        for i, members in enumerate(self.parts):
            row = {f"slack_{i}": 1}
            for t, column in enumerate(self.columns):
                for c, config in enumerate(column):
                    if config.sizes[i]:
                        row[f"y_{t}_{c}"] = config.sizes[i]
            self.program.add_constraint(row, "=", self.large - len(members) - fixed_sizes[i], f"link_{i}")
            if not members:
                used = {
                    f"y_{t}_{c}": 1
                    for t, column in enumerate(self.columns)
                    for c, config in enumerate(column)
                    if config.sizes[i]
                }
                self.program.add_constraint(used, "<=", 1 - fixed_free[i], f"free_{i}")
        self.program.add_constraint(
            {f"slack_{i}": 1 for i in range(len(self.parts))},
            "=",
            len(self.parts) * self.large - instance.n,
            "slacks",
        )
        for r, requirement in enumerate(pending):
            row = {
                f"y_{t}_{c}": 1
                for t, column in enumerate(self.columns)
                for c, config in enumerate(column)
                if config.realises(requirement)
            }
            self.program.add_constraint(row, ">=", 1, f"connect_{r}")

    def solve(self, budget: Budget) -> Optional[List[List[int]]]:
        """Part vertex lists decoded from a feasible point, or None."""
        values = BranchAndBound(self.program, budget).solve()
        if values is None:
            return None
        value = {v.name: x for v, x in zip(self.program.variables, values)}

        result = [list(members) for members in self.parts]
        for config in self.fixed:
            for v, target in zip(config.piece, config.assignment):
                result[target].append(v)
        for t, piece_type in enumerate(self.types):
            pieces = iter(piece_type.pieces)
            for c, config in enumerate(self.columns[t]):
                for _ in range(value[f"y_{t}_{c}"]):
                    for v, target in zip(next(pieces), config.assignment):
                        result[target].append(v)
        return [sorted(part) for part in result]


def _component_sets(graph: Graph, members: Sequence[int]) -> List[FrozenSet[int]]:
    if not members:
        return []
    return [frozenset(c) for c in sorted(nx.connected_components(graph.nx.subgraph(members)), key=min)]


def solve_vertex_integrity(
    instance: Instance,
    witness: Tuple[Sequence[int], int],
    budget: Optional[Budget] = None,
) -> Outcome:
    """Configuration programme for a vertex-integrity witness (X, k).

    Guesses the partition of X and a spanning tree over the components
    of every G[X_i]; pieces are grouped into types whose configuration
    counts are the program variables.

    Returns:
        Outcome yes, no, or delegated when p > k.

    """
    modulator, k = sorted(set(witness[0])), witness[1]
    graph = instance.graph
    pieces = components_without(graph, set(modulator))
    if len(modulator) > k or any(len(piece) > k for piece in pieces):
        raise PreconditionError("vi", f"({modulator}, {k}) is not a vertex-integrity witness")
    if instance.parts > k:
        logging.info(f"vi: p = {instance.parts} > k = {k}, delegating")
        return Outcome(DELEGATED)

    budget = budget if budget is not None else Budget.unlimited()
    types = group_pieces(graph, pieces, modulator)
    for blocks in set_partitions(modulator, instance.parts):
        if any(len(block) > instance.bounds.large for block in blocks):
            continue
        parts = list(blocks) + [()] * (instance.parts - len(blocks))
        configurations = [build_piece_configurations(t.representative, graph, parts) for t in types]
        if any(not configs for configs in configurations):
            continue
        components = [_component_sets(graph, part) for part in parts]
        trees = [spanning_trees(len(c)) for c in components]
        for choice in product(*trees):
            budget.count_guess()
            requirements = [
                (i, components[i][a], components[i][b]) for i, tree in enumerate(choice) for a, b in tree
            ]
            program = ConfigurationProgram(instance, parts, types, configurations, requirements=requirements)
            found = program.solve(budget)
            if found is None:
                continue
            partition = Partition.from_parts(instance.n, found)
            if verify_partition(instance, partition):
                return Outcome(YES, partition, counters=budget.counters())
            logging.debug(f"vi: decoded guess failed verification, X parts {blocks}")
    return Outcome(NO, counters=budget.counters())
