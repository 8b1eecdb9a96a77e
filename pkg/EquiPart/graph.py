"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import hashlib

import networkx as nx

from .errors import InstanceFormatError, InvalidGraphError, InvalidPartitionError

__all__ = [
    "Graph",
    "Instance",
    "SizeBounds",
    "Partition",
    "Violation",
    "Verdict",
    "part_size_bounds",
    "is_connected_subset",
    "verify_partition",
    "parse_instance",
    "serialize_instance",
    "parse_solution",
    "serialize_solution",
    "instance_digest",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "complete_bipartite_graph",
]

Edge = Tuple[int, int]


class Graph:
    def __init__(self, vertex_count: int, adjacency: Sequence[Iterable[int]]) -> None:
        """A simple undirected graph on vertices 0..n-1.

        Use Graph.from_edges() unless the adjacency lists are at hand.

        Parameters:
            vertex_count: Number of vertices n.
            adjacency: Per-vertex neighbour lists, must be symmetric.

        """
        if vertex_count < 0:
            raise InvalidGraphError("negative vertex count")
        if len(adjacency) != vertex_count:
            raise InvalidGraphError("adjacency size differs from vertex count")

        rows = []
        for v, neighbours in enumerate(adjacency):
            row = sorted(neighbours)
            for i, u in enumerate(row):
                if not 0 <= u < vertex_count:
                    raise InvalidGraphError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise InvalidGraphError(f"self-loop at {v}")
                if i and row[i - 1] == u:
                    raise InvalidGraphError(f"duplicate edge {{{v}, {u}}}")
            rows.append(tuple(row))

        self.vertex_count = vertex_count
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(rows)
        self._neighbour_sets = tuple(frozenset(row) for row in rows)

        for v, row in enumerate(rows):
            for u in row:
                if v not in self._neighbour_sets[u]:
                    raise InvalidGraphError(f"edge {{{v}, {u}}} is not symmetric")

        self.edge_count = sum(len(row) for row in rows) // 2

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Edge]) -> Graph:
        adjacency: List[List[int]] = [[] for _ in range(vertex_count)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidGraphError(f"edge {{{u}, {v}}} out of range")
            if u == v:
                raise InvalidGraphError(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidGraphError(f"duplicate edge {{{u}, {v}}}")
            seen.add(key)
            adjacency[u].append(v)
            adjacency[v].append(u)
        return cls(vertex_count, adjacency)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> Graph:
        """Nodes are relabelled 0..n-1 in sorted node order."""
        order = sorted(nx_graph.nodes())
        index = {node: i for i, node in enumerate(order)}
        return cls.from_edges(
            len(order), ((index[u], index[v]) for u, v in nx_graph.edges())
        )

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def neighbours(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def neighbour_set(self, v: int) -> frozenset:
        return self._neighbour_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbour_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> List[Edge]:
        return [(u, v) for u in self.vertices for v in self.adjacency[u] if u < v]

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        return nx.is_connected(self.nx)

    @cached_property
    def nx(self) -> nx.Graph:
        """networkx view of this graph. Treat as read-only."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges())
        return g

    def to_networkx(self) -> nx.Graph:
        return self.nx.copy()

    def relabel(self, permutation: Sequence[int]) -> Graph:
        """Vertex v becomes permutation[v]."""
        if sorted(permutation) != list(self.vertices):
            raise InvalidGraphError("relabelling is not a permutation")
        return Graph.from_edges(
            self.vertex_count,
            ((permutation[u], permutation[v]) for u, v in self.edges()),
        )

    def induced(self, subset: Iterable[int]) -> Tuple[Graph, List[int]]:
        """Returns the induced sub-graph and the new -> old vertex map."""
        order = sorted(set(subset))
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[u], index[v])
            for u in order
            for v in self.adjacency[u]
            if u < v and v in index
        ]
        return Graph.from_edges(len(order), edges), order

    def complement(self) -> Graph:
        return Graph(
            self.vertex_count,
            [
                [u for u in self.vertices if u != v and u not in self._neighbour_sets[v]]
                for v in self.vertices
            ],
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Graph):
            return self.adjacency == other.adjacency
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


@dataclass(frozen=True)
class SizeBounds:
    small: int
    large: int
    num_large: int

    def is_part_size(self, size: int) -> bool:
        return size == self.small or size == self.large

    def is_large(self, size: int) -> bool:
        """Only meaningful when the two sizes differ."""
        return self.large != self.small and size == self.large

    def num_small(self, parts: int) -> int:
        return parts - self.num_large


def part_size_bounds(n: int, p: int) -> SizeBounds:
    """Returns (floor(n/p), ceil(n/p), n mod p)."""
    if p <= 0 or p > n:
        raise InvalidGraphError(f"part count {p} outside 1..{n}")
    small, num_large = divmod(n, p)
    large = small + (1 if num_large else 0)
    return SizeBounds(small, large, num_large)


class Instance:
    def __init__(self, graph: Graph, parts: int) -> None:
        """An ECP instance: a connected graph plus the part count p."""
        if graph.vertex_count == 0:
            raise InvalidGraphError("graph has no vertices")
        if not graph.is_connected():
            raise InvalidGraphError("graph is disconnected")
        if parts < 1 or parts > graph.vertex_count:
            raise InvalidGraphError(f"part count {parts} outside 1..{graph.vertex_count}")
        self.graph = graph
        self.parts = parts

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    @property
    def p(self) -> int:
        return self.parts

    @cached_property
    def bounds(self) -> SizeBounds:
        return part_size_bounds(self.graph.vertex_count, self.parts)

    def with_parts(self, parts: int) -> Instance:
        return Instance(self.graph, parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, Instance):
            return self.graph == other.graph and self.parts == other.parts
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.graph, self.parts))

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, m={self.graph.edge_count}, p={self.parts})"


class Partition:
    def __init__(self, assignment: Sequence[int]) -> None:
        """Vertex v belongs to part assignment[v]."""
        self.assignment: Tuple[int, ...] = tuple(assignment)

    @classmethod
    def from_parts(cls, n: int, parts: Iterable[Iterable[int]]) -> Partition:
        assignment = [-1] * n
        for part_id, part in enumerate(parts):
            for v in part:
                if assignment[v] != -1:
                    raise InvalidPartitionError(f"vertex {v} assigned twice")
                assignment[v] = part_id
        if -1 in assignment:
            raise InvalidPartitionError(f"vertex {assignment.index(-1)} unassigned")
        return cls(assignment)

    @property
    def part_count(self) -> int:
        return max(self.assignment) + 1 if self.assignment else 0

    def parts(self) -> List[List[int]]:
        """Parts as sorted vertex lists, indexed by part id."""
        result: List[List[int]] = [[] for _ in range(self.part_count)]
        for v, part_id in enumerate(self.assignment):
            result[part_id].append(v)
        return result

    def sizes(self) -> List[int]:
        return [len(part) for part in self.parts()]

    def canonical(self) -> Partition:
        """Part ids renamed in order of each part's minimum vertex."""
        rename: Dict[int, int] = {}
        for part_id in self.assignment:
            if part_id not in rename:
                rename[part_id] = len(rename)
        return Partition([rename[part_id] for part_id in self.assignment])

    def relabel(self, permutation: Sequence[int]) -> Partition:
        """Maps the partition through the same vertex permutation as Graph.relabel()."""
        assignment = [0] * len(self.assignment)
        for v, part_id in enumerate(self.assignment):
            assignment[permutation[v]] = part_id
        return Partition(assignment)

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self.assignment == other.assignment
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.assignment)

    def __repr__(self) -> str:
        return f"Partition({self.parts()})"


def is_connected_subset(graph: Graph, subset: Iterable[int]) -> bool:
    """True iff the sub-graph induced by subset is connected.

    Parameters:
        graph: The host graph.
        subset: Non-empty vertex set.

    """
    vertices = set(subset)
    if not vertices:
        raise InvalidPartitionError("empty vertex subset")
    if len(vertices) == 1:
        return True
    return nx.is_connected(graph.nx.subgraph(vertices))


@dataclass(frozen=True)
class Violation:
    # part-count | disconnected | size | large-count
    kind: str
    part: Optional[int]
    detail: str


@dataclass
class Verdict:
    violations: List[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def verify_partition(instance: Instance, partition: Partition) -> Verdict:
    """Checks part count, connectivity and equitable sizes.

    Parameters:
        instance: The ECP instance.
        partition: Candidate assignment of every vertex.

    Returns:
        A Verdict listing every violated clause with its part id.

    """
    n, p = instance.n, instance.parts
    if len(partition.assignment) != n:
        raise InvalidPartitionError(
            f"assignment covers {len(partition.assignment)} of {n} vertices"
        )
    for v, part_id in enumerate(partition.assignment):
        if not 0 <= part_id < p:
            raise InvalidPartitionError(f"vertex {v} has part id {part_id} outside 0..{p - 1}")

    verdict = Verdict()
    bounds = instance.bounds
    members: List[List[int]] = [[] for _ in range(p)]
    for v, part_id in enumerate(partition.assignment):
        members[part_id].append(v)

    for part_id, part in enumerate(members):
        if not part:
            verdict.violations.append(Violation("part-count", part_id, "part is empty"))
            continue
        if not is_connected_subset(instance.graph, part):
            verdict.violations.append(
                Violation("disconnected", part_id, f"part {part_id} induces a disconnected sub-graph")
            )
        if not bounds.is_part_size(len(part)):
            verdict.violations.append(
                Violation(
                    "size",
                    part_id,
                    f"size {len(part)} not in {{{bounds.small}, {bounds.large}}}",
                )
            )

    if bounds.large != bounds.small:
        large_count = sum(1 for part in members if len(part) == bounds.large)
        if large_count != bounds.num_large:
            verdict.violations.append(
                Violation(
                    "large-count",
                    None,
                    f"{large_count} parts of size {bounds.large}, expected {bounds.num_large}",
                )
            )
    return verdict


def _lines(text: Union[str, Iterable[str]]) -> Iterable[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text


def parse_instance(text: Union[str, Iterable[str]]) -> Instance:
    """Parses the `p ecp <n> <m> <p>` edge-list format (1-indexed vertices)."""
    header = None
    header_line = 0
    edges: List[Edge] = []
    seen = set()

    for line_no, raw in enumerate(_lines(text), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue

        if tokens[0] == "p":
            if header is not None:
                raise InstanceFormatError(line_no, "second problem line")
            if len(tokens) != 5 or tokens[1] != "ecp":
                raise InstanceFormatError(line_no, "expected `p ecp <n> <m> <p>`")
            try:
                header = tuple(int(t) for t in tokens[2:])
            except ValueError:
                raise InstanceFormatError(line_no, "non-integer field in problem line")
            header_line = line_no
            n, m, p = header
            if n < 1 or m < 0:
                raise InstanceFormatError(line_no, "vertex count must be positive")
            if p < 1 or p > n:
                raise InstanceFormatError(line_no, f"part count {p} outside 1..{n}")
            continue

        if header is None:
            raise InstanceFormatError(line_no, "edge before problem line")
        if tokens[0] != "e" or len(tokens) != 3:
            raise InstanceFormatError(line_no, f"unknown directive `{raw.strip()}`")
        try:
            u, v = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise InstanceFormatError(line_no, "non-integer vertex")
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise InstanceFormatError(line_no, f"vertex out of range 1..{n}")
        if u == v:
            raise InstanceFormatError(line_no, "self-loop")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InstanceFormatError(line_no, f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u - 1, v - 1))

    if header is None:
        raise InstanceFormatError(0, "missing problem line")
    n, m, p = header
    if len(edges) != m:
        raise InstanceFormatError(header_line, f"header announces {m} edges, found {len(edges)}")

    graph = Graph.from_edges(n, edges)
    if not graph.is_connected():
        raise InstanceFormatError(header_line, "graph is disconnected")
    return Instance(graph, p)


def serialize_instance(instance: Instance, comments: Iterable[str] = ()) -> str:
    graph = instance.graph
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p ecp {graph.vertex_count} {graph.edge_count} {instance.parts}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def instance_digest(instance: Instance) -> str:
    return hashlib.sha1(serialize_instance(instance).encode("ascii")).hexdigest()[:12]


def serialize_solution(partition: Optional[Partition]) -> str:
    if partition is None:
        return "s no\n"
    lines = ["s yes"]
    lines.extend(f"a {v + 1} {part_id + 1}" for v, part_id in enumerate(partition.assignment))
    return "\n".join(lines) + "\n"


def parse_solution(text: Union[str, Iterable[str]], instance: Instance) -> Optional[Partition]:
    """Returns None for `s no`, otherwise the encoded Partition."""
    status = None
    assignment = [-1] * instance.n
    for line_no, raw in enumerate(_lines(text), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "s":
            if status is not None or len(tokens) != 2 or tokens[1] not in ("yes", "no"):
                raise InstanceFormatError(line_no, "expected a single `s yes` or `s no`")
            status = tokens[1]
            continue
        if tokens[0] != "a" or len(tokens) != 3 or status is None:
            raise InstanceFormatError(line_no, f"unexpected line `{raw.strip()}`")
        try:
            v, part = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise InstanceFormatError(line_no, "non-integer assignment")
        if not 1 <= v <= instance.n:
            raise InstanceFormatError(line_no, f"vertex out of range 1..{instance.n}")
        if part < 1:
            raise InstanceFormatError(line_no, "part ids start at 1")
        if assignment[v - 1] != -1:
            raise InstanceFormatError(line_no, f"vertex {v} assigned twice")
        assignment[v - 1] = part - 1

    if status is None:
        raise InstanceFormatError(0, "missing status line")
    if status == "no":
        return None
    if -1 in assignment:
        raise InstanceFormatError(0, f"vertex {assignment.index(-1) + 1} unassigned")
    return Partition(assignment)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidGraphError("cycles need at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite_graph(left: int, right: int) -> Graph:
    """Left side is 0..left-1."""
    return Graph.from_edges(
        left + right, ((u, left + v) for u in range(left) for v in range(right))
    )
