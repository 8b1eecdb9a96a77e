"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import logging

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .errors import DecompositionError
from .graph import Graph
from .limits import Budget

__all__ = [
    "LEAF",
    "UNION",
    "JOIN",
    "INTRODUCE",
    "FORGET",
    "CoTree",
    "build_cotree",
    "NiceNode",
    "NiceTreeDecomposition",
    "treewidth_upper_bound",
    "compute_nice_tree_decomposition",
    "ModuleNode",
    "modular_decomposition",
    "modular_width",
]

LEAF = "leaf"
UNION = "union"
JOIN = "join"
INTRODUCE = "introduce"
FORGET = "forget"

# exact elimination-order search is attempted up to this many vertices
EXACT_TREEWIDTH_LIMIT = 20


@dataclass(frozen=True)
class CoTree:
    kind: str
    vertex: Optional[int] = None
    left: Optional[CoTree] = None
    right: Optional[CoTree] = None

    def leaves(self) -> List[int]:
        if self.kind == LEAF:
            return [self.vertex]
        return self.left.leaves() + self.right.leaves()

    def edges(self) -> Set[Tuple[int, int]]:
        """Edge set obtained by evaluating the expression."""
        if self.kind == LEAF:
            return set()
        result = self.left.edges() | self.right.edges()
        if self.kind == JOIN:
            for u in self.left.leaves():
                for v in self.right.leaves():
                    result.add((min(u, v), max(u, v)))
        return result

    def evaluates_to(self, graph: Graph) -> bool:
        leaves = self.leaves()
        if sorted(leaves) != list(graph.vertices):
            return False
        return self.edges() == set(graph.edges())

    def __str__(self) -> str:
        if self.kind == LEAF:
            return str(self.vertex)
        return f"{self.kind}({self.left}, {self.right})"


def _fold(kind: str, children: List[CoTree]) -> CoTree:
    tree = children[-1]
    for child in reversed(children[:-1]):
        tree = CoTree(kind, left=child, right=tree)
    return tree


def build_cotree(graph: Graph) -> Optional[CoTree]:
    """Binary co-tree of graph, or None when graph contains an induced P4."""
    if graph.vertex_count == 0:
        return None

    def split(vertices: FrozenSet[int]) -> Optional[CoTree]:
        if len(vertices) == 1:
            return CoTree(LEAF, vertex=next(iter(vertices)))
        sub = graph.nx.subgraph(vertices)
        components = sorted(nx.connected_components(sub), key=min)
        kind = UNION
        if len(components) == 1:
            components = sorted(nx.connected_components(nx.complement(sub)), key=min)
            kind = JOIN
            if len(components) == 1:
                return None
        children = []
        for component in components:
            child = split(frozenset(component))
            if child is None:
                return None
            children.append(child)
        return _fold(kind, children)

    return split(frozenset(graph.vertices))


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: Tuple[int, ...]
    vertex: Optional[int] = None
    children: Tuple[int, ...] = ()


class NiceTreeDecomposition:
    def __init__(self, nodes: Sequence[NiceNode]) -> None:
        """Nodes are stored children-first; the last node is the root."""
        self.nodes: List[NiceNode] = list(nodes)

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes) - 1

    def kind_counts(self) -> Dict[str, int]:
        counts = {LEAF: 0, INTRODUCE: 0, FORGET: 0, JOIN: 0}
        for node in self.nodes:
            counts[node.kind] += 1
        return counts

    def validate(self, graph: Graph) -> None:
        """Raises DecompositionError unless this is a nice tree
        decomposition of graph."""
        if not self.nodes:
            raise DecompositionError("no nodes")
        parent: Dict[int, int] = {}
        for index, node in enumerate(self.nodes):
            if list(node.bag) != sorted(set(node.bag)):
                raise DecompositionError(f"node {index} bag is not a sorted set")
            for child in node.children:
                if not 0 <= child < index:
                    raise DecompositionError(f"node {index} lists child {child} out of order")
                if child in parent:
                    raise DecompositionError(f"node {child} has two parents")
                parent[child] = index
            self._check_node(index, node)
        if len(parent) != len(self.nodes) - 1:
            raise DecompositionError("nodes do not form a single tree")
        if self.nodes[self.root].bag:
            raise DecompositionError("root bag is not empty")

        covered_vertices = set()
        covered_edges = set()
        for node in self.nodes:
            covered_vertices.update(node.bag)
            bag = set(node.bag)
            for v in node.bag:
                covered_edges.update((v, u) for u in graph.neighbours(v) if u in bag and v < u)
        if covered_vertices != set(graph.vertices):
            raise DecompositionError("some vertex is in no bag")
        if covered_edges != set(graph.edges()):
            raise DecompositionError("some edge is in no bag")

        # occurrences of v are connected iff exactly one of them has a
        # parent not containing v
        tops: Dict[int, int] = {}
        for index, node in enumerate(self.nodes):
            above = self.nodes[parent[index]].bag if index in parent else ()
            for v in node.bag:
                if v not in above:
                    tops[v] = tops.get(v, 0) + 1
        for v, count in tops.items():
            if count != 1:
                raise DecompositionError(f"bags containing {v} are not connected")

    def _check_node(self, index: int, node: NiceNode) -> None:
        children = [self.nodes[c] for c in node.children]
        if node.kind == LEAF:
            if children or node.bag:
                raise DecompositionError(f"leaf {index} must be empty and childless")
        elif node.kind == INTRODUCE:
            if len(children) != 1 or node.vertex in children[0].bag:
                raise DecompositionError(f"introduce node {index} is malformed")
            if tuple(sorted(children[0].bag + (node.vertex,))) != node.bag:
                raise DecompositionError(f"introduce node {index} bag mismatch")
        elif node.kind == FORGET:
            if len(children) != 1 or node.vertex not in children[0].bag:
                raise DecompositionError(f"forget node {index} is malformed")
            if tuple(v for v in children[0].bag if v != node.vertex) != node.bag:
                raise DecompositionError(f"forget node {index} bag mismatch")
        elif node.kind == JOIN:
            if len(children) != 2 or any(child.bag != node.bag for child in children):
                raise DecompositionError(f"join node {index} is malformed")
        else:
            raise DecompositionError(f"unknown node kind {node.kind}")


class _NiceBuilder:
    def __init__(self) -> None:
        self.nodes: List[NiceNode] = []

    def add(self, node: NiceNode) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def morph(self, index: int, target: Tuple[int, ...]) -> int:
        """Forget then introduce until the bag of index equals target."""
        bag = self.nodes[index].bag
        for v in [v for v in bag if v not in target]:
            bag = tuple(u for u in bag if u != v)
            index = self.add(NiceNode(FORGET, bag, v, (index,)))
        for v in [v for v in target if v not in bag]:
            bag = tuple(sorted(bag + (v,)))
            index = self.add(NiceNode(INTRODUCE, bag, v, (index,)))
        return index


def _nicify(bags: List[Tuple[int, ...]], tree: nx.Graph) -> NiceTreeDecomposition:
    builder = _NiceBuilder()
    visited: Set[int] = set()

    def build(t: int) -> int:
        visited.add(t)
        branches = []
        for child in sorted(tree.neighbors(t)):
            if child not in visited:
                branches.append(builder.morph(build(child), bags[t]))
        if not branches:
            branches.append(builder.morph(builder.add(NiceNode(LEAF, ())), bags[t]))
        current = branches[0]
        for other in branches[1:]:
            current = builder.add(NiceNode(JOIN, bags[t], children=(current, other)))
        return current

    top = build(0)
    builder.morph(top, ())
    return NiceTreeDecomposition(builder.nodes)


def _connect_forest(tree: nx.Graph) -> None:
    roots = [min(component) for component in nx.connected_components(tree)]
    for a, b in zip(sorted(roots), sorted(roots)[1:]):
        tree.add_edge(a, b)


def _from_elimination_order(graph: Graph, order: List[int]) -> Tuple[List[Tuple[int, ...]], nx.Graph]:
    position = {v: i for i, v in enumerate(order)}
    adjacency = {v: set(graph.neighbours(v)) for v in graph.vertices}
    higher: Dict[int, Set[int]] = {}
    for v in order:
        later = {u for u in adjacency[v] if position[u] > position[v]}
        higher[v] = later
        for u in later:
            adjacency[u] |= later - {u}

    bags = [tuple(sorted({v} | higher[v])) for v in order]
    tree = nx.Graph()
    tree.add_nodes_from(range(len(order)))
    for v in order:
        if higher[v]:
            parent = min(higher[v], key=position.__getitem__)
            tree.add_edge(position[v], position[parent])
    _connect_forest(tree)
    return bags, tree


def _exact_elimination_order(graph: Graph, k: int, budget: Optional[Budget]) -> Optional[List[int]]:
    """An elimination order of width <= k, searched with memoised failures."""
    failed: Set[FrozenSet[int]] = set()

    def search(adjacency: Dict[int, Set[int]]) -> Optional[List[int]]:
        if budget is not None:
            budget.tick()
        if len(adjacency) <= k + 1:
            return sorted(adjacency)
        key = frozenset(adjacency)
        if key in failed:
            return None

        # a simplicial vertex of low degree can always go first
        for v in sorted(adjacency):
            around = adjacency[v]
            if len(around) <= k and all(b in adjacency[a] for a in around for b in around if a < b):
                rest = search(_eliminate(adjacency, v))
                if rest is None:
                    failed.add(key)
                    return None
                return [v] + rest

        for v in sorted(adjacency, key=lambda u: (len(adjacency[u]), u)):
            if len(adjacency[v]) > k:
                break
            rest = search(_eliminate(adjacency, v))
            if rest is not None:
                return [v] + rest
        failed.add(key)
        return None

    start = {v: set(graph.neighbours(v)) for v in graph.vertices}
    return search(start)


def _eliminate(adjacency: Dict[int, Set[int]], v: int) -> Dict[int, Set[int]]:
    around = adjacency[v]
    result = {}
    for u, neighbours in adjacency.items():
        if u == v:
            continue
        if u in around:
            result[u] = (neighbours | around) - {u, v}
        else:
            result[u] = set(neighbours)
    return result


def treewidth_upper_bound(graph: Graph) -> int:
    """Min-fill-in heuristic width."""
    if graph.vertex_count <= 1:
        return 0
    width, _ = treewidth_min_fill_in(graph.nx)
    return width


def compute_nice_tree_decomposition(
    graph: Graph,
    width_budget: int,
    budget: Optional[Budget] = None,
) -> Optional[NiceTreeDecomposition]:
    """Nice tree decomposition of width at most width_budget.

    Small graphs get an exact elimination-order search, larger ones the
    min-fill-in heuristic, whose width may exceed the optimum.

    Parameters:
        graph: Input graph with at least one vertex.
        width_budget: Largest acceptable width.
        budget: Optional live budget for the exact search.

    Returns:
        The decomposition, or None if none within width_budget was found.

    """
    if width_budget < 1:
        raise ValueError("width_budget must be positive")
    if graph.vertex_count == 0:
        raise DecompositionError("graph has no vertices")

    if graph.vertex_count == 1:
        bags, tree = [(0,)], nx.empty_graph(1)
        return _nicify(bags, tree)

    heuristic_width, heuristic_tree = treewidth_min_fill_in(graph.nx)

    if graph.vertex_count <= EXACT_TREEWIDTH_LIMIT:
        for k in range(min(width_budget, heuristic_width - 1) + 1):
            order = _exact_elimination_order(graph, k, budget)
            if order is not None:
                logging.debug(f"exact tree-width {k} (heuristic {heuristic_width})")
                return _nicify(*_from_elimination_order(graph, order))

    if heuristic_width > width_budget:
        return None

    ordered = sorted(heuristic_tree.nodes(), key=lambda bag: tuple(sorted(bag)))
    index = {bag: i for i, bag in enumerate(ordered)}
    tree = nx.Graph()
    tree.add_nodes_from(range(len(ordered)))
    tree.add_edges_from((index[a], index[b]) for a, b in heuristic_tree.edges())
    _connect_forest(tree)
    return _nicify([tuple(sorted(bag)) for bag in ordered], tree)


@dataclass
class ModuleNode:
    kind: str  # leaf | parallel | series | prime
    vertices: Tuple[int, ...]
    children: List[ModuleNode] = field(default_factory=list)

    def walk(self) -> List[ModuleNode]:
        """Nodes in post-order."""
        result = []
        for child in self.children:
            result.extend(child.walk())
        result.append(self)
        return result


def _module_closure(graph: Graph, scope: Set[int], seed: Set[int]) -> Set[int]:
    """Smallest module of graph[scope] containing seed."""
    module = set(seed)
    changed = True
    while changed:
        changed = False
        for z in sorted(scope - module):
            seen = {graph.has_edge(z, v) for v in module}
            if len(seen) == 2:
                module.add(z)
                changed = True
    return module


def modular_decomposition(graph: Graph) -> ModuleNode:
    """Modular decomposition tree by pairwise module closure."""

    def decompose(scope: Set[int]) -> ModuleNode:
        vertices = tuple(sorted(scope))
        if len(scope) == 1:
            return ModuleNode("leaf", vertices)
        sub = graph.nx.subgraph(scope)
        components = list(nx.connected_components(sub))
        if len(components) > 1:
            kind = "parallel"
        else:
            components = list(nx.connected_components(nx.complement(sub)))
            kind = "series" if len(components) > 1 else "prime"

        if kind == "prime":
            components = []
            left = set(scope)
            while left:
                v = min(left)
                module = {v}
                for w in sorted(scope - {v}):
                    closure = _module_closure(graph, scope, {v, w})
                    if closure != scope:
                        module |= closure
                components.append(module)
                left -= module

        children = [decompose(set(c)) for c in sorted(components, key=min)]
        return ModuleNode(kind, vertices, children)

    return decompose(set(graph.vertices))


def modular_width(tree: ModuleNode) -> int:
    """Largest prime-node child count; 2 without prime nodes, 0 for one vertex."""
    if tree.kind == "leaf":
        return 0
    return max([2] + [len(node.children) for node in tree.walk() if node.kind == "prime"])
