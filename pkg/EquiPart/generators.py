"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

import random

import networkx as nx

from .errors import BinPackingError, InvalidGraphError
from .graph import Graph, Instance, serialize_instance

__all__ = [
    "BinPackingInstance",
    "parse_binpacking",
    "serialize_binpacking",
    "reduce_binpacking",
    "solve_binpacking_bruteforce",
    "seeded_binpacking",
    "SizeParams",
    "RANDOM_KINDS",
    "gen_random_instance",
    "generated_instance_text",
]

RANDOM_KINDS = (
    "tree",
    "grid",
    "cycle-with-chords",
    "cograph",
    "cluster-plus-modulator",
    "clique-plus-modulator",
)


@dataclass(frozen=True)
class BinPackingInstance:
    """Unary bin packing: pack items into `bins` bins of exactly `capacity`."""

    items: Tuple[int, ...]
    bins: int
    capacity: int

    def __post_init__(self) -> None:
        if self.bins < 1:
            raise BinPackingError("at least one bin is needed")
        if self.capacity < 1:
            raise BinPackingError("capacity must be positive")
        if not self.items:
            raise BinPackingError("no items")
        if any(a < 1 for a in self.items):
            raise BinPackingError("items must be positive")
        if sum(self.items) != self.bins * self.capacity:
            raise BinPackingError(
                f"items sum to {sum(self.items)}, bins hold {self.bins * self.capacity}"
            )


def parse_binpacking(text: Union[str, Iterable[str]]) -> BinPackingInstance:
    """Parses `u ubp <k> <b> <|A|>` followed by the items."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    tokens: List[str] = []
    header = None
    for raw in lines:
        words = raw.split()
        if not words or words[0] == "c":
            continue
        if header is None:
            if len(words) != 5 or words[:2] != ["u", "ubp"]:
                raise BinPackingError("expected `u ubp <k> <b> <|A|>`")
            header = words[2:]
            continue
        tokens.extend(words)
    if header is None:
        raise BinPackingError("missing header line")
    try:
        bins, capacity, count = (int(t) for t in header)
        items = tuple(int(t) for t in tokens)
    except ValueError:
        raise BinPackingError("non-integer field")
    if len(items) != count:
        raise BinPackingError(f"header announces {count} items, found {len(items)}")
    return BinPackingInstance(items, bins, capacity)


def serialize_binpacking(ubp: BinPackingInstance) -> str:
    return f"u ubp {ubp.bins} {ubp.capacity} {len(ubp.items)}\n" + " ".join(map(str, ubp.items)) + "\n"


def reduce_binpacking(ubp: BinPackingInstance) -> Instance:
    """Bin packing to ECP with star item gadgets.

    Vertices 0..k-1 are the bin gadgets. Each item a then gets a star of
    a vertices, hub first; every bin is adjacent to every hub and p = k.
    """
    edges = []
    hubs = []
    next_vertex = ubp.bins
    for a in ubp.items:
        hub = next_vertex
        hubs.append(hub)
        edges.extend((hub, hub + leaf) for leaf in range(1, a))
        next_vertex += a
    edges.extend((b, hub) for b in range(ubp.bins) for hub in hubs)
    return Instance(Graph.from_edges(next_vertex, edges), ubp.bins)


def solve_binpacking_bruteforce(ubp: BinPackingInstance) -> Optional[List[int]]:
    """Bin index per item, every bin filled to exactly capacity, or None.

    Items go largest first and never try two bins of equal load, which
    removes the symmetry between interchangeable bins.
    """
    order = sorted(range(len(ubp.items)), key=lambda i: (-ubp.items[i], i))
    load = [0] * ubp.bins
    alpha = [-1] * len(ubp.items)

    def place(index: int) -> bool:
        if index == len(order):
            return all(x == ubp.capacity for x in load)
        i = order[index]
        tried = set()
        for b in range(ubp.bins):
            if load[b] in tried or load[b] + ubp.items[i] > ubp.capacity:
                continue
            tried.add(load[b])
            load[b] += ubp.items[i]
            alpha[i] = b
            if place(index + 1):
                return True
            load[b] -= ubp.items[i]
        alpha[i] = -1
        return False

    if not place(0):
        return None
    return alpha


def seeded_binpacking(seed: int, bins: int, capacity: int, max_item: Optional[int] = None) -> BinPackingInstance:
    """Random instance with exactly bins * capacity units.

    About half the draws cut every bin into items, so a packing exists;
    the rest cut the total freely and may have none.
    """
    rng = random.Random(seed)
    max_item = capacity if max_item is None else max_item
    if rng.random() < 0.5:
        items: List[int] = []
        for _ in range(bins):
            left = capacity
            while left > 0:
                a = rng.randint(1, min(left, max_item))
                items.append(a)
                left -= a
        rng.shuffle(items)
    else:
        items = []
        left = bins * capacity
        while left > 0:
            a = rng.randint(1, min(left, max_item))
            items.append(a)
            left -= a
    return BinPackingInstance(tuple(items), bins, capacity)


@dataclass(frozen=True)
class SizeParams:
    """Size record for the random families. Unused fields are ignored."""

    n: int = 10
    p: int = 2
    rows: int = 3
    cols: int = 3
    modulator: int = 2
    clusters: int = 3
    chord_probability: float = 0.2


def _tree(rng: random.Random, size: SizeParams) -> List[Tuple[int, int]]:
    if size.n <= 2:
        return [(0, 1)] if size.n == 2 else []
    code = [rng.randrange(size.n) for _ in range(size.n - 2)]
    return list(nx.from_prufer_sequence(code).edges())


def _grid(rng: random.Random, size: SizeParams) -> List[Tuple[int, int]]:
    grid = nx.grid_2d_graph(size.rows, size.cols)
    index = {cell: i for i, cell in enumerate(sorted(grid.nodes()))}
    return [(index[a], index[b]) for a, b in grid.edges()]


def _cycle_with_chords(rng: random.Random, size: SizeParams) -> List[Tuple[int, int]]:
    n = size.n
    if n < 3:
        raise InvalidGraphError("cycles need at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    cycle = {(min(u, v), max(u, v)) for u, v in edges}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in cycle and rng.random() < size.chord_probability:
                edges.append((u, v))
    return edges


def _cograph(rng: random.Random, size: SizeParams) -> List[Tuple[int, int]]:
    edges: List[Tuple[int, int]] = []

    def build(vertices: List[int], join: bool) -> None:
        if len(vertices) == 1:
            return
        cut = rng.randint(1, len(vertices) - 1)
        left, right = vertices[:cut], vertices[cut:]
        if join:
            edges.extend((u, v) for u in left for v in right)
        build(left, rng.random() < 0.5)
        build(right, rng.random() < 0.5)

    # a join at the root keeps the co-graph connected
    build(list(range(size.n)), True)
    return edges


def _attach(rng: random.Random, edges: List[Tuple[int, int]], n: int) -> List[Tuple[int, int]]:
    """Connects the components by edges from their lowest vertex."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    components = sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])
    for previous, component in zip(components, components[1:]):
        edges.append((rng.choice(previous), component[0]))
    return edges


def _body(size: SizeParams) -> int:
    """Vertices left once the modulator is set aside."""
    if size.modulator < 0 or size.modulator >= size.n:
        raise InvalidGraphError("modulator must leave at least one vertex")
    return size.n - size.modulator


def _cluster_plus_modulator(rng: random.Random, size: SizeParams) -> List[Tuple[int, int]]:
    body = _body(size)
    if body < size.clusters or size.clusters < 1:
        raise InvalidGraphError("need at least one vertex per cluster")
    if size.clusters > 1 and size.modulator == 0:
        raise InvalidGraphError("several clusters need a modulator to connect them")
    cuts = sorted(rng.sample(range(1, body), size.clusters - 1))
    bounds = [0] + cuts + [body]
    edges = []
    for start, stop in zip(bounds, bounds[1:]):
        edges.extend((u, v) for u in range(start, stop) for v in range(u + 1, stop))
    modulator = range(body, size.n)
    for m in modulator:
        edges.extend((m, v) for v in range(body) if rng.random() < 0.3)
        edges.extend((m, u) for u in modulator if u < m and rng.random() < 0.5)
    # clusters only meet through the modulator
    edges.extend((m - 1, m) for m in modulator if m > body)
    for start, stop in zip(bounds, bounds[1:]):
        cluster = range(start, stop)
        if size.modulator and not any(v in cluster for m in modulator for u, v in edges if u == m):
            edges.append((rng.choice(modulator), rng.choice(cluster)))
    return edges


def _clique_plus_modulator(rng: random.Random, size: SizeParams) -> List[Tuple[int, int]]:
    body = _body(size)
    edges = [(u, v) for u in range(body) for v in range(u + 1, body)]
    modulator = range(body, size.n)
    for m in modulator:
        edges.extend((m, v) for v in range(body) if rng.random() < 0.3)
        edges.extend((m, u) for u in modulator if u < m and rng.random() < 0.5)
    return _attach(rng, edges, size.n)


_BUILDERS = {
    "tree": _tree,
    "grid": _grid,
    "cycle-with-chords": _cycle_with_chords,
    "cograph": _cograph,
    "cluster-plus-modulator": _cluster_plus_modulator,
    "clique-plus-modulator": _clique_plus_modulator,
}


def gen_random_instance(kind: str, seed: int, size: SizeParams) -> Instance:
    """Connected instance of the named family, fixed by (kind, seed, size).

    Parameters:
        kind: One of RANDOM_KINDS.
        seed: Seed of the private random stream.
        size: Size record; grids use rows x cols and ignore n.

    """
    if kind not in _BUILDERS:
        raise InvalidGraphError(f"unknown family {kind}")
    if kind == "grid":
        if size.rows < 1 or size.cols < 1:
            raise InvalidGraphError("grid sides must be positive")
        n = size.rows * size.cols
    else:
        n = size.n
    if n < 1:
        raise InvalidGraphError("at least one vertex is needed")
    if not 1 <= size.p <= n:
        raise InvalidGraphError(f"part count {size.p} outside 1..{n}")

    rng = random.Random(seed)
    edges = _BUILDERS[kind](rng, size)
    unique = sorted({(min(u, v), max(u, v)) for u, v in edges})
    return Instance(Graph.from_edges(n, unique), size.p)


def generated_instance_text(instance: Instance, generator: str, seed: Optional[int] = None, **fields) -> str:
    """Instance file text with `c generator=... seed=...` provenance lines."""
    provenance = f"generator={generator}"
    if seed is not None:
        provenance += f" seed={seed}"
    comments = [provenance] + [f"{key}={value}" for key, value in sorted(fields.items())]
    return serialize_instance(instance, comments)
