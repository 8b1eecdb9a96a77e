"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
import networkx as nx
import pytest

from EquiPart import (
    NO,
    YES,
    DecompositionError,
    Family,
    Graph,
    Instance,
    PreconditionError,
    build_bipartite_table,
    build_cotree,
    complete_bipartite_graph,
    complete_graph,
    compute_nice_tree_decomposition,
    cycle_graph,
    find_modulator,
    part_size_bounds,
    path_graph,
    solve_clique,
    solve_clique_modulator,
    solve_cluster_modulator,
    solve_cograph,
    solve_exact,
    solve_treewidth,
    star_graph,
    verify_partition,
)
from EquiPart.matching import bipartite_max_matching, solve_small_parts
from EquiPart.treewidth import TreewidthStats

from _families import connected_graphs, three_k4_chain, two_triangles_bridged


def _agrees(instance, partition, expected=None):
    """partition is a solver answer; expected defaults to the oracle's."""
    if expected is None:
        expected = solve_exact(instance).status
    if expected == YES:
        assert partition is not None, instance
        assert verify_partition(instance, partition), (instance, partition)
    else:
        assert partition is None, (instance, partition)


@pytest.mark.parametrize("n, p, sizes", [(7, 3, [3, 2, 2]), (4, 4, [1, 1, 1, 1]), (6, 2, [3, 3])])
def test_clique_split(n, p, sizes):
    instance = Instance(complete_graph(n), p)
    partition = solve_clique(instance)
    assert partition.sizes() == sizes
    assert verify_partition(instance, partition)


def test_clique_solver_refuses_other_graphs():
    with pytest.raises(PreconditionError):
        solve_clique(Instance(path_graph(3), 1))


def test_clique_split_is_always_valid():
    for n in range(1, 31):
        for p in range(1, n + 1):
            instance = Instance(complete_graph(n), p)
            assert verify_partition(instance, solve_clique(instance))


@pytest.mark.slow
def test_large_clique_split_is_always_valid():
    graph = complete_graph(200)
    for p in range(1, 201):
        instance = Instance(graph, p)
        assert verify_partition(instance, solve_clique(instance))


def test_bipartite_table():
    table = build_bipartite_table(8, part_size_bounds(7, 3))
    assert not any(table.feasible(1, 3, g) for g in range(2))
    assert table.feasible(2, 2, 0)
    assert table.feasible(2, 3, 1)
    assert not table.feasible(2, 3, 0)
    assert table.large_counts(2, 3) == [1]
    assert sorted(table.decompose(2, 3, 1)) == [(1, 1), (1, 2)]


def test_bipartite_table_needs_pairs():
    with pytest.raises(PreconditionError):
        build_bipartite_table(4, part_size_bounds(4, 4))


def test_bipartite_table_matches_brute_force():
    bounds = part_size_bounds(11, 4)
    table = build_bipartite_table(7, bounds)
    for k in range(5):
        for l in range(8 - k):
            graph_n = k + l
            if k == 0 or l == 0 or graph_n < bounds.small:
                continue
            graph = complete_bipartite_graph(k, l)
            for g in range(bounds.num_large + 1):
                # parts of size small or large with exactly g large ones
                total = graph_n - g * bounds.large
                if total < 0 or total % bounds.small:
                    assert not table.feasible(k, l, g)
                    continue
                parts = g + total // bounds.small
                instance = Instance(graph, parts)
                if instance.bounds.small == bounds.small and instance.bounds.num_large == g:
                    assert table.feasible(k, l, g) == (solve_exact(instance).status == YES), (k, l, g)


def test_cograph_examples():
    for instance in (
        Instance(complete_bipartite_graph(3, 3), 2),
        Instance(complete_graph(4), 2),
        Instance(complete_graph(6), 3),
    ):
        partition = solve_cograph(instance, build_cotree(instance.graph))
        _agrees(instance, partition, YES)


def test_cograph_k24_follows_the_oracle():
    # a part of two same-side vertices is disconnected
    instance = Instance(complete_bipartite_graph(2, 4), 3)
    _agrees(instance, solve_cograph(instance, build_cotree(instance.graph)), NO)


def test_cograph_star_has_no_pairing():
    instance = Instance(star_graph(3), 2)
    assert solve_cograph(instance, build_cotree(instance.graph)) is None


def test_cograph_rejects_foreign_cotree():
    with pytest.raises(DecompositionError):
        solve_cograph(Instance(complete_graph(4), 2), build_cotree(star_graph(3)))


def test_cograph_agrees_with_oracle():
    for graph in connected_graphs(6):
        cotree = build_cotree(graph)
        if cotree is None:
            continue
        for p in range(1, graph.vertex_count + 1):
            instance = Instance(graph, p)
            _agrees(instance, solve_cograph(instance, cotree))


@pytest.mark.parametrize(
    "instance, expected",
    [
        (Instance(path_graph(6), 3), YES),
        (Instance(star_graph(3), 2), NO),
        (Instance(cycle_graph(8), 4), YES),
    ],
)
def test_treewidth_examples(instance, expected):
    decomposition = compute_nice_tree_decomposition(instance.graph, 4)
    _agrees(instance, solve_treewidth(instance, decomposition), expected)


def test_treewidth_consecutive_pairs_on_a_path():
    instance = Instance(path_graph(6), 3)
    partition = solve_treewidth(instance, compute_nice_tree_decomposition(instance.graph, 1))
    assert sorted(partition.parts()) == [[0, 1], [2, 3], [4, 5]]


def test_treewidth_records_state_counts():
    instance = Instance(cycle_graph(8), 3)
    stats = TreewidthStats()
    solve_treewidth(instance, compute_nice_tree_decomposition(instance.graph, 2), stats=stats)
    assert stats.total_states >= stats.max_states > 0


def test_treewidth_agrees_with_oracle():
    for graph in connected_graphs(6):
        decomposition = compute_nice_tree_decomposition(graph, graph.vertex_count)
        for p in range(1, graph.vertex_count + 1):
            instance = Instance(graph, p)
            _agrees(instance, solve_treewidth(instance, decomposition))


def test_large_part_accounting():
    graph = three_k4_chain()
    instance = Instance(graph, 5)
    expected = solve_exact(instance).status
    _agrees(instance, solve_treewidth(instance, compute_nice_tree_decomposition(graph, 4)), expected)


def test_paths_and_cycles_are_always_yes():
    for n in range(3, 21):
        for graph in (path_graph(n), cycle_graph(n)):
            decomposition = compute_nice_tree_decomposition(graph, 2)
            for p in range(1, n + 1):
                instance = Instance(graph, p)
                _agrees(instance, solve_treewidth(instance, decomposition), YES)


def test_stars_are_yes_only_for_trivial_part_counts():
    for leaves in range(2, 12):
        graph = star_graph(leaves)
        decomposition = compute_nice_tree_decomposition(graph, 1)
        n = leaves + 1
        for p in range(1, n + 1):
            expected = YES if p in (1, n - 1, n) else NO
            _agrees(Instance(graph, p), solve_treewidth(Instance(graph, p), decomposition), expected)


@pytest.mark.slow
def test_closed_form_families_at_scale():
    for n in range(21, 61):
        for graph in (path_graph(n), cycle_graph(n)):
            decomposition = compute_nice_tree_decomposition(graph, 2)
            for p in range(1, n + 1):
                instance = Instance(graph, p)
                _agrees(instance, solve_treewidth(instance, decomposition), YES)
    for n in range(13, 41):
        graph = star_graph(n - 1)
        decomposition = compute_nice_tree_decomposition(graph, 1)
        for p in range(1, n + 1):
            expected = YES if p in (1, n - 1, n) else NO
            _agrees(Instance(graph, p), solve_treewidth(Instance(graph, p), decomposition), expected)


@pytest.mark.slow
def test_treewidth_bounded_part_size_at_scale():
    # width-2 ladder on 40 vertices, parts of two
    graph = Graph.from_networkx(nx.ladder_graph(20))
    instance = Instance(graph, 20)
    partition = solve_treewidth(instance, compute_nice_tree_decomposition(graph, 2))
    assert verify_partition(instance, partition)


def test_bipartite_matching():
    edges = [(0, "a"), (0, "b"), (1, "a"), (1, "b")]
    assert len(bipartite_max_matching([0, 1], ["a", "b"], edges)) == 2
    assert len(bipartite_max_matching([0], [1, 2, 3], [(0, 1), (0, 2), (0, 3)])) == 1
    assert bipartite_max_matching([0, 1], [2, 3], []) == []
    with pytest.raises(ValueError):
        bipartite_max_matching([0], [1], [(1, 0)])


def test_small_parts_by_matching():
    _agrees(Instance(star_graph(3), 2), solve_small_parts(Instance(star_graph(3), 2)), NO)
    _agrees(Instance(path_graph(6), 6), solve_small_parts(Instance(path_graph(6), 6)), YES)
    _agrees(Instance(path_graph(7), 4), solve_small_parts(Instance(path_graph(7), 4)), YES)


def test_cluster_modulator_examples():
    graph = two_triangles_bridged()
    _agrees(Instance(graph, 3), solve_cluster_modulator(Instance(graph, 3), [6]), YES)
    _agrees(Instance(complete_graph(5), 5), solve_cluster_modulator(Instance(complete_graph(5), 5), []), YES)
    _agrees(Instance(path_graph(5), 2), solve_cluster_modulator(Instance(path_graph(5), 2), [2]))


def test_cluster_modulator_agrees_with_oracle():
    for graph in connected_graphs(6):
        report = find_modulator(graph, Family.TO_CLUSTER, graph.vertex_count)
        for p in range(1, graph.vertex_count + 1):
            instance = Instance(graph, p)
            _agrees(instance, solve_cluster_modulator(instance, report.modulator))


def test_clique_modulator_examples():
    # K5 with a pendant vertex and a vertex seeing two clique vertices
    graph = Graph.from_edges(7, complete_graph(5).edges() + [(4, 5), (0, 6), (1, 6)])
    for p in range(1, 8):
        instance = Instance(graph, p)
        _agrees(instance, solve_clique_modulator(instance, [5, 6]))


def test_clique_modulator_agrees_with_oracle():
    for graph in connected_graphs(6):
        report = find_modulator(graph, Family.TO_CLIQUE, graph.vertex_count)
        for p in range(1, graph.vertex_count + 1):
            instance = Instance(graph, p)
            _agrees(instance, solve_clique_modulator(instance, report.modulator))
