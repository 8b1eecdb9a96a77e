"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
import threading

import networkx as nx
import pytest

from EquiPart import (
    CLIQUE,
    INDEPENDENT,
    JOIN,
    BinPackingInstance,
    Cancelled,
    Family,
    Graph,
    SearchLimits,
    build_cotree,
    complete_bipartite_graph,
    complete_graph,
    compute_nice_tree_decomposition,
    cycle_graph,
    find_modulator,
    in_family,
    modular_decomposition,
    modular_width,
    neighbourhood_diversity,
    parameter_report,
    path_graph,
    reduce_binpacking,
    star_graph,
    treewidth_upper_bound,
    vertex_integrity,
)
from EquiPart.integrity import components_without

from _families import connected_graphs


def test_clique_needs_no_clique_modulator():
    report = find_modulator(complete_graph(5), Family.TO_CLIQUE, 3)
    assert report.modulator == ()
    assert report.size == 0


def test_star_vertex_cover_is_the_centre():
    assert find_modulator(star_graph(4), Family.VERTEX_COVER, 3).modulator == (0,)


def test_modulator_budget_is_respected():
    assert find_modulator(cycle_graph(8), Family.VERTEX_COVER, 3) is None
    assert find_modulator(cycle_graph(8), Family.VERTEX_COVER, 4).size == 4


def test_binpacking_graph_loses_every_p4_without_its_bins():
    instance = reduce_binpacking(BinPackingInstance((1, 2, 3), 2, 3))
    assert in_family(instance.graph, Family.PATH_COVER_4, removed=(0, 1))
    report = find_modulator(instance.graph, Family.PATH_COVER_4, 2)
    assert report is not None and report.size <= 2


@pytest.mark.parametrize("family", list(Family))
def test_modulators_are_minimum(family):
    for graph in connected_graphs(6):
        report = find_modulator(graph, family, graph.vertex_count)
        assert in_family(graph, family, report.modulator)
        if report.size:
            smaller = find_modulator(graph, family, report.size - 1)
            assert smaller is None


def test_disjoint_paths_family():
    assert in_family(path_graph(5), Family.TO_DISJOINT_PATHS)
    assert not in_family(cycle_graph(5), Family.TO_DISJOINT_PATHS)
    assert find_modulator(cycle_graph(5), Family.TO_DISJOINT_PATHS, 2).size == 1
    assert find_modulator(star_graph(3), Family.TO_DISJOINT_PATHS, 2).size == 1


def test_type_partition_of_a_clique():
    types = neighbourhood_diversity(complete_graph(5))
    assert types.classes == ((0, 1, 2, 3, 4),)
    assert types.class_kind == (CLIQUE,)


def test_type_partition_of_a_star():
    types = neighbourhood_diversity(star_graph(3))
    assert types.classes == ((0,), (1, 2, 3))
    assert types.class_kind == (CLIQUE, INDEPENDENT)
    assert types.type_graph.edges() == [(0, 1)]


def test_path_has_no_twins():
    assert neighbourhood_diversity(path_graph(4)).diversity == 4


def test_type_partition_matches_only_its_graph():
    types = neighbourhood_diversity(star_graph(3))
    assert types.matches(star_graph(3))
    assert not types.matches(path_graph(4))


def test_cotree_of_k22():
    cotree = build_cotree(complete_bipartite_graph(2, 2))
    assert cotree.kind == JOIN
    assert str(cotree) == "join(union(0, 1), union(2, 3))"


def test_p4_has_no_cotree():
    assert build_cotree(path_graph(4)) is None


def test_single_vertex_cotree():
    assert str(build_cotree(Graph.from_edges(1, []))) == "0"


def test_cotree_exists_iff_no_induced_p4():
    p4 = nx.path_graph(4)
    for graph in connected_graphs(6):
        matcher = nx.algorithms.isomorphism.GraphMatcher(graph.nx, p4)
        has_induced_p4 = matcher.subgraph_is_isomorphic()
        cotree = build_cotree(graph)
        assert (cotree is None) == has_induced_p4
        if cotree is not None:
            assert cotree.evaluates_to(graph)


@pytest.mark.parametrize(
    "graph, width",
    [(path_graph(5), 1), (cycle_graph(6), 2), (complete_graph(4), 3)],
)
def test_decomposition_widths(graph, width):
    decomposition = compute_nice_tree_decomposition(graph, 5)
    decomposition.validate(graph)
    assert decomposition.width == width


def test_decomposition_respects_width_budget():
    assert compute_nice_tree_decomposition(complete_graph(5), 3) is None


def test_every_small_decomposition_is_nice():
    for graph in connected_graphs(6):
        decomposition = compute_nice_tree_decomposition(graph, graph.vertex_count)
        decomposition.validate(graph)
        assert decomposition.width <= treewidth_upper_bound(graph)


def test_vertex_integrity_of_p9():
    modulator, k = vertex_integrity(path_graph(9), 5)
    assert k == 3
    assert len(modulator) <= 3
    assert max(len(c) for c in components_without(path_graph(9), set(modulator))) <= 3


def test_vertex_integrity_of_k5():
    assert vertex_integrity(complete_graph(5), 5)[1] == 3


def test_vertex_integrity_small_cases():
    assert vertex_integrity(Graph.from_edges(1, []), 3)[1] == 1
    assert vertex_integrity(path_graph(9), 2) is None


def test_vertex_integrity_is_minimum():
    for graph in connected_graphs(6):
        modulator, k = vertex_integrity(graph, graph.vertex_count)
        assert len(modulator) <= k
        assert all(len(c) <= k for c in components_without(graph, set(modulator)))
        if k > 1:
            assert vertex_integrity(graph, k - 1) is None


def test_modular_width():
    assert modular_width(modular_decomposition(path_graph(4))) == 4
    assert modular_width(modular_decomposition(cycle_graph(5))) == 5
    assert modular_width(modular_decomposition(complete_bipartite_graph(2, 3))) == 2
    assert modular_width(modular_decomposition(Graph.from_edges(1, []))) == 0


def test_modular_decomposition_children_partition_their_parent():
    for graph in connected_graphs(6):
        for node in modular_decomposition(graph).walk():
            if node.children:
                covered = sorted(v for child in node.children for v in child.vertices)
                assert covered == list(node.vertices)


def test_parameter_report_of_k6():
    report = parameter_report(complete_graph(6))
    assert report.get("distance-to-clique") == 0
    assert report.get("neighbourhood-diversity") == 1
    assert report.get("feedback-edge-set") == 10
    assert report.is_cograph


def test_parameter_report_of_a_tree():
    tree = Graph.from_networkx(nx.balanced_tree(2, 3).subgraph(range(8)))
    report = parameter_report(tree)
    assert report.get("feedback-edge-set") == 0
    assert report.get("tree-width") == 1


def test_parameter_report_of_c5():
    report = parameter_report(cycle_graph(5))
    assert report.get("feedback-edge-set") == 1
    assert not report.is_cograph
    assert report.as_dict()["cograph"] is False


def test_parameter_report_marks_exceeded_budgets():
    report = parameter_report(cycle_graph(9), {"vertex-cover": 2})
    assert report.get("vertex-cover") is None
    assert report.as_dict()["vertex-cover"] == "exceeded"
    assert "param vertex-cover exceeded" in report.render()


def test_parameter_report_stops_with_its_search_budget():
    report = parameter_report(path_graph(12), search=SearchLimits(node_budget=5).start())
    assert report.stopped == "nodes"
    assert report.modulators == {}
    assert report.integrity is None
    data = report.as_dict()
    assert data["vertex-cover"] == "exceeded"
    assert data["vertex-integrity"] == "exceeded"
    # the polynomial parameters are still measured
    assert data["feedback-edge-set"] == 0
    assert data["tree-width"] == 1


def test_parameter_report_passes_cancellation_on():
    cancel = threading.Event()
    cancel.set()
    with pytest.raises(Cancelled):
        parameter_report(path_graph(30), search=SearchLimits().start(cancel))
