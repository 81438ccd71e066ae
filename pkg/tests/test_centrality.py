"""Test hierarchy and effective degree."""

import networkx as nx
import numpy as np
import pytest

from litmap.centrality import (central_papers, compute_scores, cross_cluster_reach,
                               effective_degree, export_scores, hierarchy_score)
from litmap.citation_graph import build_graph
from litmap.clustering import Partition
from litmap.pipeline_errors import CentralityError

from .conftest import citation_graph


def _closure_in_reach(size, edges):
    reach = np.eye(size, dtype=bool)
    for citing, cited in edges:
        reach[citing, cited] = True
    for middle in range(size):
        reach |= reach[:, [middle]] & reach[[middle], :]
    return reach.sum(axis=0) - 1


def test_chain_root_has_full_hierarchy():
    graph = citation_graph([('b', 'a'), ('c', 'b'), ('d', 'c')])
    cluster = ['a', 'b', 'c', 'd']
    assert hierarchy_score('a', cluster, graph) == 3
    assert hierarchy_score('d', cluster, graph) == 0


def test_hierarchy_ignores_paths_leaving_the_cluster():
    graph = citation_graph([('b', 'x'), ('x', 'a')])
    assert hierarchy_score('a', ['a', 'b'], graph) == 0
    assert cross_cluster_reach('a', ['a', 'b'], graph) == 1


def test_hierarchy_on_a_cycle_excludes_the_node():
    graph = citation_graph([('a', 'b'), ('b', 'a')])
    assert hierarchy_score('a', ['a', 'b'], graph) == 1


def test_hierarchy_requires_membership():
    graph = citation_graph([('b', 'a')])
    with pytest.raises(CentralityError):
        hierarchy_score('a', ['b'], graph)


def test_hierarchy_closure_oracle():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        size = int(rng.integers(1, 11))
        density = float(rng.uniform(0.1, 0.6))
        edges = [(citing, cited) for citing in range(size) for cited in range(citing)
                 if rng.random() < density]
        graph = citation_graph(edges, nodes=range(size))
        expected = _closure_in_reach(size, edges)
        cluster = list(range(size))
        for node in cluster:
            assert hierarchy_score(node, cluster, graph) == expected[node]


def test_effective_degree_equals_degree_on_unit_weights():
    rng = np.random.default_rng(7)
    for index in range(1000):
        graph = nx.gnp_random_graph(int(rng.integers(1, 12)), float(rng.uniform(0, 0.8)),
                                    seed=index)
        for node in graph.nodes:
            assert effective_degree(node, graph) == graph.degree(node)


def test_effective_degree_weighted():
    graph = nx.Graph()
    graph.add_edge('h', 'a', weight=1)
    graph.add_edge('h', 'b', weight=2)
    graph.add_edge('h', 'c', weight=3)
    assert effective_degree('h', graph) == pytest.approx(36 / 14, abs=1e-12)
    assert effective_degree('a', graph) == 1.0


def test_effective_degree_of_mutual_citation():
    graph = citation_graph([('a', 'b'), ('b', 'a'), ('a', 'c')])
    assert effective_degree('a', graph) == pytest.approx(9 / 5, abs=1e-12)


def test_effective_degree_is_at_most_degree():
    rng = np.random.default_rng(11)
    for index in range(300):
        graph = nx.gnp_random_graph(int(rng.integers(2, 10)), 0.5, seed=index)
        for u, v in graph.edges:
            graph[u][v]['weight'] = int(rng.integers(1, 4))
        for node in graph.nodes:
            weights = {data['weight'] for _, _, data in graph.edges(node, data=True)}
            value = effective_degree(node, graph)
            if len(weights) <= 1:
                assert value == pytest.approx(graph.degree(node), abs=1e-9)
            else:
                assert value < graph.degree(node) - 1e-9


def test_adding_an_edge_never_lowers_effective_degree():
    rng = np.random.default_rng(5)
    for index in range(200):
        graph = nx.gnp_random_graph(int(rng.integers(3, 10)), 0.4, seed=index)
        missing = sorted(nx.non_edges(graph))
        if not missing:
            continue
        before = {node: effective_degree(node, graph) for node in graph.nodes}
        graph.add_edge(*missing[int(rng.integers(len(missing)))])
        for node in graph.nodes:
            assert effective_degree(node, graph) >= before[node]


def test_hierarchy_ignores_node_names():
    rng = np.random.default_rng(3)
    for _ in range(50):
        size = int(rng.integers(2, 9))
        edges = [(citing, cited) for citing in range(size) for cited in range(citing)
                 if rng.random() < 0.4]
        names = {node: 'n{}'.format(label)
                 for node, label in enumerate(rng.permutation(size).tolist())}
        graph = citation_graph(edges, nodes=range(size))
        renamed = citation_graph([(names[u], names[v]) for u, v in edges],
                                 nodes=names.values())
        cluster = list(range(size))
        renamed_cluster = [names[node] for node in cluster]
        for node in cluster:
            assert (hierarchy_score(node, cluster, graph)
                    == hierarchy_score(names[node], renamed_cluster, renamed))


def test_isolated_node():
    graph = nx.Graph()
    graph.add_node('x')
    assert effective_degree('x', graph) == 0.0


def test_central_papers_ties():
    years = {'a': 1990, 'b': 1985, 'c': 1990, 'd': 2000}
    graph = citation_graph([('d', 'a'), ('d', 'b'), ('d', 'c')], years)
    central = central_papers(['a', 'b', 'c', 'd'], graph, 2)
    assert central.by_hierarchy == [('b', 1), ('a', 1)]
    assert central.by_degree == [('d', 3.0), ('b', 1.0)]


def test_central_papers_errors():
    graph = citation_graph([('b', 'a')])
    with pytest.raises(CentralityError):
        central_papers([], graph, 1)
    with pytest.raises(CentralityError):
        central_papers(['a'], graph, 0)


def test_compute_scores(small_corpus):
    graph = build_graph(small_corpus)
    partition = Partition({'A': 1, 'B': 1, 'C': 1, 'G': 1, 'D': 2, 'E': 2, 'F': 2, 'H': 2})
    scores = compute_scores(graph, partition)
    assert scores.hierarchy['A'] == 3
    assert scores.hierarchy['D'] == 3
    assert scores.cross_cluster_reach['C'] == 4
    assert scores.effective_degree['C'] == 3.0
    local = compute_scores(graph, partition, per_cluster=True)
    assert local.effective_degree['C'] == 2.0
    assert 'H' in scores

    for members in partition.clusters:
        central = central_papers(members, graph, 2, scores)
        assert {node for node, _ in central.by_hierarchy} <= set(members)


def test_export_scores():
    graph = citation_graph([('b', 'a')])
    scores = compute_scores(graph, Partition.whole(graph.nodes))
    assert export_scores(scores) == 'a\t1\t1.000000\nb\t0\t1.000000\n'
