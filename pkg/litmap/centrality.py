"""This module contains the hierarchy and effective degree centralities."""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .citation_graph import CitationGraph
from .pipeline_errors import CentralityError

__all__ = ('CentralityScores', 'CentralPapers', 'hierarchy_score', 'cross_cluster_reach',
           'effective_degree', 'central_papers', 'compute_scores', 'export_scores')

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentralityScores:
    """Scores of every node, keyed by node id."""

    hierarchy: dict
    effective_degree: dict
    cross_cluster_reach: dict

    def __contains__(self, node):
        return node in self.hierarchy


@dataclass(frozen=True)
class CentralPapers:
    """Top papers of one cluster; the two lists may share members."""

    by_hierarchy: list
    by_degree: list


def hierarchy_score(node, cluster, graph):
    """Number of cluster members that transitively cite @node.

    Only paths running inside the cluster count. A node on a citation cycle
    is not its own ancestor.

    Arguments:
        node {str} -- paper id
        cluster {iterable} -- member ids
        graph {CitationGraph} -- citation graph

    Returns:
        int -- hierarchy score
    """
    cluster = set(cluster)
    if node not in cluster:
        raise CentralityError('node {} is not in the cluster'.format(node))
    inner = graph.digraph.subgraph(cluster)
    return len(nx.ancestors(inner, node))


def cross_cluster_reach(node, cluster, graph):
    """Number of papers outside the cluster that transitively cite @node."""
    cluster = set(cluster)
    if node not in cluster:
        raise CentralityError('node {} is not in the cluster'.format(node))
    return len(nx.ancestors(graph.digraph, node) - cluster)


def effective_degree(node, graph):
    """Effective number of incident edge weights, (sum w)^2 / sum w^2.

    Arguments:
        node {str} -- node id
        graph {nx.Graph | CitationGraph} -- weighted undirected graph

    Returns:
        float -- plain degree on unit weights, 0 for an isolated node
    """
    if isinstance(graph, CitationGraph):
        graph = graph.undirected()
    weights = np.array([data.get('weight', 1) for _, _, data in graph.edges(node, data=True)],
                       dtype=float)
    if not len(weights):
        return 0.0
    return float(weights.sum() ** 2 / np.dot(weights, weights))


def _ranked(scores, graph, k):
    order = sorted(scores, key=lambda node: (-scores[node], graph.year(node), node))
    return [(node, scores[node]) for node in order[:k]]


def central_papers(cluster, graph, k, scores=None):
    """Top-k papers of a cluster by hierarchy and by effective degree.

    Ties are broken by year asc, then id asc.

    Arguments:
        cluster {iterable} -- member ids
        graph {CitationGraph} -- citation graph
        k {int} -- list length

    Keyword Arguments:
        scores {CentralityScores} -- precomputed scores (default: {None, computed here})

    Returns:
        CentralPapers -- the two ranked lists of (node, score)
    """
    cluster = sorted(cluster)
    if not cluster:
        raise CentralityError('empty cluster')
    if k < 1:
        raise CentralityError('k must be >= 1')
    if scores is None:
        inner = graph.digraph.subgraph(cluster)
        weighted = graph.undirected()
        hierarchy = {node: len(nx.ancestors(inner, node)) for node in cluster}
        degree = {node: effective_degree(node, weighted) for node in cluster}
    else:
        hierarchy = {node: scores.hierarchy[node] for node in cluster}
        degree = {node: scores.effective_degree[node] for node in cluster}
    return CentralPapers(_ranked(hierarchy, graph, k), _ranked(degree, graph, k))


def compute_scores(graph, partition, per_cluster=False):
    """Score every node of a clustered citation graph.

    Arguments:
        graph {CitationGraph} -- citation graph
        partition {Partition} -- partition of its nodes

    Keyword Arguments:
        per_cluster {bool} -- effective degree on each cluster's subgraph (default: {False})

    Returns:
        CentralityScores -- scores of all nodes
    """
    hierarchy = {}
    degree = {}
    reach = {}
    weighted = graph.undirected()
    for members in partition.clusters:
        inner = graph.digraph.subgraph(members)
        local = weighted.subgraph(members) if per_cluster else weighted
        for node in members:
            ancestors = nx.ancestors(inner, node)
            hierarchy[node] = len(ancestors)
            reach[node] = len(nx.ancestors(graph.digraph, node) - set(members))
            degree[node] = effective_degree(node, local)
    logger.info('centrality scores computed for %d nodes', len(hierarchy))
    return CentralityScores(hierarchy, degree, reach)


def export_scores(scores):
    """Return scores as "node<TAB>hierarchy<TAB>effective_degree" lines."""
    return ''.join('{}\t{}\t{:.6f}\n'.format(node, scores.hierarchy[node],
                                             scores.effective_degree[node])
                   for node in sorted(scores.hierarchy))
