"""This module contains modularity-based community detection and meta-graph condensation.

Modularity is evaluated on the weighted undirected view of the citation
graph. For a symmetric weight matrix W with total weight s = sum(W) and a
cluster c:

    Q = sum_c (W_cc / s - (K_c / s) ** 2)

where W_cc sums W over pairs inside c (both orders) and K_c sums the node
strengths of c. Coarsened graphs keep intra-cluster weight on the diagonal,
so the same expression holds at every level.
"""

import logging
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .citation_graph import CitationGraph
from .pipeline_errors import ClusteringError

__all__ = ('Partition', 'MetaGraph', 'modularity', 'modularity_gain', 'greedy_agglomerative',
           'multilevel_transfer', 'brute_force_best_partition', 'build_metagraph',
           'export_partition', 'BRUTE_FORCE_LIMIT')

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 12

# smallest modularity increase accepted as a real improvement
_MIN_GAIN = 1e-10


class Partition:
    """Node -> cluster assignment.

    Cluster indices are contiguous from 1 and ordered by cluster size desc,
    then by smallest member id, whatever labels the partition was built from.
    Two partitions that differ only by labels are therefore equal.
    """

    def __init__(self, labels):
        """Canonicalize an arbitrary labelling.

        Arguments:
            labels {dict} -- node -> any hashable cluster label
        """
        groups = {}
        for node in sorted(labels):
            groups.setdefault(labels[node], []).append(node)
        clusters = sorted(groups.values(), key=lambda members: (-len(members), members[0]))
        self._clusters = [tuple(members) for members in clusters]
        self._assignment = {node: index
                            for index, members in enumerate(self._clusters, start=1)
                            for node in members}

    @classmethod
    def singletons(cls, nodes):
        return cls({node: node for node in nodes})

    @classmethod
    def whole(cls, nodes):
        return cls({node: 0 for node in nodes})

    @property
    def assignment(self):
        return dict(self._assignment)

    @property
    def nodes(self):
        return sorted(self._assignment)

    @property
    def clusters(self):
        """Member tuples, the i-th holding cluster i + 1."""
        return list(self._clusters)

    @property
    def indices(self):
        return list(range(1, len(self._clusters) + 1))

    def members(self, index):
        """Return the sorted members of cluster @index."""
        if not 1 <= index <= len(self._clusters):
            raise ClusteringError('no cluster {}'.format(index))
        return self._clusters[index - 1]

    def cluster_of(self, node):
        return self._assignment[node]

    def sizes(self):
        return {index: len(members) for index, members in enumerate(self._clusters, start=1)}

    def moved(self, node, index):
        """Return a copy with @node moved to cluster @index."""
        labels = self.assignment
        labels[node] = index
        return Partition(labels)

    def __len__(self):
        return len(self._clusters)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self._assignment == other._assignment

    def __repr__(self):
        return 'Partition({} nodes, {} clusters)'.format(len(self._assignment), len(self))


@dataclass
class MetaGraph:
    """Condensed cluster graph.

    sizes maps cluster index -> member count, edges maps (c, d) with c < d
    -> number of directed citations between the two clusters.
    """

    sizes: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    intra_edges: dict = field(default_factory=dict)

    @property
    def total_inter(self):
        return sum(self.edges.values())

    @property
    def total_intra(self):
        return sum(self.intra_edges.values())

    def strongest_edge(self):
        """Return ((c, d), weight) of the heaviest meta-edge, or None."""
        if not self.edges:
            return None
        pair = min(self.edges, key=lambda key: (-self.edges[key], key))
        return pair, self.edges[pair]


def _weighted(graph):
    if isinstance(graph, CitationGraph):
        return graph.undirected()
    return graph


def _weight_matrix(graph):
    graph = _weighted(graph)
    nodes = sorted(graph.nodes)
    matrix = nx.to_numpy_array(graph, nodelist=nodes, weight='weight', dtype=float)
    # networkx stores a self-loop once; block sums count both orders
    matrix[np.diag_indices_from(matrix)] *= 2
    return nodes, matrix


def _labels_for(nodes, partition):
    if set(partition.nodes) != set(nodes):
        raise ClusteringError('partition does not cover the graph nodes')
    return np.array([partition.cluster_of(node) - 1 for node in nodes])


def _quality(matrix, labels):
    total = matrix.sum()
    onehot = np.zeros((len(labels), labels.max() + 1))
    onehot[np.arange(len(labels)), labels] = 1
    blocks = onehot.T @ matrix @ onehot
    strength = blocks.sum(axis=1) / total
    return float(np.trace(blocks) / total - np.dot(strength, strength))


def modularity(graph, partition):
    """Newman modularity of a partition.

    Arguments:
        graph {nx.Graph | CitationGraph} -- weighted undirected graph (or its citation graph)
        partition {Partition} -- partition of the graph nodes

    Returns:
        float -- Q in [-0.5, 1)
    """
    nodes, matrix = _weight_matrix(graph)
    if matrix.sum() == 0:
        raise ClusteringError('modularity is undefined on a graph without edges')
    return _quality(matrix, _labels_for(nodes, partition))


def _gains(matrix, strength, total, links, module_strength, node, current):
    """Modularity change of moving @node from @current to every cluster."""
    inside = links[current] - matrix[node, node]
    return (2 * (links - inside) / total
            - 2 * strength[node] * (module_strength - module_strength[current] + strength[node])
            / total ** 2)


def modularity_gain(graph, partition, node, target):
    """Incremental modularity change of moving one node.

    Arguments:
        graph {nx.Graph | CitationGraph} -- weighted undirected graph
        partition {Partition} -- current partition
        node {str} -- node to move
        target {int} -- destination cluster index

    Returns:
        float -- Q(after) - Q(before)
    """
    nodes, matrix = _weight_matrix(graph)
    total = matrix.sum()
    if total == 0:
        raise ClusteringError('modularity is undefined on a graph without edges')
    labels = _labels_for(nodes, partition)
    if not 1 <= target <= len(partition):
        raise ClusteringError('no cluster {}'.format(target))
    position = nodes.index(node)
    current = labels[position]
    if current == target - 1:
        return 0.0
    strength = matrix.sum(axis=0)
    size = len(partition)
    links = np.bincount(labels, weights=matrix[position], minlength=size)
    module_strength = np.bincount(labels, weights=strength, minlength=size)
    gains = _gains(matrix, strength, total, links, module_strength, position, current)
    return float(gains[target - 1])


def greedy_agglomerative(graph):
    """Greedy agglomeration of clusters by best modularity increase.

    Starts from singletons and merges the pair with the largest positive
    increase, smallest index pair first on ties.

    Arguments:
        graph {nx.Graph | CitationGraph} -- weighted undirected graph

    Returns:
        Partition -- the highest-modularity partition on the merge path
    """
    nodes, matrix = _weight_matrix(graph)
    total = matrix.sum()
    if total == 0:
        return Partition.singletons(nodes)

    fractions = matrix / total
    ends = fractions.sum(axis=1)
    labels = np.arange(len(nodes))
    active = np.ones(len(nodes), dtype=bool)
    upper = np.triu(np.ones_like(fractions, dtype=bool), k=1)
    quality = float(np.trace(fractions) - np.dot(ends, ends))
    best_quality, best_labels = quality, labels.copy()

    while active.sum() > 1:
        gains = 2 * (fractions - np.outer(ends, ends))
        mask = upper & np.outer(active, active) & (fractions > 0)
        if not mask.any():
            break
        gains = np.where(mask, gains, -np.inf)
        flat = int(np.argmax(gains))
        gain = gains.flat[flat]
        if gain <= _MIN_GAIN:
            break
        keep, drop = divmod(flat, len(nodes))
        fractions[keep, :] += fractions[drop, :]
        fractions[:, keep] += fractions[:, drop]
        fractions[drop, :] = 0
        fractions[:, drop] = 0
        ends[keep] += ends[drop]
        ends[drop] = 0
        active[drop] = False
        labels[labels == drop] = keep
        quality += gain
        logger.debug('merge %d <- %d, gain %.6f, Q %.6f', keep, drop, gain, quality)
        if quality > best_quality:
            best_quality, best_labels = quality, labels.copy()

    return Partition(dict(zip(nodes, best_labels.tolist())))


def _transfer(matrix, labels, rng):
    """Move single nodes to the best neighbouring cluster until a sweep is idle."""
    total = matrix.sum()
    strength = matrix.sum(axis=0)
    size = len(matrix)
    onehot = np.zeros((size, size))
    onehot[np.arange(size), labels] = 1
    links = matrix @ onehot
    module_strength = np.bincount(labels, weights=strength, minlength=size)
    improved = False
    for sweep in range(1000):
        moved = False
        for node in rng.permutation(size):
            current = labels[node]
            candidates = np.flatnonzero(links[node] > 0)
            candidates = candidates[candidates != current]
            if not len(candidates):
                continue
            gains = _gains(matrix, strength, total, links[node], module_strength, node, current)
            choice = candidates[int(np.argmax(gains[candidates]))]
            if gains[choice] <= _MIN_GAIN:
                continue
            links[:, choice] += matrix[:, node]
            links[:, current] -= matrix[:, node]
            module_strength[choice] += strength[node]
            module_strength[current] -= strength[node]
            labels[node] = choice
            moved = improved = True
        if not moved:
            break
    else:
        logger.warning('transfer phase stopped after %d sweeps', sweep + 1)
    return labels, improved


def _multilevel(matrix, rng):
    mapping = np.arange(len(matrix))
    level_matrix = matrix
    level = 0
    while True:
        labels, improved = _transfer(level_matrix, np.arange(len(level_matrix)), rng)
        if not improved:
            break
        _, labels = np.unique(labels, return_inverse=True)
        mapping = labels[mapping]
        count = labels.max() + 1
        onehot = np.zeros((len(labels), count))
        onehot[np.arange(len(labels)), labels] = 1
        level_matrix = onehot.T @ level_matrix @ onehot
        level += 1
        logger.debug('level %d: %d clusters', level, count)
        if count == 1:
            break
    # one more transfer pass on the original nodes
    labels, _ = _transfer(matrix, mapping.copy(), rng)
    return labels


def multilevel_transfer(graph, seed=42, restarts=3):
    """Multilevel transfer optimization of modularity.

    Each run alternates a transfer phase (single-node moves in shuffled order
    to the neighbouring cluster with the largest positive gain) with
    coarsening of the clusters into weighted nodes, until a level brings no
    improvement; the projected partition then gets a final transfer pass.
    Runs differ only by their shuffles, all drawn from @seed.

    Arguments:
        graph {nx.Graph | CitationGraph} -- weighted undirected graph

    Keyword Arguments:
        seed {int} -- random seed (default: {42})
        restarts {int} -- number of runs, the best one is kept (default: {3})

    Returns:
        Partition -- best partition found
    """
    if restarts < 1:
        raise ClusteringError('restarts must be >= 1')
    nodes, matrix = _weight_matrix(graph)
    if matrix.sum() == 0:
        return Partition.singletons(nodes)

    rng = np.random.default_rng(seed)
    best_quality, best_labels = None, None
    for run in range(restarts):
        labels = _multilevel(matrix, rng)
        quality = _quality(matrix, labels)
        logger.debug('run %d: Q %.6f', run, quality)
        if best_quality is None or quality > best_quality + 1e-12:
            best_quality, best_labels = quality, labels
    return Partition(dict(zip(nodes, best_labels.tolist())))


def _growth_strings(size):
    """Yield restricted growth strings of @size in lexicographic order."""
    labels = [0] * size

    def extend(position, top):
        if position == size:
            yield labels
            return
        for label in range(top + 2):
            labels[position] = label
            yield from extend(position + 1, max(top, label))

    if size == 0:
        yield []
        return
    yield from extend(1, 0)


def brute_force_best_partition(graph):
    """Exhaustive modularity maximization for small graphs.

    Arguments:
        graph {nx.Graph | CitationGraph} -- weighted undirected graph with at most 12 nodes

    Returns:
        tuple -- (Partition, Q), the lexicographically first optimum
    """
    nodes, matrix = _weight_matrix(graph)
    if len(nodes) > BRUTE_FORCE_LIMIT:
        raise ClusteringError('brute force limited to {} nodes, got {}'.format(
            BRUTE_FORCE_LIMIT, len(nodes)))
    if matrix.sum() == 0:
        raise ClusteringError('modularity is undefined on a graph without edges')

    best_quality, best_labels = None, None
    for labels in _growth_strings(len(nodes)):
        labels = np.array(labels)
        quality = _quality(matrix, labels)
        if best_quality is None or quality > best_quality + 1e-12:
            best_quality, best_labels = quality, labels
    return Partition(dict(zip(nodes, best_labels.tolist()))), best_quality


def build_metagraph(graph, partition):
    """Condense the citation graph by cluster.

    Arguments:
        graph {CitationGraph} -- directed citation graph
        partition {Partition} -- partition of its nodes

    Returns:
        MetaGraph -- cluster sizes, inter-cluster and intra-cluster citation counts
    """
    if set(partition.nodes) != set(graph.nodes):
        raise ClusteringError('partition does not cover the graph nodes')
    meta = MetaGraph(sizes=partition.sizes())
    meta.intra_edges = {index: 0 for index in partition.indices}
    for citing, cited in graph.directed_edges:
        source, target = partition.cluster_of(citing), partition.cluster_of(cited)
        if source == target:
            meta.intra_edges[source] += 1
        else:
            pair = (min(source, target), max(source, target))
            meta.edges[pair] = meta.edges.get(pair, 0) + 1
    return meta


def export_partition(partition):
    """Return the partition as "node<TAB>cluster" lines."""
    return ''.join('{}\t{}\n'.format(node, partition.cluster_of(node))
                   for node in partition.nodes)
