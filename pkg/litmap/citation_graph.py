"""This module contains CitationGraph and the core selection operations."""

import logging
import math

import networkx as nx

from .pipeline_errors import AnalysisError, ConfigError

__all__ = ('CitationGraph', 'build_graph', 'select_top_cited', 'citation_coverage',
           'weak_components', 'filter_by_required_terms', 'export_edge_list')

logger = logging.getLogger(__name__)


class CitationGraph:
    """Directed citing -> cited graph of a corpus.

    Node attributes: year, title, institution, country.
    """

    def __init__(self, digraph, warnings=()):
        self._digraph = digraph
        self._undirected = None
        self.warnings = list(warnings)

    @property
    def digraph(self):
        """The underlying networkx DiGraph (treat as read-only)."""
        return self._digraph

    @property
    def nodes(self):
        return sorted(self._digraph.nodes)

    @property
    def directed_edges(self):
        return sorted(self._digraph.edges)

    def __len__(self):
        return self._digraph.number_of_nodes()

    def __contains__(self, node):
        return node in self._digraph

    def number_of_edges(self):
        return self._digraph.number_of_edges()

    def year(self, node):
        return self._digraph.nodes[node]['year']

    def attributes(self, node):
        return dict(self._digraph.nodes[node])

    def undirected(self):
        """Weighted simple undirected view.

        Weight is 1 per citing/cited pair, 2 when both papers cite each other.

        Returns:
            nx.Graph -- view with 'weight' edge attributes, nodes in sorted order
        """
        if self._undirected is None:
            graph = nx.Graph()
            graph.add_nodes_from(self.nodes)
            for citing, cited in self.directed_edges:
                if graph.has_edge(citing, cited):
                    graph[citing][cited]['weight'] += 1
                else:
                    graph.add_edge(citing, cited, weight=1)
            self._undirected = graph
        return self._undirected

    def subgraph(self, nodes):
        """Return the graph induced by @nodes."""
        keep = set(nodes)
        digraph = nx.DiGraph()
        digraph.add_nodes_from((node, self._digraph.nodes[node])
                               for node in self.nodes if node in keep)
        digraph.add_edges_from(edge for edge in self.directed_edges
                               if edge[0] in keep and edge[1] in keep)
        return CitationGraph(digraph)


def build_graph(corpus):
    """Build the citation graph of a corpus.

    Arguments:
        corpus {Corpus} -- validated corpus

    Returns:
        CitationGraph -- one edge per (citing, cited) pair
    """
    digraph = nx.DiGraph()
    for paper in sorted(corpus, key=lambda p: p.id):
        digraph.add_node(paper.id, year=paper.year, title=paper.title,
                         institution=paper.corr_institution, country=paper.corr_country)
    warnings = []
    for paper in sorted(corpus, key=lambda p: p.id):
        for cited in sorted(paper.cited_refs):
            if cited == paper.id or cited not in corpus:
                continue
            if paper.year < corpus[cited].year:
                message = 'anachronistic citation {} ({}) -> {} ({})'.format(
                    paper.id, paper.year, cited, corpus[cited].year)
                logger.warning(message)
                warnings.append(message)
            digraph.add_edge(paper.id, cited)
    logger.info('citation graph: %d nodes, %d edges',
                digraph.number_of_nodes(), digraph.number_of_edges())
    return CitationGraph(digraph, warnings)


def _citation_order(paper):
    return (-paper.external_citation_count, paper.year, paper.id)


def select_top_cited(corpus, fraction, include_ties=False):
    """Select the most cited papers.

    Papers are ordered by citation count desc, year asc, id asc and the first
    ceil(fraction * n), at least one, are kept.

    Arguments:
        corpus {Corpus} -- non-empty corpus
        fraction {float} -- share to keep, in (0, 1]

    Keyword Arguments:
        include_ties {bool} -- also keep papers tied with the cutoff count (default: {False})

    Returns:
        Corpus -- sub-corpus in the original order
    """
    if not 0 < fraction <= 1:
        raise ConfigError('must be in (0, 1], got {}'.format(fraction), 'fraction')
    if not len(corpus):
        raise AnalysisError('cannot select from an empty corpus')
    ranked = sorted(corpus, key=_citation_order)
    count = min(len(ranked), max(1, math.ceil(fraction * len(ranked) - 1e-9)))
    selected = ranked[:count]
    if include_ties:
        cutoff = selected[-1].external_citation_count
        selected += [paper for paper in ranked[count:]
                     if paper.external_citation_count == cutoff]
    logger.info('selected %d of %d papers (fraction %s)', len(selected), len(corpus), fraction)
    return corpus.subset(paper.id for paper in selected)


def citation_coverage(selected, corpus):
    """Share of the corpus citations received by the selected papers.

    Arguments:
        selected {Corpus} -- subset of @corpus
        corpus {Corpus} -- reference corpus

    Returns:
        float -- value in [0, 1]; 0 when the corpus has no citation at all
    """
    missing = [paper.id for paper in selected if paper.id not in corpus]
    if missing:
        raise AnalysisError('selected papers not in corpus: {}'.format(', '.join(missing[:5])))
    total = corpus.total_citations()
    if total == 0:
        return 0.0
    return selected.total_citations() / total


def weak_components(graph):
    """Connected components of the undirected view.

    Arguments:
        graph {CitationGraph} -- citation graph

    Returns:
        list -- sorted member lists, by size desc then smallest member id
    """
    components = [sorted(nodes) for nodes in nx.connected_components(graph.undirected())]
    components.sort(key=lambda members: (-len(members), members[0]))
    return components


def filter_by_required_terms(corpus, required):
    """Keep papers annotated with every required term.

    Arguments:
        corpus {Corpus} -- input corpus
        required {iterable} -- term ids

    Returns:
        Corpus -- survivors, citing only survivors
    """
    required = frozenset(required)
    if not required:
        return corpus
    kept = [paper.id for paper in corpus if required <= paper.terms]
    logger.info('term filter kept %d of %d papers', len(kept), len(corpus))
    return corpus.subset(kept)


def export_edge_list(graph):
    """Return the graph as "citing<TAB>cited" lines."""
    return ''.join('{}\t{}\n'.format(citing, cited) for citing, cited in graph.directed_edges)
