"""This module contains VocabularyTree, a poly-hierarchical controlled vocabulary."""

import logging

import networkx as nx

from .pipeline_errors import VocabularyError

__all__ = ('VocabularyTree', 'load_vocabulary', 'is_clinical')

logger = logging.getLogger(__name__)

_HEADER = 'clinical_roots:'


class VocabularyTree:
    """Controlled vocabulary with designated clinical root categories.

    Terms are linked child -> parent; a term may have several parents.
    A term is clinical when it or one of its ancestors is a clinical root.
    """

    def __init__(self, names, parent_links, clinical_roots):
        """Validate and index a vocabulary.

        Arguments:
            names {dict} -- term id -> display name
            parent_links {dict} -- term id -> iterable of parent ids
            clinical_roots {iterable} -- ids of clinical root categories
        """
        self._names = dict(names)
        self._graph = nx.DiGraph()
        self._graph.add_nodes_from(self._names)
        for term, parents in parent_links.items():
            if term not in self._names:
                raise VocabularyError('parent links for undefined term {!r}'.format(term), term)
            for parent in parents:
                if parent not in self._names:
                    raise VocabularyError('term {!r} has undefined parent {!r}'.format(
                        term, parent), term)
                if parent == term:
                    raise VocabularyError('term {!r} is its own parent'.format(term), term)
                self._graph.add_edge(term, parent)

        try:
            cycle = nx.find_cycle(self._graph)
        except nx.NetworkXNoCycle:
            cycle = None
        if cycle:
            path = ' -> '.join([edge[0] for edge in cycle] + [cycle[0][0]])
            raise VocabularyError('cycle in parent links: {}'.format(path), cycle[0][0])

        self._roots = frozenset(term for term in self._names
                                if self._graph.out_degree(term) == 0)
        self._clinical_roots = frozenset(clinical_roots)
        for root in sorted(self._clinical_roots):
            if root not in self._names:
                raise VocabularyError('clinical root {!r} is not a term'.format(root), root)
            if root not in self._roots:
                raise VocabularyError('clinical root {!r} is not a root'.format(root), root)

        clinical = set(self._clinical_roots)
        for root in self._clinical_roots:
            clinical.update(nx.ancestors(self._graph, root))
        self._clinical_terms = frozenset(clinical)

    def __contains__(self, term):
        return term in self._names

    def __len__(self):
        return len(self._names)

    @property
    def terms(self):
        return frozenset(self._names)

    @property
    def roots(self):
        return self._roots

    @property
    def clinical_roots(self):
        return self._clinical_roots

    @property
    def clinical_terms(self):
        """All terms below (or equal to) a clinical root."""
        return self._clinical_terms

    def name(self, term):
        """Return the display name of @term, or the id itself when unknown."""
        return self._names.get(term, term)

    def parents(self, term):
        self._require(term)
        return frozenset(self._graph.successors(term))

    def ancestors(self, term):
        """Return every term reachable from @term through parent links."""
        self._require(term)
        return frozenset(nx.descendants(self._graph, term))

    def is_clinical(self, term):
        """Check whether @term sits under a clinical root.

        Arguments:
            term {str} -- term id

        Returns:
            bool -- True when the term or an ancestor is a clinical root
        """
        self._require(term)
        return term in self._clinical_terms

    def _require(self, term):
        if term not in self._names:
            raise VocabularyError('unknown term {!r}'.format(term), term)


def is_clinical(term, vocab):
    """Check whether @term is clinical in @vocab."""
    return vocab.is_clinical(term)


def load_vocabulary(stream):
    """Parse a vocabulary file.

    The first non-empty line is "clinical_roots: id1,id2,..."; every other
    line is "id<TAB>name<TAB>parent1,parent2,...", the parent column empty
    for roots.

    Arguments:
        stream {str | iterable} -- text or lines

    Returns:
        VocabularyTree -- validated tree
    """
    if isinstance(stream, str):
        stream = stream.splitlines()
    clinical_roots = None
    names = {}
    parents = {}
    for number, line in enumerate(stream, start=1):
        line = line.rstrip('\r\n')
        if not line.strip() or line.startswith('#'):
            continue
        if clinical_roots is None:
            if not line.lower().startswith(_HEADER):
                raise VocabularyError('line {}: expected "{} ..." header'.format(
                    number, _HEADER))
            values = line[len(_HEADER):].split(',')
            clinical_roots = [value.strip() for value in values if value.strip()]
            continue
        parts = line.split('\t')
        if len(parts) < 2 or not parts[0].strip():
            raise VocabularyError('line {}: expected "id<TAB>name<TAB>parents"'.format(number))
        term = parts[0].strip()
        if term in names:
            raise VocabularyError('line {}: duplicate term {!r}'.format(number, term), term)
        names[term] = parts[1].strip()
        links = parts[2] if len(parts) > 2 else ''
        parents[term] = [parent.strip() for parent in links.split(',') if parent.strip()]

    if clinical_roots is None:
        raise VocabularyError('missing "{}" header'.format(_HEADER))
    vocab = VocabularyTree(names, parents, clinical_roots)
    logger.info('loaded vocabulary: %d terms, %d roots, %d clinical terms',
                len(vocab), len(vocab.roots), len(vocab.clinical_terms))
    return vocab
