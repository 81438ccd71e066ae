"""This module contains the per-cluster semantic statistics.

A paper's clinical rate is the share of its vocabulary terms lying under a
clinical root; a cluster's rate is the unweighted mean over its members, and
the rate maps onto a knowledge-translation stage.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field

from .pipeline_errors import SemanticsError

__all__ = ('ClusterProfile', 'STAGES', 'DEFAULT_THRESHOLDS', 'NO_INFORMATION',
           'clinical_rate', 'cluster_clinical_rate', 'stage_label', 'term_distribution',
           'distinctive_terms', 'avg_year', 'institution_tally', 'country_tally',
           'profile_cluster', 'chronological_order')

logger = logging.getLogger(__name__)

STAGES = ('basic', 'translational', 'clinical')
DEFAULT_THRESHOLDS = (0.15, 0.33)
NO_INFORMATION = 'No information'


@dataclass
class ClusterProfile:
    """Statistics of one cluster."""

    index: int
    size: int
    avg_year: float
    year_range: tuple
    clinical_rate: float
    stage: str
    top_terms: list = field(default_factory=list)
    top_institutions: list = field(default_factory=list)
    top_countries: list = field(default_factory=list)
    distinctive_terms: list = field(default_factory=list)
    density: float = 0.0
    unrated: list = field(default_factory=list)


def clinical_rate(paper, vocab, strict_terms=False):
    """Share of a paper's terms that are clinical.

    Terms unknown to the vocabulary count as non-clinical, or are left out of
    the denominator with @strict_terms.

    Arguments:
        paper {PaperRecord} -- paper with at least one term
        vocab {VocabularyTree} -- vocabulary

    Keyword Arguments:
        strict_terms {bool} -- ignore unknown terms (default: {False})

    Returns:
        float -- rate in [0, 1]
    """
    terms = paper.terms
    if strict_terms:
        terms = [term for term in terms if term in vocab]
    if not terms:
        raise SemanticsError('paper {} has no usable term'.format(paper.id))
    clinical = sum(1 for term in terms if term in vocab and vocab.is_clinical(term))
    return clinical / len(terms)


def _rated(members, vocab, strict_terms):
    rates = {}
    unrated = []
    for paper in members:
        try:
            rates[paper.id] = clinical_rate(paper, vocab, strict_terms)
        except SemanticsError:
            unrated.append(paper.id)
    return rates, unrated


def cluster_clinical_rate(members, vocab, strict_terms=False):
    """Mean clinical rate of the members that carry terms.

    Arguments:
        members {list} -- PaperRecord items of one cluster
        vocab {VocabularyTree} -- vocabulary

    Keyword Arguments:
        strict_terms {bool} -- ignore unknown terms (default: {False})

    Returns:
        float -- unweighted mean of member rates
    """
    if not members:
        raise SemanticsError('empty cluster')
    rates, unrated = _rated(members, vocab, strict_terms)
    for paper_id in unrated:
        logger.warning('paper %s has no terms, excluded from the clinical rate', paper_id)
    if not rates:
        raise SemanticsError('no member of the cluster carries terms')
    return sum(rates[paper_id] for paper_id in sorted(rates)) / len(rates)


def stage_label(rate, thresholds=DEFAULT_THRESHOLDS):
    """Map a clinical rate onto a stage.

    Arguments:
        rate {float} -- rate in [0, 1]

    Keyword Arguments:
        thresholds {tuple} -- (translational, clinical) lower bounds (default: {(0.15, 0.33)})

    Returns:
        str -- 'basic', 'translational' or 'clinical'
    """
    if not 0 <= rate <= 1:
        raise SemanticsError('rate {} outside [0, 1]'.format(rate))
    translational, clinical = thresholds
    if rate < translational:
        return STAGES[0]
    if rate < clinical:
        return STAGES[1]
    return STAGES[2]


def term_distribution(members, k):
    """Rank terms by the number of members carrying them.

    Arguments:
        members {list} -- PaperRecord items
        k {int} -- entries to keep

    Returns:
        list -- (term, count) pairs, count desc then term asc
    """
    if k < 1:
        raise SemanticsError('k must be >= 1')
    counts = Counter(term for paper in members for term in paper.terms)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def distinctive_terms(members, population, k, min_support=2):
    """Rank terms over-represented in a cluster.

    Lift is the share of cluster members carrying the term divided by the
    share of the whole population carrying it.

    Arguments:
        members {list} -- PaperRecord items of the cluster
        population {list} -- PaperRecord items of the whole network
        k {int} -- entries to keep

    Keyword Arguments:
        min_support {int} -- minimal number of members carrying a term (default: {2})

    Returns:
        list -- (term, lift) pairs with lift > 1, lift desc, count desc, term asc
    """
    if not members or not population:
        return []
    inside = Counter(term for paper in members for term in paper.terms)
    overall = Counter(term for paper in population for term in paper.terms)
    ranked = []
    for term, count in inside.items():
        if count < min_support or not overall[term]:
            continue
        lift = (count / len(members)) / (overall[term] / len(population))
        if lift > 1 + 1e-12:
            ranked.append((term, lift, count))
    ranked.sort(key=lambda item: (-item[1], -item[2], item[0]))
    return [(term, lift) for term, lift, _ in ranked[:k]]


def avg_year(members):
    """Mean publication year, rounded to one decimal."""
    if not members:
        raise SemanticsError('empty cluster')
    return round(sum(paper.year for paper in members) / len(members), 1)


def _tally(values):
    counts = Counter(value if value else NO_INFORMATION for value in values)
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def institution_tally(members):
    """Count correspondence institutions, missing ones under "No information"."""
    return _tally(paper.corr_institution for paper in members)


def country_tally(members):
    """Count correspondence countries, missing ones under "No information"."""
    return _tally(paper.corr_country for paper in members)


def profile_cluster(index, members, vocab, population=(), graph=None, top_k=10,
                    thresholds=DEFAULT_THRESHOLDS, strict_terms=False):
    """Bundle every statistic of one cluster.

    Arguments:
        index {int} -- cluster index
        members {list} -- PaperRecord items of the cluster
        vocab {VocabularyTree} -- vocabulary

    Keyword Arguments:
        population {list} -- all network papers, for distinctive terms (default: {()})
        graph {CitationGraph} -- citation graph, for the internal density (default: {None})
        top_k {int} -- length of the ranked lists (default: {10})
        thresholds {tuple} -- stage thresholds (default: {DEFAULT_THRESHOLDS})
        strict_terms {bool} -- ignore unknown terms (default: {False})

    Returns:
        ClusterProfile -- cluster statistics
    """
    members = sorted(members, key=lambda paper: paper.id)
    if not members:
        raise SemanticsError('cluster {} is empty'.format(index))
    rate = cluster_clinical_rate(members, vocab, strict_terms)
    _, unrated = _rated(members, vocab, strict_terms)
    years = [paper.year for paper in members]

    density = 0.0
    if graph is not None and len(members) > 1:
        ids = {paper.id for paper in members}
        inside = sum(1 for citing, cited in graph.directed_edges
                     if citing in ids and cited in ids)
        density = inside / (len(ids) * (len(ids) - 1))

    return ClusterProfile(
        index=index,
        size=len(members),
        avg_year=avg_year(members),
        year_range=(min(years), max(years)),
        clinical_rate=rate,
        stage=stage_label(rate, thresholds),
        top_terms=term_distribution(members, top_k),
        top_institutions=institution_tally(members)[:top_k],
        top_countries=country_tally(members)[:top_k],
        distinctive_terms=distinctive_terms(members, list(population), top_k),
        density=density,
        unrated=unrated)


def chronological_order(profiles):
    """Return cluster indices by average year, then index."""
    return [profile.index
            for profile in sorted(profiles, key=lambda item: (item.avg_year, item.index))]
