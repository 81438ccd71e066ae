"""This module contains Pipeline, the end-to-end literature map builder."""

import contextlib
import json
import logging
import os
from dataclasses import dataclass, field

from .centrality import central_papers, compute_scores, export_scores
from .citation_graph import (build_graph, citation_coverage, export_edge_list,
                             filter_by_required_terms, select_top_cited, weak_components)
from .clustering import (build_metagraph, export_partition, greedy_agglomerative, modularity,
                         multilevel_transfer)
from .corpus import Corpus, load_corpus_files, load_term_annotations
from .layout import color_for_rate, spring_layout
from .pipeline_config import PipelineConfig
from .pipeline_errors import (ConfigError, EmptyNetworkError, PipelineError,
                              SemanticsError)
from .rendering import export_graphml, render_svg
from .semantics import chronological_order, clinical_rate, profile_cluster
from .tagged_export import ResolutionReport, parse_tagged_export, resolve_references
from .vocabulary import load_vocabulary

__all__ = ('Pipeline', 'PipelineReport', 'PipelineResult', 'run_pipeline', 'ARTIFACTS')

logger = logging.getLogger(__name__)

ARTIFACTS = ('report.json', 'map.svg', 'network.graphml', 'partition.tsv', 'centrality.tsv',
             'edges.tsv')

THRESHOLDS_NOTE = ('stage thresholds are a calibrated reconstruction reproducing published '
                   'stage assignments, not published cutoffs')


@dataclass
class PipelineReport:
    """Everything a run found, as plain JSON-ready sections."""

    version: str
    config: dict
    corpus: dict
    components: dict
    clustering: dict
    clusters: list
    chronological_order: list
    stages: dict
    warnings: list = field(default_factory=list)

    def to_dict(self):
        return {
            'version': self.version,
            'config': self.config,
            'corpus': self.corpus,
            'components': self.components,
            'clustering': self.clustering,
            'clusters': self.clusters,
            'chronological_order': self.chronological_order,
            'stages': self.stages,
            'warnings': self.warnings,
        }

    def to_json(self):
        """Return the report as JSON text with sorted keys."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


@dataclass
class PipelineResult:
    """A report with the text of every artifact, keyed by file name."""

    report: PipelineReport
    artifacts: dict


@contextlib.contextmanager
def _stage(name):
    logger.info('stage %s', name)
    try:
        yield
    except PipelineError:
        raise
    except Exception as error:
        raise PipelineError(name, error) from error


def _read(path):
    with open(path, encoding='utf-8') as stream:
        return stream.read()


def _profile_dict(profile, central):
    return {
        'index': profile.index,
        'size': profile.size,
        'avg_year': profile.avg_year,
        'year_range': list(profile.year_range),
        'clinical_rate': profile.clinical_rate,
        'stage': profile.stage,
        'density': profile.density,
        'top_terms': [[term, count] for term, count in profile.top_terms],
        'distinctive_terms': [[term, lift] for term, lift in profile.distinctive_terms],
        'top_institutions': [[name, count] for name, count in profile.top_institutions],
        'top_countries': [[name, count] for name, count in profile.top_countries],
        'unrated': list(profile.unrated),
        'central_by_hierarchy': [[node, score] for node, score in central.by_hierarchy],
        'central_by_degree': [[node, score] for node, score in central.by_degree],
    }


class Pipeline:
    """Corpus to annotated cluster map, one stage after another."""

    def __init__(self, config=None, **kwargs):
        """Prepare a run.

        Keyword Arguments:
            config {PipelineConfig} -- pipeline configuration (default: {None, built from kwargs})
        """
        if config is None:
            config = PipelineConfig(**kwargs)
        self._config = config
        self._warnings = []

    @property
    def config(self):
        return self._config

    def ingest(self):
        """Read the corpus and the vocabulary named by the configuration.

        Returns:
            tuple -- (Corpus, VocabularyTree, references summary dict)
        """
        config = self._config
        with _stage('ingest'):
            vocab_path = config.get_value('vocab')
            if not vocab_path:
                raise ConfigError('a vocabulary file is required', 'vocab')
            vocab = load_vocabulary(_read(vocab_path))

            annotations = {}
            if config.get_value('terms'):
                annotations = load_term_annotations(_read(config.get_value('terms')))

            tagged = config.get_value('tagged-export')
            if tagged:
                report = ResolutionReport()
                entries = parse_tagged_export(_read(tagged), report)
                corpus, report = resolve_references(entries, annotations, report)
                references = {'total': report.total, 'resolved': report.resolved,
                              'unresolved': report.unresolved, 'ambiguous': report.ambiguous,
                              'skipped_records': report.skipped_records}
                self._warnings += report.warnings
            elif config.get_value('corpus'):
                corpus = load_corpus_files(config.get_value('corpus'))
                references = {'dangling': corpus.report.dangling_refs,
                              'self_citations': corpus.report.self_citations}
                self._warnings += corpus.report.warnings
                if annotations:
                    corpus = Corpus(
                        paper.with_terms(paper.terms | annotations.get(paper.id, frozenset()))
                        for paper in corpus)
            else:
                raise ConfigError('give a corpus or a tagged export', 'corpus')
        logger.info('ingested %d papers, %d vocabulary terms', len(corpus), len(vocab))
        return corpus, vocab, references

    def run(self):
        """Run every stage and render the artifacts in memory.

        Returns:
            PipelineResult -- report and artifact texts
        """
        from . import __version__

        config = self._config
        self._warnings = []
        corpus, vocab, references = self.ingest()

        with _stage('select'):
            selected = select_top_cited(corpus, config.get_value('fraction'),
                                        config.get_value('include-ties'))
            coverage = citation_coverage(selected, corpus)

        with _stage('graph'):
            graph = build_graph(selected)
            self._warnings += graph.warnings

        with _stage('component'):
            components = weak_components(graph)
            if not components:
                raise EmptyNetworkError('component')
            largest = selected.subset(components[0])

        with _stage('filter'):
            network_corpus = filter_by_required_terms(largest, config.get_value('require-term'))
            if not len(network_corpus):
                raise EmptyNetworkError('filter')
            network = build_graph(network_corpus)

        with _stage('cluster'):
            greedy = greedy_agglomerative(network)
            multilevel = multilevel_transfer(network, config.get_value('seed'),
                                             config.get_value('restarts'))
            partition = multilevel if config.get_value('method') == 'multilevel' else greedy
            quality = {'greedy': None, 'multilevel': None}
            if network.number_of_edges():
                quality = {'greedy': modularity(network, greedy),
                           'multilevel': modularity(network, multilevel)}
            logger.info('%d clusters (%s)', len(partition), config.get_value('method'))

        with _stage('metagraph'):
            metagraph = build_metagraph(network, partition)

        with _stage('profiles'):
            population = list(network_corpus)
            profiles = [
                profile_cluster(index, [network_corpus[node] for node in members], vocab,
                                population=population, graph=network,
                                top_k=config.get_value('top-k'),
                                thresholds=config.get_value('thresholds'),
                                strict_terms=config.get_value('strict-terms'))
                for index, members in enumerate(partition.clusters, start=1)]
            for profile in profiles:
                for paper_id in profile.unrated:
                    self._warnings.append('paper {} has no terms, excluded from the rate of '
                                          'cluster {}'.format(paper_id, profile.index))

        with _stage('centrality'):
            scores = compute_scores(network, partition, config.get_value('per-cluster'))
            central = {index: central_papers(members, network, config.get_value('top-k'), scores)
                       for index, members in enumerate(partition.clusters, start=1)}

        with _stage('layout'):
            layout = spring_layout(network, seed=config.get_value('seed'),
                                   iterations=config.get_value('iterations'))
            rates = {}
            for node in network.nodes:
                try:
                    rates[node] = clinical_rate(network_corpus[node], vocab,
                                                config.get_value('strict-terms'))
                except SemanticsError:
                    rates[node] = None
            rated = [rate for rate in rates.values() if rate is not None]
            rate_range = (min(rated), max(rated)) if rated else (0.0, 0.0)
            colors = config.get_value('colors')
            layout.colors = {node: color_for_rate(rate, *rate_range, *colors)
                             for node, rate in rates.items() if rate is not None}

        with _stage('render'):
            artifacts = {
                'map.svg': render_svg(network, layout, partition, metagraph, profiles,
                                      rate_range, colors),
                'network.graphml': export_graphml(network, layout, partition, scores, rates),
                'partition.tsv': export_partition(partition),
                'centrality.tsv': export_scores(scores),
                'edges.tsv': export_edge_list(network),
            }

        with _stage('report'):
            if sum(profile.size for profile in profiles) != len(network):
                raise PipelineError('report', message='profile sizes do not add up')
            strongest = metagraph.strongest_edge()
            echo = config.as_dict()
            echo.pop('out', None)
            report = PipelineReport(
                version=__version__,
                config=echo,
                corpus={'papers': len(corpus), 'selected': len(selected), 'coverage': coverage,
                        'network': len(network), 'edges': network.number_of_edges(),
                        'references': references},
                components={'count': len(components), 'largest': len(components[0]),
                            'sizes': [len(members) for members in components]},
                clustering={
                    'method': config.get_value('method'),
                    'clusters': len(partition),
                    'modularity': quality,
                    'partition': partition.assignment,
                    'metagraph': {
                        'sizes': {str(index): size for index, size in metagraph.sizes.items()},
                        'intra_edges': {str(index): count
                                        for index, count in metagraph.intra_edges.items()},
                        'edges': [[first, second, weight] for (first, second), weight
                                  in sorted(metagraph.edges.items())],
                        'strongest_edge': (None if strongest is None
                                           else [strongest[0][0], strongest[0][1], strongest[1]]),
                    },
                },
                clusters=[_profile_dict(profile, central[profile.index]) for profile in profiles],
                chronological_order=chronological_order(profiles),
                stages={'thresholds': list(config.get_value('thresholds')),
                        'note': THRESHOLDS_NOTE},
                warnings=list(self._warnings))
            artifacts['report.json'] = report.to_json()
        return PipelineResult(report, artifacts)

    def write(self, result, out=None):
        """Write the artifacts of a run.

        Arguments:
            result {PipelineResult} -- run output

        Keyword Arguments:
            out {str} -- output directory (default: {None, the configured one})

        Returns:
            list -- written paths, in ARTIFACTS order
        """
        out = out or self._config.get_value('out')
        with _stage('write'):
            os.makedirs(out, exist_ok=True)
            paths = []
            for name in ARTIFACTS:
                path = os.path.join(out, name)
                with open(path, 'w', encoding='utf-8', newline='\n') as stream:
                    stream.write(result.artifacts[name])
                paths.append(path)
        logger.info('wrote %d artifacts to %s', len(paths), out)
        return paths


def run_pipeline(config):
    """Run the whole pipeline and write its artifacts to the output directory.

    Arguments:
        config {PipelineConfig} -- pipeline configuration

    Returns:
        PipelineResult -- report and artifact texts
    """
    pipeline = Pipeline(config)
    result = pipeline.run()
    pipeline.write(result)
    return result
