"""This package contains litmap, a literature map builder for citation corpora."""

__version__ = '0.1.0'

from .citation_graph import CitationGraph, build_graph, select_top_cited  # noqa: E402
from .clustering import (MetaGraph, Partition, greedy_agglomerative, modularity,  # noqa: E402
                         multilevel_transfer)
from .corpus import Corpus, PaperRecord, parse_corpus  # noqa: E402
from .pipeline import Pipeline, PipelineReport, run_pipeline  # noqa: E402
from .pipeline_config import PipelineConfig  # noqa: E402
from .pipeline_errors import (AnalysisError, InputError, LitmapError,  # noqa: E402
                              PipelineError)
from .vocabulary import VocabularyTree, load_vocabulary  # noqa: E402

__all__ = ('Pipeline', 'PipelineConfig', 'PipelineReport', 'run_pipeline', 'Corpus',
           'PaperRecord', 'parse_corpus', 'VocabularyTree', 'load_vocabulary', 'CitationGraph',
           'build_graph', 'select_top_cited', 'Partition', 'MetaGraph', 'modularity',
           'greedy_agglomerative', 'multilevel_transfer', 'LitmapError', 'InputError',
           'AnalysisError', 'PipelineError')
