"""Shared test fixtures."""

import os

import networkx as nx
import pytest

from litmap.citation_graph import CitationGraph
from litmap.corpus import parse_corpus, serialize_corpus
from litmap.fixture import generate_fixture
from litmap.vocabulary import load_vocabulary

DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')


def data_path(name):
    return os.path.join(DATA_DIR, name)


def read_data(name):
    with open(data_path(name), encoding='utf-8') as stream:
        return stream.read()


def citation_graph(edges, years=None, nodes=()):
    """Build a CitationGraph from (citing, cited) pairs; years default to 2000."""
    digraph = nx.DiGraph()
    for node in list(nodes) + [node for edge in edges for node in edge]:
        year = (years or {}).get(node, 2000)
        digraph.add_node(node, year=year, title=str(node), institution=None, country=None)
    digraph.add_edges_from(edges)
    return CitationGraph(digraph)


@pytest.fixture
def vocab():
    return load_vocabulary(read_data('vocabulary.tsv'))


@pytest.fixture
def small_corpus():
    return parse_corpus(read_data('small_corpus.jsonl'))


@pytest.fixture
def two_triangles():
    graph = nx.Graph()
    graph.add_edges_from([('a', 'b'), ('b', 'c'), ('a', 'c'),
                          ('d', 'e'), ('e', 'f'), ('d', 'f')])
    return graph


@pytest.fixture
def bridged_triangles(two_triangles):
    graph = two_triangles.copy()
    graph.add_edge('c', 'd')
    return graph


@pytest.fixture
def fixture_files(tmp_path):
    """A 40-paper synthetic corpus (seed 7) written to disk."""
    fixture = generate_fixture(40, seed=7)
    corpus_path = tmp_path / 'corpus.jsonl'
    vocab_path = tmp_path / 'vocabulary.tsv'
    corpus_path.write_text(serialize_corpus(fixture.corpus), encoding='utf-8')
    vocab_path.write_text(fixture.vocabulary_text, encoding='utf-8')
    return str(corpus_path), str(vocab_path)
