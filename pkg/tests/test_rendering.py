"""Test the SVG map and the GraphML export."""

import io
import math

import lxml.etree as ET
import networkx as nx
import pytest

from litmap.centrality import compute_scores
from litmap.citation_graph import build_graph
from litmap.clustering import Partition, build_metagraph
from litmap.layout import spring_layout
from litmap.pipeline_errors import RenderError
from litmap.rendering import GRAPHML_NODE_KEYS, SVG_NS, export_graphml, render_svg
from litmap.semantics import profile_cluster

from .conftest import citation_graph

NS = {'svg': SVG_NS}
CLUSTERS = {'A': 1, 'B': 1, 'C': 1, 'G': 1, 'D': 2, 'E': 2, 'F': 2, 'H': 2}


@pytest.fixture
def mapped(small_corpus, vocab):
    graph = build_graph(small_corpus)
    partition = Partition(CLUSTERS)
    layout = spring_layout(graph, seed=3, iterations=50)
    layout.colors = {node: (255, 0, 0) for node in graph.nodes if node != 'G'}
    profiles = [profile_cluster(index, [small_corpus[node] for node in members], vocab)
                for index, members in enumerate(partition.clusters, start=1)]
    return graph, partition, layout, build_metagraph(graph, partition), profiles


def _parse(text):
    return ET.fromstring(text.encode('utf-8'))


def test_svg_network_only():
    graph = citation_graph([('b', 'a'), ('c', 'a')])
    layout = spring_layout(graph, iterations=20)
    root = _parse(render_svg(graph, layout))
    assert root.tag == '{{{}}}svg'.format(SVG_NS)
    assert len(root.findall('.//svg:g[@id="nodes"]/svg:circle', NS)) == 3
    assert len(root.findall('.//svg:g[@id="edges"]/svg:line', NS)) == 2
    assert root.find('.//svg:g[@id="meta"]', NS) is None


def test_svg_single_node_has_one_circle():
    graph = citation_graph([], nodes=['solo'])
    root = _parse(render_svg(graph, spring_layout(graph)))
    assert len(root.findall('.//svg:circle', NS)) == 1
    assert root.findall('.//svg:line', NS) == []


def test_svg_with_meta_panel(mapped):
    graph, partition, layout, metagraph, profiles = mapped
    text = render_svg(graph, layout, partition, metagraph, profiles, (0.0, 0.5))
    root = _parse(text)
    nodes = root.findall('.//svg:g[@id="nodes"]/svg:circle', NS)
    assert [circle.find('svg:title', NS).text for circle in nodes] == graph.nodes
    assert nodes[graph.nodes.index('G')].get('fill') == '#999999'
    assert nodes[0].get('fill') == '#ff0000'

    meta = root.findall('.//svg:g[@id="meta-nodes"]/svg:circle', NS)
    assert len(meta) == 2
    assert float(meta[0].get('r')) == pytest.approx(8 * math.sqrt(4), abs=0.01)
    edges = root.findall('.//svg:g[@id="meta-edges"]/svg:line', NS)
    assert len(edges) == 1
    assert float(edges[0].get('stroke-width')) == pytest.approx(12.0)
    assert float(root.get('width')) == pytest.approx(2000.0)
    assert text.startswith("<?xml version='1.0' encoding='UTF-8'?>")


def test_svg_is_deterministic(mapped):
    graph, partition, layout, metagraph, profiles = mapped
    first = render_svg(graph, layout, partition, metagraph, profiles)
    second = render_svg(graph, layout, partition, metagraph, profiles)
    assert first == second


def test_svg_missing_position():
    graph = citation_graph([('b', 'a')])
    layout = spring_layout(citation_graph([], nodes=['a']))
    with pytest.raises(RenderError):
        render_svg(graph, layout)


def test_graphml_round_trip(mapped):
    graph, partition, layout, _, _ = mapped
    scores = compute_scores(graph, partition)
    rates = {node: 0.25 for node in graph.nodes}
    rates['G'] = None
    text = export_graphml(graph, layout, partition, scores, rates)

    parsed = nx.read_graphml(io.BytesIO(text.encode('utf-8')))
    assert parsed.is_directed()
    assert sorted(parsed.nodes) == graph.nodes
    assert sorted(parsed.edges) == graph.directed_edges
    for key in GRAPHML_NODE_KEYS:
        assert key in parsed.nodes['A']
    assert parsed.nodes['A']['cluster'] == 1
    assert parsed.nodes['A']['year'] == 1990
    assert parsed.nodes['A']['hierarchy'] == 3
    assert parsed.nodes['A']['country'] == 'Israel'
    assert parsed.nodes['E'].get('institution', '') == ''
    assert parsed.nodes['A']['x'] == pytest.approx(layout.positions['A'][0])
    assert parsed.nodes['B']['clinical_rate'] == pytest.approx(0.25)
    assert math.isnan(parsed.nodes['G']['clinical_rate'])


def test_graphml_missing_attribute(mapped):
    graph, partition, layout, _, _ = mapped
    scores = compute_scores(graph, partition)
    with pytest.raises(RenderError) as info:
        export_graphml(graph, layout, partition, scores, {})
    assert 'clinical_rate' in str(info.value)


def test_graphml_declares_every_node_key(mapped):
    graph, partition, layout, _, _ = mapped
    scores = compute_scores(graph, partition)
    text = export_graphml(graph, layout, partition, scores, {node: 0.5 for node in graph.nodes})
    root = _parse(text)
    keys = root.findall('{http://graphml.graphdrawing.org/xmlns}key')
    assert {key.get('attr.name') for key in keys if key.get('for') == 'node'} == set(
        GRAPHML_NODE_KEYS)


def test_graphml_of_empty_graph():
    graph = citation_graph([])
    partition = Partition({})
    text = export_graphml(graph, spring_layout(graph), partition,
                          compute_scores(graph, partition), {})
    parsed = nx.read_graphml(io.BytesIO(text.encode('utf-8')))
    assert parsed.is_directed()
    assert parsed.number_of_nodes() == 0
    assert parsed.number_of_edges() == 0
