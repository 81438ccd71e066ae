"""This module contains the SVG map and GraphML writers."""

# pylint: disable=too-many-arguments, too-many-locals

import logging
import math

import lxml.etree as ET
import networkx as nx

from .layout import BLUE, RED, color_for_rate
from .pipeline_errors import RenderError

__all__ = ('render_svg', 'export_graphml', 'GRAPHML_NODE_KEYS')

logger = logging.getLogger(__name__)

SVG_NS = 'http://www.w3.org/2000/svg'
GRAPHML_NODE_KEYS = ('x', 'y', 'cluster', 'clinical_rate', 'hierarchy', 'effective_degree',
                     'year', 'institution', 'country')

_UNRATED = '#999999'
_LEGEND_HEIGHT = 40.0
_META_RADIUS = 8.0
_META_STROKE = 12.0


def _hex(color):
    return '#{:02x}{:02x}{:02x}'.format(*color)


def _num(value):
    return '{:.2f}'.format(value)


def _q(tag):
    return '{{{}}}{}'.format(SVG_NS, tag)


def _element(parent, tag, **attributes):
    node = ET.SubElement(parent, _q(tag))
    for key, value in attributes.items():
        node.set(key.replace('_', '-'), value)
    return node


def _network_panel(root, graph, layout):
    panel = _element(root, 'g', id='network')
    edges = _element(panel, 'g', id='edges', stroke='#b0b0b0', stroke_width='0.8')
    for citing, cited in graph.directed_edges:
        (x1, y1), (x2, y2) = layout.positions[citing], layout.positions[cited]
        _element(edges, 'line', x1=_num(x1), y1=_num(y1), x2=_num(x2), y2=_num(y2))
    nodes = _element(panel, 'g', id='nodes', stroke='#333333', stroke_width='0.5')
    for node in graph.nodes:
        x, y = layout.positions[node]
        color = layout.colors.get(node)
        circle = _element(nodes, 'circle', cx=_num(x), cy=_num(y), r='6.00',
                          fill=_hex(color) if color is not None else _UNRATED)
        ET.SubElement(circle, _q('title')).text = str(node)


def _meta_panel(root, layout, partition, metagraph, profiles, offset, colors):
    width, height = layout.bounds
    panel = _element(root, 'g', id='meta', transform='translate({},0)'.format(_num(offset)))
    _element(panel, 'rect', x='0', y='0', width=_num(width), height=_num(height),
             fill='none', stroke='#dddddd')

    centers = {}
    for index, members in enumerate(partition.clusters, start=1):
        xs = [layout.positions[node][0] for node in members]
        ys = [layout.positions[node][1] for node in members]
        centers[index] = (sum(xs) / len(xs), sum(ys) / len(ys))

    heaviest = max(metagraph.edges.values()) if metagraph.edges else 1
    edges = _element(panel, 'g', id='meta-edges', stroke='#7f7f7f', stroke_opacity='0.7')
    for (first, second), weight in sorted(metagraph.edges.items()):
        (x1, y1), (x2, y2) = centers[first], centers[second]
        line = _element(edges, 'line', x1=_num(x1), y1=_num(y1), x2=_num(x2), y2=_num(y2),
                        stroke_width=_num(_META_STROKE * weight / heaviest))
        ET.SubElement(line, _q('title')).text = '{}-{}: {}'.format(first, second, weight)

    rates = {profile.index: profile.clinical_rate for profile in profiles}
    low, high = (min(rates.values()), max(rates.values())) if rates else (0.0, 0.0)
    nodes = _element(panel, 'g', id='meta-nodes', stroke='#333333')
    for index in sorted(centers):
        x, y = centers[index]
        size = metagraph.sizes[index]
        fill = (_hex(color_for_rate(rates[index], low, high, *colors))
                if index in rates else _UNRATED)
        circle = _element(nodes, 'circle', cx=_num(x), cy=_num(y),
                          r=_num(_META_RADIUS * math.sqrt(size)), fill=fill)
        ET.SubElement(circle, _q('title')).text = 'cluster {} ({} papers)'.format(index, size)
        label = _element(nodes, 'text', x=_num(x), y=_num(y), text_anchor='middle',
                         font_size='14', fill='#000000', stroke='none')
        label.text = str(index)


def _legend(root, top, rate_range, colors):
    legend = _element(root, 'g', id='legend', font_size='14', fill='#000000')
    low, high = colors
    _element(legend, 'rect', x='10', y=_num(top + 10), width='20', height='20', fill=_hex(low))
    _element(legend, 'rect', x='140', y=_num(top + 10), width='20', height='20', fill=_hex(high))
    text = _element(legend, 'text', x='170', y=_num(top + 25))
    text.text = 'clinical terms rate {:.3f} .. {:.3f}'.format(*rate_range)


def render_svg(graph, layout, partition=None, metagraph=None, profiles=(), rate_range=(0, 0),
               colors=(RED, BLUE)):
    """Draw the coloured network and, for two or more clusters, its meta-graph.

    Arguments:
        graph {CitationGraph} -- citation graph
        layout {LayoutResult} -- positions (and node colours) covering every node

    Keyword Arguments:
        partition {Partition} -- clusters (default: {None})
        metagraph {MetaGraph} -- condensed graph (default: {None})
        profiles {list} -- ClusterProfile items, colour the meta-nodes (default: {()})
        rate_range {tuple} -- (min, max) rate printed in the legend (default: {(0, 0)})
        colors {tuple} -- low and high RGB colours (default: {(RED, BLUE)})

    Returns:
        str -- SVG 1.1 document
    """
    missing = [node for node in graph.nodes if node not in layout.positions]
    if missing:
        raise RenderError('no position for node {}'.format(missing[0]))

    width, height = layout.bounds
    with_meta = partition is not None and metagraph is not None and len(partition) > 1
    total_width = width * 2 if with_meta else width
    root = ET.Element(_q('svg'), nsmap={None: SVG_NS})
    root.set('version', '1.1')
    root.set('width', _num(total_width))
    root.set('height', _num(height + _LEGEND_HEIGHT))
    root.set('viewBox', '0 0 {} {}'.format(_num(total_width), _num(height + _LEGEND_HEIGHT)))
    _element(root, 'rect', x='0', y='0', width=_num(total_width),
             height=_num(height + _LEGEND_HEIGHT), fill='#ffffff')

    _network_panel(root, graph, layout)
    if with_meta:
        _meta_panel(root, layout, partition, metagraph, profiles, width, colors)
    _legend(root, height, rate_range, colors)
    return ET.tostring(root, xml_declaration=True, encoding='UTF-8',
                       pretty_print=True).decode('utf-8')


def _node_attributes(node, graph, layout, partition, scores, rates):
    if node not in layout.positions:
        raise RenderError('node {}: missing x, y'.format(node))
    if node not in rates:
        raise RenderError('node {}: missing clinical_rate'.format(node))
    if node not in scores:
        raise RenderError('node {}: missing hierarchy, effective_degree'.format(node))
    try:
        cluster = partition.cluster_of(node)
    except KeyError:
        raise RenderError('node {}: missing cluster'.format(node))
    info = graph.attributes(node)
    x, y = layout.positions[node]
    rate = rates[node]
    return {
        'x': float(x),
        'y': float(y),
        'cluster': int(cluster),
        'clinical_rate': float('nan') if rate is None else float(rate),
        'hierarchy': int(scores.hierarchy[node]),
        'effective_degree': float(scores.effective_degree[node]),
        'year': int(info['year']),
        'institution': info.get('institution') or '',
        'country': info.get('country') or '',
    }


def export_graphml(graph, layout, partition, scores, rates):
    """Write the annotated citation network as GraphML.

    Arguments:
        graph {CitationGraph} -- citation graph, edges keep their direction
        layout {LayoutResult} -- node positions
        partition {Partition} -- clusters
        scores {CentralityScores} -- centrality scores
        rates {dict} -- node -> clinical rate (None for papers without terms)

    Returns:
        str -- GraphML document
    """
    export = nx.DiGraph()
    for node in graph.nodes:
        export.add_node(node, **_node_attributes(node, graph, layout, partition, scores, rates))
    export.add_edges_from(graph.directed_edges)
    return '\n'.join(nx.generate_graphml(export, encoding='utf-8', prettyprint=True)) + '\n'
