"""This module contains the spring-embedded layout and the rate colour scale."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .citation_graph import CitationGraph

__all__ = ('LayoutResult', 'spring_layout', 'color_for_rate', 'CANVAS_SIZE',
           'RED', 'BLUE')

logger = logging.getLogger(__name__)

CANVAS_SIZE = (1000.0, 1000.0)
RED = (255, 0, 0)
BLUE = (0, 0, 255)

_SETTLE_TRIES = 8


@dataclass
class LayoutResult:
    """Node positions on the canvas.

    positions maps node -> (x, y); colors maps node -> (r, g, b) once
    assigned; energy holds the summed force magnitude after every iteration.
    """

    positions: dict
    bounds: tuple = CANVAS_SIZE
    colors: dict = field(default_factory=dict)
    energy: list = field(default_factory=list)
    ideal_length: float = 0.0


def _forces(pos, edges, ideal):
    delta = pos[:, np.newaxis, :] - pos[np.newaxis, :, :]
    distance = np.linalg.norm(delta, axis=-1)
    np.fill_diagonal(distance, 1.0)
    distance = np.maximum(distance, 0.01)
    repulsion = ideal ** 2 / distance
    np.fill_diagonal(repulsion, 0.0)
    force = np.einsum('ijk,ij->ik', delta / distance[:, :, np.newaxis], repulsion)
    if len(edges):
        edge_delta = pos[edges[:, 0]] - pos[edges[:, 1]]
        edge_length = np.maximum(np.linalg.norm(edge_delta, axis=1), 0.01)
        pull = (edge_delta / edge_length[:, np.newaxis]) * (edge_length ** 2 / ideal)[:, None]
        np.subtract.at(force, edges[:, 0], pull)
        np.add.at(force, edges[:, 1], pull)
    return force


def _energy(force):
    return float(np.linalg.norm(force, axis=1).sum())


def _displacement(force, temperature):
    length = np.maximum(np.linalg.norm(force, axis=1), 1e-12)
    return force / length[:, np.newaxis] * np.minimum(length, temperature)[:, np.newaxis]


def spring_layout(graph, seed=42, iterations=200, size=CANVAS_SIZE, margin=20.0):
    """Force-directed placement: nodes repel, edges pull like springs.

    Uses the repulsive force k^2/d between every pair and the attractive
    force d^2/k along edges, with k = sqrt(area / n). Displacements are
    capped by a temperature that cools linearly to zero on the last
    iteration. Over the last tenth of the iterations a step is kept only if
    it does not raise the summed force magnitude, halving it otherwise, so
    the energy trace settles. The drawing is re-centred on the canvas and
    shrunk only when it does not fit.

    Arguments:
        graph {nx.Graph | CitationGraph} -- graph to place

    Keyword Arguments:
        seed {int} -- seed of the initial positions (default: {42})
        iterations {int} -- number of iterations, >= 1 (default: {200})
        size {tuple} -- canvas width and height (default: {CANVAS_SIZE})
        margin {float} -- free border kept by the final scaling (default: {20.0})

    Returns:
        LayoutResult -- positions within the canvas
    """
    if iterations < 1:
        raise ValueError('iterations must be >= 1')
    if isinstance(graph, CitationGraph):
        graph = graph.undirected()
    nodes = sorted(graph.nodes)
    width, height = size
    center = np.array([width / 2, height / 2])
    if not nodes:
        return LayoutResult({}, (width, height))
    ideal = math.sqrt(width * height / len(nodes))
    if len(nodes) == 1:
        return LayoutResult({nodes[0]: tuple(center.tolist())}, (width, height),
                            ideal_length=ideal)

    index = {node: position for position, node in enumerate(nodes)}
    edges = np.array([(index[u], index[v]) for u, v in sorted(
        tuple(sorted(edge)) for edge in graph.edges)], dtype=int).reshape(-1, 2)

    rng = np.random.default_rng(seed)
    pos = rng.uniform((0, 0), (width, height), size=(len(nodes), 2))
    start_temperature = width / 10
    last_step = max(iterations - 1, 1)
    settle_from = iterations - iterations // 10
    force = _forces(pos, edges, ideal)
    current = _energy(force)
    energy = []
    for step in range(iterations):
        temperature = start_temperature * (1 - step / last_step)
        if step < settle_from:
            pos = np.clip(pos + _displacement(force, temperature), (0, 0), (width, height))
            force = _forces(pos, edges, ideal)
            current = _energy(force)
        else:
            for _ in range(_SETTLE_TRIES):
                trial = pos + _displacement(force, temperature)
                trial_force = _forces(trial, edges, ideal)
                trial_energy = _energy(trial_force)
                if trial_energy <= current:
                    pos, force, current = trial, trial_force, trial_energy
                    break
                temperature /= 2
        energy.append(current)

    low, high = pos.min(axis=0), pos.max(axis=0)
    extent = high - low
    room = np.array([width, height]) - 2 * margin
    scale = min([1.0] + [room[axis] / extent[axis] for axis in (0, 1) if extent[axis] > 0])
    pos = (pos - (low + high) / 2) * scale + center
    if not np.all(np.isfinite(pos)):
        raise ValueError('layout diverged')

    positions = {node: (float(pos[i, 0]), float(pos[i, 1])) for i, node in enumerate(nodes)}
    logger.debug('layout of %d nodes, final energy %.3f', len(nodes), energy[-1])
    return LayoutResult(positions, (width, height), energy=energy, ideal_length=ideal)


def _round_half_up(value):
    return int(math.floor(value + 0.5))


def color_for_rate(rate, min_rate, max_rate, low=RED, high=BLUE):
    """Linear colour between @low (at min_rate) and @high (at max_rate).

    Arguments:
        rate {float} -- value to colour
        min_rate {float} -- scale start
        max_rate {float} -- scale end

    Keyword Arguments:
        low {tuple} -- RGB at the scale start (default: {RED})
        high {tuple} -- RGB at the scale end (default: {BLUE})

    Returns:
        tuple -- (r, g, b) bytes
    """
    if rate < min_rate or rate > max_rate:
        logger.warning('rate %s outside [%s, %s], clamped', rate, min_rate, max_rate)
        rate = min(max(rate, min_rate), max_rate)
    span = max_rate - min_rate
    t = (rate - min_rate) / span if span > 0 else 0.0
    return tuple(_round_half_up((1 - t) * a + t * b) for a, b in zip(low, high))
