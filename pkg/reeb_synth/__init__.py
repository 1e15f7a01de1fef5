# vim:fileencoding=utf-8:et:ts=4:sw=4:sts=4
#
# Copyright (C) 2026 The metric-reeb authors
#
# This program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 2
# of the License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program; if not, write to the Free Software
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston,
# MA 02110-1301, USA.
"""Synthetic datasets: noisy samples of small metric graphs, vehicle traces
on a highway crossing and plain graph fixtures"""

import logging

import numpy as np

from reeb_graph import NeighborGraph
from reeb_ingest import PointCloud, Trace, interpolate_polyline
from reeb_utils import ReebError


# Setup logging
LOGGER = logging.getLogger('reeb-synth')

KINDS = ('circle', 'theta', 'lollipop', 'y_graph', 'figure_eight', 'segment',
         'highway_crossing')


def _arc(center, radius, start, stop):
    """Circular arc from angle start to stop, as (length, curve) piece"""
    center = np.asarray(center, dtype=float)

    def curve(param):
        angle = start + (stop - start) * param
        return center + radius * np.column_stack([np.cos(angle),
                                                  np.sin(angle)])
    return abs(stop - start) * radius, curve

def _segment(begin, end):
    """Straight segment, as (length, curve) piece"""
    begin = np.asarray(begin, dtype=float)
    end = np.asarray(end, dtype=float)

    def curve(param):
        return begin + np.outer(param, end - begin)
    return float(np.linalg.norm(end - begin)), curve

def _sample_pieces(pieces, count, closed=False):
    """Distribute count points over the pieces proportionally to length.

    A closed single piece (full circle) is sampled at i / k, other pieces at
    (i + 1/2) / k so that shared piece endpoints are not duplicated.
    """
    if count < 1:
        raise ReebError('Point count must be positive')
    lengths = np.array([length for length, _curve in pieces])
    shares = np.floor(count * lengths / lengths.sum()).astype(int)
    # Hand the rounding remainder to the longest pieces
    for index in np.argsort(-lengths, kind='stable')[:count - shares.sum()]:
        shares[index] += 1
    points = []
    for (_length, curve), share in zip(pieces, shares):
        if not share:
            continue
        if closed:
            param = np.arange(share) / float(share)
        else:
            param = (np.arange(share) + 0.5) / share
        points.append(curve(param))
    return np.concatenate(points)

def _with_noise(points, noise, seed):
    """Add isotropic gaussian noise"""
    if noise < 0:
        raise ReebError('Noise level must be non-negative')
    if noise == 0:
        return points
    rng = np.random.default_rng(seed)
    return points + rng.normal(0.0, noise, size=points.shape)


def circle(count, radius=1.0, noise=0.0, seed=0):
    """Evenly spaced points on a circle around the origin"""
    points = _sample_pieces([_arc((0, 0), radius, 0, 2 * np.pi)], count,
                            closed=True)
    return PointCloud(_with_noise(points, noise, seed))

def theta(count, radius=1.0, noise=0.0, seed=0):
    """Circle with a diameter chord along the x axis"""
    pieces = [_arc((0, 0), radius, 0, np.pi),
              _arc((0, 0), radius, np.pi, 2 * np.pi),
              _segment((-radius, 0), (radius, 0))]
    return PointCloud(_with_noise(_sample_pieces(pieces, count), noise,
                                  seed))

def lollipop(count, radius=1.0, stick=2.0, noise=0.0, seed=0):
    """Circle with a stick leaving it at (radius, 0) along the x axis"""
    pieces = [_arc((0, 0), radius, 0, 2 * np.pi),
              _segment((radius, 0), (radius + stick, 0))]
    return PointCloud(_with_noise(_sample_pieces(pieces, count), noise,
                                  seed))

def y_graph(count, arm=1.0, noise=0.0, seed=0):
    """Three arms of equal length joined at the origin"""
    pieces = [_segment((0, 0), (arm * np.cos(angle), arm * np.sin(angle)))
              for angle in np.radians([90, 210, 330])]
    return PointCloud(_with_noise(_sample_pieces(pieces, count), noise,
                                  seed))

def figure_eight(count, radius=1.0, noise=0.0, seed=0):
    """Two circles touching at the origin"""
    pieces = [_arc((-radius, 0), radius, 0, 2 * np.pi),
              _arc((radius, 0), radius, np.pi, 3 * np.pi)]
    return PointCloud(_with_noise(_sample_pieces(pieces, count), noise,
                                  seed))

def segment(count, length=1.0, noise=0.0, seed=0):
    """Points along the x axis"""
    return PointCloud(_with_noise(
        _sample_pieces([_segment((0, 0), (length, 0))], count), noise, seed))


def _rotate(points, quarter_turns):
    """Rotate points counter clockwise by multiples of 90 degrees"""
    angle = quarter_turns * np.pi / 2
    rotation = np.array([[np.cos(angle), -np.sin(angle)],
                         [np.sin(angle), np.cos(angle)]])
    return np.dot(points, rotation.T)

def highway_routes(road=10.0, lane=1.0, ramp=2.0):
    """Polylines of the eight routes through a crossing of two roads.

    Traffic drives on the right: eastbound at y = -lane, westbound at
    y = +lane, northbound at x = +lane and southbound at x = -lane. Every
    entry either goes straight or turns right on a quarter circle ramp of
    radius 'ramp'. Route 2i goes straight and route 2i + 1 turns, both
    entering from the direction rotated by i quarter turns from east.
    """
    if not 0 < lane < lane + ramp < road:
        raise ReebError('Crossing geometry needs 0 < lane < lane + ramp < '
                        'road')
    straight = np.array([[-road, -lane], [road, -lane]])
    corner = -lane - ramp
    _length, curve = _arc((corner, corner), ramp, np.pi / 2, 0)
    turn = np.concatenate([[[-road, -lane]],
                           curve(np.linspace(0, 1, 65)),
                           [[-lane, -road]]])
    routes = []
    for quarter_turns in range(4):
        routes.append(_rotate(straight, quarter_turns))
        routes.append(_rotate(turn, quarter_turns))
    return routes

def highway_crossing(traces=300, length=500, road=10.0, lane=1.0, ramp=2.0,
                     noise=0.02, seed=0):
    """Vehicle traces through a highway crossing.

    Trace i follows route i mod 8 of highway_routes(), sampled at 'length'
    points evenly spaced in arc length, with gaussian position noise.
    """
    if traces < 1 or length < 2:
        raise ReebError('Need at least one trace of two samples')
    routes = highway_routes(road, lane, ramp)
    rng = np.random.default_rng(seed)
    result = []
    for index in range(traces):
        route = routes[index % len(routes)]
        total = np.linalg.norm(np.diff(route, axis=0), axis=1).sum()
        samples = interpolate_polyline(route, np.linspace(0, total, length))
        if noise > 0:
            samples = samples + rng.normal(0.0, noise, size=samples.shape)
        result.append(Trace(samples))
    LOGGER.debug('Generated %d highway traces of %d samples', traces, length)
    return result


def path_graph(count, length=1.0):
    """Path 0 - 1 - ... - count-1 with equal edge lengths"""
    vertices = np.arange(count - 1)
    return NeighborGraph(count, vertices, vertices + 1,
                         np.full(count - 1, float(length)))

def cycle_graph(count, length=1.0):
    """Cycle of count vertices with equal edge lengths"""
    if count < 3:
        raise ReebError('A cycle needs at least three vertices')
    vertices = np.arange(count)
    return NeighborGraph(count, vertices, (vertices + 1) % count,
                         np.full(count, float(length)))

def star_graph(spokes, spoke_length=1, length=1.0):
    """Center vertex 0 with spokes made of spoke_length edges each"""
    edges = []
    count = 1
    for _spoke in range(spokes):
        previous = 0
        for _step in range(spoke_length):
            edges.append((previous, count, length))
            previous = count
            count += 1
    return NeighborGraph.from_edges(count, edges)

def random_metric_graph(count, extra_edges, seed, min_length=0.1,
                        max_length=1.0):
    """Connected random graph: a random spanning tree plus extra edges,
       lengths drawn uniformly"""
    rng = np.random.default_rng(seed)
    edges = {}
    for vertex in range(1, count):
        parent = int(rng.integers(vertex))
        edges[(parent, vertex)] = rng.uniform(min_length, max_length)
    attempts = 0
    while len(edges) < count - 1 + extra_edges and attempts < 100 * count:
        attempts += 1
        tail, head = sorted(rng.choice(count, size=2, replace=False).tolist())
        if (tail, head) not in edges:
            edges[(tail, head)] = rng.uniform(min_length, max_length)
    return NeighborGraph.from_edges(count, [(tail, head, length) for
                                            (tail, head), length in
                                            sorted(edges.items())])


def generate(kind, count=500, noise=0.0, seed=0, **kwargs):
    """Dataset of the given kind: a PointCloud, or a list of Traces for
       highway_crossing"""
    generators = {'circle': circle,
                  'theta': theta,
                  'lollipop': lollipop,
                  'y_graph': y_graph,
                  'figure_eight': figure_eight,
                  'segment': segment}
    if kind == 'highway_crossing':
        return highway_crossing(noise=noise, seed=seed, **kwargs)
    if kind not in generators:
        raise ReebError("Unknown dataset kind '%s'" % kind)
    return generators[kind](count, noise=noise, seed=seed, **kwargs)
