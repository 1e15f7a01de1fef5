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
"""Estimate the first Betti number of a sampled metric graph from the
persistent homology of Rips complexes"""

import logging
from collections import namedtuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

from reeb_graph import UnionFind
from reeb_ingest import PointCloud
from reeb_utils import ReebError


# Setup logging
LOGGER = logging.getLogger('reeb-betti')

DEFAULT_MAX_POINTS = 400


class SizeGuardError(ReebError):
    """Input too large for the plain boundary matrix reduction"""
    pass


PersistencePair = namedtuple('PersistencePair', ['dimension', 'birth',
                                                 'death'])


class FilteredComplex(object):
    """Simplices of dimension <= 2 in filtration order.

    Order is by (diameter, dimension, vertex tuple), every face precedes its
    cofaces.
    """

    def __init__(self, simplices):
        self.simplices = sorted(simplices,
                                key=lambda item: (item[1], len(item[0]),
                                                  item[0]))
        self.index = dict((verts, pos) for pos, (verts, _diam) in
                          enumerate(self.simplices))

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def counts(self):
        """Number of vertices, edges and triangles"""
        counts = [0, 0, 0]
        for verts, _diam in self.simplices:
            counts[len(verts) - 1] += 1
        return tuple(counts)

    def __repr__(self):
        return '<FilteredComplex: %d/%d/%d simplices>' % self.counts()


def _distance_matrix(metric):
    """All-pairs distance matrix of a point cloud or a square matrix"""
    if isinstance(metric, PointCloud):
        if len(metric) < 2:
            return np.zeros((len(metric), len(metric)))
        return squareform(pdist(metric.points))
    dist = np.asarray(metric, dtype=float)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise ReebError('Distance matrix must be square')
    if not np.allclose(dist, dist.T) or np.any(np.diag(dist) != 0) or \
            np.any(dist < 0):
        raise ReebError('Not a distance matrix: must be symmetric, '
                        'non-negative and zero on the diagonal')
    return dist


def rips_two_skeleton(metric, max_scale, max_points=DEFAULT_MAX_POINTS):
    """Vietoris-Rips complex up to dimension 2 with simplices of diameter at
       most max_scale"""
    if not max_scale > 0:
        raise ReebError('Rips scale must be positive')
    dist = _distance_matrix(metric)
    count = len(dist)
    if count > max_points:
        raise SizeGuardError('%d points exceed the limit of %d, subsample '
                             'the input first (for example with a '
                             'farthest point net)' % (count, max_points))

    simplices = [((vertex,), 0.0) for vertex in range(count)]
    close = dist <= max_scale
    np.fill_diagonal(close, False)
    for first in range(count):
        for second in np.flatnonzero(close[first, first + 1:]) + first + 1:
            second = int(second)
            simplices.append(((first, second), float(dist[first, second])))
            common = np.flatnonzero(close[first, second + 1:] &
                                    close[second, second + 1:]) + second + 1
            for third in common.tolist():
                diameter = max(dist[first, second], dist[first, third],
                               dist[second, third])
                simplices.append(((first, second, third), float(diameter)))
    complex_ = FilteredComplex(simplices)
    LOGGER.debug('Rips complex at scale %g: %r', max_scale, complex_)
    return complex_


def h1_persistence(complex_):
    """One-dimensional persistence pairs by column reduction over Z/2.

    Zero persistence pairs are not reported, classes alive at the end of the
    filtration die at infinity.
    """
    vertex_count = sum(1 for verts, _diam in complex_ if len(verts) == 1)
    components = UnionFind(vertex_count)
    positive = []
    pivots = {}
    pairs = []
    for pos, (verts, diameter) in enumerate(complex_):
        if len(verts) == 2:
            if components.find(verts[0]) == components.find(verts[1]):
                positive.append(pos)
            else:
                components.union(verts[0], verts[1])
        elif len(verts) == 3:
            first, second, third = verts
            column = set([complex_.index[(first, second)],
                          complex_.index[(first, third)],
                          complex_.index[(second, third)]])
            while column and max(column) in pivots:
                column ^= pivots[max(column)]
            if column:
                low = max(column)
                pivots[low] = column
                birth = complex_.simplices[low][1]
                if diameter > birth:
                    pairs.append(PersistencePair(1, birth, diameter))
    for pos in positive:
        if pos not in pivots:
            pairs.append(PersistencePair(1, complex_.simplices[pos][1],
                                         float('inf')))
    return sorted(pairs)


def rank_between_scales(bars, alpha, outer_scale):
    """Number of bars alive over the whole range [alpha, outer_scale]"""
    return sum(1 for bar in bars if bar.birth <= alpha and
               bar.death > outer_scale)

def betti1_between_scales(metric, alpha, outer_scale=None,
                          max_points=DEFAULT_MAX_POINTS):
    """Rank of the map H1(Rips(alpha)) -> H1(Rips(outer_scale)), the outer
       scale being 3 * alpha by default"""
    if not alpha > 0:
        raise ReebError('Alpha must be positive')
    if outer_scale is None:
        outer_scale = 3 * alpha
    if outer_scale < alpha:
        raise ReebError('Outer scale must not be below alpha')
    bars = h1_persistence(rips_two_skeleton(metric, outer_scale, max_points))
    rank = rank_between_scales(bars, alpha, outer_scale)
    LOGGER.debug('Betti-1 between scales %g and %g: %d', alpha, outer_scale,
                 rank)
    return rank
