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
"""Loading and preprocessing of sampled geometry"""

import io
import logging

import numpy as np
from scipy.spatial import cKDTree

from reeb_graph import NeighborGraph
from reeb_utils import ReebError


# Setup logging
LOGGER = logging.getLogger('reeb-ingest')

FORMATS = ('csv', 'edge_list', 'traces')


class ParseError(ReebError):
    """Malformed input data"""
    def __init__(self, msg, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            msg = 'line %d: %s' % (lineno, msg)
        super(ParseError, self).__init__(msg)

class DimensionError(ReebError):
    """Points of inconsistent dimension"""
    pass

class EmptyInputError(ReebError):
    """Nothing to work on"""
    pass


def _as_coordinates(points, what):
    """Validate an array-like of coordinate vectors"""
    try:
        coords = np.array(points, dtype=float)
    except ValueError as err:
        raise DimensionError('%s: %s' % (what, err))
    if coords.ndim == 1 and coords.size == 0:
        coords = coords.reshape(0, 1)
    if coords.ndim != 2 or coords.shape[1] < 1:
        raise DimensionError('%s must be a sequence of equally sized '
                             'coordinate vectors' % what)
    if not np.all(np.isfinite(coords)):
        raise DimensionError('%s contains non-finite coordinates' % what)
    coords.setflags(write=False)
    return coords


class PointCloud(object):
    """Finite sample of points in Euclidean space"""

    def __init__(self, points):
        self.points = _as_coordinates(points, 'Point cloud')

    def __len__(self):
        return len(self.points)

    @property
    def dim(self):
        """Dimension of the ambient space"""
        return self.points.shape[1]

    def subset(self, indices):
        """Cloud of the points with the given indices"""
        return PointCloud(self.points[np.asarray(indices, dtype=np.int64)])

    def __repr__(self):
        return '<PointCloud: %d points in dim %d>' % (len(self), self.dim)


class Trace(object):
    """Time ordered sequence of positions"""

    def __init__(self, samples):
        self.samples = _as_coordinates(samples, 'Trace')
        if not len(self.samples):
            raise EmptyInputError('Empty trace')

    def __len__(self):
        return len(self.samples)

    @property
    def dim(self):
        """Dimension of the samples"""
        return self.samples.shape[1]

    @property
    def arc_length(self):
        """Length of the polyline through the samples"""
        steps = np.linalg.norm(np.diff(self.samples, axis=0), axis=1)
        return float(steps.sum())

    def __repr__(self):
        return '<Trace: %d samples in dim %d>' % (len(self), self.dim)


def _text_lines(source):
    """Decoded lines of a byte (or text) stream"""
    if isinstance(source, io.TextIOBase):
        return source.read().splitlines()
    try:
        return source.read().decode('utf-8').splitlines()
    except UnicodeDecodeError as err:
        raise ParseError('Not utf-8 text: %s' % err)

def _parse_csv_row(line, lineno, dim):
    """Parse one comma separated coordinate row"""
    try:
        row = [float(field) for field in line.split(',')]
    except ValueError:
        raise ParseError("Invalid coordinate row '%s'" % line, lineno)
    if not np.all(np.isfinite(row)):
        raise ParseError("Non-finite coordinate in '%s'" % line, lineno)
    if dim is not None and len(row) != dim:
        raise DimensionError('line %d: expected %d coordinates, got %d' %
                             (lineno, dim, len(row)))
    return row

def _load_csv(lines):
    """Parse a point file"""
    rows = []
    dim = None
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        row = _parse_csv_row(line, lineno, dim)
        dim = len(row)
        rows.append(row)
    if not rows:
        raise EmptyInputError('No points in input')
    return PointCloud(rows)

def _load_edge_list(lines):
    """Parse a 'u v length' edge file"""
    edges = []
    seen = set()
    for lineno, line in enumerate(lines, 1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != 3:
            raise ParseError("Expected 'u v length', got '%s'" % line.strip(),
                             lineno)
        try:
            tail, head, length = int(fields[0]), int(fields[1]), \
                float(fields[2])
        except ValueError:
            raise ParseError("Invalid edge '%s'" % line.strip(), lineno)
        if tail < 0 or head < 0:
            raise ParseError('Negative vertex id', lineno)
        if tail == head:
            raise ParseError('Self-loop at vertex %d' % tail, lineno)
        if not np.isfinite(length) or length <= 0:
            raise ParseError('Edge length must be positive', lineno)
        key = (min(tail, head), max(tail, head))
        if key in seen:
            raise ParseError('Duplicate edge %d-%d' % key, lineno)
        seen.add(key)
        edges.append((tail, head, length))
    if not edges:
        raise EmptyInputError('No edges in input')
    count = max(max(tail, head) for tail, head, _ in edges) + 1
    return NeighborGraph.from_edges(count, edges)

def _load_traces(lines):
    """Parse blank-line separated blocks of points"""
    traces = []
    block = []
    dim = None
    for lineno, line in enumerate(lines + [''], 1):
        line = line.strip()
        if not line:
            if block:
                traces.append(Trace(block))
                block = []
            continue
        row = _parse_csv_row(line, lineno, dim)
        dim = len(row)
        block.append(row)
    if not traces:
        raise EmptyInputError('No traces in input')
    return traces

def load_points(source, fmt='csv'):
    """Load a PointCloud (csv), NeighborGraph (edge_list) or a list of
       Traces (traces) from a byte stream"""
    loaders = {'csv': _load_csv,
               'edge_list': _load_edge_list,
               'traces': _load_traces,
               'trace_set': _load_traces}
    if fmt not in loaders:
        raise ReebError("Unknown input format '%s'" % fmt)
    data = loaders[fmt](_text_lines(source))
    LOGGER.debug('Loaded %r', data)
    return data


def build_rips_graph(cloud, radius):
    """Neighborhood graph joining points at most radius apart, edge length
       being the Euclidean distance"""
    if radius <= 0:
        raise ReebError('Rips radius must be positive')
    if not len(cloud):
        raise EmptyInputError('Cannot build a graph on an empty point cloud')
    tree = cKDTree(cloud.points)
    pairs = tree.query_pairs(radius, output_type='ndarray')
    if len(pairs):
        lengths = np.linalg.norm(cloud.points[pairs[:, 0]] -
                                 cloud.points[pairs[:, 1]], axis=1)
        # Duplicate points would give zero length edges
        keep = (lengths > 0) & (lengths <= radius)
        if np.count_nonzero(lengths == 0):
            LOGGER.info('Skipping %d zero-length edges between duplicate '
                        'points', np.count_nonzero(lengths == 0))
        pairs = pairs[keep]
        lengths = lengths[keep]
    else:
        pairs = np.zeros((0, 2), dtype=np.int64)
        lengths = np.zeros(0)
    graph = NeighborGraph(len(cloud), pairs[:, 0], pairs[:, 1], lengths)
    LOGGER.debug('Rips graph at radius %g: %r', radius, graph)
    return graph


def farthest_point_net(cloud, epsilon):
    """Greedy farthest point traversal from point 0, stopped once every
       point is within epsilon of a landmark"""
    if epsilon <= 0:
        raise ReebError('Net radius must be positive')
    if not len(cloud):
        raise EmptyInputError('Cannot select landmarks from an empty cloud')
    points = cloud.points
    landmarks = [0]
    distance = np.linalg.norm(points - points[0], axis=1)
    farthest = int(distance.argmax())
    while distance[farthest] > epsilon:
        landmarks.append(farthest)
        distance = np.minimum(distance,
                              np.linalg.norm(points - points[farthest],
                                             axis=1))
        farthest = int(distance.argmax())
    LOGGER.debug('Selected %d landmarks out of %d points at epsilon %g',
                 len(landmarks), len(points), epsilon)
    return landmarks


def polyline_arc(samples):
    """Polyline vertices without repeated positions and their cumulative
       arc length"""
    samples = np.asarray(samples, dtype=float)
    steps = np.linalg.norm(np.diff(samples, axis=0), axis=1)
    # Repeated positions add nothing to the polyline
    keep = np.concatenate([[True], steps > 0])
    return samples[keep], np.concatenate([[0.0], np.cumsum(steps[steps > 0])])

def interpolate_polyline(samples, targets):
    """Points of a polyline at the given arc lengths"""
    samples, arc = polyline_arc(samples)
    return np.column_stack([np.interp(targets, arc, samples[:, axis])
                            for axis in range(samples.shape[1])])


def resample_trace(trace, spacing):
    """Points along the trace polyline at arc length multiples of spacing"""
    if spacing <= 0:
        raise ReebError('Resampling spacing must be positive')
    samples, arc = polyline_arc(trace.samples)
    if len(samples) < 2 or arc[-1] < spacing:
        return Trace(samples[:1])
    count = int(np.floor(arc[-1] / spacing * (1 + 1e-12))) + 1
    targets = spacing * np.arange(count)
    targets[-1] = min(targets[-1], arc[-1])
    return Trace(interpolate_polyline(samples, targets))


def delay_embed(trace, k):
    """Stack k consecutive samples into one point of dimension k * d"""
    if k < 1:
        raise ReebError('Stack size must be positive')
    if len(trace) < k:
        raise EmptyInputError('Trace of %d samples is shorter than the stack '
                              'size %d' % (len(trace), k))
    windows = np.lib.stride_tricks.sliding_window_view(trace.samples,
                                                       (k, trace.dim))
    return PointCloud(windows.reshape(len(trace) - k + 1, k * trace.dim))


def density_filter(cloud, k, quantile):
    """Drop points whose k-th nearest neighbor distance is above the given
       quantile of all k-th nearest neighbor distances"""
    if not 1 <= k < len(cloud):
        raise ReebError('Neighbor count must be in [1, %d)' % len(cloud))
    if not 0 <= quantile < 1:
        raise ReebError('Quantile must be in [0, 1)')
    tree = cKDTree(cloud.points)
    # The nearest "neighbor" of a point is the point itself
    distances, _ = tree.query(cloud.points, k=k + 1)
    kth = distances[:, k]
    threshold = np.quantile(kth, quantile)
    keep = np.flatnonzero(kth <= threshold)
    LOGGER.info('Density filter removed %d of %d points',
                len(cloud) - len(keep), len(cloud))
    return cloud.subset(keep)
