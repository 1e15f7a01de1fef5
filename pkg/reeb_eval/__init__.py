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
"""Reconstruction quality: distortion statistics and the closed-form
Gromov-Hausdorff bounds"""

import logging
import time
from collections import namedtuple

import numpy as np
from scipy.sparse import csgraph

from reeb_alpha import point_distances
from reeb_graph import (NeighborGraph, betti1, connected_components,
                        edge_length_census, sssp)
from reeb_utils import ReebError


# Setup logging
LOGGER = logging.getLogger('reeb-eval')

BOUND_VARIANTS = ('theorem', 'intro')


class EvaluationError(ReebError):
    """Evaluation failures"""
    pass


BoundInputs = namedtuple('BoundInputs', ['beta1', 'n_e', 'alpha', 'eps'])


class DistortionReport(object):
    """Distortion of the correspondence between vertices and their images"""

    def __init__(self, original, approximate, original_time,
                 approximate_time, excluded=0):
        self.original = np.asarray(original, dtype=float)
        self.approximate = np.asarray(approximate, dtype=float)
        if not len(self.original):
            raise EvaluationError('No vertex pairs to evaluate')
        self.original_time = original_time
        self.approximate_time = approximate_time
        self.excluded = excluded

    @property
    def pair_count(self):
        """Number of evaluated pairs"""
        return len(self.original)

    @property
    def relative(self):
        """Relative distortion of every pair"""
        return np.abs(self.original - self.approximate) / self.original

    @property
    def mean_relative_distortion(self):
        """Mean relative distortion"""
        return float(self.relative.mean())

    @property
    def median_relative_distortion(self):
        """Median relative distortion"""
        return float(np.median(self.relative))

    @property
    def max_absolute_gap(self):
        """Largest absolute difference of the two distances"""
        return float(np.abs(self.original - self.approximate).max())

    def to_json(self):
        """Json-serializable summary"""
        return {'pair_count': self.pair_count,
                'excluded_pairs': self.excluded,
                'mean_relative_distortion': self.mean_relative_distortion,
                'median_relative_distortion':
                    self.median_relative_distortion,
                'max_absolute_gap': self.max_absolute_gap,
                'original_time': self.original_time,
                'approximate_time': self.approximate_time}

    def __repr__(self):
        return '<DistortionReport: %d pairs, mean %.4f>' % \
            (self.pair_count, self.mean_relative_distortion)


def _all_pairs(groups):
    """Every same-group pair (u < v) in lexicographic order"""
    pairs = []
    for members in groups:
        members = np.sort(members)
        upper, lower = np.triu_indices(len(members), k=1)
        pairs.extend(zip(members[upper].tolist(), members[lower].tolist()))
    return sorted(pairs)

def sample_pairs(n_vertices, count, seed, labels=None):
    """Draw distinct vertex pairs uniformly among the pairs lying in one
       connected component (labels), deterministic for a fixed seed"""
    if n_vertices < 2:
        raise EvaluationError('Need at least two vertices to sample pairs')
    if count < 1:
        raise EvaluationError('Pair count must be positive')
    if labels is None:
        labels = np.zeros(n_vertices, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    order = np.argsort(labels, kind='stable')
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    groups = [group for group in np.split(order, bounds) if len(group) >= 2]
    weights = np.array([len(group) * (len(group) - 1) // 2
                        for group in groups], dtype=np.int64)
    total = int(weights.sum())
    if not total:
        raise EvaluationError('No component holds two vertices')
    if count >= total:
        LOGGER.info('Requested %d pairs, using all %d same-component pairs',
                    count, total)
        return _all_pairs(groups)

    rng = np.random.default_rng(seed)
    if 2 * count > total:
        pairs = _all_pairs(groups)
        chosen = rng.choice(total, size=count, replace=False)
        return [pairs[index] for index in chosen]

    probabilities = weights / float(total)
    chosen = set()
    pairs = []
    while len(pairs) < count:
        group = groups[rng.choice(len(groups), p=probabilities)]
        first, second = rng.choice(len(group), size=2, replace=False)
        pair = (int(min(group[first], group[second])),
                int(max(group[first], group[second])))
        if pair not in chosen:
            chosen.add(pair)
            pairs.append(pair)
    return pairs


def _graph_distances(graph, pairs, batch=256):
    """Shortest path distances of vertex pairs in a neighborhood graph"""
    result = np.empty(len(pairs))
    for begin in range(0, len(pairs), batch):
        chunk = pairs[begin:begin + batch]
        sources, rows = np.unique(chunk[:, 0], return_inverse=True)
        dist = csgraph.dijkstra(graph.csgraph, directed=False,
                                indices=sources)
        result[begin:begin + len(chunk)] = dist[rows, chunk[:, 1]]
    return result

def distortion_report(graph, metric_graph, assignment, pairs):
    """Compare the distances of vertex pairs in the neighborhood graph with
       the distances of their images in the metric graph"""
    if len(assignment) != graph.vertex_count:
        raise EvaluationError('Assignment covers %d vertices, graph has %d' %
                              (len(assignment), graph.vertex_count))
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if not len(pairs):
        raise EvaluationError('No vertex pairs to evaluate')
    labels = np.asarray(connected_components(graph))
    if np.any(labels[pairs[:, 0]] != labels[pairs[:, 1]]):
        raise EvaluationError('Vertex pairs must lie in one connected '
                              'component')

    start = time.time()
    original = _graph_distances(graph, pairs)
    original_time = time.time() - start

    start = time.time()
    approximate = point_distances(metric_graph,
                                  assignment.take(pairs[:, 0]),
                                  assignment.take(pairs[:, 1]))
    approximate_time = time.time() - start

    valid = original > 0
    unreachable = valid & ~np.isfinite(approximate)
    if np.any(unreachable):
        LOGGER.warning('Excluding %d pairs whose images are not connected',
                       np.count_nonzero(unreachable))
        valid &= ~unreachable
    if not np.any(valid):
        raise EvaluationError('All vertex pairs have zero distance')
    report = DistortionReport(original[valid], approximate[valid],
                              original_time, approximate_time,
                              excluded=len(pairs) - np.count_nonzero(valid))
    LOGGER.debug('Distortion: %r', report)
    return report


def _check_inputs(inputs):
    """Validate bound inputs"""
    if inputs.beta1 < 0 or inputs.n_e < 0:
        raise EvaluationError('Betti number and edge count must be '
                              'non-negative')
    if inputs.eps < 0:
        raise EvaluationError('Epsilon must be non-negative')

def bound_reeb(inputs, variant='theorem'):
    """Gromov-Hausdorff bound between the space and its Reeb graph,
       (beta1 + 1) * (17 + 8 * N_E) * eps. The 'intro' variant doubles it."""
    _check_inputs(inputs)
    if variant not in BOUND_VARIANTS:
        raise EvaluationError("Unknown bound variant '%s'" % variant)
    bound = (inputs.beta1 + 1) * (17 + 8 * inputs.n_e) * inputs.eps
    return 2 * bound if variant == 'intro' else bound

def bound_alpha_reeb(inputs):
    """Gromov-Hausdorff bound between the space and its alpha-Reeb graph"""
    _check_inputs(inputs)
    if not inputs.alpha > 0:
        raise EvaluationError('Alpha must be positive')
    return (inputs.beta1 + 1) * level_set_diameter_bound(inputs.n_e,
                                                         inputs.alpha,
                                                         inputs.eps)

def band_diameter_bound(n_e, alpha):
    """Largest diameter of a band component of width 2 * alpha of a metric
       graph with n_e edges of length at most 4 * alpha"""
    if not alpha > 0:
        raise EvaluationError('Alpha must be positive')
    return 4 * (2 + n_e) * alpha

def level_set_diameter_bound(n_e, alpha, eps):
    """Diameter bound of a component of d^-1([c - alpha, c + alpha]) on a
       space eps-close to a metric graph"""
    return 4 * (2 + n_e) * (alpha + 2 * eps) + eps

def fiber_bound(beta1, fiber_diameter):
    """Gromov-Hausdorff bound from the largest fiber diameter of the
       quotient map"""
    if beta1 < 0 or fiber_diameter < 0:
        raise EvaluationError('Bound inputs must be non-negative')
    return (beta1 + 1) * fiber_diameter

def graph_bounds(graph, alpha, eps, variant='theorem'):
    """Both Gromov-Hausdorff bounds of a reconstructed graph.

    The Reeb graph bound counts edges of length at most 8 eps, the alpha-Reeb
    graph bound edges of length at most 4 (alpha + 2 eps).
    """
    beta1 = betti1(graph)
    n_e_reeb = edge_length_census(graph, 8 * eps)
    n_e_alpha = edge_length_census(graph, 4 * (alpha + 2 * eps))
    return {'reeb': bound_reeb(BoundInputs(beta1, n_e_reeb, alpha, eps),
                               variant),
            'alpha_reeb': bound_alpha_reeb(BoundInputs(beta1, n_e_alpha,
                                                       alpha, eps)),
            'variant': variant,
            'beta1': beta1,
            'n_e_reeb': n_e_reeb,
            'n_e_alpha_reeb': n_e_alpha}


def subdivide(graph, step):
    """Split every edge into pieces of length at most step"""
    if not step > 0:
        raise EvaluationError('Subdivision step must be positive')
    tails = []
    heads = []
    lengths = []
    count = graph.vertex_count
    for tail, head, length in graph.edges():
        pieces = int(np.ceil(length / step))
        chain = [tail] + list(range(count, count + pieces - 1)) + [head]
        count += pieces - 1
        tails.extend(chain[:-1])
        heads.extend(chain[1:])
        lengths.extend([length / pieces] * pieces)
    return NeighborGraph(count, tails, heads, lengths)

def band_component_diameters(graph, root, center, alpha, step):
    """Diameters of the components of the band center - alpha <= d <=
       center + alpha, measured on a subdivision of the graph.

    Sample points joined by one piece are connected only when both lie at
    most step/2 below the upper band limit, the piece then stays in the band.
    The diameters are graph distances in the whole graph.
    """
    fine = subdivide(graph, step)
    field = np.asarray(sssp(fine, root).values.filled(np.inf))
    in_band = np.flatnonzero((field >= center - alpha) &
                             (field <= center + alpha - step / 2.0))
    if not len(in_band):
        return []
    labels = connected_components(fine, active=in_band)
    diameters = []
    members_by_label = np.asarray(labels[in_band])
    for label in range(int(members_by_label.max()) + 1):
        members = in_band[members_by_label == label]
        dist = csgraph.dijkstra(fine.csgraph, directed=False,
                                indices=members)
        diameters.append(float(dist[:, members].max()))
    return diameters


def pprint_duration(seconds):
    """Pretty print a duration in human readable format

    >>> pprint_duration(0.0123)
    '12.3 ms'
    >>> pprint_duration(2.5)
    '2.50 s'
    >>> pprint_duration(150)
    '2 min 30 s'
    """
    if seconds < 1:
        return '%.1f ms' % (seconds * 1000)
    if seconds < 60:
        return '%.2f s' % seconds
    return '%d min %d s' % divmod(int(round(seconds)), 60)

def table_rows(points, edges, graph, reconstruction_time, report=None):
    """Table rows (label, text) describing one reconstruction"""
    rows = [('#Original points', '%d' % points),
            ('#Original edges', '%d' % edges),
            ('#Nodes in alpha-Reeb graph', '%d' % graph.node_count),
            ('#Edges in alpha-Reeb graph', '%d' % graph.edge_count),
            ('Graph reconstruction time',
             pprint_duration(reconstruction_time))]
    if report is not None:
        rows += [('Original Dist Comp Time',
                  pprint_duration(report.original_time)),
                 ('Approx Dist Comp Time',
                  pprint_duration(report.approximate_time)),
                 ('Mean distortion',
                  '%.1f%%' % (100 * report.mean_relative_distortion)),
                 ('Median distortion',
                  '%.1f%%' % (100 * report.median_relative_distortion))]
    return rows

def format_table(columns):
    """Aligned plain text table of (title, rows) columns sharing row labels"""
    if not columns:
        return ''
    labels = [label for label, _value in columns[0][1]]
    width = max(len(label) for label in labels)
    widths = [max([len(title)] + [len(value) for _label, value in rows])
              for title, rows in columns]
    lines = [' ' * width + ''.join('  %*s' % (col_width, title) for
                                   (title, _rows), col_width in
                                   zip(columns, widths))]
    for index, label in enumerate(labels):
        cells = ''.join('  %*s' % (col_width, rows[index][1]) for
                        (_title, rows), col_width in zip(columns, widths))
        lines.append('%-*s%s' % (width, label, cells))
    return '\n'.join(lines) + '\n'
