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
"""Tests for loading and preprocessing input data"""

from io import BytesIO

import numpy as np
import pytest
from scipy.spatial.distance import pdist, squareform

from reeb_graph import NeighborGraph
from reeb_ingest import (DimensionError, EmptyInputError, ParseError,
                         PointCloud, Trace, build_rips_graph, delay_embed,
                         density_filter, farthest_point_net, load_points,
                         resample_trace)
from reeb_synth import circle
from reeb_utils import ReebError


def _load(text, fmt='csv'):
    """Load from a string"""
    return load_points(BytesIO(text.encode('utf-8')), fmt)


class TestLoadPoints(object):
    """Test the input parsers"""

    def test_csv(self):
        """Test a point file"""
        cloud = _load('0,0\n1,0.5\n\n2,1\n')
        assert isinstance(cloud, PointCloud)
        assert len(cloud) == 3
        assert cloud.dim == 2
        assert cloud.points[1, 1] == 0.5

    def test_csv_errors(self):
        """Test malformed point files"""
        with pytest.raises(ParseError) as excinfo:
            _load('0,0\n1,x\n')
        assert excinfo.value.lineno == 2
        assert str(excinfo.value).startswith('line 2:')
        with pytest.raises(ParseError):
            _load('0,nan\n')
        with pytest.raises(DimensionError):
            _load('0,0\n1,2,3\n')
        with pytest.raises(EmptyInputError):
            _load('\n\n')

    def test_edge_list(self):
        """Test an edge file"""
        graph = _load('0 1 1.5\n1 2 0.5\n\n3 2 1\n', 'edge_list')
        assert isinstance(graph, NeighborGraph)
        assert graph.vertex_count == 4
        assert list(graph.edges())[-1] == (2, 3, 1.0)

    def test_edge_list_errors(self):
        """Test malformed edge files"""
        for text in ('0 1\n', '0 1 a\n', '-1 1 1\n', '1 1 1\n', '0 1 0\n',
                     '0 1 1\n1 0 2\n'):
            with pytest.raises(ParseError):
                _load(text, 'edge_list')
        with pytest.raises(EmptyInputError):
            _load('', 'edge_list')

    def test_traces(self):
        """Test blank-line separated traces"""
        traces = _load('0,0\n1,0\n\n\n5,5\n5,6\n5,7\n', 'traces')
        assert [len(trace) for trace in traces] == [2, 3]
        assert traces[1].arc_length == 2.0
        assert len(_load('0,0\n', 'trace_set')) == 1
        with pytest.raises(DimensionError):
            _load('0,0\n\n1,1,1\n', 'traces')

    def test_unknown_format(self):
        """Test an unsupported format"""
        with pytest.raises(ReebError):
            _load('0,0\n', 'xml')

    def test_not_utf8(self):
        """Test binary garbage"""
        with pytest.raises(ParseError):
            load_points(BytesIO(b'\xff\xfe\x00'), 'csv')


class TestRipsGraph(object):
    """Test the neighborhood graph"""

    def test_against_brute_force(self):
        """Test edges against all pairwise distances"""
        rng = np.random.default_rng(1)
        cloud = PointCloud(rng.uniform(0, 1, size=(80, 3)))
        graph = build_rips_graph(cloud, 0.3)
        dist = squareform(pdist(cloud.points))
        upper, lower = np.triu_indices(80, k=1)
        close = dist[upper, lower] <= 0.3
        assert graph.edge_count == np.count_nonzero(close)
        for tail, head, length in graph.edges():
            assert np.isclose(length, dist[tail, head])

    def test_duplicates(self):
        """Test duplicate points get no zero-length edge"""
        graph = build_rips_graph(PointCloud([[0, 0], [0, 0], [0.5, 0]]), 1.0)
        assert graph.edge_count == 2
        assert np.all(graph.lengths > 0)

    def test_invalid(self):
        """Test invalid arguments"""
        with pytest.raises(ReebError):
            build_rips_graph(PointCloud([[0, 0]]), 0)
        with pytest.raises(EmptyInputError):
            build_rips_graph(PointCloud(np.zeros((0, 2))), 1.0)


class TestPreprocessing(object):
    """Test subsampling, resampling and filtering"""

    def test_farthest_point_net(self):
        """Test the covering and packing properties of the net"""
        cloud = circle(400)
        landmarks = farthest_point_net(cloud, 0.2)
        assert landmarks[0] == 0
        assert len(set(landmarks)) == len(landmarks)
        dist = squareform(pdist(cloud.points))
        assert dist[:, landmarks].min(axis=1).max() <= 0.2
        net = dist[np.ix_(landmarks, landmarks)]
        np.fill_diagonal(net, np.inf)
        assert net.min() > 0.2

    def test_resample(self):
        """Test resampling at a fixed arc length"""
        trace = Trace([[0, 0], [1, 0], [1, 0], [1, 1]])
        resampled = resample_trace(trace, 0.5)
        assert len(resampled) == 5
        steps = np.linalg.norm(np.diff(resampled.samples, axis=0), axis=1)
        assert np.allclose(steps[:2], 0.5)
        assert np.allclose(resampled.samples[-1], [1, 1])
        short = resample_trace(Trace([[0, 0], [0.1, 0]]), 1.0)
        assert len(short) == 1
        with pytest.raises(ReebError):
            resample_trace(trace, 0)

    def test_delay_embed(self):
        """Test stacking consecutive samples"""
        trace = Trace([[0, 0], [1, 1], [2, 2], [3, 3]])
        cloud = delay_embed(trace, 3)
        assert len(cloud) == 2
        assert cloud.dim == 6
        assert list(cloud.points[1]) == [1, 1, 2, 2, 3, 3]
        with pytest.raises(EmptyInputError):
            delay_embed(trace, 5)

    def test_density_filter(self):
        """Test outliers are dropped"""
        points = np.vstack([circle(100).points, [[10.0, 10.0]]])
        filtered = density_filter(PointCloud(points), 3, 0.95)
        assert len(filtered) < len(points)
        assert not np.any(np.all(filtered.points == [10.0, 10.0], axis=1))
        with pytest.raises(ReebError):
            density_filter(PointCloud(points), 0, 0.5)
        with pytest.raises(ReebError):
            density_filter(PointCloud(points), 3, 1.0)

    def test_read_only(self):
        """Test coordinates cannot be modified in place"""
        cloud = PointCloud([[0, 0]])
        with pytest.raises(ValueError):
            cloud.points[0, 0] = 1
        with pytest.raises(EmptyInputError):
            Trace(np.zeros((0, 2)))
