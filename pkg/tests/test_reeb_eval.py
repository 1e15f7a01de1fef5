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
"""Tests for the evaluation functionality"""

import itertools

import numpy as np
import pytest
from scipy.stats import chisquare

from reeb_alpha import Assignment, alpha_reeb
from reeb_eval import (BoundInputs, DistortionReport, EvaluationError,
                       band_component_diameters, band_diameter_bound,
                       bound_alpha_reeb, bound_reeb, distortion_report,
                       fiber_bound, format_table, graph_bounds,
                       sample_pairs, subdivide, table_rows)
from reeb_graph import MetricGraph, NeighborGraph, edge_length_census, sssp
from reeb_synth import cycle_graph, path_graph, random_metric_graph


class TestBounds(object):
    """Test the closed-form bounds"""

    def test_reeb(self):
        """Test the Reeb graph bound"""
        assert bound_reeb(BoundInputs(0, 0, 1.0, 1.0)) == 17
        assert bound_reeb(BoundInputs(3, 5, 1.0, 0.0)) == 0
        assert bound_reeb(BoundInputs(2, 1, 1.0, 0.5)) == 37.5
        assert bound_reeb(BoundInputs(2, 1, 1.0, 0.5), 'intro') == 75.0
        with pytest.raises(EvaluationError):
            bound_reeb(BoundInputs(0, 0, 1.0, 1.0), 'foo')

    def test_alpha_reeb(self):
        """Test the alpha-Reeb graph bound"""
        assert bound_alpha_reeb(BoundInputs(0, 0, 1.0, 1.0)) == 8 + 17
        assert bound_alpha_reeb(BoundInputs(1, 2, 1.0, 0.0)) == 32
        # Vanishing alpha meets the Reeb graph bound
        assert np.isclose(bound_alpha_reeb(BoundInputs(2, 0, 1e-12, 0.5)),
                          bound_reeb(BoundInputs(2, 0, 1e-12, 0.5)))
        with pytest.raises(EvaluationError):
            bound_alpha_reeb(BoundInputs(0, 0, 0.0, 1.0))

    def test_band_diameter(self):
        """Test the band diameter bound"""
        assert band_diameter_bound(3, 0.5) == 10.0
        assert band_diameter_bound(0, 1.0) == 8.0
        with pytest.raises(EvaluationError):
            band_diameter_bound(1, 0)

    def test_fiber(self):
        """Test the fiber bound"""
        assert fiber_bound(2, 0.5) == 1.5
        with pytest.raises(EvaluationError):
            fiber_bound(-1, 0.5)

    def test_invalid(self):
        """Test negative inputs"""
        with pytest.raises(EvaluationError):
            bound_reeb(BoundInputs(-1, 0, 1.0, 1.0))
        with pytest.raises(EvaluationError):
            bound_reeb(BoundInputs(0, 0, 1.0, -1.0))

    def test_monotone(self):
        """Test the bounds never decrease when an input grows"""
        base = BoundInputs(1, 2, 0.5, 0.1)
        for field, step in (('beta1', 1), ('n_e', 1), ('alpha', 0.1),
                            ('eps', 0.1)):
            grown = base._replace(**{field: getattr(base, field) + step})
            assert bound_reeb(grown) >= bound_reeb(base)
            assert bound_alpha_reeb(grown) >= bound_alpha_reeb(base)

    def test_graph_bounds(self):
        """Test the two bounds count short edges at their own thresholds"""
        graph = MetricGraph([0.0, 0.3, 1.3, 3.3], [0, 1, 2], [1, 2, 3],
                            [0.3, 1.0, 2.0], 0)
        bounds = graph_bounds(graph, 0.3, 0.05)
        assert bounds['beta1'] == 0
        # 8 eps = 0.4 and 4 (alpha + 2 eps) = 1.6
        assert bounds['n_e_reeb'] == 1
        assert bounds['n_e_alpha_reeb'] == 2
        assert np.isclose(bounds['reeb'],
                          bound_reeb(BoundInputs(0, 1, 0.3, 0.05)))
        assert np.isclose(bounds['alpha_reeb'],
                          bound_alpha_reeb(BoundInputs(0, 2, 0.3, 0.05)))
        intro = graph_bounds(graph, 0.3, 0.05, 'intro')
        assert intro['variant'] == 'intro'
        assert np.isclose(intro['reeb'], 2 * bounds['reeb'])


class TestSamplePairs(object):
    """Test pair sampling"""

    def test_deterministic(self):
        """Test a fixed seed gives fixed pairs"""
        assert sample_pairs(100, 20, 7) == sample_pairs(100, 20, 7)
        assert sample_pairs(100, 20, 7) != sample_pairs(100, 20, 8)

    def test_distinct(self):
        """Test pairs are ordered and never repeat"""
        for count in (10, 30, 44):
            pairs = sample_pairs(10, count, 1)
            assert len(pairs) == count
            assert len(set(pairs)) == count
            assert all(first < second for first, second in pairs)

    def test_all_pairs(self):
        """Test asking for more pairs than there are"""
        pairs = sample_pairs(5, 100, 0)
        assert pairs == list(itertools.combinations(range(5), 2))

    def test_components(self):
        """Test pairs stay within components"""
        labels = np.array([0, 0, 0, 1, 1, 2])
        pairs = sample_pairs(6, 100, 0, labels)
        assert sorted(pairs) == [(0, 1), (0, 2), (1, 2), (3, 4)]
        for first, second in sample_pairs(6, 2, 3, labels):
            assert labels[first] == labels[second]

    def test_uniform(self):
        """Test pairs are drawn uniformly"""
        pairs = list(itertools.combinations(range(10), 2))
        index = dict((pair, pos) for pos, pair in enumerate(pairs))
        counts = np.zeros(len(pairs))
        for seed in range(4000):
            for pair in sample_pairs(10, 5, seed):
                counts[index[pair]] += 1
        assert chisquare(counts).pvalue > 0.001

    def test_invalid(self):
        """Test invalid arguments"""
        with pytest.raises(EvaluationError):
            sample_pairs(1, 1, 0)
        with pytest.raises(EvaluationError):
            sample_pairs(5, 0, 0)
        with pytest.raises(EvaluationError):
            sample_pairs(3, 1, 0, [0, 1, 2])


class TestDistortion(object):
    """Test distortion measurement"""

    def test_report(self):
        """Test the summary statistics"""
        report = DistortionReport([1.0, 2.0, 4.0], [1.0, 3.0, 2.0], 0.5,
                                  0.1)
        assert report.pair_count == 3
        assert np.isclose(report.mean_relative_distortion, 1.0 / 3)
        assert report.median_relative_distortion == 0.5
        assert report.max_absolute_gap == 2.0
        data = report.to_json()
        assert data['excluded_pairs'] == 0
        assert data['original_time'] == 0.5
        with pytest.raises(EvaluationError):
            DistortionReport([], [], 0, 0)

    def test_isometric(self):
        """Test a path is reproduced without distortion"""
        graph = path_graph(50)
        reeb, assignment = alpha_reeb(graph, 0, 0.5)
        report = distortion_report(graph, reeb, assignment,
                                   sample_pairs(50, 200, 0))
        assert report.mean_relative_distortion <= 0.5
        assert report.max_absolute_gap <= 1e-9

    def test_faster_than_original(self):
        """Test distances are cheaper on the reconstruction of a large
           graph"""
        graph = path_graph(10000)
        reeb, assignment = alpha_reeb(graph, 0, 1.0)
        report = distortion_report(graph, reeb, assignment,
                                   sample_pairs(10000, 2000, 0))
        assert reeb.node_count < 10
        assert report.approximate_time < report.original_time

    def test_constant_map(self):
        """Test collapsing everything to one node"""
        report = distortion_report(path_graph(2),
                                   MetricGraph([0.0], [], [], [], 0),
                                   Assignment.from_nodes([0, 0]), [(0, 1)])
        assert report.mean_relative_distortion == 1.0

    def test_unreachable_images(self):
        """Test pairs with disconnected images are excluded"""
        report = distortion_report(path_graph(3),
                                   MetricGraph([0.0, 1.0], [], [], [], 0),
                                   Assignment.from_nodes([0, 0, 1]),
                                   [(0, 1), (0, 2), (1, 2)])
        assert report.pair_count == 1
        assert report.excluded == 2

    def test_invalid(self):
        """Test rejected inputs"""
        metric = MetricGraph([0.0], [], [], [], 0)
        with pytest.raises(EvaluationError):
            distortion_report(path_graph(3), metric,
                              Assignment.from_nodes([0, 0]), [(0, 1)])
        apart = NeighborGraph.from_edges(3, [(0, 1, 1.0)])
        with pytest.raises(EvaluationError):
            distortion_report(apart, metric, Assignment.from_nodes([0] * 3),
                              [(0, 2)])
        with pytest.raises(EvaluationError):
            distortion_report(path_graph(2), metric,
                              Assignment.from_nodes([0, 0]), [(0, 0)])
        with pytest.raises(EvaluationError):
            distortion_report(path_graph(2), metric,
                              Assignment.from_nodes([0, 0]), [])


class TestBands(object):
    """Test the band diameter measurement"""

    def test_subdivide(self):
        """Test edges are split evenly"""
        fine = subdivide(path_graph(2), 0.3)
        assert fine.vertex_count == 5
        assert np.allclose(fine.lengths, 0.25)
        with pytest.raises(EvaluationError):
            subdivide(path_graph(2), 0)

    def test_path(self):
        """Test the band of a path"""
        diameters = band_component_diameters(path_graph(11), 0, 5.0, 1.0,
                                             0.1)
        assert len(diameters) == 1
        assert 1.7 <= diameters[0] <= 2.0
        assert band_component_diameters(path_graph(3), 0, 10.0, 1.0,
                                        0.1) == []

    def test_cycle(self):
        """Test the band of a cycle splits in two"""
        diameters = band_component_diameters(cycle_graph(8), 0, 2.0, 0.5,
                                             0.05)
        assert len(diameters) == 2
        assert all(diameter <= 1.0 for diameter in diameters)

    def test_random_graphs(self):
        """Test measured band diameters stay below the bound"""
        for seed in range(100):
            graph = random_metric_graph(12, 4, seed)
            alpha = 0.1 + 0.05 * (seed % 5)
            reach = sssp(graph, 0).max
            bound = band_diameter_bound(
                edge_length_census(graph, 4 * alpha), alpha)
            for center in np.linspace(0, reach, 10):
                for diameter in band_component_diameters(graph, 0, center,
                                                         alpha, alpha / 4):
                    assert diameter <= bound + 1e-9


def test_table():
    """Test the plain text table"""
    graph = MetricGraph([0.0, 1.0], [0], [1], [1.0], 0)
    report = DistortionReport([1.0], [1.1], 0.2, 0.01)
    short = table_rows(10, 12, graph, 0.5)
    full = table_rows(10, 12, graph, 0.5, report)
    assert len(short) == 5
    assert full[-2] == ('Mean distortion', '10.0%')
    table = format_table([('circle', full), ('path', full)])
    lines = table.splitlines()
    assert len(lines) == 10
    assert lines[0].split() == ['circle', 'path']
    assert lines[1].startswith('#Original points')
    assert format_table([]) == ''
