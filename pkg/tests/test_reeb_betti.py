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
"""Tests for the cycle count estimation"""

import itertools

import numpy as np
import pytest
from scipy.spatial.distance import pdist, squareform

from reeb_betti import (PersistencePair, SizeGuardError,
                        betti1_between_scales, h1_persistence,
                        rank_between_scales, rips_two_skeleton)
from reeb_ingest import PointCloud
from reeb_synth import circle, figure_eight, segment
from reeb_utils import ReebError


# Circumference of the cycles in the fixtures
CYCLE_LENGTH = 8.0


def _gf2_rank(matrix):
    """Rank of a 0/1 matrix over Z/2"""
    matrix = np.array(matrix, dtype=np.uint8) % 2
    rank = 0
    rows, cols = matrix.shape if matrix.size else (0, 0)
    for col in range(cols):
        pivot = np.flatnonzero(matrix[rank:, col])
        if not len(pivot):
            continue
        pivot = pivot[0] + rank
        matrix[[rank, pivot]] = matrix[[pivot, rank]]
        below = np.flatnonzero(matrix[:, col])
        for row in below:
            if row != rank:
                matrix[row] ^= matrix[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def _brute_force_rank(points, inner, outer):
    """Rank of H1(Rips(inner)) -> H1(Rips(outer)) by boundary matrix ranks"""
    dist = squareform(pdist(points))
    count = len(points)
    edges = [pair for pair in itertools.combinations(range(count), 2)
             if dist[pair] <= outer]
    inner_edges = [pair for pair in edges if dist[pair] <= inner]
    outer_only = [pair for pair in edges if dist[pair] > inner]
    triangles = [tri for tri in itertools.combinations(range(count), 3)
                 if max(dist[tri[0], tri[1]], dist[tri[0], tri[2]],
                        dist[tri[1], tri[2]]) <= outer]
    # Edge boundaries of the inner complex
    boundary1 = np.zeros((count, len(inner_edges)), dtype=np.uint8)
    for col, (first, second) in enumerate(inner_edges):
        boundary1[first, col] = boundary1[second, col] = 1
    # Triangle boundaries of the outer complex, rows split by scale
    position = dict((edge, row) for row, edge in enumerate(edges))
    boundary2 = np.zeros((len(edges), len(triangles)), dtype=np.uint8)
    for col, (first, second, third) in enumerate(triangles):
        for edge in ((first, second), (first, third), (second, third)):
            boundary2[position[edge], col] = 1
    outer_rows = [position[edge] for edge in outer_only]
    cycles = len(inner_edges) - _gf2_rank(boundary1)
    # Boundaries supported on inner edges only
    inner_boundaries = _gf2_rank(boundary2) - \
        _gf2_rank(boundary2[outer_rows]) if len(outer_rows) else \
        _gf2_rank(boundary2)
    return cycles - inner_boundaries


class TestRipsComplex(object):
    """Test the Vietoris-Rips two skeleton"""

    def test_counts(self):
        """Test simplex counts against enumeration"""
        cloud = circle(20)
        complex_ = rips_two_skeleton(cloud, 1.2)
        dist = squareform(pdist(cloud.points))
        edges = sum(1 for pair in itertools.combinations(range(20), 2)
                    if dist[pair] <= 1.2)
        triangles = sum(1 for tri in itertools.combinations(range(20), 3)
                        if max(dist[tri[0], tri[1]], dist[tri[0], tri[2]],
                               dist[tri[1], tri[2]]) <= 1.2)
        assert complex_.counts() == (20, edges, triangles)

    def test_order(self):
        """Test faces come before their cofaces"""
        complex_ = rips_two_skeleton(circle(12), 2.0)
        for pos, (verts, diameter) in enumerate(complex_):
            if len(verts) < 2:
                continue
            for face in itertools.combinations(verts, len(verts) - 1):
                assert complex_.index[face] < pos
                assert complex_.simplices[complex_.index[face]][1] <= \
                    diameter

    def test_distance_matrix(self):
        """Test a precomputed metric"""
        dist = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]], dtype=float)
        assert rips_two_skeleton(dist, 1.5).counts() == (3, 2, 0)
        with pytest.raises(ReebError):
            rips_two_skeleton(np.array([[0, 1], [2, 0]]), 1.0)
        with pytest.raises(ReebError):
            rips_two_skeleton(np.ones((2, 3)), 1.0)

    def test_guard(self):
        """Test the size guard"""
        with pytest.raises(SizeGuardError):
            rips_two_skeleton(circle(50), 0.5, max_points=40)
        with pytest.raises(ReebError):
            rips_two_skeleton(circle(5), 0)


class TestPersistence(object):
    """Test the column reduction"""

    SQUARE = PointCloud([[0, 0], [1, 0], [1, 1], [0, 1]])

    def test_square(self):
        """Test the square loop dies at the diagonal"""
        bars = h1_persistence(rips_two_skeleton(self.SQUARE, 2.0))
        assert len(bars) == 1
        assert bars[0].dimension == 1
        assert bars[0].birth == 1.0
        assert np.isclose(bars[0].death, np.sqrt(2))

    def test_infinite(self):
        """Test a loop alive at the largest scale"""
        bars = h1_persistence(rips_two_skeleton(self.SQUARE, 1.2))
        assert bars == [PersistencePair(1, 1.0, float('inf'))]

    def test_tree(self):
        """Test points on a segment have no loops"""
        assert h1_persistence(rips_two_skeleton(segment(15), 0.5)) == []

    def test_rank(self):
        """Test counting bars spanning a scale range"""
        bars = [PersistencePair(1, 0.5, 2.0), PersistencePair(1, 1.0, 4.0),
                PersistencePair(1, 0.2, float('inf'))]
        assert rank_between_scales(bars, 1.0, 3.0) == 2
        assert rank_between_scales(bars, 0.6, 1.5) == 2
        assert rank_between_scales(bars, 0.1, 1.0) == 0

    def test_permutation(self):
        """Test the barcode does not depend on the point order"""
        cloud = figure_eight(30, noise=0.03, seed=2)
        rng = np.random.default_rng(4)
        expected = [(bar.birth, bar.death) for bar in
                    h1_persistence(rips_two_skeleton(cloud, 2.5))]
        assert expected
        for _round in range(5):
            shuffled = cloud.subset(rng.permutation(len(cloud)))
            bars = sorted((bar.birth, bar.death) for bar in
                          h1_persistence(rips_two_skeleton(shuffled, 2.5)))
            assert np.allclose(bars, sorted(expected))


class TestBetti(object):
    """Test the cycle count estimate"""

    RADIUS = CYCLE_LENGTH / (2 * np.pi)

    def test_circle(self):
        """Test one loop"""
        cloud = circle(20, radius=self.RADIUS)
        assert betti1_between_scales(cloud, 0.5) == 1
        assert _brute_force_rank(cloud.points, 0.5, 1.5) == 1

    def test_figure_eight(self):
        """Test two loops"""
        cloud = figure_eight(40, radius=self.RADIUS)
        assert betti1_between_scales(cloud, 0.5) == 2
        assert _brute_force_rank(cloud.points, 0.5, 1.5) == 2

    def test_segment(self):
        """Test no loops"""
        cloud = segment(20, length=CYCLE_LENGTH)
        assert betti1_between_scales(cloud, 0.5) == 0
        assert _brute_force_rank(cloud.points, 0.5, 1.5) == 0

    def test_scale_too_large(self):
        """Test the loop is filled beyond a third of its length"""
        cloud = circle(20, radius=self.RADIUS)
        assert betti1_between_scales(cloud, 1.0) == 0

    def test_outer_scale(self):
        """Test the rank does not grow with the outer scale"""
        cloud = figure_eight(40, radius=self.RADIUS, noise=0.02, seed=1)
        ranks = [betti1_between_scales(cloud, 0.5, outer)
                 for outer in (0.5, 1.0, 1.5, 2.5, 3.5)]
        assert ranks == sorted(ranks, reverse=True)
        for outer, rank in zip((0.5, 1.5), (ranks[0], ranks[2])):
            assert rank == _brute_force_rank(cloud.points, 0.5, outer)

    def test_random_scales(self):
        """Test the rank against boundary matrices at random scales"""
        rng = np.random.default_rng(7)
        for cloud in (circle(16, radius=self.RADIUS, noise=0.05, seed=1),
                      figure_eight(24, radius=self.RADIUS, noise=0.05,
                                   seed=2),
                      segment(16, length=CYCLE_LENGTH, noise=0.05, seed=3)):
            for _round in range(10):
                inner = rng.uniform(0.3, 1.2)
                outer = inner + rng.uniform(0.0, 2.0)
                assert betti1_between_scales(cloud, inner, outer) == \
                    _brute_force_rank(cloud.points, inner, outer)

    def test_invalid(self):
        """Test invalid scales"""
        cloud = circle(10)
        with pytest.raises(ReebError):
            betti1_between_scales(cloud, 0)
        with pytest.raises(ReebError):
            betti1_between_scales(cloud, 1.0, 0.5)
