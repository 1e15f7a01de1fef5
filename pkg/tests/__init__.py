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
"""Unit tests, helper functionality"""

import os
import shutil
import tempfile

import numpy as np


class UnitTestsBase(object):
    """Base class for unit tests needing a scratch directory"""

    @classmethod
    def setup_class(cls):
        """Test class setup"""
        # Create temporary workdir
        cls.workdir = os.path.abspath(tempfile.mkdtemp(prefix='%s_' %
                                                       cls.__name__))
        cls.orig_dir = os.getcwd()
        os.chdir(cls.workdir)

    @classmethod
    def teardown_class(cls):
        """Test class teardown"""
        os.chdir(cls.orig_dir)
        if not 'DEBUG_TESTS' in os.environ:
            shutil.rmtree(cls.workdir)

    tmpdir = None

    def setup_method(self, _method):
        """Test case setup"""
        # Change to a temporary directory
        self.tmpdir = os.path.abspath(tempfile.mkdtemp(prefix='test_',
                                                       dir=self.workdir))
        os.chdir(self.tmpdir)

    def teardown_method(self, _method):
        """Test case teardown"""
        # Restore original working dir
        os.chdir(self.workdir)
        if not 'DEBUG_TESTS' in os.environ:
            shutil.rmtree(self.tmpdir)

    @staticmethod
    def write_file(filename, text):
        """Write a data file into the current directory"""
        with open(filename, 'w') as filep:
            filep.write(text)
        return os.path.abspath(filename)


def bellman_ford(vertex_count, edges, root):
    """Reference single source shortest paths by edge relaxation"""
    dist = np.full(vertex_count, np.inf)
    dist[root] = 0.0
    for _round in range(vertex_count):
        changed = False
        for tail, head, length in edges:
            for src, dst in ((tail, head), (head, tail)):
                if dist[src] + length < dist[dst]:
                    dist[dst] = dist[src] + length
                    changed = True
        if not changed:
            break
    return dist


def dfs_components(vertex_count, edges):
    """Reference component count by depth first search"""
    neighbors = [[] for _ in range(vertex_count)]
    for tail, head in edges:
        neighbors[tail].append(head)
        neighbors[head].append(tail)
    seen = [False] * vertex_count
    components = 0
    for start in range(vertex_count):
        if seen[start]:
            continue
        components += 1
        stack = [start]
        seen[start] = True
        while stack:
            for neighbor in neighbors[stack.pop()]:
                if not seen[neighbor]:
                    seen[neighbor] = True
                    stack.append(neighbor)
    return components
