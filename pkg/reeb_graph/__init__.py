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
"""Weighted graph primitives: neighborhood graphs, metric graphs, shortest
paths, connected components and cycle counting"""

import logging

import numpy as np
from scipy.sparse import coo_matrix, csgraph

from reeb_utils import ReebError


# Setup logging
LOGGER = logging.getLogger('reeb-graph')


class GraphError(ReebError):
    """Graph invariant violations"""
    pass


def _canonical_edges(count, tails, heads, lengths):
    """Validate an edge list and orient every edge as (low id, high id)"""
    tails = np.asarray(tails, dtype=np.int64).reshape(-1)
    heads = np.asarray(heads, dtype=np.int64).reshape(-1)
    lengths = np.asarray(lengths, dtype=float).reshape(-1)
    if not len(tails) == len(heads) == len(lengths):
        raise GraphError('Edge arrays differ in size')
    if len(tails):
        if min(tails.min(), heads.min()) < 0 or \
                max(tails.max(), heads.max()) >= count:
            raise GraphError('Edge endpoint out of range [0, %d)' % count)
        if np.any(tails == heads):
            raise GraphError('Self-loop at vertex %d' %
                             tails[tails == heads][0])
        if not np.all(np.isfinite(lengths)) or np.any(lengths <= 0):
            raise GraphError('Edge lengths must be finite and positive')
    low = np.minimum(tails, heads)
    high = np.maximum(tails, heads)
    return low, high, lengths


class NeighborGraph(object):
    """Weighted undirected graph, the geodesic proxy H of the input data"""

    def __init__(self, vertex_count, tails, heads, lengths):
        if vertex_count < 0:
            raise GraphError('Negative vertex count')
        self._count = int(vertex_count)
        self._tails, self._heads, self._lengths = \
            _canonical_edges(self._count, tails, heads, lengths)
        keys = self._tails * max(self._count, 1) + self._heads
        if len(np.unique(keys)) != len(keys):
            raise GraphError('Duplicate undirected edge')
        self._csgraph = None

    @classmethod
    def from_edges(cls, vertex_count, edges):
        """Create a graph from an iterable of (u, v, length) tuples"""
        edges = list(edges)
        if not edges:
            return cls(vertex_count, [], [], [])
        tails, heads, lengths = zip(*edges)
        return cls(vertex_count, tails, heads, lengths)

    @property
    def vertex_count(self):
        """Number of vertices"""
        return self._count

    @property
    def edge_count(self):
        """Number of undirected edges"""
        return len(self._lengths)

    @property
    def tails(self):
        """Smaller endpoint of every edge"""
        return self._tails

    @property
    def heads(self):
        """Larger endpoint of every edge"""
        return self._heads

    @property
    def lengths(self):
        """Length of every edge"""
        return self._lengths

    def edges(self):
        """Iterate over (u, v, length) tuples with u < v"""
        for tail, head, length in zip(self._tails, self._heads,
                                      self._lengths):
            yield int(tail), int(head), float(length)

    @property
    def csgraph(self):
        """Symmetric sparse adjacency matrix holding the edge lengths"""
        if self._csgraph is None:
            self._csgraph = _symmetric_matrix(self._count, self._tails,
                                              self._heads, self._lengths)
        return self._csgraph

    def subgraph(self, vertices):
        """Induced subgraph on the given vertices, renumbered in the given
           order"""
        vertices = np.asarray(vertices, dtype=np.int64)
        local = np.full(self._count, -1, dtype=np.int64)
        local[vertices] = np.arange(len(vertices))
        keep = (local[self._tails] >= 0) & (local[self._heads] >= 0)
        return NeighborGraph(len(vertices), local[self._tails[keep]],
                             local[self._heads[keep]], self._lengths[keep])

    def __repr__(self):
        return '<NeighborGraph: %d vertices, %d edges>' % (self.vertex_count,
                                                          self.edge_count)


class ScalarField(object):
    """Per-vertex graph distance to a root vertex.

    Unreachable vertices are masked, they have no value at all.
    """

    def __init__(self, values, root):
        self.values = np.ma.masked_invalid(np.asarray(values, dtype=float))
        self.root = int(root)

    def __getitem__(self, vertex):
        value = self.values[vertex]
        if value is np.ma.masked:
            return None
        return float(value)

    def __len__(self):
        return len(self.values)

    @property
    def reachable(self):
        """Boolean mask of vertices with a value"""
        return ~np.ma.getmaskarray(self.values)

    @property
    def max(self):
        """Largest finite value"""
        return float(self.values.max())


class UnionFind(object):
    """Disjoint sets over the integers 0..count-1"""

    def __init__(self, count):
        self.parent = list(range(count))
        self.rank = [0] * count

    def __len__(self):
        return len(self.parent)

    def find(self, item):
        """Representative of the set containing item"""
        parent = self.parent
        while parent[item] != item:
            # Path halving
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    def union(self, item1, item2):
        """Merge the sets of two items, returns the new representative"""
        root1 = self.find(item1)
        root2 = self.find(item2)
        if root1 == root2:
            return root1
        if self.rank[root1] < self.rank[root2]:
            root1, root2 = root2, root1
        self.parent[root2] = root1
        if self.rank[root1] == self.rank[root2]:
            self.rank[root1] += 1
        return root1

    def roots(self):
        """Representative of every item"""
        return np.array([self.find(item) for item in range(len(self))],
                        dtype=np.int64)


class MetricGraph(object):
    """Metric graph: nodes with heights d*, edges with lengths.

    Parallel edges are allowed, a simplified graph may join two nodes by more
    than one chain. Distances use the shortest of the parallel edges.
    """

    def __init__(self, heights, tails, heads, lengths, root, slots=None):
        self._heights = np.asarray(heights, dtype=float).reshape(-1)
        count = len(self._heights)
        self._tails, self._heads, self._lengths = \
            _canonical_edges(count, tails, heads, lengths)
        if not 0 <= root < count:
            raise GraphError('Root node %s out of range' % root)
        self.root = int(root)
        # Node of every (cluster, lo/mid/hi) slot when built by gluing
        self.slots = slots
        self._csgraph = None

    @property
    def node_count(self):
        """Number of nodes"""
        return len(self._heights)

    @property
    def edge_count(self):
        """Number of edges, parallel edges counted separately"""
        return len(self._lengths)

    @property
    def heights(self):
        """Height d* of every node"""
        return self._heights

    @property
    def tails(self):
        """Smaller endpoint of every edge"""
        return self._tails

    @property
    def heads(self):
        """Larger endpoint of every edge"""
        return self._heads

    @property
    def lengths(self):
        """Length of every edge"""
        return self._lengths

    @property
    def total_length(self):
        """Sum of edge lengths"""
        return float(self._lengths.sum())

    def edges(self):
        """Iterate over (a, b, length) tuples with a < b"""
        for tail, head, length in zip(self._tails, self._heads,
                                      self._lengths):
            yield int(tail), int(head), float(length)

    def degrees(self):
        """Degree of every node"""
        return np.bincount(np.concatenate([self._tails, self._heads]),
                           minlength=self.node_count)

    @property
    def csgraph(self):
        """Symmetric sparse adjacency matrix, shortest parallel edge only"""
        if self._csgraph is None:
            order = np.lexsort((self._lengths, self._heads, self._tails))
            tails = self._tails[order]
            heads = self._heads[order]
            first = np.ones(len(order), dtype=bool)
            first[1:] = (tails[1:] != tails[:-1]) | (heads[1:] != heads[:-1])
            self._csgraph = _symmetric_matrix(self.node_count, tails[first],
                                              heads[first],
                                              self._lengths[order][first])
        return self._csgraph

    def to_json(self):
        """Json-serializable representation"""
        return {'nodes': [{'id': node, 'height': float(height)}
                          for node, height in enumerate(self._heights)],
                'edges': [{'a': a, 'b': b, 'length': length}
                          for a, b, length in self.edges()],
                'root': self.root,
                'beta1': betti1(self)}

    @classmethod
    def from_json(cls, data):
        """Create a metric graph from its json representation"""
        try:
            nodes = sorted(data['nodes'], key=lambda node: node['id'])
            if [node['id'] for node in nodes] != list(range(len(nodes))):
                raise GraphError('Node ids are not 0..n-1')
            edges = data['edges']
            return cls([node['height'] for node in nodes],
                       [edge['a'] for edge in edges],
                       [edge['b'] for edge in edges],
                       [edge['length'] for edge in edges], data['root'])
        except (KeyError, TypeError) as err:
            raise GraphError('Invalid metric graph json: %s' % err)

    def to_dot(self, name='reeb', prefix='n'):
        """Graphviz representation, nodes labeled with their height"""
        lines = ['graph %s {' % name]
        for node, height in enumerate(self._heights):
            lines.append('    %s%d [label="%.4f"];' % (prefix, node, height))
        for a, b, length in self.edges():
            lines.append('    %s%d -- %s%d [label="%.4f"];' %
                         (prefix, a, prefix, b, length))
        lines.append('}')
        return '\n'.join(lines) + '\n'

    def __eq__(self, other):
        if not isinstance(other, MetricGraph):
            return NotImplemented
        return (self.root == other.root and
                np.array_equal(self._heights, other.heights) and
                np.array_equal(self._tails, other.tails) and
                np.array_equal(self._heads, other.heads) and
                np.array_equal(self._lengths, other.lengths))

    def __ne__(self, other):
        equal = self.__eq__(other)
        return equal if equal is NotImplemented else not equal

    __hash__ = None

    def __repr__(self):
        return '<MetricGraph: %d nodes, %d edges, root %d>' % \
            (self.node_count, self.edge_count, self.root)


def _symmetric_matrix(count, tails, heads, lengths):
    """Sparse symmetric matrix from an edge list without duplicates"""
    rows = np.concatenate([tails, heads])
    cols = np.concatenate([heads, tails])
    data = np.concatenate([lengths, lengths])
    return coo_matrix((data, (rows, cols)), shape=(count, count)).tocsr()


def _label_components(count, tails, heads):
    """Connected component labels numbered by their smallest member"""
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    adjacency = coo_matrix((np.ones(len(tails)), (tails, heads)),
                           shape=(count, count)).tocsr()
    _num, labels = csgraph.connected_components(adjacency, directed=False)
    _uniq, first = np.unique(labels, return_index=True)
    relabel = np.empty(len(first), dtype=np.int64)
    relabel[np.argsort(first, kind='stable')] = np.arange(len(first))
    return relabel[labels]


def sssp(graph, root):
    """Single source shortest path distances from root"""
    if not 0 <= root < graph.vertex_count:
        raise GraphError('Root vertex %s out of range' % root)
    dist = csgraph.dijkstra(graph.csgraph, directed=False, indices=int(root))
    return ScalarField(dist, root)


def connected_components(graph, active=None):
    """Component label of every active vertex.

    Labels are 0..c-1 in the order of the smallest vertex of each component,
    inactive vertices are masked.
    """
    count = graph.vertex_count
    if active is None:
        labels = _label_components(count, graph.tails, graph.heads)
        return np.ma.MaskedArray(labels, mask=np.zeros(count, dtype=bool))

    active = np.unique(np.asarray(active, dtype=np.int64))
    local = np.full(count, -1, dtype=np.int64)
    local[active] = np.arange(len(active))
    keep = (local[graph.tails] >= 0) & (local[graph.heads] >= 0)
    sub_labels = _label_components(len(active), local[graph.tails[keep]],
                                   local[graph.heads[keep]])
    labels = np.ma.masked_all(count, dtype=np.int64)
    labels[active] = sub_labels
    return labels


def split_components(graph):
    """Split a graph into its connected components.

    Returns (vertex ids, subgraph) pairs, ordered by smallest vertex id.
    """
    labels = np.asarray(connected_components(graph))
    order = np.argsort(labels, kind='stable')
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    components = []
    for vertices in np.split(order, bounds):
        if len(vertices):
            components.append((vertices, graph.subgraph(vertices)))
    LOGGER.debug('Split graph into %d components', len(components))
    return components


def _graph_arrays(graph):
    """Node count and endpoint arrays of a neighbor or metric graph"""
    if isinstance(graph, MetricGraph):
        return graph.node_count, graph.tails, graph.heads
    return graph.vertex_count, graph.tails, graph.heads


def betti1(graph):
    """First Betti number |E| - |V| + #components of a graph"""
    count, tails, heads = _graph_arrays(graph)
    sets = UnionFind(count)
    components = count
    for tail, head in zip(tails.tolist(), heads.tolist()):
        if sets.find(tail) != sets.find(head):
            sets.union(tail, head)
            components -= 1
    return int(len(tails) - count + components)


def edge_length_census(graph, threshold):
    """Number of edges of length at most threshold"""
    if threshold < 0:
        raise GraphError('Negative length threshold')
    return int(np.count_nonzero(graph.lengths <= threshold))


def metric_graph_distance(graph, node1, node2):
    """Shortest path length between two nodes, None if not connected"""
    if node1 == node2:
        return 0.0
    dist = csgraph.dijkstra(graph.csgraph, directed=False, indices=int(node1))
    if not np.isfinite(dist[node2]):
        return None
    return float(dist[node2])


def merging_vertices(graph):
    """Nodes where at least two edges arrive from below"""
    heights = graph.heights
    upper = np.where(heights[graph.tails] < heights[graph.heads],
                     graph.heads, graph.tails)
    rising = heights[graph.tails] != heights[graph.heads]
    arrivals = np.bincount(upper[rising], minlength=graph.node_count)
    return np.flatnonzero(arrivals >= 2)
