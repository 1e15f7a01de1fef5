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
"""Alpha-Reeb graph construction.

The pipeline computes the distance d from a root vertex, covers the range of
d with intervals of length alpha overlapping by alpha/2, clusters every
interval preimage into connected components (Mapper), and glues one copy of
an interval per cluster along the nerve of the cover into a metric graph.
"""

import logging
from collections import namedtuple

import numpy as np
from scipy.sparse import csgraph

from reeb_graph import (GraphError, MetricGraph, NeighborGraph, UnionFind,
                        connected_components, sssp)
from reeb_utils import ReebError


# Setup logging
LOGGER = logging.getLogger('reeb-alpha')


class CoverError(ReebError):
    """Invalid interval cover or nerve"""
    pass


# Point of a metric graph: a node is GraphPoint(n, n, 0.0, -1), any other
# point lies on edge 'edge' at distance 'offset' from its tail node
GraphPoint = namedtuple('GraphPoint', ['tail', 'head', 'offset', 'edge'])

ClusterNode = namedtuple('ClusterNode', ['interval', 'label', 'members',
                                         'min_vertex', 'median_vertex',
                                         'max_vertex', 'min_value',
                                         'median_value', 'max_value'])


class IntervalCover(object):
    """Closed intervals [k * alpha/2, k * alpha/2 + alpha], k = 0..count-1"""

    def __init__(self, alpha, count):
        self.alpha = float(alpha)
        self.half = self.alpha / 2
        index = np.arange(count)
        self.lo = index * self.half
        self.hi = (index + 2) * self.half

    def __len__(self):
        return len(self.lo)

    def __getitem__(self, index):
        return float(self.lo[index]), float(self.hi[index])

    @property
    def intervals(self):
        """List of (lo, hi) tuples"""
        return [self[index] for index in range(len(self))]

    @property
    def midpoints(self):
        """Midpoint of every interval"""
        return (np.arange(len(self)) + 1) * self.half

    def slot_heights(self, intervals):
        """Heights of the lo, mid and hi points of the given intervals"""
        intervals = np.asarray(intervals, dtype=np.int64)
        return (intervals[..., np.newaxis] + np.arange(3)) * self.half

    def __repr__(self):
        return '<IntervalCover: %d intervals, alpha %g>' % (len(self),
                                                            self.alpha)


def build_cover(d_max, alpha):
    """Smallest cover of [0, d_max] by the two interleaved interval families"""
    if not alpha > 0 or not np.isfinite(alpha):
        raise CoverError('Alpha must be a positive number, got %s' % alpha)
    if not d_max >= 0 or not np.isfinite(d_max):
        raise CoverError('Range maximum must be a non-negative number, '
                         'got %s' % d_max)
    half = alpha / 2.0
    count = max(1, int(np.ceil(d_max / half)))
    # Guard against rounding in the division
    while (count + 1) * half < d_max:
        count += 1
    cover = IntervalCover(alpha, count)
    LOGGER.debug('Built %r for range [0, %g]', cover, d_max)
    return cover


class ClusterGraph(object):
    """Nerve of the clustered cover.

    Clusters are numbered by (interval, smallest member). Members of a
    cluster are kept sorted by (d, vertex id) in one flat array.
    """

    def __init__(self, intervals, pointers, members, values, edges,
                 root_cluster):
        self.intervals = np.asarray(intervals, dtype=np.int64)
        self._pointers = np.asarray(pointers, dtype=np.int64)
        self._members = np.asarray(members, dtype=np.int64)
        self._values = np.asarray(values, dtype=float)
        self.edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        self.root_cluster = int(root_cluster)
        # Label of a cluster within its interval
        self.labels = np.arange(len(self.intervals)) - \
            np.searchsorted(self.intervals, self.intervals)

    def __len__(self):
        return len(self.intervals)

    @property
    def sizes(self):
        """Number of members of every cluster"""
        return np.diff(self._pointers)

    @property
    def representatives(self):
        """(clusters, 3) array of min, median and max-d member vertices"""
        first = self._pointers[:-1]
        last = self._pointers[1:] - 1
        median = first + (self.sizes - 1) // 2
        return np.column_stack([self._members[first], self._members[median],
                                self._members[last]])

    def lowest_clusters(self, count):
        """Lowest interval cluster of every vertex, -1 if in none"""
        owners = np.repeat(np.arange(len(self)), self.sizes)
        # Clusters are ordered by interval, first occurrence is the lowest
        vertices, first = np.unique(self._members, return_index=True)
        lowest = np.full(count, -1, dtype=np.int64)
        lowest[vertices] = owners[first]
        return lowest

    def node(self, cluster):
        """ClusterNode of a cluster"""
        begin, end = self._pointers[cluster], self._pointers[cluster + 1]
        ordered = self._members[begin:end]
        values = self._values[begin:end]
        median = (len(ordered) - 1) // 2
        return ClusterNode(int(self.intervals[cluster]),
                           int(self.labels[cluster]), np.sort(ordered),
                           int(ordered[0]), int(ordered[median]),
                           int(ordered[-1]), float(values[0]),
                           float(values[median]), float(values[-1]))

    def __iter__(self):
        for cluster in range(len(self)):
            yield self.node(cluster)

    # Graph view used by betti1()
    @property
    def vertex_count(self):
        """Number of clusters"""
        return len(self)

    @property
    def tails(self):
        """Lower cluster of every nerve edge"""
        return self.edges[:, 0]

    @property
    def heads(self):
        """Upper cluster of every nerve edge"""
        return self.edges[:, 1]

    def __repr__(self):
        return '<ClusterGraph: %d clusters, %d edges>' % (len(self),
                                                         len(self.edges))


def _record_lookup(keys, query):
    """Positions of query keys in a sorted key array and a found-mask"""
    if not len(keys):
        return (np.zeros(len(query), dtype=np.int64),
                np.zeros(len(query), dtype=bool))
    pos = np.minimum(np.searchsorted(keys, query), len(keys) - 1)
    return pos, keys[pos] == query


def mapper_nerve(graph, field, cover):
    """Cluster the preimage of every cover interval into connected
       components and connect clusters of consecutive intervals sharing a
       vertex"""
    count = graph.vertex_count
    reachable = np.flatnonzero(field.reachable)
    dvals = np.asarray(field.values.filled(np.inf), dtype=float)
    half = cover.half

    # (vertex, interval) membership records
    rec_v = []
    rec_k = []
    base = np.floor(dvals[reachable] / half).astype(np.int64)
    for offset in (-2, -1, 0, 1):
        index = base + offset
        valid = (index >= 0) & (index < len(cover))
        safe = np.where(valid, index, 0)
        valid &= (cover.lo[safe] <= dvals[reachable]) & \
            (dvals[reachable] <= cover.hi[safe])
        rec_v.append(reachable[valid])
        rec_k.append(index[valid])
    rec_v = np.concatenate(rec_v)
    rec_k = np.concatenate(rec_k)
    covered = np.zeros(count, dtype=bool)
    covered[rec_v] = True
    if not np.all(covered[reachable]):
        vertex = reachable[~covered[reachable]][0]
        raise CoverError('Vertex %d with d = %g lies in no cover interval' %
                         (vertex, dvals[vertex]))

    order = np.lexsort((rec_v, rec_k))
    rec_v = rec_v[order]
    rec_k = rec_k[order]
    keys = rec_k * count + rec_v

    # Edges of H inside a common interval connect records
    both = np.isfinite(dvals[graph.tails]) & np.isfinite(dvals[graph.heads])
    tails = graph.tails[both]
    heads = graph.heads[both]
    tail_base = np.floor(dvals[tails] / half).astype(np.int64)
    rec_tails = []
    rec_heads = []
    for offset in (-2, -1, 0, 1):
        index = tail_base + offset
        pos1, found1 = _record_lookup(keys, index * count + tails)
        pos2, found2 = _record_lookup(keys, index * count + heads)
        found = found1 & found2 & (index >= 0)
        rec_tails.append(pos1[found])
        rec_heads.append(pos2[found])
    record_graph = NeighborGraph(len(keys), np.concatenate(rec_tails),
                                 np.concatenate(rec_heads),
                                 np.ones(sum(len(part) for part in rec_tails)))
    labels = np.asarray(connected_components(record_graph))
    cluster_count = int(labels.max()) + 1 if len(labels) else 0

    _uniq, first = np.unique(labels, return_index=True)
    intervals = rec_k[first]
    by_value = np.lexsort((rec_v, dvals[rec_v], labels))
    sizes = np.bincount(labels, minlength=cluster_count)
    pointers = np.concatenate([[0], np.cumsum(sizes)])

    # A vertex in two consecutive intervals joins their clusters
    by_vertex = np.lexsort((rec_k, rec_v))
    same = (rec_v[by_vertex][1:] == rec_v[by_vertex][:-1]) & \
        (rec_k[by_vertex][1:] == rec_k[by_vertex][:-1] + 1)
    pairs = np.column_stack([labels[by_vertex][:-1][same],
                             labels[by_vertex][1:][same]])
    if len(pairs):
        pairs = np.unique(pairs, axis=0)

    pos, found = _record_lookup(keys, np.array([field.root]))
    if not found[0]:
        raise CoverError('Root vertex %d is not in the first interval' %
                         field.root)
    nerve = ClusterGraph(intervals, pointers, rec_v[by_value],
                         dvals[rec_v[by_value]], pairs, labels[pos[0]])
    LOGGER.debug('Mapper nerve: %r from %d membership records', nerve,
                 len(keys))
    return nerve


def glue_intervals(nerve, cover):
    """Glue one interval copy per cluster into a metric graph.

    Every interval copy is split at its midpoint into two edges. A nerve edge
    identifies the upper half of the lower cluster with the lower half of the
    upper cluster, the identification is tracked by union-find over the lo,
    mid and hi slots of every cluster.
    """
    clusters = len(nerve)
    if not clusters:
        raise CoverError('Cannot glue an empty nerve')
    if nerve.intervals.max() >= len(cover):
        raise CoverError('Nerve does not match the interval cover')
    slots = UnionFind(3 * clusters)
    for lower, upper in nerve.edges.tolist():
        k_lower, k_upper = nerve.intervals[lower], nerve.intervals[upper]
        if k_lower == k_upper:
            raise CoverError('Clusters %d and %d of the nerve lie on '
                             'identical intervals' % (lower, upper))
        if k_upper != k_lower + 1:
            raise CoverError('Nerve edge %d-%d skips an interval' %
                             (lower, upper))
        slots.union(3 * lower + 1, 3 * upper)
        slots.union(3 * lower + 2, 3 * upper + 1)

    roots = slots.roots()
    slot_heights = cover.slot_heights(nerve.intervals).reshape(-1)
    uniq, first = np.unique(roots, return_index=True)
    # Nodes numbered by height, then by their first slot
    order = np.lexsort((first, slot_heights[first]))
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    node_of_slot = rank[np.searchsorted(uniq, roots)].reshape(clusters, 3)
    heights = slot_heights[first[order]]

    tails = np.concatenate([node_of_slot[:, 0], node_of_slot[:, 1]])
    heads = np.concatenate([node_of_slot[:, 1], node_of_slot[:, 2]])
    low = np.minimum(tails, heads)
    high = np.maximum(tails, heads)
    keep = low != high
    pairs = np.unique(np.column_stack([low[keep], high[keep]]), axis=0)
    lengths = np.abs(heights[pairs[:, 1]] - heights[pairs[:, 0]])

    graph = MetricGraph(heights, pairs[:, 0], pairs[:, 1], lengths,
                        node_of_slot[nerve.root_cluster, 0],
                        slots=node_of_slot)
    LOGGER.debug('Glued %d interval copies into %r', clusters, graph)
    return graph


class Assignment(object):
    """Image of every input vertex as a point of a metric graph"""

    def __init__(self, tails, heads, offsets, edges):
        self.tails = np.asarray(tails, dtype=np.int64)
        self.heads = np.asarray(heads, dtype=np.int64)
        self.offsets = np.asarray(offsets, dtype=float)
        self.edges = np.asarray(edges, dtype=np.int64)

    @classmethod
    def from_nodes(cls, nodes):
        """Assignment of every vertex to a node"""
        nodes = np.asarray(nodes, dtype=np.int64)
        return cls(nodes, nodes, np.zeros(len(nodes)),
                   np.full(len(nodes), -1, dtype=np.int64))

    def __len__(self):
        return len(self.tails)

    def __getitem__(self, index):
        return GraphPoint(int(self.tails[index]), int(self.heads[index]),
                          float(self.offsets[index]), int(self.edges[index]))

    def take(self, indices):
        """Assignment restricted to (or composed with) the given indices"""
        indices = np.asarray(indices, dtype=np.int64)
        return Assignment(self.tails[indices], self.heads[indices],
                          self.offsets[indices], self.edges[indices])

    def heights(self, graph):
        """Height of every assigned point"""
        heights = graph.heights
        on_node = self.edges < 0
        base = heights[self.tails]
        slope = np.sign(heights[self.heads] - heights[self.tails])
        return np.where(on_node, base, base + slope * self.offsets)

    def to_json(self):
        """Json-serializable representation: [tail, head, offset, edge]"""
        return [[int(tail), int(head), float(offset), int(edge)]
                for tail, head, offset, edge in zip(self.tails, self.heads,
                                                    self.offsets,
                                                    self.edges)]

    @classmethod
    def from_json(cls, data):
        """Create an assignment from its json representation"""
        try:
            if not data:
                return cls([], [], [], [])
            tails, heads, offsets, edges = zip(*data)
        except (TypeError, ValueError) as err:
            raise ReebError('Invalid assignment json: %s' % err)
        return cls(tails, heads, offsets, edges)

    def __repr__(self):
        return '<Assignment: %d points>' % len(self)


def _nearest_slot_nodes(cluster_of, nerve, field, cover, graph):
    """Node of the slot of each vertex's cluster nearest to its d value"""
    dvals = np.asarray(field.values.filled(np.nan), dtype=float)
    assigned = cluster_of >= 0
    nodes = np.full(len(cluster_of), -1, dtype=np.int64)
    heights = cover.slot_heights(nerve.intervals[cluster_of[assigned]])
    # argmin picks the lower slot on ties
    nearest = np.argmin(np.abs(heights - dvals[assigned, np.newaxis]), axis=1)
    nodes[assigned] = graph.slots[cluster_of[assigned], nearest]
    return nodes

def assign_vertices(nerve, field, cover, graph):
    """Quotient map of the vertices into a freshly glued metric graph.

    A vertex in two clusters (overlap of consecutive intervals) goes to the
    cluster of the lower interval.
    """
    if graph.slots is None:
        raise GraphError('Metric graph carries no slot table')
    cluster_of = nerve.lowest_clusters(len(field))
    return Assignment.from_nodes(_nearest_slot_nodes(cluster_of, nerve, field,
                                                     cover, graph))


def _adjacency(graph):
    """Incident edge indices of every node"""
    adjacency = [[] for _ in range(graph.node_count)]
    for index, (tail, head) in enumerate(zip(graph.tails.tolist(),
                                             graph.heads.tolist())):
        adjacency[tail].append(index)
        adjacency[head].append(index)
    return adjacency

def _kept_nodes(graph, adjacency, preserve_root):
    """Nodes surviving simplification: degree other than 2, local height
       extrema and optionally the root"""
    heights = graph.heights
    tails = graph.tails
    heads = graph.heads
    kept = np.ones(graph.node_count, dtype=bool)
    for node, incident in enumerate(adjacency):
        if len(incident) != 2:
            continue
        neighbor1 = tails[incident[0]] + heads[incident[0]] - node
        neighbor2 = tails[incident[1]] + heads[incident[1]] - node
        if (heights[node] - heights[neighbor1]) * \
                (heights[node] - heights[neighbor2]) < 0:
            kept[node] = False
    if preserve_root:
        kept[graph.root] = True
    return kept

def simplify_with_map(graph, preserve_root=True):
    """Merge every chain of degree-2 nodes into one edge.

    Returns the simplified graph and an Assignment mapping every node of the
    input graph to its position in the simplified one.
    """
    adjacency = _adjacency(graph)
    kept = _kept_nodes(graph, adjacency, preserve_root)
    tails = graph.tails.tolist()
    heads = graph.heads.tolist()
    lengths = graph.lengths.tolist()
    newid = np.cumsum(kept) - 1

    point_tails = newid.copy()
    point_heads = newid.copy()
    point_offsets = np.zeros(graph.node_count)
    point_edges = np.full(graph.node_count, -1, dtype=np.int64)
    new_tails = []
    new_heads = []
    new_lengths = []
    visited = np.zeros(graph.edge_count, dtype=bool)
    for start in np.flatnonzero(kept).tolist():
        for edge in adjacency[start]:
            if visited[edge]:
                continue
            visited[edge] = True
            node = tails[edge] + heads[edge] - start
            total = lengths[edge]
            interior = []
            while not kept[node]:
                interior.append((node, total))
                first, second = adjacency[node]
                edge = second if first == edge else first
                visited[edge] = True
                node = tails[edge] + heads[edge] - node
                total += lengths[edge]
            end1, end2 = int(newid[start]), int(newid[node])
            if end1 == end2:
                raise GraphError('Chain from node %d closes on itself' %
                                 start)
            index = len(new_lengths)
            new_tails.append(min(end1, end2))
            new_heads.append(max(end1, end2))
            new_lengths.append(total)
            for inner, dist in interior:
                point_tails[inner] = min(end1, end2)
                point_heads[inner] = max(end1, end2)
                point_offsets[inner] = dist if end1 < end2 else total - dist
                point_edges[inner] = index

    slots = None
    if graph.slots is not None:
        mask = np.ma.getmaskarray(graph.slots)
        old = np.where(mask, 0, np.ma.getdata(graph.slots))
        slots = np.ma.masked_array(newid[old], mask=mask | ~kept[old])
    # A dropped root moves to the tail of its chain
    root = point_tails[graph.root]
    simple = MetricGraph(graph.heights[kept], new_tails, new_heads,
                         new_lengths, root, slots=slots)
    LOGGER.debug('Simplified %r into %r', graph, simple)
    return simple, Assignment(point_tails, point_heads, point_offsets,
                              point_edges)

def simplify(graph, preserve_root=True):
    """Merge every chain of degree-2 nodes into one edge"""
    return simplify_with_map(graph, preserve_root)[0]


class Reconstruction(object):
    """Intermediate and final results of one alpha-Reeb run"""

    def __init__(self, field, cover, nerve, raw, raw_assignment, graph,
                 assignment):
        self.field = field
        self.cover = cover
        self.nerve = nerve
        self.raw = raw
        self.raw_assignment = raw_assignment
        self.graph = graph
        self.assignment = assignment

    def __repr__(self):
        return '<Reconstruction: %r>' % self.graph


def reconstruct(graph, root, alpha, simplified=True):
    """Alpha-Reeb graph of a connected neighborhood graph"""
    if not graph.vertex_count:
        raise GraphError('Cannot reconstruct an empty graph')
    field = sssp(graph, root)
    if not np.all(field.reachable):
        raise GraphError('Input graph is not connected, reconstruct its '
                         'components separately')
    cover = build_cover(field.max, alpha)
    nerve = mapper_nerve(graph, field, cover)
    raw = glue_intervals(nerve, cover)
    raw_assignment = assign_vertices(nerve, field, cover, raw)
    if simplified:
        final, node_map = simplify_with_map(raw, preserve_root=True)
        assignment = node_map.take(raw_assignment.tails)
    else:
        final, assignment = raw, raw_assignment
    LOGGER.debug('Reconstructed %r from %r at alpha %g', final, graph, alpha)
    return Reconstruction(field, cover, nerve, raw, raw_assignment, final,
                          assignment)

def alpha_reeb(graph, root, alpha, simplified=True):
    """Alpha-Reeb graph and the vertex assignment of a connected graph"""
    result = reconstruct(graph, root, alpha, simplified)
    return result.graph, result.assignment


def embed_graph(graph, nerve, cloud):
    """Coordinates of every node of a glued (optionally simplified) graph.

    The lo, mid and hi slots of a cluster go to its min, median and max-d
    member. A node made of several slots takes the representative of the
    lowest cluster.
    """
    if graph.slots is None:
        raise GraphError('Metric graph carries no slot table')
    nodes = np.ma.getdata(graph.slots).reshape(-1)
    valid = np.flatnonzero(~np.ma.getmaskarray(graph.slots).reshape(-1))
    representatives = nerve.representatives.reshape(-1)
    # Slot index grows with the cluster, the first one is the lowest
    uniq, first = np.unique(nodes[valid], return_index=True)
    coords = np.full((graph.node_count, cloud.dim), np.nan)
    coords[uniq] = cloud.points[representatives[valid[first]]]
    return coords


def point_distances(graph, sources, targets, batch=256):
    """Graph distances between corresponding points of two Assignments"""
    if len(sources) != len(targets):
        raise ReebError('Source and target counts differ')
    lengths = np.append(graph.lengths, 0.0)
    result = np.empty(len(sources))
    for begin in range(0, len(sources), batch):
        src = sources.take(np.arange(begin, min(begin + batch,
                                                len(sources))))
        tgt = targets.take(np.arange(begin, min(begin + batch,
                                                len(targets))))
        nodes = np.unique(np.concatenate([src.tails, src.heads]))
        dist = csgraph.dijkstra(graph.csgraph, directed=False, indices=nodes)
        row_tail = np.searchsorted(nodes, src.tails)
        row_head = np.searchsorted(nodes, src.heads)
        src_len = lengths[src.edges]
        tgt_len = lengths[tgt.edges]

        def to_nodes(targets_nodes):
            """Distance from every source point to the given nodes"""
            return np.minimum(
                src.offsets + dist[row_tail, targets_nodes],
                src_len - src.offsets + dist[row_head, targets_nodes])

        found = np.minimum(to_nodes(tgt.tails) + tgt.offsets,
                           to_nodes(tgt.heads) + tgt_len - tgt.offsets)
        same = (src.edges >= 0) & (src.edges == tgt.edges)
        found[same] = np.minimum(found[same],
                                 np.abs(src.offsets - tgt.offsets)[same])
        result[begin:begin + len(src)] = found
    return result
