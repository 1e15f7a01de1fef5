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
"""The reconstruct subcommand"""

import logging
import time
from functools import partial

import numpy as np

from reeb_adm.common import (EXIT_ERR_DATA, EXIT_OK, SubcommandBase,
                             add_input_arguments, load_input, prepare_outdir,
                             setting)
from reeb_alpha import embed_graph, reconstruct
from reeb_eval import format_table, table_rows
from reeb_graph import MetricGraph, betti1, split_components
from reeb_utils import (ChildTracebackError, ReebError, check_overwrite,
                        fork_map, str_to_bool, write_json, write_text)


class ComponentResult(object):
    """Alpha-Reeb graph of one connected component"""

    def __init__(self, vertices, graph, assignment, embedding=None,
                 elapsed=0.0):
        self.vertices = np.asarray(vertices, dtype=np.int64)
        self.graph = graph
        self.assignment = assignment
        self.embedding = embedding
        self.elapsed = elapsed

    def to_json(self):
        """Json-serializable representation"""
        return {'vertices': self.vertices.tolist(),
                'graph': self.graph.to_json(),
                'assignment': self.assignment.to_json()}


def reconstruct_component(item, alpha, simplified):
    """Work item of the reconstruction: (vertices, subgraph, local root,
       points or None)"""
    vertices, graph, root, cloud = item
    start = time.time()
    result = reconstruct(graph, root, alpha, simplified)
    elapsed = time.time() - start
    embedding = None
    if cloud is not None:
        embedding = embed_graph(result.graph, result.nerve, cloud)
    return ComponentResult(vertices, result.graph, result.assignment,
                           embedding, elapsed)


def component_items(graph, cloud, root=None):
    """Per-component work items, the root of a component being its smallest
       vertex unless the given root lies in it"""
    if root is not None and not 0 <= root < graph.vertex_count:
        raise ReebError('Root vertex %d out of range [0, %d)' %
                        (root, graph.vertex_count))
    items = []
    for vertices, subgraph in split_components(graph):
        local_root = 0
        if root is not None and root in vertices:
            local_root = int(np.searchsorted(vertices, root))
        points = cloud.subset(vertices) if cloud is not None else None
        items.append((vertices, subgraph, local_root, points))
    return items


def reconstruct_all(graph, cloud, args, alpha):
    """Alpha-Reeb graphs of every component, possibly in child processes"""
    items = component_items(graph, cloud, args.root)
    jobs = setting(args, 'jobs', int)
    simplified = not args.no_simplify and \
        str_to_bool(args.settings['simplify'], True)
    try:
        return fork_map(partial(reconstruct_component, alpha=alpha,
                                simplified=simplified), items, jobs)
    except ChildTracebackError as err:
        logging.getLogger('reconstruct').error(
            'Unhandled exception in a worker:\n%s', err.prettyprint_tb())
        raise ReebError('Reconstruction of a component failed')

def embedding_csv(coords):
    """Embedding as 'node_id,x1,...,xd' lines"""
    return ''.join('%d,%s\n' % (node, ','.join('%.10g' % value for value in
                                               row))
                   for node, row in enumerate(coords))


class Reconstruct(SubcommandBase):
    """Subcommand for building alpha-Reeb graphs"""

    name = 'reconstruct'
    description = 'Reconstruct the metric graph underlying sampled data'
    help_msg = None

    @classmethod
    def add_arguments(cls, parser):
        """Arguments of the reconstruct subcommand"""
        add_input_arguments(parser)
        parser.add_argument('--alpha', type=float,
                            help='Length of the cover intervals')
        parser.add_argument('--root', type=int,
                            help='Root vertex, indexing the points kept '
                                 'after --net and --filter-k (default: '
                                 'smallest vertex id of every component)')
        parser.add_argument('--no-simplify', action='store_true',
                            help='Keep degree-2 nodes, overriding the '
                                 'simplify setting')
        parser.add_argument('--jobs', type=int,
                            help='Number of worker processes')
        parser.add_argument('--out', dest='out_dir',
                            help='Output directory')
        parser.add_argument('--force', action='store_true',
                            help='Overwrite existing output files')

    @classmethod
    def main(cls, args):
        """Entry point for 'reconstruct' subcommand"""
        log = logging.getLogger(cls.name)

        try:
            alpha = setting(args, 'alpha', float)
            start = time.time()
            graph, cloud = load_input(args)
            results = reconstruct_all(graph, cloud, args, alpha)
            elapsed = time.time() - start
            outdir = prepare_outdir(args)
            cls.write_outputs(outdir, args, graph, alpha, results, elapsed)
        except ReebError as err:
            log.error(err)
            return EXIT_ERR_DATA

        merged = merged_graph(results)
        print(format_table([(args.input,
                             table_rows(graph.vertex_count, graph.edge_count,
                                        merged, elapsed))]))
        print('Components: %d, beta1: %d' % (len(results), betti1(merged)))
        return EXIT_OK

    @staticmethod
    def write_outputs(outdir, args, graph, alpha, results, elapsed):
        """Write graphs, embeddings and the summary"""
        filenames = ['reeb.json', 'summary.json']
        for index, result in enumerate(results):
            filenames.append('reeb-%d.dot' % index)
            if result.embedding is not None:
                filenames.append('embedding-%d.csv' % index)
        check_overwrite(outdir, filenames, args.force)
        write_json({'vertex_count': graph.vertex_count,
                    'alpha': alpha,
                    'components': [result.to_json() for result in results]},
                   outdir, 'reeb.json', args.force)
        for index, result in enumerate(results):
            write_text(result.graph.to_dot(name='reeb%d' % index), outdir,
                       'reeb-%d.dot' % index, args.force)
            if result.embedding is not None:
                write_text(embedding_csv(result.embedding), outdir,
                           'embedding-%d.csv' % index, args.force)
        write_json({'points': graph.vertex_count,
                    'edges': graph.edge_count,
                    'components': len(results),
                    'nodes': sum(res.graph.node_count for res in results),
                    'reeb_edges': sum(res.graph.edge_count
                                      for res in results),
                    'beta1': [betti1(res.graph) for res in results],
                    'alpha': alpha,
                    'reconstruction_time': elapsed,
                    'component_times': [res.elapsed for res in results]},
                   outdir, 'summary.json', args.force)


def merged_graph(results):
    """Disjoint union of the component graphs"""
    heights = []
    tails = []
    heads = []
    lengths = []
    offset = 0
    for result in results:
        heights.append(result.graph.heights)
        tails.append(result.graph.tails + offset)
        heads.append(result.graph.heads + offset)
        lengths.append(result.graph.lengths)
        offset += result.graph.node_count
    return MetricGraph(np.concatenate(heights), np.concatenate(tails),
                       np.concatenate(heads), np.concatenate(lengths),
                       results[0].graph.root)
