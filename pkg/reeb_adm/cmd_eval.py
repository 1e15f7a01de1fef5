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
"""The eval subcommand"""

import json
import logging
import time

import numpy as np

from reeb_adm.cmd_reconstruct import (ComponentResult, merged_graph,
                                      reconstruct_all)
from reeb_adm.common import (EXIT_ERR_DATA, EXIT_OK, SubcommandBase,
                             add_input_arguments, load_input, prepare_outdir,
                             setting)
from reeb_alpha import Assignment
from reeb_eval import (BOUND_VARIANTS, DistortionReport, distortion_report,
                       format_table, graph_bounds, sample_pairs, table_rows)
from reeb_graph import GraphError, MetricGraph, connected_components
from reeb_utils import ReebError, check_overwrite, write_json, write_text


def load_reconstruction(path, graph):
    """Read stored component graphs, checking them against the input"""
    try:
        with open(path) as json_fp:
            data = json.load(json_fp)
    except (IOError, ValueError) as err:
        raise ReebError("Failed to read '%s': %s" % (path, err))
    try:
        if data['vertex_count'] != graph.vertex_count:
            raise ReebError('Stored reconstruction covers %d vertices, the '
                            'input has %d' % (data['vertex_count'],
                                              graph.vertex_count))
        results = []
        for component in data['components']:
            result = ComponentResult(component['vertices'],
                                     MetricGraph.from_json(
                                         component['graph']),
                                     Assignment.from_json(
                                         component['assignment']))
            if len(result.assignment) != len(result.vertices):
                raise ReebError('Assignment table does not match the '
                                'component size')
            results.append(result)
    except (KeyError, TypeError, GraphError) as err:
        raise ReebError("Invalid reconstruction file '%s': %s" % (path, err))
    return results


def evaluate(graph, results, pair_count, seed):
    """Distortion report over pairs sampled within components"""
    labels = np.asarray(connected_components(graph))
    if len(results) != labels.max() + 1:
        raise ReebError('Stored components do not match the input graph')
    pairs = np.asarray(sample_pairs(graph.vertex_count, pair_count, seed,
                                    labels), dtype=np.int64).reshape(-1, 2)
    original = []
    approximate = []
    original_time = approximate_time = 0.0
    excluded = 0
    for label, result in enumerate(results):
        vertices = result.vertices
        if not np.array_equal(np.flatnonzero(labels == label), vertices):
            raise ReebError('Stored component %d does not match the input '
                            'graph' % label)
        selected = pairs[labels[pairs[:, 0]] == label]
        if not len(selected):
            continue
        local = np.searchsorted(vertices, selected)
        report = distortion_report(graph.subgraph(vertices), result.graph,
                                   result.assignment, local)
        original.append(report.original)
        approximate.append(report.approximate)
        original_time += report.original_time
        approximate_time += report.approximate_time
        excluded += report.excluded
    if not original:
        raise ReebError('No vertex pairs to evaluate')
    return DistortionReport(np.concatenate(original),
                            np.concatenate(approximate), original_time,
                            approximate_time, excluded)


class Eval(SubcommandBase):
    """Subcommand for measuring the reconstruction quality"""

    name = 'eval'
    description = 'Measure the distortion of alpha-Reeb graph distances ' \
                  'and evaluate the Gromov-Hausdorff bounds'
    help_msg = None

    @classmethod
    def add_arguments(cls, parser):
        """Arguments of the eval subcommand"""
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
        parser.add_argument('--reeb', metavar='FILE',
                            help='Use a stored reconstruction (reeb.json) '
                                 'instead of reconstructing')
        parser.add_argument('--pairs', type=int,
                            help='Number of sampled vertex pairs')
        parser.add_argument('--seed', type=int,
                            help='Seed of the pair sampling')
        parser.add_argument('--eps', type=float, default=0.0,
                            help='Sampling error epsilon used in the bounds '
                                 '(default: %(default)s)')
        parser.add_argument('--bound-variant', choices=BOUND_VARIANTS,
                            default='theorem',
                            help="Reeb graph bound: 'theorem' is (beta1 + "
                                 "1)(17 + 8 N_E) eps, 'intro' doubles it "
                                 "(default: %(default)s)")
        parser.add_argument('--jobs', type=int,
                            help='Number of worker processes')
        parser.add_argument('--out', dest='out_dir',
                            help='Output directory')
        parser.add_argument('--force', action='store_true',
                            help='Overwrite existing output files')

    @classmethod
    def main(cls, args):
        """Entry point for 'eval' subcommand"""
        log = logging.getLogger(cls.name)

        try:
            alpha = setting(args, 'alpha', float)
            graph, cloud = load_input(args)
            start = time.time()
            if args.reeb:
                results = load_reconstruction(args.reeb, graph)
            else:
                results = reconstruct_all(graph, cloud, args, alpha)
            elapsed = time.time() - start
            report = evaluate(graph, results, setting(args, 'pairs', int),
                              setting(args, 'seed', int))
            merged = merged_graph(results)
            bounds = graph_bounds(merged, alpha, args.eps,
                                  args.bound_variant)
            table = format_table([(args.input,
                                   table_rows(graph.vertex_count,
                                              graph.edge_count, merged,
                                              elapsed, report))])
            outdir = prepare_outdir(args)
            check_overwrite(outdir, ['eval.json', 'eval.txt'], args.force)
            write_json({'distortion': report.to_json(), 'bounds': bounds},
                       outdir, 'eval.json', args.force)
            write_text(table, outdir, 'eval.txt', args.force)
        except ReebError as err:
            log.error(err)
            return EXIT_ERR_DATA

        print(table)
        print('Bounds: Reeb %.6g, alpha-Reeb %.6g' % (bounds['reeb'],
                                                      bounds['alpha_reeb']))
        return EXIT_OK
