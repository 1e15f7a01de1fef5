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
"""The synth subcommand"""

import logging

from reeb_adm.common import (EXIT_ERR_DATA, EXIT_OK, SubcommandBase,
                             prepare_outdir, setting)
from reeb_synth import KINDS, generate
from reeb_utils import ReebError, write_text


def points_csv(points):
    """Points as comma separated lines"""
    return ''.join(','.join('%.12g' % value for value in row) + '\n'
                   for row in points)


class Synth(SubcommandBase):
    """Subcommand for generating synthetic datasets"""

    name = 'synth'
    description = 'Generate synthetic datasets. Geometric kinds sample a ' \
                  'small metric graph (circle, theta, lollipop, y_graph, ' \
                  'figure_eight, segment) into <kind>.csv. highway_crossing ' \
                  'writes vehicle traces into highway_crossing.traces: two ' \
                  'perpendicular roads of half length ROAD crossing at the ' \
                  'origin, right-hand traffic with lanes LANE off the road ' \
                  'axis, and right turns on quarter circle ramps of radius ' \
                  'RAMP. Trace i follows route i mod 8, every entry ' \
                  'direction going straight or turning right.'
    help_msg = None

    @classmethod
    def add_arguments(cls, parser):
        """Arguments of the synth subcommand"""
        parser.add_argument('kind', choices=KINDS, help='Dataset kind')
        parser.add_argument('--count', type=int, default=500,
                            help='Number of points (default: %(default)s)')
        parser.add_argument('--noise', type=float, default=0.0,
                            help='Standard deviation of the gaussian noise '
                                 '(default: %(default)s)')
        parser.add_argument('--seed', type=int, help='Random seed')
        parser.add_argument('--traces', type=int, default=300,
                            help='Number of highway traces (default: '
                                 '%(default)s)')
        parser.add_argument('--length', type=int, default=500,
                            help='Samples per highway trace (default: '
                                 '%(default)s)')
        parser.add_argument('--road', type=float, default=10.0,
                            help='Half length of the roads (default: '
                                 '%(default)s)')
        parser.add_argument('--lane', type=float, default=1.0,
                            help='Lane offset from the road axis (default: '
                                 '%(default)s)')
        parser.add_argument('--ramp', type=float, default=2.0,
                            help='Ramp radius (default: %(default)s)')
        parser.add_argument('--out', dest='out_dir',
                            help='Output directory')
        parser.add_argument('--force', action='store_true',
                            help='Overwrite existing output files')

    @classmethod
    def main(cls, args):
        """Entry point for 'synth' subcommand"""
        log = logging.getLogger(cls.name)

        try:
            seed = setting(args, 'seed', int)
            if args.kind == 'highway_crossing':
                traces = generate(args.kind, noise=args.noise, seed=seed,
                                  traces=args.traces, length=args.length,
                                  road=args.road, lane=args.lane,
                                  ramp=args.ramp)
                text = '\n'.join(points_csv(trace.samples)
                                 for trace in traces)
                filename = 'highway_crossing.traces'
            else:
                cloud = generate(args.kind, args.count, noise=args.noise,
                                 seed=seed)
                text = points_csv(cloud.points)
                filename = '%s.csv' % args.kind
            path = write_text(text, prepare_outdir(args), filename,
                              args.force)
        except ReebError as err:
            log.error(err)
            return EXIT_ERR_DATA

        log.info("Wrote '%s'", path)
        print(path)
        return EXIT_OK
