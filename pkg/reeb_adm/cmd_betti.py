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
"""The betti subcommand"""

import logging

from reeb_adm.common import (EXIT_ERR_DATA, EXIT_OK, SubcommandBase,
                             prepare_outdir, setting)
from reeb_betti import h1_persistence, rank_between_scales, rips_two_skeleton
from reeb_ingest import farthest_point_net, load_points
from reeb_utils import ReebError, write_text


def barcode_csv(bars):
    """Barcode as 'birth,death' lines"""
    return ''.join('%.10g,%s\n' % (bar.birth, '%.10g' % bar.death
                                   if bar.death != float('inf') else 'inf')
                   for bar in bars)


class Betti(SubcommandBase):
    """Subcommand for estimating the first Betti number"""

    name = 'betti'
    description = 'Estimate the number of independent cycles of the graph ' \
                  'underlying a point sample as the rank of H1(Rips(alpha)) ' \
                  '-> H1(Rips(3 alpha)). The estimate is exact when the ' \
                  'sample is closer than l/16 to the graph in the ' \
                  'Gromov-Hausdorff sense and alpha lies between that ' \
                  'distance and 3l/16, l being the length of the shortest ' \
                  'cycle.'
    help_msg = None

    @classmethod
    def add_arguments(cls, parser):
        """Arguments of the betti subcommand"""
        parser.add_argument('input', help='Point file (csv)')
        parser.add_argument('--alpha', type=float,
                            help='Inner Rips scale')
        parser.add_argument('--outer-scale', type=float,
                            help='Outer Rips scale (default: 3 * alpha)')
        parser.add_argument('--net', type=float, metavar='EPSILON',
                            help='Subsample to a farthest point EPSILON-net '
                                 'first')
        parser.add_argument('--max-points', type=int,
                            dest='betti_max_points',
                            help='Refuse inputs larger than this')
        parser.add_argument('--out', dest='out_dir',
                            help='Write the barcode into barcode.csv in this '
                                 'directory')
        parser.add_argument('--force', action='store_true',
                            help='Overwrite existing output files')

    @classmethod
    def main(cls, args):
        """Entry point for 'betti' subcommand"""
        log = logging.getLogger(cls.name)

        try:
            alpha = setting(args, 'alpha', float)
            outer = args.outer_scale if args.outer_scale else 3 * alpha
            if outer < alpha:
                raise ReebError('Outer scale must not be below alpha')
            try:
                with open(args.input, 'rb') as stream:
                    cloud = load_points(stream, 'csv')
            except IOError as err:
                raise ReebError("Failed to read '%s': %s" % (args.input, err))
            if args.net:
                cloud = cloud.subset(farthest_point_net(cloud, args.net))
            log.info('Computing Rips persistence of %d points', len(cloud))
            complex_ = rips_two_skeleton(cloud, outer,
                                         setting(args, 'betti-max-points',
                                                 int))
            bars = h1_persistence(complex_)
            rank = rank_between_scales(bars, alpha, outer)
            if args.out_dir:
                write_text(barcode_csv(bars), prepare_outdir(args),
                           'barcode.csv', args.force)
        except ReebError as err:
            log.error(err)
            return EXIT_ERR_DATA

        print(rank)
        print(barcode_csv(bars), end='')
        return EXIT_OK
