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
"""Common functionality of the adm module"""

import logging
import os
import sys
from argparse import ArgumentParser
from configparser import ConfigParser

import numpy as np

from reeb_graph import NeighborGraph
from reeb_ingest import (FORMATS, PointCloud, build_rips_graph,
                         delay_embed, density_filter, farthest_point_net,
                         load_points, resample_trace)
from reeb_utils import ReebError


LOGGER = logging.getLogger('metric-reeb')

# Exit codes
EXIT_OK = 0
EXIT_ERR_USAGE = 1
EXIT_ERR_DATA = 2


class UsageParser(ArgumentParser):
    """Argument parser exiting with the usage error code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERR_USAGE, '%s: error: %s\n' % (self.prog, message))


def read_config(filenames=None):
    '''Read configuration file(s)'''
    default_configs = ['/etc/metric-reeb.conf',
                       '~/.metric-reeb']

    defaults = {'alpha': '1.0',
                'radius': '1.0',
                'seed': '0',
                'pairs': '100',
                'betti-max-points': '400',
                'jobs': '1',
                'simplify': 'yes',
                'out-dir': '.'}

    configs = default_configs if filenames is None else filenames
    configs = [os.path.expanduser(fname) for fname in configs]
    LOGGER.debug('Trying %s config files: %s', len(configs), configs)
    parser = ConfigParser(defaults=defaults)
    read = parser.read(configs)
    LOGGER.debug('Read %s config files: %s', len(read), read)

    # Add our one-and-only section, if it does not exist
    if not parser.has_section('general'):
        parser.add_section('general')

    # Read overrides from environment
    for key in defaults.keys():
        envvar = 'METRIC_REEB_%s' % key.replace('-', '_').upper()
        if envvar in os.environ:
            parser.set('general', key, os.environ[envvar])

    # We only use keys from one section, for now
    return dict(parser.items('general'))


def setting(args, name, convert=str):
    """Command line value of a setting, falling back to the configuration"""
    value = getattr(args, name.replace('-', '_'), None)
    if value is not None:
        return value
    try:
        return convert(args.settings[name])
    except (KeyError, ValueError) as err:
        raise ReebError("Invalid configuration value for '%s': %s" %
                        (name, err))


def add_input_arguments(parser):
    """Arguments describing the input data and its preprocessing"""
    parser.add_argument('input', help='Input data file')
    parser.add_argument('--format', choices=FORMATS, default='csv',
                        help='Input format: points (csv), weighted edges '
                             '(edge_list) or blank-line separated traces '
                             '(traces)')
    parser.add_argument('--radius', type=float,
                        help='Rips graph radius')
    parser.add_argument('--spacing', type=float,
                        help='Resample traces to this arc length spacing')
    parser.add_argument('--stack', type=int,
                        help='Stack this many consecutive trace samples into '
                             'one point')
    parser.add_argument('--net', type=float, metavar='EPSILON',
                        help='Keep only a farthest point EPSILON-net of the '
                             'points')
    parser.add_argument('--filter-k', type=int,
                        help='Drop outliers by their FILTER_K-th nearest '
                             'neighbor distance')
    parser.add_argument('--filter-quantile', type=float, default=0.95,
                        help='Quantile of the outlier filter (default: '
                             '%(default)s)')

def _traces_to_cloud(traces, args):
    """Resample and stack traces into one point cloud"""
    blocks = []
    for trace in traces:
        if args.spacing:
            trace = resample_trace(trace, args.spacing)
        if args.stack:
            if len(trace) < args.stack:
                LOGGER.warning('Skipping a trace of %d samples, shorter than '
                               'the stack size', len(trace))
                continue
            blocks.append(delay_embed(trace, args.stack).points)
        else:
            blocks.append(trace.samples)
    if not blocks:
        raise ReebError('No usable traces in input')
    return PointCloud(np.concatenate(blocks))

def load_input(args):
    """Load the input and build the neighborhood graph.

    Returns the graph and the point cloud of its vertices (None for edge list
    input).
    """
    try:
        with open(args.input, 'rb') as stream:
            data = load_points(stream, args.format)
    except IOError as err:
        raise ReebError("Failed to read '%s': %s" % (args.input, err))
    if isinstance(data, NeighborGraph):
        return data, None

    cloud = data if isinstance(data, PointCloud) else \
        _traces_to_cloud(data, args)
    if args.net:
        cloud = cloud.subset(farthest_point_net(cloud, args.net))
    if args.filter_k:
        cloud = density_filter(cloud, args.filter_k, args.filter_quantile)
    graph = build_rips_graph(cloud, setting(args, 'radius', float))
    LOGGER.info('Neighborhood graph of %d points: %d edges', len(cloud),
                graph.edge_count)
    return graph, cloud


def prepare_outdir(args):
    """Create the output directory"""
    outdir = os.path.abspath(setting(args, 'out-dir'))
    try:
        if not os.path.exists(outdir):
            os.makedirs(outdir)
    except OSError as err:
        raise ReebError('Failed to create output directory: %s' % err)
    return outdir


class SubcommandBase(object):
    """Base class / API for subcommand implementations"""

    name = None
    description = None
    help_msg = None

    @classmethod
    def add_subparser(cls, subparsers):
        """Add and initialize argparse subparser for the subcommand"""
        parser = subparsers.add_parser(cls.name,
                                       description=cls.description,
                                       help=cls.help_msg)
        cls.add_arguments(parser)
        parser.set_defaults(func=cls.main)

    @classmethod
    def add_arguments(cls, parser):
        """Prototype method for adding subcommand specific arguments"""
        pass

    @classmethod
    def main(cls, args):
        """Prototype entry point for subcommands"""
        raise NotImplementedError("Command %s not implemented" % cls.__name__)
