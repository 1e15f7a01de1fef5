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
"""The metric-reeb tool"""

import logging
import sys

from reeb_adm.cmd_bench import Bench
from reeb_adm.cmd_betti import Betti
from reeb_adm.cmd_eval import Eval
from reeb_adm.cmd_reconstruct import Reconstruct
from reeb_adm.cmd_synth import Synth
from reeb_adm.common import UsageParser, read_config


def parse_args(argv):
    """Command line argument parser"""

    parser = UsageParser(prog='metric-reeb')
    parser.add_argument('-d', '--debug', action='store_true',
                        help='Debug output')
    parser.add_argument('--config', action='append',
                        help='Config file to use, can be given multiple times')
    subparsers = parser.add_subparsers(dest='subcommand')
    subparsers.required = True

    # Add subcommands
    for subcommand in (Reconstruct, Eval, Betti, Synth, Bench):
        subcommand.add_subparser(subparsers)

    return parser.parse_args(argv)


def main(argv=None):
    """Main entry point for the command line tool"""
    logging.basicConfig(level=logging.INFO,
                        format='%(name)s:%(levelname)s: %(message)s')
    args = parse_args(argv)
    if args.debug:
        logging.root.setLevel(logging.DEBUG)
    args.settings = read_config(args.config)

    return args.func(args)


if __name__ == '__main__':
    sys.exit(main())
