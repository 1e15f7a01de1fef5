#!/usr/bin/python
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
"""Setup script"""

import os

from setuptools import setup


SPEC_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                         'packaging', 'metric-reeb.spec')


def tag_from_spec(tag):
    """Get value of an rpm tag from the spec file"""
    with open(SPEC_FILE, 'r') as spec:
        for line in spec.readlines():
            if line.lower().startswith(tag.lower() + ':'):
                return line.split(':', 1)[1].strip()
    raise Exception("ERROR: unable to parse '%s' from spec file" % tag)

setup(name='metric_reeb',
      version=tag_from_spec('Version'),
      description=tag_from_spec('Summary'),
      license=tag_from_spec('License'),
      python_requires='>=3.8',
      packages=['reeb_utils', 'reeb_graph', 'reeb_ingest', 'reeb_alpha',
                'reeb_eval', 'reeb_betti', 'reeb_synth', 'reeb_adm'],
      install_requires=['numpy', 'scipy'],
      extras_require={'test': ['pytest', 'pytest-cov', 'mock']},
      data_files=[('/etc', ['config/metric-reeb.conf'])],
      entry_points={
          'console_scripts': ['metric-reeb = reeb_adm.adm:main']
          }
     )
