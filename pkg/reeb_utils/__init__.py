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
"""Helper functionality shared by the metric-reeb packages"""

import json
import logging
import os
import sys
from functools import partial
from multiprocessing import Process, Queue
from traceback import format_exception_only, extract_tb, format_list

_RET_FORK_OK = 0
_RET_FORK_ERR = 1

LOGGER = logging.getLogger('reeb-utils')


class ReebError(Exception):
    """General error class for metric graph reconstruction"""
    pass

class ChildTracebackError(ReebError):
    """Exception for handling unhandled child exceptions in fork_map()"""
    def __init__(self, *args):
        self.typ, self.val, traceback = sys.exc_info()
        # Formatted frames, raw tracebacks cannot cross process boundaries
        self.tb_list = format_list(extract_tb(traceback))
        super(ChildTracebackError, self).__init__(*args)

    def __reduce__(self):
        return (_rebuild_child_error, (self.typ, self.val, self.tb_list,
                                       self.args))

    def prettyprint_tb(self):
        """Get traceback in a format easier to comprehend"""
        child_tb = list(self.tb_list)
        child_tb += format_exception_only(self.typ, self.val)
        sep = '-' * 4 + ' CHILD TRACEBACK ' + '-' * 50 + '\n'
        pp_tb = sep + ''.join(child_tb) + sep
        return pp_tb


def _rebuild_child_error(typ, val, tb_list, args):
    """Unpickle a ChildTracebackError"""
    err = ChildTracebackError.__new__(ChildTracebackError)
    Exception.__init__(err, *args)
    err.typ, err.val, err.tb_list = typ, val, tb_list
    return err


def _child_call(index, ret_data_q, func):
    """Call a function in a child process and report back through a queue"""
    try:
        # Func must be a callable without arguments
        ret = func()
    # pylint: disable=broad-except
    except Exception:
        ret_data_q.put((index, _RET_FORK_ERR, ChildTracebackError()))
        sys.exit(_RET_FORK_ERR)
    # pylint: enable=broad-except
    ret_data_q.put((index, _RET_FORK_OK, ret))
    sys.exit(_RET_FORK_OK)

def fork_map(func, items, jobs=1):
    """Call func on every item, using up to 'jobs' child processes.
       Returns the results in item order. An exception raised in a child is
       re-raised as ChildTracebackError."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    LOGGER.debug('Running %d work items in %d processes', len(items), jobs)
    data_q = Queue()
    results = [None] * len(items)
    pending = list(enumerate(items))
    running = {}
    failure = None
    while pending or running:
        while pending and len(running) < jobs and failure is None:
            index, item = pending.pop(0)
            child = Process(target=_child_call,
                            args=(index, data_q, partial(func, item)))
            child.start()
            running[index] = child
        if not running:
            break
        # Drain the queue before joining, big results would block the child
        index, ret_code, ret_data = data_q.get()
        running.pop(index).join()
        if ret_code == _RET_FORK_OK:
            results[index] = ret_data
        elif failure is None:
            failure = ret_data
    if failure is not None:
        raise failure
    return results


def check_overwrite(outdir, filenames, force=False):
    """Refuse to go on if any of the files already exists in outdir"""
    if force:
        return
    for filename in filenames:
        # No dir components allowed in filename
        if os.path.exists(os.path.join(outdir, os.path.basename(filename))):
            raise ReebError("File '%s' already exists, refusing to "
                            "overwrite" % filename)

def write_json(data, outdir, filename, force=False):
    """Write json-serializable data into a file in outdir"""
    check_overwrite(outdir, [filename], force)
    filepath = os.path.join(outdir, os.path.basename(filename))
    try:
        with open(filepath, 'w') as json_fp:
            json.dump(data, json_fp, indent=4, sort_keys=True)
    except IOError as err:
        raise ReebError("Failed to write '%s': %s" % (filename, err))
    return filepath

def write_text(text, outdir, filename, force=False):
    """Write a text file into outdir"""
    check_overwrite(outdir, [filename], force)
    filepath = os.path.join(outdir, os.path.basename(filename))
    try:
        with open(filepath, 'w') as text_fp:
            text_fp.write(text)
    except IOError as err:
        raise ReebError("Failed to write '%s': %s" % (filename, err))
    return filepath


def str_to_bool(string, default=False):
    """Convert (config value) string to boolean. Returns default if unable to
       determine.

    >>> str_to_bool('true')
    True
    >>> str_to_bool('0')
    False
    >>> str_to_bool('foo', True)
    True
    """
    value = string.strip().lower()
    if value in ['1', 'yes', 'on', 'true', 'enabled']:
        return True
    elif value in ['0', 'no', 'off', 'false', 'disabled']:
        return False
    else:
        return default
