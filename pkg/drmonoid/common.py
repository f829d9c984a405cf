#
# Copyright (c) 2020,2021 Jim Ramsay <i.am@jimramsay.com>
# Copyright (c) 2020,2021 Hans Ulrich Niedermann <hun@n-dimensional.de>
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.


"""\
Common utility functions
"""

import json
import sys

import drmonoid.constants as const

VERBOSE = False


def debug(*args, **kwargs):
    if VERBOSE:
        kwargs.setdefault("file", sys.stderr)
        print(*args, **kwargs)


def dump_json(doc):
    """Canonical JSON text: sorted keys, four space indent, final newline"""
    return json.dumps(doc, sort_keys=True, indent=4) + "\n"


def parser_args(parser):
    # Caution: If you change the command line parser in any way,
    #          update the README and the cli tests accordingly.

    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s ({const.PACKAGE}) {const.VERSION}",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        help="Enable more verbose output, largely for debugging",
        action="store_true",
    )


class DRMonoidError(RuntimeError):
    pass  # class DRMonoidError


class PreconditionError(DRMonoidError):
    pass  # class PreconditionError


class CapExceededError(DRMonoidError):
    def __init__(self, what, value, cap):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} cap exceeded: {value} > {cap}")


class NormTooLargeError(CapExceededError):
    def __init__(self, value, cap):
        super().__init__("norm too large: factorisation", value, cap)
