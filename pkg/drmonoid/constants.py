#
# Copyright (c) 2020 Jim Ramsay <i.am@jimramsay.com>
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
#
########################################################################
#
# This file is intended to work without importing any non-standard
# Python libraries; ideally without any imports at all.
#
# This allows us to import this both from the setuptools `setup.py`
# and from any code inside `drmonoid/` as well.
#
########################################################################

# Package name
PACKAGE = "drmonoid"
VERSION = "0.2.0"

# Executable names
BASE_EXE_CLI = "drmonoid-ctl"


# Version of the JSON documents written by `drmonoid-ctl`. Bump this
# whenever a key is renamed or its meaning changes, as dump files are
# used as test fixtures.
SCHEMA_VERSION = 1


# Field descriptor for the rational numbers, and the discriminant
# sentinel used for it internally.
RATIONAL_FIELD = "Q"
RATIONAL_DISCRIMINANT = 1


# Default resource caps (see drmonoid.limits)
DEFAULT_ORBIT_CAP = 10**5
DEFAULT_CONDUCTOR_NORM_CAP = 10**4
DEFAULT_FACTOR_NORM_CAP = 10**12
DEFAULT_PRINCIPAL_NORM_CAP = 10**8
DEFAULT_APPROXIMATION_TRIES = 64
DEFAULT_SEARCH_BOX = 10
DEFAULT_NORM_BOUND = 100
DEFAULT_SEED = 0


# Verification suites run by `drmonoid-ctl verify`
SUITES = [
    "idempotents",
    "omega",
    "local",
    "sigma",
    "reciprocity",
    "u1",
    "transitions",
]
SUITE_ALL = "all"


# Exit codes of `drmonoid-ctl`
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


# Sizes of the verification suites. Levels up to the exhaustive limits
# are checked on every pair or triple of elements; larger ones are
# sampled with the run seed.
EXHAUSTIVE_TRIPLE_LIMIT = 64
EXHAUSTIVE_PAIR_LIMIT = 2000
SAMPLE_SIZE = 200
IDEAL_NORM_BOUND = 30
U1_NORM_BOUND = 1000
LOCAL_BOX_RADIUS = 3
NONGLOBAL_IDELE_COUNT = 5
NONGLOBAL_PRIME_BOUND = 1000
