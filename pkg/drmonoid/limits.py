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
Resource caps for one program invocation

Every enumeration in this package is exhaustive, so every one of them
is guarded by a cap instead of being silently truncated. The caps are
global for one invocation of ``drmonoid-ctl`` and need to be determined
only once.

The ``drmonoid-ctl`` command line calls ``init_limits(...)`` with the
values from its flags. Apart from that one use, users of this module
only need to call ``get_limits()`` to get the object holding the
active caps.
"""


import drmonoid.constants as const
from drmonoid.common import CapExceededError, NormTooLargeError, debug


class Limits:
    def __init__(
        self,
        orbit_cap=const.DEFAULT_ORBIT_CAP,
        conductor_norm_cap=const.DEFAULT_CONDUCTOR_NORM_CAP,
        factor_norm_cap=const.DEFAULT_FACTOR_NORM_CAP,
        principal_norm_cap=const.DEFAULT_PRINCIPAL_NORM_CAP,
        approximation_tries=const.DEFAULT_APPROXIMATION_TRIES,
        search_box=const.DEFAULT_SEARCH_BOX,
        norm_bound=const.DEFAULT_NORM_BOUND,
    ):
        super(Limits, self).__init__()
        caps = {
            "orbit_cap": orbit_cap,
            "conductor_norm_cap": conductor_norm_cap,
            "factor_norm_cap": factor_norm_cap,
            "principal_norm_cap": principal_norm_cap,
            "approximation_tries": approximation_tries,
            "search_box": search_box,
            "norm_bound": norm_bound,
        }
        for name, value in caps.items():
            if value is None or int(value) <= 0:
                raise ValueError(f"cap {name} must be positive, not {value!r}")
        self._caps = {name: int(value) for name, value in caps.items()}

    def __str__(self):
        ps = ", ".join(f"{name}={value!r}" for name, value in self._caps.items())
        return f"{self.__class__.__name__}({ps})"

    def __repr__(self):
        return self.__str__()

    @property
    def orbit_cap(self):
        """Maximal number of raw (residue, ray class) pairs of a DR level"""
        return self._caps["orbit_cap"]

    @property
    def conductor_norm_cap(self):
        """Maximal norm of a conductor, i.e. of the size of O_K/f"""
        return self._caps["conductor_norm_cap"]

    @property
    def factor_norm_cap(self):
        """Maximal norm of an ideal handed to the factorisation"""
        return self._caps["factor_norm_cap"]

    @property
    def principal_norm_cap(self):
        """Maximal norm for the lattice point search for generators"""
        return self._caps["principal_norm_cap"]

    @property
    def approximation_tries(self):
        """How many perturbed uniformisers to try before giving up"""
        return self._caps["approximation_tries"]

    @property
    def search_box(self):
        """Coordinate radius of the default box of field elements"""
        return self._caps["search_box"]

    @property
    def norm_bound(self):
        """Largest norm of the global elements pushed through the reciprocity map"""
        return self._caps["norm_bound"]

    def check(self, name, value):
        cap = self._caps[name]
        if value > cap:
            raise CapExceededError(name.replace("_cap", "").replace("_", " "), value, cap)

    def check_factor_norm(self, norm):
        if norm > self.factor_norm_cap:
            raise NormTooLargeError(norm, self.factor_norm_cap)

    def check_principal_norm(self, norm):
        if norm > self.principal_norm_cap:
            raise NormTooLargeError(norm, self.principal_norm_cap)

    def as_dict(self):
        return dict(self._caps)


# The one instance of Limits
__limits_instance = None


def init_limits(**caps):
    global __limits_instance

    assert __limits_instance is None

    __limits_instance = Limits(**caps)
    debug("Using limits:", __limits_instance)
    return __limits_instance


def reset_limits():
    """Forget the active limits, so that the next get_limits() starts afresh"""
    global __limits_instance
    __limits_instance = None


def get_limits():
    global __limits_instance

    if __limits_instance is None:
        init_limits()

    return __limits_instance
