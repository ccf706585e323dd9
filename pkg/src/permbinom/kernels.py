"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used.  Setting ``PERMBINOM_KERNELS=python``
forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("PERMBINOM_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

build_exp_table = _impl.build_exp_table
is_permutation_log = _impl.is_permutation_log
power_sum_log = _impl.power_sum_log
lambda_sum_log = _impl.lambda_sum_log


def backends():
    """Map of available backend name -> kernel module."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
