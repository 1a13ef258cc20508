"""Backend selection for the zero-sum search kernels.

The compiled extension is used when it was built; otherwise, or when
``ORDERSCOPE_PURE=1`` is set, the pure-Python module is used.  Both expose
the same functions and must agree exactly.
"""

import os

from . import _pykernels as python_backend

try:
    if os.environ.get("ORDERSCOPE_PURE") == "1":
        raise ImportError("pure backend forced")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

_active = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None and _active is compiled_backend else "python"

reachable_sums = _active.reachable_sums
zero_sum_free = _active.zero_sum_free
max_zero_sum_free = _active.max_zero_sum_free
zero_sum_free_sequences = _active.zero_sum_free_sequences
zsf_subsequences = _active.zsf_subsequences

__all__ = [
    "BACKEND",
    "compiled_backend",
    "python_backend",
    "reachable_sums",
    "zero_sum_free",
    "max_zero_sum_free",
    "zero_sum_free_sequences",
    "zsf_subsequences",
]
