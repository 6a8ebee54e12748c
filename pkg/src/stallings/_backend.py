"""Select the compiled kernels when available, else the pure-Python ones.

Set ``STALLINGS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("STALLINGS_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

free_reduce = _impl.free_reduce
canonical_action = _impl.canonical_action
enumerate_canonical_actions = _impl.enumerate_canonical_actions
