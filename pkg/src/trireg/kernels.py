"""Hot-kernel dispatch: the compiled extension when importable, else pure Python.

Set ``TRIREG_PURE_PYTHON=1`` to force the fallback.
"""

import os

from trireg import _kernels_py

BACKEND = "python"
count_matchings = _kernels_py.count_matchings
permanent_kernel = _kernels_py.permanent

if not os.environ.get("TRIREG_PURE_PYTHON"):
    try:
        from trireg import _kernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        count_matchings = _kernels.count_matchings
        permanent_kernel = _kernels.permanent
