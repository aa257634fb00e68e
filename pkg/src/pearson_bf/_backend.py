"""Pick the simulation kernel at import time.

The compiled ``_kernels`` module is preferred. Set ``PEARSON_BF_PURE=1`` to
force the pure-Python kernel (both produce identical numbers).
"""

import os

from . import _pure

pure = _pure
compiled = None

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and os.environ.get("PEARSON_BF_PURE", "") in ("", "0"):
    kernel = compiled
else:
    kernel = _pure

BACKEND = kernel.NAME
