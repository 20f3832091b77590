"""Backend selection for the hot kernels.

The compiled extension is used when it imports; setting ``SO7_ATLAS_PURE=1``
forces the numpy fallback.
"""

from __future__ import annotations

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("SO7_ATLAS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend

BACKEND = _active.BACKEND
compose = _active.compose
closure = _active.closure
components = _active.components
