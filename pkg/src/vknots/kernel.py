"""Backend selection for the brute-force coloring kernel.

The compiled extension is preferred when present; otherwise the
pure-Python twin is used.  Setting the environment variable
``VKNOTS_PURE_PYTHON=1`` forces the fallback (useful for the backend
parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _colorkernel_py

if os.environ.get("VKNOTS_PURE_PYTHON") == "1":
    _impl = _colorkernel_py
    BACKEND = "python"
else:
    try:
        from . import _colorkernel as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _colorkernel_py
        BACKEND = "python"

filter_colorings = _impl.filter_colorings
