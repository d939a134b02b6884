"""Kernel selection: compiled extension if built, pure Python otherwise.

Set FOAMLAT_PURE_PYTHON=1 to force the fallback (used by the benchmark).
"""

import os

if os.environ.get("FOAMLAT_PURE_PYTHON"):
    from . import _enumpy as _impl

    HAVE_COMPILED = False
else:
    try:
        from . import _enumcy as _impl  # type: ignore[attr-defined]

        HAVE_COMPILED = True
    except ImportError:
        from . import _enumpy as _impl

        HAVE_COMPILED = False

enumerate_half = _impl.enumerate_half
