"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``DDRANK_KERNEL=py`` to force the fallback (used by the benchmark), or
``DDRANK_KERNEL=c`` to insist on the compiled extension.
"""

from __future__ import annotations

import os

_requested = os.environ.get("DDRANK_KERNEL", "").lower()

if _requested in ("py", "python"):
    from . import pykernel as _impl
elif _requested in ("c", "cy", "cython"):
    from . import _ckernel as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import pykernel as _impl

IMPLEMENTATION: str = _impl.IMPLEMENTATION
pure_sat = _impl.pure_sat
eqrel_sat = _impl.eqrel_sat
graph_sat = _impl.graph_sat
