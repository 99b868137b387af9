"""Kernel backend selection.

The compiled Cython kernel is preferred when its extension module built;
otherwise the pure-numpy implementation takes over.  Set ``FFSCALE_KERNEL``
to ``python`` or ``c`` to force a backend (forcing ``c`` raises if the
extension is unavailable).
"""

from __future__ import annotations

import os

_requested = os.environ.get("FFSCALE_KERNEL", "").strip().lower()

if _requested in ("python", "py"):
    from . import _kernels_py as _impl

    BACKEND = "python"
elif _requested in ("c", "cython"):
    from . import _kernels as _impl  # type: ignore[no-redef]

    BACKEND = "c"
elif _requested == "":
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"
else:
    raise ValueError(
        f"FFSCALE_KERNEL={_requested!r} not understood; use 'c' or 'python'"
    )

rk4_chunk = _impl.rk4_chunk
