"""Hot numerical kernels with backend selection.

Three operations dominate runtime: reduced row echelon form over a prime
field, minimum-weight enumeration of a code, and idempotent scanning in a
group algebra.  A compiled Cython extension implements them when built;
a pure numpy module provides the fallback with identical semantics.

Set AGCODES_BACKEND=python to force the fallback, AGCODES_BACKEND=compiled
to insist on the extension (ImportError if it is missing).
"""

import os

_requested = os.environ.get("AGCODES_BACKEND", "auto").strip().lower()

if _requested in ("auto", "", "compiled", "c"):
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:
        if _requested in ("compiled", "c"):
            raise
        from . import _pykernels as _impl

        BACKEND = "python"
elif _requested in ("python", "py", "pure"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    raise ValueError(f"unknown AGCODES_BACKEND value: {_requested!r}")

rref = _impl.rref
min_block_weight = _impl.min_block_weight
scan_idempotents = _impl.scan_idempotents
