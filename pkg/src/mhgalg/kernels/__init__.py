"""Hot kernels: canonical labelling and one-point extension.

Set ``MHGALG_DISABLE_NUMBA=1`` to force the pure-numpy path. Both paths
return identical arrays; the benchmark in ``benchmarks/`` compares them.
"""

from __future__ import annotations

import os

from . import _numpy as numpy_impl

USE_NUMBA = os.environ.get("MHGALG_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")

numba_impl = None
if USE_NUMBA:
    try:
        from . import _numba as numba_impl
    except ImportError:  # numba missing or broken
        USE_NUMBA = False

impl = numba_impl if USE_NUMBA else numpy_impl

refine_colors = impl.refine_colors
canonical_perm = impl.canonical_perm
canonical_entries = impl.canonical_entries
extension_rows = impl.extension_rows
canon_batch = impl.canon_batch

__all__ = [
    "USE_NUMBA",
    "canon_batch",
    "canonical_entries",
    "canonical_perm",
    "extension_rows",
    "numba_impl",
    "numpy_impl",
    "refine_colors",
]
