"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``GAUSSLINK_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
if not os.environ.get("GAUSSLINK_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

bracket_count = _impl.bracket_count
canonical_key_bytes = _impl.canonical_key_bytes
insert_arrows = _impl.insert_arrows
linking_counts = _impl.linking_counts

__all__ = ["BACKEND", "bracket_count", "canonical_key_bytes", "insert_arrows", "linking_counts"]
